#pragma once

// Semi-infinite wedge space: monomials v_{i_1} ^ v_{i_2} ^ ... that agree
// with the charge-m vacuum v_m ^ v_{m-1} ^ ... past a finite head, the
// wedge and contraction operators, and the dictionary with z^m s_lambda.

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symgen/combinatorics.hpp"
#include "symgen/errors.hpp"
#include "symgen/operators.hpp"
#include "symgen/parallel.hpp"
#include "symgen/report.hpp"
#include "symgen/scalar.hpp"

namespace symgen {

// Charge m and head i_1 > ... > i_r; entry j > r is m - j + 1. The head is
// kept minimal: i_r != m - r + 1.
class WedgeMonomial {
public:
    WedgeMonomial() = default;
    explicit WedgeMonomial(int charge, std::vector<int> head = {}) : m_(charge), head_(std::move(head))
    {
        for (std::size_t i = 1; i < head_.size(); ++i)
            if (head_[i] >= head_[i - 1])
                throw not_strict("wedge head must be strictly decreasing");
        if (!head_.empty() && head_.back() <= m_ - static_cast<int>(head_.size()))
            throw not_strict("wedge head runs into the vacuum tail");
        strip();
    }
    static WedgeMonomial vacuum(int charge) { return WedgeMonomial(charge); }

    int charge() const { return m_; }
    const std::vector<int> &head() const { return head_; }
    // Index in slot j (1-based) of the full sequence.
    int slot(int j) const { return j <= static_cast<int>(head_.size()) ? head_[j - 1] : m_ - j + 1; }
    bool occupied(int k) const
    {
        const int r = static_cast<int>(head_.size());
        return k <= m_ - r || std::find(head_.begin(), head_.end(), k) != head_.end();
    }

    std::string to_string() const
    {
        std::string s = "m=" + std::to_string(m_) + "; head=";
        for (std::size_t i = 0; i < head_.size(); ++i)
            s += (i ? "," : "") + std::to_string(head_[i]);
        return s;
    }
    static WedgeMonomial parse(std::string_view text)
    {
        std::string s(text);
        auto semi = s.find(';');
        if (s.rfind("m=", 0) != 0 || semi == std::string::npos)
            throw parse_error("wedge monomial must look like 'm=1; head=2,0'");
        std::string rest = s.substr(semi + 1);
        auto start = rest.find_first_not_of(' ');
        rest = start == std::string::npos ? "" : rest.substr(start);
        if (rest.rfind("head=", 0) != 0)
            throw parse_error("missing 'head=' in wedge monomial '" + s + "'");
        int charge;
        try {
            std::size_t pos = 0;
            charge = std::stoi(s.substr(2, semi - 2), &pos);
            if (pos != semi - 2)
                throw parse_error("bad charge");
        } catch (const std::logic_error &) {
            throw parse_error("bad charge in wedge monomial '" + s + "'");
        }
        try {
            return WedgeMonomial(charge, parse_vector(rest.substr(5)));
        } catch (const not_strict &e) {
            throw parse_error(e.what());
        }
    }

    friend bool operator==(const WedgeMonomial &, const WedgeMonomial &) = default;
    friend auto operator<=>(const WedgeMonomial &a, const WedgeMonomial &b)
    {
        if (auto c = a.m_ <=> b.m_; c != 0)
            return c;
        return a.head_ <=> b.head_;
    }

private:
    void strip()
    {
        while (!head_.empty() && head_.back() == m_ - static_cast<int>(head_.size()) + 1)
            head_.pop_back();
    }
    int m_ = 0;
    std::vector<int> head_;
};

// Finite combination of monomials of one charge.
using FockVector = std::map<WedgeMonomial, Rational>;

inline void add_to(FockVector &v, const WedgeMonomial &w, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, ins] = v.try_emplace(w, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero())
            v.erase(it);
    }
}

inline std::string to_string(const FockVector &v)
{
    if (v.empty())
        return "0";
    std::string s;
    for (const auto &[w, c] : v) {
        if (!s.empty())
            s += " + ";
        s += c.to_string() + "*[" + w.to_string() + "]";
    }
    return s;
}

// v_k ^ w, sorted into place: one sign per head entry above k.
inline FockVector wedge_psi_plus(int k, const WedgeMonomial &w)
{
    if (w.occupied(k))
        return {};
    std::vector<int> head = w.head();
    auto pos = std::find_if(head.begin(), head.end(), [&](int i) { return i < k; });
    const int above = static_cast<int>(pos - head.begin());
    head.insert(pos, k);
    return {{WedgeMonomial(w.charge() + 1, std::move(head)), Rational(above % 2 ? -1 : 1)}};
}

// Removes v_k from slot p with sign (-1)^(p-1).
inline FockVector wedge_psi_minus(int k, const WedgeMonomial &w)
{
    if (!w.occupied(k))
        return {};
    const int r = static_cast<int>(w.head().size());
    // head plus the tail down to k
    std::vector<int> full = w.head();
    for (int j = r + 1; full.empty() || full.back() > k; ++j)
        full.push_back(w.slot(j));
    const int p = static_cast<int>(std::find(full.begin(), full.end(), k) - full.begin()) + 1;
    full.erase(full.begin() + (p - 1));
    return {{WedgeMonomial(w.charge() - 1, std::move(full)), Rational((p - 1) % 2 ? -1 : 1)}};
}

template <typename Op> FockVector apply_linear(Op op, const FockVector &v)
{
    FockVector out;
    for (const auto &[w, c] : v)
        for (const auto &[w2, c2] : op(w))
            add_to(out, w2, c * c2);
    return out;
}

inline FockVector wedge_psi_plus(int k, const FockVector &v)
{
    return apply_linear([k](const WedgeMonomial &w) { return wedge_psi_plus(k, w); }, v);
}
inline FockVector wedge_psi_minus(int k, const FockVector &v)
{
    return apply_linear([k](const WedgeMonomial &w) { return wedge_psi_minus(k, w); }, v);
}

inline FockVector operator+(FockVector a, const FockVector &b)
{
    for (const auto &[w, c] : b)
        add_to(a, w, c);
    return a;
}

// ---- boson side ----

// lambda_j = i_j - (m - j + 1).
inline std::pair<int, Partition> to_boson(const WedgeMonomial &w)
{
    std::vector<int> lam;
    for (int j = 1; j <= static_cast<int>(w.head().size()); ++j)
        lam.push_back(w.head()[j - 1] - (w.charge() - j + 1));
    return {w.charge(), Partition(std::move(lam))};
}

inline WedgeMonomial from_boson(int m, const Partition &lambda)
{
    std::vector<int> head;
    for (int j = 1; j <= static_cast<int>(lambda.length()); ++j)
        head.push_back(lambda[j - 1] + m - j + 1);
    return WedgeMonomial(m, std::move(head));
}

// Charge m and the coefficients of z^m s_lambda; throws if charges are mixed.
inline std::pair<int, SchurVector> to_boson(const FockVector &v, int empty_charge)
{
    SchurVector s;
    int m = empty_charge;
    bool first = true;
    for (const auto &[w, c] : v) {
        auto [mw, lam] = to_boson(w);
        if (!first && mw != m)
            throw shape_error("Fock vector mixes charges");
        m = mw;
        first = false;
        add_to(s, lam, c);
    }
    return {m, s};
}

// ---- checkers ----

// psi+_j v_{m,lambda} <-> z^{m+1} Psi+_{j-m-1}(s_lambda)
// psi-_j v_{m,lambda} <-> z^{m-1} Psi-_{j-m}(s_lambda)
// for |m| <= M, |lambda| <= N, j in [jlo, jhi].
inline Report check_bf(int N, int M, int jlo, int jhi)
{
    Report rep;
    rep.suite = "fock-dictionary";
    rep.parameters = {{"N", N}, {"M", M}, {"jlo", jlo}, {"jhi", jhi}};
    auto parts = partitions_up_to(N);
    std::vector<std::pair<int, Partition>> cases;
    for (int m = -M; m <= M; ++m)
        for (const auto &p : parts)
            cases.emplace_back(m, p);
    std::vector<Report> per(cases.size());
    parallel_for(cases.size(), [&](std::size_t idx) {
        const auto &[m, lam] = cases[idx];
        const WedgeMonomial v = from_boson(m, lam);
        const SchurVector s = schur_basis(lam);
        for (int j = jlo; j <= jhi; ++j) {
            auto [mp, fp] = to_boson(wedge_psi_plus(j, FockVector{{v, Rational(1)}}), m + 1);
            SchurVector bp = psi_plus_basis(j - m - 1, s);
            per[idx].record(mp == m + 1 && fp == bp, {{"side", "plus"},
                                                      {"m", m},
                                                      {"lambda", lam.parts()},
                                                      {"j", j},
                                                      {"fermion", to_string(fp)},
                                                      {"boson", to_string(bp)}});
            auto [mm, fm] = to_boson(wedge_psi_minus(j, FockVector{{v, Rational(1)}}), m - 1);
            SchurVector bm = psi_minus_basis(j - m, s);
            per[idx].record(mm == m - 1 && fm == bm, {{"side", "minus"},
                                                      {"m", m},
                                                      {"lambda", lam.parts()},
                                                      {"j", j},
                                                      {"fermion", to_string(fm)},
                                                      {"boson", to_string(bm)}});
        }
    });
    for (const auto &r : per)
        rep.merge(r);
    return rep;
}

// Every canonical monomial of charge in [-M, M] whose head has at most
// max_head entries, all in [lo, hi].
inline std::vector<WedgeMonomial> wedge_monomials(int M, int max_head, int lo, int hi)
{
    std::vector<WedgeMonomial> out;
    std::vector<int> head;
    for (int m = -M; m <= M; ++m) {
        auto rec = [&](auto &&self, int below) -> void {
            const int r = static_cast<int>(head.size());
            if (r == 0 || head.back() > m - r + 1)
                out.emplace_back(m, head);
            if (r == max_head)
                return;
            for (int i = std::min(below - 1, hi); i >= lo && i > m - r - 1; --i) {
                head.push_back(i);
                self(self, i);
                head.pop_back();
            }
        };
        rec(rec, hi + 1);
    }
    return out;
}

// psi+_k psi-_l + psi-_l psi+_k = delta_{k,l}; both same-sign anticommutators
// vanish; k, l in [lo, hi].
inline Report check_clifford(const std::vector<WedgeMonomial> &basis, int lo, int hi)
{
    Report rep;
    rep.suite = "clifford";
    rep.parameters = {{"monomials", basis.size()}, {"lo", lo}, {"hi", hi}};
    std::vector<Report> per(basis.size());
    parallel_for(basis.size(), [&](std::size_t idx) {
        const FockVector v{{basis[idx], Rational(1)}};
        auto fail = [&](const char *rel, int k, int l, const FockVector &lhs) {
            return nlohmann::json{
                {"relation", rel}, {"k", k}, {"l", l}, {"monomial", basis[idx].to_string()}, {"lhs", to_string(lhs)}};
        };
        for (int k = lo; k <= hi; ++k)
            for (int l = lo; l <= hi; ++l) {
                FockVector pm = wedge_psi_plus(k, wedge_psi_minus(l, v)) + wedge_psi_minus(l, wedge_psi_plus(k, v));
                per[idx].record(pm == (k == l ? v : FockVector{}), fail("plus-minus", k, l, pm));
                FockVector pp = wedge_psi_plus(k, wedge_psi_plus(l, v)) + wedge_psi_plus(l, wedge_psi_plus(k, v));
                per[idx].record(pp.empty(), fail("plus-plus", k, l, pp));
                FockVector mm = wedge_psi_minus(k, wedge_psi_minus(l, v)) + wedge_psi_minus(l, wedge_psi_minus(k, v));
                per[idx].record(mm.empty(), fail("minus-minus", k, l, mm));
            }
    });
    for (const auto &r : per)
        rep.merge(r);
    return rep;
}

} // namespace symgen
