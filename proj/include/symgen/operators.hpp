#pragma once

// Creation/annihilation operators Psi^+_k, Psi^-_k on the generator algebra:
// the Hasse–Schmidt families DR, DQ attached to a correlation factor, the
// normally ordered decomposition, the Schur basis action, and coefficient-level
// relation checkers.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symgen/combinatorics.hpp"
#include "symgen/families.hpp"
#include "symgen/parallel.hpp"
#include "symgen/report.hpp"
#include "symgen/ring.hpp"
#include "symgen/series.hpp"

namespace symgen {

// DR_m(Q_k) = f_m Q_{k-m}, DQ_m(Q_k) = ft_m Q_{k-m} with ft = 1/f. In the
// Schur context the e-generators are also covered through R_k = (-1)^k e_k,
// on which DR and DQ act with ft and f respectively.
template <Scalar S> class OperatorContext {
public:
    // `order` bounds every degree and series index the context will be asked about.
    OperatorContext(CorrelationFactor<S> f, Family gens, int order, std::optional<FamilyTag> tag = std::nullopt)
        : tag_(tag), gens_(gens), order_(order), f_(f.expand(order)), ft_(f.inverse().expand(order)),
          Q_(TruncatedSeries<S>::generators(gens, order)), R_(invert(Q_))
    {
        if (f_[0].is_zero() || ft_[0].is_zero())
            throw non_unit("correlation factor must be invertible");
        dr_ = make_family(f_, ft_);
        dq_ = make_family(ft_, f_);
    }

    static OperatorContext family(FamilyTag tag, int order)
    {
        return OperatorContext(correlation_factor<S>(tag), generator_family(tag), order, tag);
    }
    // f = (1 - x)/p(x) over generic generators; p must satisfy p(0) = 1.
    static OperatorContext twisted(std::vector<S> p, int order)
    {
        if (p.empty() || p[0] != S(Rational(1)))
            throw non_unit("twisted factor needs p(0) = 1; normalize with normalize_twist");
        return OperatorContext(CorrelationFactor<S>({S(Rational(1)), S(Rational(-1))}, std::move(p)),
                               Family::QGeneric, order);
    }

    std::optional<FamilyTag> tag() const { return tag_; }
    Family generators() const { return gens_; }
    int order() const { return order_; }
    const std::vector<S> &f() const { return f_; }
    const std::vector<S> &f_inverse() const { return ft_; }
    const DerivationFamily<S> &DR() const { return dr_; }
    const DerivationFamily<S> &DQ() const { return dq_; }
    Element<S> Q(int k) const { return Element<S>::gen_or_unit(gens_, k); }
    const Element<S> &R(int k) const
    {
        if (k > order_)
            throw window_error("R_" + std::to_string(k) + " beyond the context order");
        return R_[k];
    }

private:
    DerivationFamily<S> make_family(const std::vector<S> &on_q, const std::vector<S> &on_r) const
    {
        const Family gens = gens_;
        const bool schur_e = tag_ == FamilyTag::Schur;
        const int order = order_;
        return {[gens, on_q, on_r, order](int m, const GeneratorRef &g) -> Element<S> {
                    if (m > order)
                        throw window_error("derivation order beyond the context order");
                    if (g.family == gens)
                        return Element<S>::constant(on_q[m]) * Element<S>::gen_or_unit(gens, g.index - m);
                    S c = m % 2 ? -on_r[m] : on_r[m];
                    return Element<S>::constant(c) * Element<S>::gen_or_unit(Family::E, g.index - m);
                },
                [gens, schur_e](const GeneratorRef &g) { return g.family == gens || (schur_e && g.family == Family::E); }};
    }

    std::optional<FamilyTag> tag_;
    Family gens_;
    int order_;
    std::vector<S> f_, ft_;
    TruncatedSeries<S> Q_, R_;
    DerivationFamily<S> dr_, dq_;
};

template <Scalar S> Element<S> dr_apply(const OperatorContext<S> &ctx, int m, const Element<S> &a)
{
    return hs_apply(ctx.DR(), m, a);
}
template <Scalar S> Element<S> dq_apply(const OperatorContext<S> &ctx, int m, const Element<S> &a)
{
    return hs_apply(ctx.DQ(), m, a);
}

namespace detail {

template <Scalar S> int top_degree(const Element<S> &a) { return a.is_zero() ? 0 : a.degree(); }

} // namespace detail

// Coefficients of v^k, k in [lo, hi], of Q(v) DR(v) a:
//   Psi^+_k(a) = sum_m Q_{k+m} DR_m(a).
template <Scalar S> std::map<int, Element<S>> vertex_plus(const OperatorContext<S> &ctx, const Element<S> &a, int lo, int hi)
{
    std::map<int, Element<S>> out;
    if (a.is_zero())
        return out;
    const int d = a.degree();
    auto dr = hs_apply_all(ctx.DR(), d, a);
    for (int k = lo; k <= hi; ++k) {
        Element<S> acc;
        for (int m = 0; m <= d; ++m)
            if (!dr[m].is_zero() && k + m >= 0)
                acc += ctx.Q(k + m) * dr[m];
        if (!acc.is_zero())
            out.emplace(k, std::move(acc));
    }
    return out;
}

// Coefficients of v^j, j in [lo, hi], of R(v) DQ(v) a; the v^j coefficient
// is Psi^-_{-j}(a) = sum_m R_{j+m} DQ_m(a).
template <Scalar S> std::map<int, Element<S>> vertex_minus(const OperatorContext<S> &ctx, const Element<S> &a, int lo, int hi)
{
    std::map<int, Element<S>> out;
    if (a.is_zero())
        return out;
    const int d = a.degree();
    auto dq = hs_apply_all(ctx.DQ(), d, a);
    for (int j = lo; j <= hi; ++j) {
        Element<S> acc;
        for (int m = 0; m <= d; ++m)
            if (!dq[m].is_zero() && j + m >= 0)
                acc += ctx.R(j + m) * dq[m];
        if (!acc.is_zero())
            out.emplace(j, std::move(acc));
    }
    return out;
}

template <Scalar S> Element<S> psi_plus(const OperatorContext<S> &ctx, int k, const Element<S> &a)
{
    auto v = vertex_plus(ctx, a, k, k);
    return v.empty() ? Element<S>() : v.begin()->second;
}

template <Scalar S> Element<S> psi_minus(const OperatorContext<S> &ctx, int k, const Element<S> &a)
{
    auto v = vertex_minus(ctx, a, -k, -k);
    return v.empty() ? Element<S>() : v.begin()->second;
}

// ---- Schur basis route ----

// Finite linear combination of Schur functions s_lambda.
using SchurVector = std::map<Partition, Rational>;

inline void add_to(SchurVector &v, const Partition &p, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, ins] = v.try_emplace(p, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero())
            v.erase(it);
    }
}

inline SchurVector schur_basis(const Partition &p) { return {{p, Rational(1)}}; }

// s_lambda -> s_(k, lambda), straightened.
inline SchurVector psi_plus_basis(int k, const SchurVector &v)
{
    SchurVector out;
    for (const auto &[lam, c] : v) {
        IntegerVector a{k};
        a.insert(a.end(), lam.parts().begin(), lam.parts().end());
        auto s = straighten(a);
        if (!s.is_zero())
            add_to(out, s.partition, c * Rational(s.sign));
    }
    return out;
}

// Psi^-_k(s_lambda) = (-1)^k s_{(-k, lambda')'}, straightened.
inline SchurVector psi_minus_basis(int k, const SchurVector &v)
{
    SchurVector out;
    for (const auto &[lam, c] : v) {
        IntegerVector a{-k};
        Partition lc = conjugate(lam);
        a.insert(a.end(), lc.parts().begin(), lc.parts().end());
        auto s = straighten(a);
        if (s.is_zero())
            continue;
        int sign = s.sign * (k % 2 ? -1 : 1);
        add_to(out, conjugate(s.partition), Rational(sign) * c);
    }
    return out;
}

inline QElement to_element(const SchurVector &v)
{
    QElement r;
    for (const auto &[lam, c] : v)
        r += QElement(c) * schur_h(lam);
    return r;
}

inline std::string to_string(const SchurVector &v)
{
    if (v.empty())
        return "0";
    std::string s;
    for (const auto &[lam, c] : v) {
        if (!s.empty())
            s += " + ";
        s += c.to_string() + "*s[" + format_partition(lam) + "]";
    }
    return s;
}

inline SchurVector operator+(SchurVector a, const SchurVector &b)
{
    for (const auto &[p, c] : b)
        add_to(a, p, c);
    return a;
}

// ---- checkers ----

// Classical relations on every s_lambda, |lambda| <= N, k, l in [-W, W]:
//   Psi+_k Psi+_l + Psi+_{l-1} Psi+_{k+1} = 0
//   Psi-_k Psi-_l + Psi-_{l+1} Psi-_{k-1} = 0
//   Psi-_k Psi+_l + Psi+_{l+1} Psi-_{k+1} = delta_{k,l}
inline Report check_fermion(int N, int W)
{
    Report rep;
    rep.suite = "fermion";
    rep.parameters = {{"N", N}, {"W", W}};
    auto parts = partitions_up_to(N);
    std::vector<Report> per(parts.size());
    parallel_for(parts.size(), [&](std::size_t idx) {
        const SchurVector s = schur_basis(parts[idx]);
        Report &r = per[idx];
        auto fail = [&](const char *rel, int k, int l, const SchurVector &lhs, const SchurVector &rhs) {
            return nlohmann::json{{"relation", rel}, {"k", k}, {"l", l}, {"lambda", parts[idx].parts()},
                                  {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
        };
        for (int k = -W; k <= W; ++k)
            for (int l = -W; l <= W; ++l) {
                SchurVector pp = psi_plus_basis(k, psi_plus_basis(l, s)) +
                                 psi_plus_basis(l - 1, psi_plus_basis(k + 1, s));
                r.record(pp.empty(), fail("plus-plus", k, l, pp, {}));
                SchurVector mm = psi_minus_basis(k, psi_minus_basis(l, s)) +
                                 psi_minus_basis(l + 1, psi_minus_basis(k - 1, s));
                r.record(mm.empty(), fail("minus-minus", k, l, mm, {}));
                SchurVector mp = psi_minus_basis(k, psi_plus_basis(l, s)) +
                                 psi_plus_basis(l + 1, psi_minus_basis(k + 1, s));
                SchurVector rhs = k == l ? s : SchurVector{};
                r.record(mp == rhs, fail("mixed", k, l, mp, rhs));
            }
    });
    for (const auto &r : per)
        rep.merge(r);
    return rep;
}

// Coefficient of u^a v^b in the twisted relations for f = (1 - x)/p(x),
// with M_i := Psi^-_{-i}:
//   sum_s p_s [Psi+_{a-1+s} Psi+_{b-s} + Psi+_{b-1+s} Psi+_{a-s}] = 0
//   sum_s p_s [M_{a-1+s} M_{b-s} + M_{b-1+s} M_{a-s}] = 0
//   sum_s p_s [M_{a-s} Psi+_{b-1+s} + Psi+_{b-s} M_{a-1+s}] = p(1)^2 delta_{a+b,1}
// applied to every generator monomial of degree <= N.
// p / p(0). Both the unit normalization f(0) = 1 and the relations are
// stated for the rescaled polynomial.
template <Scalar S> std::vector<S> normalize_twist(std::vector<S> p)
{
    if (p.empty() || p[0].is_zero())
        throw non_unit("twisted relations need p(0) != 0");
    const S p0 = p[0];
    for (auto &c : p)
        c = c / p0;
    return p;
}

template <Scalar S> Report check_twisted(std::vector<S> p, int N, int W)
{
    Report rep;
    rep.suite = "twisted";
    p = normalize_twist(std::move(p));
    std::vector<std::string> ptext;
    for (const auto &c : p)
        ptext.push_back(c.to_string());
    rep.parameters = {{"p", ptext}, {"N", N}, {"W", W}};
    const int deg_p = static_cast<int>(p.size()) - 1;
    // R indices reach N + 3W + 3 deg p
    const int order = N + 3 * W + 3 * deg_p + 4;
    auto ctx = OperatorContext<S>::twisted(p, order);
    S p1;
    for (const auto &c : p)
        p1 += c;
    const S rhs_scale = p1 * p1;

    auto basis = partitions_up_to(N);
    std::vector<Report> per(basis.size());
    parallel_for(basis.size(), [&](std::size_t idx) {
        Element<S> x(1L);
        for (int part : basis[idx].parts())
            x = x * ctx.Q(part);
        auto P = [&](int k, const Element<S> &a) { return psi_plus(ctx, k, a); };
        auto M = [&](int i, const Element<S> &a) { return psi_minus(ctx, -i, a); };
        Report &r = per[idx];
        for (int a = -W; a <= W; ++a)
            for (int b = -W; b <= W; ++b) {
                Element<S> pp, mm, mixed;
                for (int s = 0; s <= deg_p; ++s) {
                    const S &ps = p[s];
                    if (ps.is_zero())
                        continue;
                    pp += (P(a - 1 + s, P(b - s, x)) + P(b - 1 + s, P(a - s, x))) * ps;
                    mm += (M(a - 1 + s, M(b - s, x)) + M(b - 1 + s, M(a - s, x))) * ps;
                    mixed += (M(a - s, P(b - 1 + s, x)) + P(b - s, M(a - 1 + s, x))) * ps;
                }
                Element<S> expect = a + b == 1 ? x * rhs_scale : Element<S>();
                auto payload = [&](const char *rel, const Element<S> &lhs, const Element<S> &rhs) {
                    return nlohmann::json{{"relation", rel}, {"k", a}, {"l", b}, {"lambda", basis[idx].parts()},
                                          {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
                };
                r.record(pp.is_zero(), payload("plus-plus", pp, {}));
                r.record(mm.is_zero(), payload("minus-minus", mm, {}));
                r.record(mixed == expect, payload("mixed", mixed, expect));
            }
    });
    for (const auto &r : per)
        rep.merge(r);
    return rep;
}

// Psi^+(v) applied to the l-variable table reproduces the (l+1)-variable
// table; likewise Psi^-(v) on the R-side tables.
template <Scalar S> Report check_normal_order(FamilyTag tag, int l, int N)
{
    Report rep;
    rep.suite = "normal-order";
    rep.parameters = {{"family", tag_name(tag)}, {"l", l}, {"N", N}};
    auto ctx = OperatorContext<S>::family(tag, 3 * N + 2);
    Window outer = Window::standard(l + 1, N);
    // the tail of an outer vector has weight <= 2N
    Window inner = l == 0 ? Window{} : Window::box(l, -N, N, 2 * N);
    auto expand = [&](bool r_side, const Window &w) {
        return r_side ? family_r_table<S>(tag, w) : family_table<S>(tag, w);
    };
    for (bool r_side : {false, true}) {
        auto big = expand(r_side, outer);
        typename CoeffTable<S>::Entries small;
        if (l == 0)
            small.emplace(IntegerVector{}, Element<S>(1L));
        else
            small = expand(r_side, inner).entries();
        std::map<IntegerVector, Element<S>> produced;
        for (const auto &[lam, c] : small) {
            auto coeffs = r_side ? vertex_minus(ctx, c, -N, N) : vertex_plus(ctx, c, -N, N);
            for (auto &[k, e] : coeffs) {
                IntegerVector v{k};
                v.insert(v.end(), lam.begin(), lam.end());
                if (outer.contains(v))
                    produced.emplace(std::move(v), std::move(e));
            }
        }
        for (const auto &v : integer_vectors_in_box(l + 1, -N, N)) {
            if (!outer.contains(v))
                continue;
            auto it = produced.find(v);
            Element<S> lhs = it == produced.end() ? Element<S>() : it->second;
            Element<S> rhs = big.extract(v);
            rep.record(lhs == rhs, {{"side", r_side ? "minus" : "plus"}, {"lambda", v}, {"lhs", lhs.to_string()},
                                    {"rhs", rhs.to_string()}});
        }
    }
    return rep;
}

// Decomposition route against the basis route in the Schur context.
inline Report check_schur_routes(int N, int klo, int khi)
{
    Report rep;
    rep.suite = "schur-routes";
    rep.parameters = {{"N", N}, {"k", {klo, khi}}};
    auto ctx = OperatorContext<Rational>::family(FamilyTag::Schur, N + khi + 2 * std::abs(klo) + 2);
    for (const auto &lam : partitions_up_to(N)) {
        QElement s = schur_h(lam);
        for (int k = klo; k <= khi; ++k) {
            QElement plus = psi_plus(ctx, k, s), plus_b = to_element(psi_plus_basis(k, schur_basis(lam)));
            rep.record(plus == plus_b, {{"side", "plus"}, {"k", k}, {"lambda", lam.parts()},
                                        {"lhs", plus.to_string()}, {"rhs", plus_b.to_string()}});
            QElement minus = psi_minus(ctx, k, s), minus_b = to_element(psi_minus_basis(k, schur_basis(lam)));
            rep.record(minus == minus_b, {{"side", "minus"}, {"k", k}, {"lambda", lam.parts()},
                                          {"lhs", minus.to_string()}, {"rhs", minus_b.to_string()}});
        }
    }
    return rep;
}

} // namespace symgen
