#pragma once

// Schur, Schur-Q and Hall–Littlewood families: correlation factors, closed
// forms (Jacobi–Trudi determinants, Pfaffians) and n-variable evaluation
// oracles.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "symgen/combinatorics.hpp"
#include "symgen/errors.hpp"
#include "symgen/linalg.hpp"
#include "symgen/ring.hpp"
#include "symgen/scalar.hpp"
#include "symgen/series.hpp"

namespace symgen {

enum class FamilyTag { Schur, SchurQ, HallLittlewood };

inline std::string tag_name(FamilyTag t)
{
    switch (t) {
    case FamilyTag::Schur:
        return "schur";
    case FamilyTag::SchurQ:
        return "schur-q";
    case FamilyTag::HallLittlewood:
        return "hall-littlewood";
    }
    return "?";
}

// Generators carried by the family's Q(u).
inline Family generator_family(FamilyTag t)
{
    switch (t) {
    case FamilyTag::Schur:
        return Family::H;
    case FamilyTag::SchurQ:
        return Family::QSchur;
    case FamilyTag::HallLittlewood:
        return Family::QGeneric;
    }
    return Family::QGeneric;
}

// 1 - x;  (1 - x)/(1 + x);  (1 - x)/(1 - t x).
template <Scalar S> CorrelationFactor<S> correlation_factor(FamilyTag tag)
{
    const S one(Rational(1)), minus_one(Rational(-1));
    switch (tag) {
    case FamilyTag::Schur:
        return {{one, minus_one}, {one}};
    case FamilyTag::SchurQ:
        return {{one, minus_one}, {one, one}};
    case FamilyTag::HallLittlewood:
        if constexpr (scalar_traits<S>::has_t)
            return {{one, minus_one}, {one, -scalar_traits<S>::variable()}};
        else
            throw std::invalid_argument("the Hall-Littlewood factor needs scalars in Q[t]");
    }
    throw std::invalid_argument("unknown family tag");
}

template <Scalar S> std::vector<S> correlation_function(FamilyTag tag, int N)
{
    return correlation_factor<S>(tag).expand(N);
}

template <Scalar S> TruncatedSeries<S> family_series(FamilyTag tag, int N)
{
    return TruncatedSeries<S>::generators(generator_family(tag), N);
}

template <Scalar S> CoeffTable<S> family_table(FamilyTag tag, const Window &w)
{
    return correlation_expand(correlation_factor<S>(tag), family_series<S>(tag, w.max_weight), w);
}

// The R-side table: same correlation product over R(u) = Q(u)^{-1}.
template <Scalar S> CoeffTable<S> family_r_table(FamilyTag tag, const Window &w)
{
    return correlation_expand(correlation_factor<S>(tag), invert(family_series<S>(tag, w.max_weight)), w);
}

// ---- closed forms ----

template <Scalar S> Element<S> element_det(const std::vector<std::vector<Element<S>>> &m)
{
    return det_bitmask(m, Element<S>(), Element<S>(1L));
}

// det[g_{alpha_i - i + j}] over the given generator family.
inline QElement jacobi_trudi(const IntegerVector &alpha, Family fam)
{
    const int l = static_cast<int>(alpha.size());
    std::vector<std::vector<QElement>> m(l, std::vector<QElement>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            m[i][j] = QElement::gen_or_unit(fam, alpha[i] - i + j);
    return element_det(m);
}

inline QElement schur_h(const IntegerVector &alpha) { return jacobi_trudi(alpha, Family::H); }
inline QElement schur_h(const Partition &lambda) { return schur_h(lambda.as_vector()); }

inline QElement schur_e(const Partition &lambda) { return jacobi_trudi(conjugate(lambda).as_vector(), Family::E); }

// Square matrix with a_ji = -a_ij and zero diagonal.
template <Scalar S> class SkewMatrix {
public:
    explicit SkewMatrix(std::vector<std::vector<Element<S>>> a) : a_(std::move(a))
    {
        const std::size_t n = a_.size();
        for (const auto &row : a_)
            if (row.size() != n)
                throw shape_error("skew matrix must be square");
        for (std::size_t i = 0; i < n; ++i) {
            if (!a_[i][i].is_zero())
                throw shape_error("skew matrix must have zero diagonal");
            for (std::size_t j = i + 1; j < n; ++j)
                if (a_[j][i] != -a_[i][j])
                    throw shape_error("matrix is not skew-symmetric");
        }
    }
    // Fills the lower triangle from the strict upper one.
    static SkewMatrix from_upper(std::vector<std::vector<Element<S>>> a)
    {
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i][i] = {};
            for (std::size_t j = i + 1; j < a.size(); ++j)
                a[j][i] = -a[i][j];
        }
        return SkewMatrix(std::move(a));
    }
    std::size_t size() const { return a_.size(); }
    const Element<S> &operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
    const std::vector<std::vector<Element<S>>> &rows() const { return a_; }

private:
    std::vector<std::vector<Element<S>>> a_;
};

namespace detail {

template <Scalar S> Element<S> pfaffian_rec(const SkewMatrix<S> &a, std::vector<int> &idx)
{
    if (idx.empty())
        return Element<S>(1L);
    const int first = idx[0];
    Element<S> total;
    for (std::size_t p = 1; p < idx.size(); ++p) {
        const Element<S> &entry = a(first, idx[p]);
        if (entry.is_zero())
            continue;
        std::vector<int> rest;
        for (std::size_t q = 1; q < idx.size(); ++q)
            if (q != p)
                rest.push_back(idx[q]);
        Element<S> term = entry * pfaffian_rec(a, rest);
        if (p % 2)
            total += term;
        else
            total -= term;
    }
    return total;
}

} // namespace detail

// Signed sum over perfect matchings, expanding along the first row.
template <Scalar S> Element<S> pfaffian(const SkewMatrix<S> &a)
{
    if (a.size() % 2)
        throw shape_error("Pfaffian of an odd-sized matrix");
    std::vector<int> idx(a.size());
    std::iota(idx.begin(), idx.end(), 0);
    return detail::pfaffian_rec(a, idx);
}

// Q_(m,n) = Q_m Q_n + 2 sum_{s=1}^{n} (-1)^s Q_{m+s} Q_{n-s}.
inline QElement schurq_two_row(int m, int n)
{
    auto q = [](int k) { return QElement::gen_or_unit(Family::QSchur, k); };
    QElement r = q(m) * q(n);
    for (int s = 1; s <= n; ++s)
        r += QElement(Rational(s % 2 ? -2 : 2)) * q(m + s) * q(n - s);
    return r;
}

inline QElement schurq(const Partition &lambda)
{
    if (!lambda.is_strict())
        throw not_strict("Schur Q-functions are indexed by strict partitions, got " + format_partition(lambda));
    std::vector<int> parts = lambda.parts();
    if (parts.size() % 2)
        parts.push_back(0);
    const std::size_t n = parts.size();
    std::vector<std::vector<QElement>> m(n, std::vector<QElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m[i][j] = schurq_two_row(parts[i], parts[j]);
    return pfaffian(SkewMatrix<Rational>::from_upper(std::move(m)));
}

// ---- evaluation oracles ----

enum class EvalKind { H, E, P, SchurQ, HallLittlewood };

// Values of the k-th generator, k = 0..K, at the point x (t only for HL).
inline std::vector<Rational> eval_generators(EvalKind kind, const std::vector<Rational> &x, int K,
                                             std::optional<Rational> t = std::nullopt)
{
    if (K < 0)
        throw std::invalid_argument("K must be nonnegative");
    if ((kind == EvalKind::HallLittlewood) != t.has_value())
        throw std::invalid_argument("t is required for Hall-Littlewood values and only for them");
    std::vector<Rational> out(K + 1);
    if (kind == EvalKind::P) {
        out[0] = Rational(static_cast<long>(x.size()));
        for (int k = 1; k <= K; ++k)
            for (const auto &xi : x)
                out[k] += pow(xi, k);
        return out;
    }
    // multiply out prod_i num_i(u)/den_i(u) as a truncated series
    out[0] = Rational(1);
    auto times_linear = [&](const Rational &c) { // *(1 + c u)
        for (int k = K; k >= 1; --k)
            out[k] += c * out[k - 1];
    };
    auto over_linear = [&](const Rational &c) { // /(1 - c u)
        for (int k = 1; k <= K; ++k)
            out[k] += c * out[k - 1];
    };
    for (const auto &xi : x) {
        switch (kind) {
        case EvalKind::H:
            over_linear(xi);
            break;
        case EvalKind::E:
            times_linear(xi);
            break;
        case EvalKind::SchurQ:
            times_linear(xi);
            over_linear(xi);
            break;
        case EvalKind::HallLittlewood:
            times_linear(-(*t) * xi);
            over_linear(xi);
            break;
        case EvalKind::P:
            break;
        }
    }
    return out;
}

// Generator values per family; index 0 is ignored.
struct Valuation {
    std::map<Family, std::vector<Rational>> values;

    Rational operator()(const GeneratorRef &g) const
    {
        auto it = values.find(g.family);
        if (it == values.end() || g.index >= static_cast<int>(it->second.size()))
            throw missing_value("no value for generator " + g.to_string());
        return it->second[g.index];
    }
};

template <Scalar S>
Rational eval_element(const Element<S> &a, const Valuation &v, std::optional<Rational> t = std::nullopt)
{
    Rational acc;
    for (const auto &[m, c] : a.terms()) {
        Rational term = scalar_traits<S>::at(c, t);
        for (const auto &[g, e] : m.factors())
            term *= pow(v(g), static_cast<unsigned>(e));
        acc += term;
    }
    return acc;
}

namespace detail {

inline void require_distinct(const std::vector<Rational> &x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j])
                throw coincident_points("evaluation points must be pairwise distinct");
}

} // namespace detail

// det[x_i^{lambda_j + n - j}] / det[x_i^{n - j}].
inline Rational schur_bialternant(const Partition &lambda, const std::vector<Rational> &x)
{
    detail::require_distinct(x);
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(lambda.length()) > n)
        return Rational(0);
    std::vector<std::vector<Rational>> num(n, std::vector<Rational>(n)), den = num;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            num[i][j] = pow(x[i], static_cast<unsigned>(lambda[j] + n - 1 - j));
            den[i][j] = pow(x[i], static_cast<unsigned>(n - 1 - j));
        }
    return det_gauss(num) / det_gauss(den);
}

// b_lambda(t) = prod_{i >= 1} prod_{j=1}^{m_i} (1 - t^j).
inline TPoly hl_b(const Partition &lambda)
{
    TPoly b(1);
    std::map<int, int> mult;
    for (int p : lambda.parts())
        ++mult[p];
    for (const auto &[part, m] : mult)
        for (int j = 1; j <= m; ++j)
            b *= TPoly(1) - TPoly::monomial(Rational(1), j);
    return b;
}

// Symmetrization formula with prefactor prod_{i >= 0} prod_{j <= m_i} (1-t)/(1-t^j),
// m_0 = n - l(lambda).
inline Rational hl_P(const Partition &lambda, const std::vector<Rational> &x, const Rational &t)
{
    detail::require_distinct(x);
    const int n = static_cast<int>(x.size());
    if (n > 7)
        throw std::invalid_argument("hl_P sums over S_n and supports n <= 7");
    if (static_cast<int>(lambda.length()) > n)
        return Rational(0);
    std::map<int, int> mult;
    for (int i = 0; i < n; ++i)
        ++mult[lambda[i]];
    Rational pref(1);
    for (const auto &[part, m] : mult)
        for (int j = 1; j <= m; ++j) {
            Rational d = Rational(1) - pow(t, j);
            if (d.is_zero())
                throw pole_error("normalizing factor 1 - t^" + std::to_string(j) + " vanishes at t = " + t.to_string());
            pref *= (Rational(1) - t) / d;
        }
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational total;
    do {
        Rational term(1);
        for (int i = 0; i < n; ++i)
            term *= pow(x[sigma[i]], static_cast<unsigned>(lambda[i]));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                term *= (x[sigma[i]] - t * x[sigma[j]]) / (x[sigma[i]] - x[sigma[j]]);
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return pref * total;
}

} // namespace symgen
