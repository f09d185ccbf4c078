#pragma once

// Shifted symmetric functions over the generators h*_k (hs) and e*_k (es):
// series in falling-factorial bases, the shift automorphism tau, shifted
// Schur functions, their multivariate generating functions, and the shifted
// operator calculus DR*, DQ*, Psi*.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symgen/combinatorics.hpp"
#include "symgen/errors.hpp"
#include "symgen/families.hpp"
#include "symgen/linalg.hpp"
#include "symgen/operators.hpp"
#include "symgen/parallel.hpp"
#include "symgen/report.hpp"
#include "symgen/ring.hpp"
#include "symgen/scalar.hpp"
#include "symgen/series.hpp"

namespace symgen {

// Falling: sum_k c_k / (u|k).  Rising: sum_k c_k (u|-k).  k = 0..order.
enum class ShiftedBasis { Falling, Rising };

inline std::string basis_name(ShiftedBasis b) { return b == ShiftedBasis::Falling ? "falling" : "rising"; }

struct FallingSeries {
    ShiftedBasis basis = ShiftedBasis::Falling;
    std::vector<QElement> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const QElement &operator[](int k) const
    {
        static const QElement zero;
        return k < 0 || k > order() ? zero : coeffs[k];
    }
    friend bool operator==(const FallingSeries &, const FallingSeries &) = default;
};

// Expansion at u = infinity, sum_n c_n u^n with finitely many n > 0.
// Coefficients are exact for n >= -order; no order means a finite sum.
class InvUSeries {
public:
    InvUSeries() = default;
    static InvUSeries exact(std::map<int, QElement> terms) { return InvUSeries(std::move(terms), std::nullopt); }
    static InvUSeries truncated(std::map<int, QElement> terms, int order)
    {
        return InvUSeries(std::move(terms), order);
    }
    static InvUSeries monomial(int n, QElement c = QElement(1L)) { return exact({{n, std::move(c)}}); }

    const std::map<int, QElement> &terms() const { return c_; }
    std::optional<int> order() const { return order_; }
    bool known(int n) const { return !order_ || n >= -*order_; }
    const QElement &operator[](int n) const
    {
        static const QElement zero;
        if (!known(n))
            throw window_error("coefficient of u^" + std::to_string(n) + " lies below the truncation order");
        auto it = c_.find(n);
        return it == c_.end() ? zero : it->second;
    }
    // Largest exponent that may carry a nonzero coefficient, known or not.
    int reach() const
    {
        int r = std::numeric_limits<int>::min() / 4;
        if (!c_.empty())
            r = c_.rbegin()->first;
        if (order_)
            r = std::max(r, -*order_ - 1);
        return r;
    }
    InvUSeries truncate(int order) const
    {
        int o = order_ ? std::min(*order_, order) : order;
        std::map<int, QElement> t;
        for (const auto &[n, e] : c_)
            if (n >= -o)
                t.emplace(n, e);
        return InvUSeries(std::move(t), o);
    }

    friend InvUSeries operator*(const InvUSeries &a, const InvUSeries &b)
    {
        std::optional<int> o;
        auto tighten = [&](int v) { o = o ? std::min(*o, v) : v; };
        if (a.order_ && !(b.c_.empty() && !b.order_))
            tighten(*a.order_ - b.reach());
        if (b.order_ && !(a.c_.empty() && !a.order_))
            tighten(*b.order_ - a.reach());
        std::map<int, QElement> t;
        for (const auto &[i, x] : a.c_)
            for (const auto &[j, y] : b.c_) {
                if (o && i + j < -*o)
                    continue;
                t[i + j] += x * y;
            }
        return InvUSeries(std::move(t), o);
    }
    friend InvUSeries operator+(const InvUSeries &a, const InvUSeries &b)
    {
        std::optional<int> o = a.order_;
        if (b.order_)
            o = o ? std::min(*o, *b.order_) : b.order_;
        std::map<int, QElement> t;
        for (const auto *s : {&a, &b})
            for (const auto &[n, e] : s->c_)
                if (!o || n >= -*o)
                    t[n] += e;
        return InvUSeries(std::move(t), o);
    }
    InvUSeries scaled(const QElement &k) const
    {
        std::map<int, QElement> t;
        for (const auto &[n, e] : c_)
            t.emplace(n, e * k);
        return InvUSeries(std::move(t), order_);
    }

    // Equal on every exponent >= -depth known to both.
    bool agrees_with(const InvUSeries &o, int depth) const
    {
        int top = std::max(c_.empty() ? 0 : c_.rbegin()->first, o.c_.empty() ? 0 : o.c_.rbegin()->first);
        for (int n = top; n >= -depth; --n) {
            if (!known(n) || !o.known(n))
                throw window_error("comparison depth exceeds the truncation order");
            if ((*this)[n] != o[n])
                return false;
        }
        return true;
    }
    std::string to_string() const
    {
        std::string s;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (it->second.is_zero())
                continue;
            if (!s.empty())
                s += " + ";
            s += "(" + it->second.to_string() + ")*u^" + std::to_string(it->first);
        }
        if (s.empty())
            s = "0";
        if (order_)
            s += " + O(u^" + std::to_string(-*order_ - 1) + ")";
        return s;
    }

private:
    InvUSeries(std::map<int, QElement> terms, std::optional<int> order) : c_(std::move(terms)), order_(order)
    {
        for (auto it = c_.begin(); it != c_.end();)
            it = it->second.is_zero() || (order_ && it->first < -*order_) ? c_.erase(it) : std::next(it);
    }
    std::map<int, QElement> c_;
    std::optional<int> order_;
};

namespace detail {

// prod_i (u + shift_i)^{+1 or -1}, expanded through u^{-order}.
inline InvUSeries linear_factors(const std::vector<int> &shifts, bool inverted, int order)
{
    InvUSeries acc = InvUSeries::monomial(0);
    for (int c : shifts) {
        if (!inverted) {
            acc = acc * InvUSeries::exact({{1, QElement(1L)}, {0, QElement(Rational(c))}});
            continue;
        }
        // 1/(u + c) = sum_{j>=0} (-c)^j u^{-1-j}
        std::map<int, QElement> g;
        Rational p(1);
        for (int j = 0; 1 + j <= order; ++j) {
            g.emplace(-1 - j, QElement(p));
            p *= Rational(-c);
        }
        acc = (acc * InvUSeries::truncated(std::move(g), order)).truncate(order);
    }
    return acc.order() ? acc.truncate(order) : acc;
}

} // namespace detail

// (u|k) at u = infinity.
inline InvUSeries falling_power_expansion(int k, int order)
{
    std::vector<int> s;
    if (k >= 0) {
        for (int i = 0; i < k; ++i)
            s.push_back(-i);
        return detail::linear_factors(s, false, order);
    }
    for (int j = 1; j <= -k; ++j)
        s.push_back(j);
    return detail::linear_factors(s, true, order);
}

// 1/(u|k) at u = infinity.
inline InvUSeries inverse_falling_power_expansion(int k, int order)
{
    std::vector<int> s;
    if (k >= 0) {
        for (int i = 0; i < k; ++i)
            s.push_back(-i);
        return detail::linear_factors(s, true, order);
    }
    for (int j = 1; j <= -k; ++j)
        s.push_back(j);
    return detail::linear_factors(s, false, order);
}

// Basis element k of the given shifted basis (k any integer).
inline InvUSeries basis_expansion(ShiftedBasis b, int k, int order)
{
    return b == ShiftedBasis::Falling ? inverse_falling_power_expansion(k, order) : falling_power_expansion(-k, order);
}

// Exact through u^{-min(order, s.order())}; both bases have leading term u^{-k}.
inline InvUSeries to_inv_u(const FallingSeries &s, int order)
{
    const int o = std::min(order, s.order());
    InvUSeries acc = InvUSeries::truncated({}, o);
    for (int k = 0; k <= o; ++k)
        if (!s[k].is_zero())
            acc = acc + basis_expansion(s.basis, k, o).scaled(s[k]);
    return acc;
}

// Re-expansion of s(u + a) in the same basis, one unit step at a time:
//   1/(u-1|k) = 1/(u|k) + k/(u|k+1),   (u+1|-k) = (u|-k) - k (u|-k-1).
// The opposite steps are the triangular inverses of these.
inline FallingSeries shift_arg(FallingSeries s, int a)
{
    const int n = s.order();
    const bool falling = s.basis == ShiftedBasis::Falling;
    for (int step = 0; step < std::abs(a); ++step) {
        const bool down = a < 0; // u -> u - 1
        std::vector<QElement> c = s.coeffs;
        if (falling == down) {
            // c'_j = c_j +- (j-1) c_{j-1}
            const Rational sign(falling ? 1 : -1);
            for (int j = n; j >= 1; --j)
                if (!s.coeffs[j - 1].is_zero())
                    c[j] += s.coeffs[j - 1] * QElement(sign * Rational(j - 1));
        } else {
            // c_j = c'_j -+ (j-1) c'_{j-1}, solved upward
            const Rational sign(falling ? -1 : 1);
            for (int j = 1; j <= n; ++j)
                if (!c[j - 1].is_zero())
                    c[j] += c[j - 1] * QElement(sign * Rational(j - 1));
        }
        s.coeffs = std::move(c);
    }
    return s;
}

inline QElement hstar(int k) { return QElement::gen_or_unit(Family::HStar, k); }
inline QElement estar(int k) { return QElement::gen_or_unit(Family::EStar, k); }

// Q*(u) = sum_k h*_k / (u|k).
inline FallingSeries qstar_series(int order)
{
    FallingSeries s{ShiftedBasis::Falling, {}};
    for (int k = 0; k <= order; ++k)
        s.coeffs.push_back(hstar(k));
    return s;
}

// R*(u) = sum_k (-1)^k e*_k (u|-k).
inline FallingSeries rstar_series(int order)
{
    FallingSeries s{ShiftedBasis::Rising, {}};
    for (int k = 0; k <= order; ++k)
        s.coeffs.push_back(k % 2 ? -estar(k) : estar(k));
    return s;
}

// ---- tau ----

// tau^a of one generator. Binomial closed forms for tau^a(h*) with a >= 0 and
// tau^a(e*) with a <= 0; the other directions come from shifting the
// generating series, which inverts them.
inline QElement tau_generator(int a, const GeneratorRef &g)
{
    const int k = g.index;
    auto binomial_image = [&](Family f, int p) {
        QElement r;
        for (int i = 0; i <= p && i <= k; ++i)
            r += QElement(detail::binomial(p, i) * falling_factorial(Rational(k - 1), i)) *
                 QElement::gen_or_unit(f, k - i);
        return r;
    };
    if (g.family == Family::HStar) {
        if (a >= 0)
            return binomial_image(Family::HStar, a);
        return shift_arg(qstar_series(k), -a)[k];
    }
    if (g.family == Family::EStar) {
        if (a <= 0)
            return binomial_image(Family::EStar, -a);
        QElement c = shift_arg(rstar_series(k), -a)[k];
        return k % 2 ? -c : c;
    }
    throw missing_rule("tau acts on shifted generators only, got " + g.to_string());
}

inline QElement tau_apply(int a, const QElement &x)
{
    if (a == 0)
        return x;
    return substitute(x, [&](const GeneratorRef &g) { return tau_generator(a, g); });
}

// ---- presentations ----

// e*_k in h*-generators and h*_k in e*-generators, k = 0..order, from
// Q*(u) R*(u) = 1 solved order by order at u = infinity.
struct ShiftedConversion {
    std::vector<QElement> e_in_h, h_in_e;

    QElement to_h(const QElement &a) const { return convert(a, Family::EStar, e_in_h); }
    QElement to_e(const QElement &a) const { return convert(a, Family::HStar, h_in_e); }

private:
    static QElement convert(const QElement &a, Family from, const std::vector<QElement> &img)
    {
        return substitute(a, [&](const GeneratorRef &g) {
            if (g.family != from)
                return QElement::gen(g);
            if (g.index >= static_cast<int>(img.size()))
                throw window_error("conversion table too short for " + g.to_string());
            return img[g.index];
        });
    }
};

inline ShiftedConversion invert_shifted(int order)
{
    ShiftedConversion c;
    // e-side unknowns against the full Q*, then h-side unknowns against the full R*.
    const InvUSeries Q = to_inv_u(qstar_series(order), order);
    const InvUSeries R = to_inv_u(rstar_series(order), order);

    InvUSeries partial = InvUSeries::truncated({}, order);
    c.e_in_h.push_back(QElement(1L));
    partial = partial + basis_expansion(ShiftedBasis::Rising, 0, order);
    for (int k = 1; k <= order; ++k) {
        // (-1)^k e*_k + [u^{-k}] Q * partial = 0
        QElement known = (Q * partial)[-k];
        QElement e = k % 2 ? known : -known;
        c.e_in_h.push_back(e);
        partial = partial + basis_expansion(ShiftedBasis::Rising, k, order).scaled(k % 2 ? -e : e);
    }

    partial = InvUSeries::truncated({}, order) + basis_expansion(ShiftedBasis::Falling, 0, order);
    c.h_in_e.push_back(QElement(1L));
    for (int k = 1; k <= order; ++k) {
        QElement h = -(partial * R)[-k];
        c.h_in_e.push_back(h);
        partial = partial + basis_expansion(ShiftedBasis::Falling, k, order).scaled(h);
    }
    return c;
}

// ---- shifted Schur functions ----

enum class Presentation { H, E };

// det[tau^{j-1} h*_{alpha_i - i + j}], or det[tau^{1-j} e*_{lambda'_i - i + j}]
// after straightening alpha to +-lambda.
inline QElement shifted_schur(const IntegerVector &alpha, Presentation pres = Presentation::H)
{
    if (pres == Presentation::H) {
        const int l = static_cast<int>(alpha.size());
        std::vector<std::vector<QElement>> m(l, std::vector<QElement>(l));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                m[i][j] = tau_apply(j, hstar(alpha[i] - i + j));
        return element_det(m);
    }
    StraightenResult s = straighten(alpha);
    if (s.is_zero())
        return QElement();
    const IntegerVector c = conjugate(s.partition).as_vector();
    const int l = static_cast<int>(c.size());
    std::vector<std::vector<QElement>> m(l, std::vector<QElement>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            m[i][j] = tau_apply(-j, estar(c[i] - i + j));
    return QElement(Rational(s.sign)) * element_det(m);
}

inline QElement shifted_schur(const Partition &lambda, Presentation pres = Presentation::H)
{
    return shifted_schur(lambda.as_vector(), pres);
}

// ---- multivariate generating functions ----

struct MultiShiftedTable {
    ShiftedBasis basis = ShiftedBasis::Falling;
    CoeffTable<Rational> table;
};

namespace detail {

// Coefficients in the product basis of
//   sum_sigma sgn(sigma) prod_i B(u_i, m_i) S_{k_i}(u_i - m_i) ,
// k_i = sigma(i) - 1, m_i = i - sigma(i), where S_k(w) is the single-variable
// series shifted by k and B(u, m) (u - m)-basis_p = u-basis_{m+p}.
inline CoeffTable<Rational> determinantal_expand(const std::function<FallingSeries(int)> &shifted_series,
                                                 const Window &w)
{
    w.validate();
    const int l = w.arity();
    std::vector<FallingSeries> series(l);
    for (int k = 0; k < l; ++k)
        series[k] = shifted_series(k);

    std::vector<int> sigma(l);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::map<IntegerVector, QElement> acc;
    do {
        int inv = 0;
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                inv += sigma[i] > sigma[j] ? 1 : 0;
        const QElement sign(Rational(inv % 2 ? -1 : 1));

        std::vector<int> m(l);
        for (int i = 0; i < l; ++i)
            m[i] = i - sigma[i];
        // lower bound of the remaining coordinates, for the weight budget
        std::vector<int> rest(l + 1, 0);
        for (int i = l - 1; i >= 0; --i)
            rest[i] = rest[i + 1] + std::max(w.lo[i], m[i]);

        IntegerVector lam(l);
        std::function<void(int, int, QElement)> rec = [&](int i, int weight, QElement prod) {
            if (i == l) {
                acc[lam] += sign * prod;
                return;
            }
            for (int v = std::max(w.lo[i], m[i]); v <= w.hi[i]; ++v) {
                if (weight + v + rest[i + 1] > w.max_weight)
                    break;
                const QElement &c = series[sigma[i]][v - m[i]];
                if (c.is_zero())
                    continue;
                lam[i] = v;
                rec(i + 1, weight + v, prod * c);
            }
        };
        rec(0, 0, QElement(1L));
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    CoeffTable<Rational>::Entries entries;
    for (auto &[v, e] : acc)
        if (!e.is_zero())
            entries.emplace(v, std::move(e));
    return CoeffTable<Rational>(w, std::move(entries));
}

} // namespace detail

// Coefficients of det[1/(u_i|i-j)] prod_i Q*(u_i - i + 1) in the basis
// prod_i 1/(u_i|lambda_i).
inline MultiShiftedTable qstar_multivar(const Window &w)
{
    const int order = *std::max_element(w.hi.begin(), w.hi.end()) + w.arity();
    auto series = [&](int k) { return shift_arg(qstar_series(order), -k); };
    return {ShiftedBasis::Falling, detail::determinantal_expand(series, w)};
}

// Coefficients of det[(u_i|j-i)] prod_i R*(u_i + i - 1) in the basis
// prod_i (u_i|-lambda_i).
inline MultiShiftedTable rstar_multivar(const Window &w)
{
    const int order = *std::max_element(w.hi.begin(), w.hi.end()) + w.arity();
    auto series = [&](int k) { return shift_arg(rstar_series(order), k); };
    return {ShiftedBasis::Rising, detail::determinantal_expand(series, w)};
}

inline nlohmann::json to_json(const MultiShiftedTable &t)
{
    nlohmann::json j = to_json(t.table);
    j["basis"] = basis_name(t.basis);
    return j;
}

inline MultiShiftedTable shifted_table_from_json(const nlohmann::json &j)
{
    std::string b = j.at("basis").get<std::string>();
    if (b != "falling" && b != "rising")
        throw parse_error("unknown shifted basis '" + b + "'");
    return {b == "falling" ? ShiftedBasis::Falling : ShiftedBasis::Rising, table_from_json<Rational>(j)};
}

// ---- DR*, DQ* ----

namespace detail {

// Polynomial in u (index = power) of prod over generator factors of
// (A_k + u B_k), with (A_k, B_k) supplied per generator.
inline std::vector<QElement> generator_linear_product(const QElement &a, Family fam, const char *name,
                                                      const std::function<std::pair<QElement, QElement>(int)> &ab)
{
    std::vector<QElement> out(1);
    for (const auto &[mono, c] : a.terms()) {
        std::vector<QElement> p{QElement(c)};
        for (const auto &[g, e] : mono.factors()) {
            if (g.family != fam)
                throw missing_rule(std::string(name) + " has no rule for " + g.to_string());
            auto [A, B] = ab(g.index);
            for (int r = 0; r < e; ++r) {
                std::vector<QElement> q(p.size() + 1);
                for (std::size_t n = 0; n < p.size(); ++n) {
                    if (p[n].is_zero())
                        continue;
                    q[n] += p[n] * A;
                    q[n + 1] += p[n] * B;
                }
                p = std::move(q);
            }
        }
        if (p.size() > out.size())
            out.resize(p.size());
        for (std::size_t n = 0; n < p.size(); ++n)
            out[n] += p[n];
    }
    while (out.size() > 1 && out.back().is_zero())
        out.pop_back();
    return out;
}

} // namespace detail

// DR*(u)(a) as a polynomial in u, from DR*(u)(h*_k) = h*_k + (k-2) h*_{k-1} - u h*_{k-1}
// and multiplicativity.
inline std::vector<QElement> drstar_poly(const QElement &a)
{
    return detail::generator_linear_product(a, Family::HStar, "DR*", [](int k) {
        return std::pair{hstar(k) + QElement(Rational(k - 2)) * hstar(k - 1), -hstar(k - 1)};
    });
}

// DQ*(u)(a) as a polynomial in u, from DQ*(u)(e*_k) = e*_k + (k-1) e*_{k-1} + u e*_{k-1}.
inline std::vector<QElement> dqstar_poly(const QElement &a)
{
    return detail::generator_linear_product(a, Family::EStar, "DQ*", [](int k) {
        return std::pair{estar(k) + QElement(Rational(k - 1)) * estar(k - 1), estar(k - 1)};
    });
}

// Coefficient of (u|m):  u^n = sum_m S(n, m) (u|m).
inline QElement drstar_apply(int m, const QElement &a)
{
    auto p = drstar_poly(a);
    QElement r;
    for (int n = m; n < static_cast<int>(p.size()); ++n)
        if (!p[n].is_zero())
            r += p[n] * QElement(Rational(static_cast<long>(stirling2(n, m))));
    return r;
}

// Coefficient of 1/(u|-m) = (u+1)...(u+m):
//   u^n = sum_m (-1)^{n-m} S(n+1, m+1) (u+1)...(u+m).
inline QElement dqstar_apply(int m, const QElement &a)
{
    auto p = dqstar_poly(a);
    QElement r;
    for (int n = m; n < static_cast<int>(p.size()); ++n)
        if (!p[n].is_zero())
            r += p[n] * QElement(Rational(static_cast<long>(stirling2(n + 1, m + 1)) * ((n - m) % 2 ? -1 : 1)));
    return r;
}

inline InvUSeries polynomial_in_u(const std::vector<QElement> &p)
{
    std::map<int, QElement> t;
    for (std::size_t n = 0; n < p.size(); ++n)
        if (!p[n].is_zero())
            t.emplace(static_cast<int>(n), p[n]);
    return InvUSeries::exact(std::move(t));
}

// Q*(v) DR*(v)(a) and R*(v) DQ*(v)(a) at v = infinity, exact through v^{-depth}.
inline InvUSeries psi_star_plus_series(const QElement &a, int depth)
{
    auto p = drstar_poly(a);
    const int deg = static_cast<int>(p.size()) - 1;
    return (to_inv_u(qstar_series(depth + deg), depth + deg) * polynomial_in_u(p)).truncate(depth);
}

inline InvUSeries psi_star_minus_series(const QElement &a, int depth)
{
    auto p = dqstar_poly(a);
    const int deg = static_cast<int>(p.size()) - 1;
    return (to_inv_u(rstar_series(depth + deg), depth + deg) * polynomial_in_u(p)).truncate(depth);
}

// ---- Psi* on the shifted Schur basis ----

inline QElement to_shifted_element(const SchurVector &v)
{
    QElement r;
    for (const auto &[lam, c] : v)
        r += QElement(c) * shifted_schur(lam);
    return r;
}

// Psi+_k(s*_lambda) = s*_(k, lambda).
inline QElement psi_star_plus(int k, const Partition &lambda)
{
    return to_shifted_element(psi_plus_basis(k, schur_basis(lambda)));
}

// Psi-_k(s*_lambda) = (-1)^k s*_{(-k, lambda')'}.
inline QElement psi_star_minus(int k, const Partition &lambda)
{
    return to_shifted_element(psi_minus_basis(k, schur_basis(lambda)));
}

// ---- evaluation ----

// h*_r and e*_r at (x_1, ..., x_n, 0, 0, ...), r = 0..K. Terms with an index
// past n vanish through their last factor x_{i_r} = 0.
inline std::pair<std::vector<Rational>, std::vector<Rational>> shifted_generator_values(const std::vector<Rational> &x,
                                                                                       int K)
{
    const int n = static_cast<int>(x.size());
    std::vector<Rational> h(K + 1), e(K + 1);
    h[0] = e[0] = Rational(1);
    for (int r = 1; r <= K; ++r) {
        // dp[i]: sum over sequences so far whose last index is i
        std::vector<Rational> dh(n), de(n);
        for (int i = 0; i < n; ++i) {
            dh[i] = x[i] - Rational(r - 1);
            de[i] = x[i] + Rational(r - 1);
        }
        for (int s = 2; s <= r; ++s) {
            std::vector<Rational> nh(n), ne(n);
            Rational ph, pe;
            for (int i = 0; i < n; ++i) {
                ph += dh[i];
                nh[i] = ph * (x[i] - Rational(r - s));
                ne[i] = pe * (x[i] + Rational(r - s));
                pe += de[i];
            }
            dh = std::move(nh);
            de = std::move(ne);
        }
        for (int i = 0; i < n; ++i) {
            h[r] += dh[i];
            e[r] += de[i];
        }
    }
    return {h, e};
}

inline Rational eval_shifted(const QElement &a, const std::vector<Rational> &x)
{
    int K = 0;
    for (const auto &[m, c] : a.terms())
        for (const auto &[g, e] : m.factors())
            K = std::max(K, g.index);
    auto [h, e] = shifted_generator_values(x, K);
    return eval_element(a, Valuation{{{Family::HStar, h}, {Family::EStar, e}}});
}

// det(x_i + n - i | lambda_j + n - j) / det(x_i + n - i | n - j).
inline Rational shifted_schur_ratio(const Partition &lambda, const std::vector<Rational> &x)
{
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(lambda.length()) > n)
        return Rational(0);
    std::vector<std::vector<Rational>> num(n, std::vector<Rational>(n)), den = num;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational y = x[i] + Rational(n - 1 - i);
            num[i][j] = falling_factorial(y, lambda[j] + n - 1 - j);
            den[i][j] = falling_factorial(y, n - 1 - j);
        }
    Rational d = det_gauss(den);
    if (d.is_zero())
        throw coincident_points("shifted points x_i + n - i must be pairwise distinct");
    return det_gauss(num) / d;
}

// ---- Vandermonde identities behind the multivariate forms ----

using PointFunction = std::function<Rational(const std::vector<Rational> &)>;

// (1/u_i e^{-d_i})^k g, one factor at a time:  g -> g(u_i - 1) / u_i.
inline PointFunction lower_op(PointFunction g, int i, int k)
{
    for (int s = 0; s < k; ++s)
        g = [g, i](const std::vector<Rational> &u) {
            if (u[i].is_zero())
                throw pole_error("1/u at u = 0");
            auto v = u;
            v[i] -= Rational(1);
            return g(v) / u[i];
        };
    return g;
}

// (e^{d_i} 1/u_i)^k g:  g -> g(u_i + 1) / (u_i + 1).
inline PointFunction raise_op(PointFunction g, int i, int k)
{
    for (int s = 0; s < k; ++s)
        g = [g, i](const std::vector<Rational> &u) {
            auto v = u;
            v[i] += Rational(1);
            if (v[i].is_zero())
                throw pole_error("1/u at u = 0");
            return g(v) / v[i];
        };
    return g;
}

inline Rational vandermonde(const std::vector<Rational> &u)
{
    Rational r(1);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            r *= u[j] - u[i];
    return r;
}

// Every falling factorial in either identity is finite and nonzero iff no
// u_i is an integer in [-(l-1), l-2].
inline void require_pole_free(const std::vector<Rational> &u)
{
    const int l = static_cast<int>(u.size());
    for (const auto &x : u)
        if (x.is_integer() && x >= Rational(-(l - 1)) && x <= Rational(l - 2))
            throw pole_error("sample point " + x.to_string() + " hits a falling-factorial pole");
}

struct Lem2Values {
    Rational lower_lhs, lower_rhs, raise_lhs, raise_rhs;
};

inline Lem2Values lem2_values(const std::vector<Rational> &u)
{
    require_pole_free(u);
    const int l = static_cast<int>(u.size());
    PointFunction lo = vandermonde, hi = vandermonde;
    for (int i = 0; i < l; ++i) {
        lo = lower_op(lo, i, i);
        hi = raise_op(hi, i, i);
    }
    std::vector<std::vector<Rational>> a(l, std::vector<Rational>(l)), b = a;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            a[i][j] = Rational(1) / falling_factorial(u[i], i - j);
            b[i][j] = falling_factorial(u[i], j - i);
        }
    return {lo(u), det_gauss(a), hi(u), det_gauss(b)};
}

// Points n + r with n >= floor and r a random proper fraction of denominator <= 7.
template <typename Rng> std::vector<Rational> pole_free_point(Rng &g, int l, int floor)
{
    std::vector<Rational> u;
    for (int i = 0; i < l; ++i) {
        long den = static_cast<long>(g() % 6) + 2;
        long num = static_cast<long>(g() % static_cast<unsigned long>(den - 1)) + 1;
        long whole = floor + static_cast<long>(g() % 5);
        u.push_back(Rational(whole) + Rational(num) / Rational(den));
    }
    return u;
}

inline Report lem2_check(int l, const std::vector<std::vector<Rational>> &samples)
{
    Report rep;
    rep.suite = "lem2";
    rep.parameters = {{"l", l}, {"samples", samples.size()}};
    for (const auto &u : samples) {
        if (static_cast<int>(u.size()) != l)
            throw shape_error("sample arity differs from l");
        auto v = lem2_values(u);
        std::vector<std::string> pt;
        for (const auto &x : u)
            pt.push_back(x.to_string());
        rep.record(v.lower_lhs == v.lower_rhs, {{"identity", "lower"},
                                                {"u", pt},
                                                {"lhs", v.lower_lhs.to_string()},
                                                {"rhs", v.lower_rhs.to_string()}});
        rep.record(v.raise_lhs == v.raise_rhs, {{"identity", "raise"},
                                                {"u", pt},
                                                {"lhs", v.raise_lhs.to_string()},
                                                {"rhs", v.raise_rhs.to_string()}});
    }
    return rep;
}

// ---- checkers ----

// Table identity behind the normally ordered forms: for every inner index mu
// of the l-variable table,
//   Q*(v) DR*(v)(Q*_mu) = sum_k Q*_(k, mu) / (v|k)
//   R*(v) DQ*(v)(R*_mu) = sum_k R*_(k, mu) (v|-k)
// compared at v = infinity down to the order the (l+1)-table determines.
inline Report check_shifted_decomposition(int l, int K)
{
    Report rep;
    rep.suite = "shifted-decomposition";
    rep.parameters = {{"l", l}, {"K", K}};
    const Window outer = Window::standard(l + 1, K);
    for (ShiftedBasis b : {ShiftedBasis::Falling, ShiftedBasis::Rising}) {
        const bool plus = b == ShiftedBasis::Falling;
        auto build = [&](const Window &w) { return plus ? qstar_multivar(w) : rstar_multivar(w); };
        const CoeffTable<Rational> big = build(outer).table;
        std::map<IntegerVector, QElement> inner;
        if (l == 0)
            inner.emplace(IntegerVector{}, QElement(1L));
        else
            inner = build(Window::standard(l, K)).table.entries();

        std::vector<std::pair<IntegerVector, QElement>> items(inner.begin(), inner.end());
        std::vector<Report> per(items.size());
        parallel_for(items.size(), [&](std::size_t idx) {
            const auto &[mu, a] = items[idx];
            int wmu = std::accumulate(mu.begin(), mu.end(), 0);
            const int depth = K - wmu;
            if (depth < 0)
                return;
            InvUSeries lhs = InvUSeries::truncated({}, depth);
            for (int k = -K; k <= depth; ++k) {
                IntegerVector v{k};
                v.insert(v.end(), mu.begin(), mu.end());
                QElement c = big.extract(v);
                if (!c.is_zero())
                    lhs = lhs + basis_expansion(b, k, depth).scaled(c);
            }
            InvUSeries rhs = plus ? psi_star_plus_series(a, depth) : psi_star_minus_series(a, depth);
            per[idx].record(lhs.agrees_with(rhs, depth), {{"side", plus ? "plus" : "minus"},
                                                          {"mu", mu},
                                                          {"table", lhs.to_string()},
                                                          {"decomposition", rhs.to_string()}});
        });
        for (const auto &r : per)
            rep.merge(r);
    }
    return rep;
}

// Relations of Psi*_k on s*_lambda, |lambda| <= K, k, l in [-W, W] (same
// coefficient form as the classical ones), the determinant form of the
// straightening rule that they rest on, and the decomposition for l <= 2.
inline Report check_shifted(int K, int W, int max_table_arity = 2)
{
    Report rep;
    rep.suite = "shifted-relations";
    rep.parameters = {{"K", K}, {"W", W}, {"max_table_arity", max_table_arity}};
    auto parts = partitions_up_to(K);
    std::vector<Report> per(parts.size());
    parallel_for(parts.size(), [&](std::size_t idx) {
        const Partition &lam = parts[idx];
        const SchurVector s = schur_basis(lam);
        Report &r = per[idx];
        auto fail = [&](const char *rel, int k, int l, const std::string &lhs, const std::string &rhs) {
            return nlohmann::json{{"relation", rel}, {"k", k}, {"l", l}, {"lambda", lam.parts()},
                                  {"lhs", lhs},      {"rhs", rhs}};
        };
        for (int k = -W - 1; k <= W + 1; ++k) {
            IntegerVector a{k};
            a.insert(a.end(), lam.parts().begin(), lam.parts().end());
            QElement det = shifted_schur(a);
            QElement basis = psi_star_plus(k, lam);
            r.record(det == basis, fail("straighten", k, 0, det.to_string(), basis.to_string()));
        }
        for (int k = -W; k <= W; ++k)
            for (int l = -W; l <= W; ++l) {
                SchurVector pp =
                    psi_plus_basis(k, psi_plus_basis(l, s)) + psi_plus_basis(l - 1, psi_plus_basis(k + 1, s));
                r.record(pp.empty(), fail("plus-plus", k, l, to_string(pp), "0"));
                SchurVector mm =
                    psi_minus_basis(k, psi_minus_basis(l, s)) + psi_minus_basis(l + 1, psi_minus_basis(k - 1, s));
                r.record(mm.empty(), fail("minus-minus", k, l, to_string(mm), "0"));
                SchurVector mp =
                    psi_minus_basis(k, psi_plus_basis(l, s)) + psi_plus_basis(l + 1, psi_minus_basis(k + 1, s));
                SchurVector rhs = k == l ? s : SchurVector{};
                r.record(mp == rhs, fail("mixed", k, l, to_string(mp), to_string(rhs)));
            }
    });
    for (const auto &r : per)
        rep.merge(r);
    for (int l = 0; l <= max_table_arity; ++l)
        rep.merge(check_shifted_decomposition(l, K));
    return rep;
}

} // namespace symgen
