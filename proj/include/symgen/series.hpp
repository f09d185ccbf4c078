#pragma once

// Truncated one-variable series with ring coefficients, correlation factors,
// and multivariate coefficient tables of products
//   prod_{i<j} f(u_j/u_i) prod_i G(u_i).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symgen/combinatorics.hpp"
#include "symgen/errors.hpp"
#include "symgen/ring.hpp"
#include "symgen/scalar.hpp"

namespace symgen {

// sum_{k=0}^{N} c_k u^k with Element coefficients.
template <Scalar S> class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : c_(order + 1) {}
    TruncatedSeries(int order, std::vector<Element<S>> coeffs) : c_(std::move(coeffs))
    {
        c_.resize(order + 1);
    }
    static TruncatedSeries one(int order)
    {
        TruncatedSeries s(order);
        s.c_[0] = Element<S>(1L);
        return s;
    }
    // sum_k gen(k) u^k with gen(0) = 1.
    static TruncatedSeries generators(Family f, int order)
    {
        TruncatedSeries s(order);
        for (int k = 0; k <= order; ++k)
            s.c_[k] = Element<S>::gen_or_unit(f, k);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Element<S> &operator[](int k) const
    {
        static const Element<S> zero;
        return k < 0 || k > order() ? zero : c_[k];
    }
    Element<S> &at(int k) { return c_.at(k); }
    const std::vector<Element<S>> &coeffs() const { return c_; }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        int n = std::min(a.order(), b.order());
        TruncatedSeries r(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                if (!a.c_[i].is_zero() && !b.c_[j].is_zero())
                    r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }
    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        int n = std::min(a.order(), b.order());
        TruncatedSeries r(n);
        for (int i = 0; i <= n; ++i)
            r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    std::vector<Element<S>> c_;
};

// r with q * r = 1 through the order of q.
template <Scalar S> TruncatedSeries<S> invert(const TruncatedSeries<S> &q)
{
    if (q[0] != Element<S>(1L))
        throw non_unit("series inversion requires constant term 1");
    const int n = q.order();
    TruncatedSeries<S> r(n);
    r.at(0) = Element<S>(1L);
    for (int k = 1; k <= n; ++k) {
        Element<S> acc;
        for (int i = 1; i <= k; ++i)
            if (!q[i].is_zero() && !r[k - i].is_zero())
                acc -= q[i] * r[k - i];
        r.at(k) = std::move(acc);
    }
    return r;
}

// Scalar power series num(x)/den(x), den(0) a unit; expanded on demand.
template <Scalar S> class CorrelationFactor {
public:
    CorrelationFactor(std::vector<S> num, std::vector<S> den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.empty() || den_[0].is_zero())
            throw non_unit("correlation factor denominator must have a nonzero constant term");
    }

    // Coefficient of x^k, k >= 0.
    const S &operator[](int k) const
    {
        while (static_cast<int>(cache_.size()) <= k) {
            int n = static_cast<int>(cache_.size());
            S c = n < static_cast<int>(num_.size()) ? num_[n] : S();
            for (int i = 1; i <= n && i < static_cast<int>(den_.size()); ++i)
                c -= den_[i] * cache_[n - i];
            cache_.push_back(c / den_[0]);
        }
        return cache_[k];
    }
    std::vector<S> expand(int order) const
    {
        std::vector<S> out;
        for (int k = 0; k <= order; ++k)
            out.push_back((*this)[k]);
        return out;
    }
    CorrelationFactor inverse() const { return CorrelationFactor(den_, num_); }
    const std::vector<S> &numerator() const { return num_; }
    const std::vector<S> &denominator() const { return den_; }

private:
    std::vector<S> num_, den_;
    mutable std::vector<S> cache_;
};

// Per-coordinate exponent bounds plus a bound on the total weight |lambda|.
struct Window {
    IntegerVector lo, hi;
    int max_weight = 0;

    static Window box(int arity, int lo, int hi, int max_weight)
    {
        return {IntegerVector(arity, lo), IntegerVector(arity, hi), max_weight};
    }
    // [-N, N]^l with |lambda| <= N.
    static Window standard(int arity, int N) { return box(arity, -N, N, N); }

    int arity() const { return static_cast<int>(lo.size()); }
    bool contains(const IntegerVector &v) const
    {
        if (static_cast<int>(v.size()) != arity())
            return false;
        int w = 0;
        for (int i = 0; i < arity(); ++i) {
            if (v[i] < lo[i] || v[i] > hi[i])
                return false;
            w += v[i];
        }
        return w <= max_weight;
    }
    void validate() const
    {
        if (arity() < 1 || hi.size() != lo.size())
            throw window_error("window arity mismatch");
        if (max_weight < 0)
            throw window_error("negative truncation order");
        for (int i = 0; i < arity(); ++i) {
            if (lo[i] > hi[i])
                throw window_error("empty window coordinate");
        }
    }
};

template <Scalar S> class CoeffTable {
public:
    using Entries = std::map<IntegerVector, Element<S>>;

    CoeffTable() = default;
    CoeffTable(Window w, Entries e) : w_(std::move(w)), e_(std::move(e)) {}

    int arity() const { return w_.arity(); }
    const Window &window() const { return w_; }
    const Entries &entries() const { return e_; }

    Element<S> extract(const IntegerVector &lambda) const
    {
        if (!w_.contains(lambda))
            throw window_error("index " + format_vector(lambda) + " outside the table window");
        auto it = e_.find(lambda);
        return it == e_.end() ? Element<S>() : it->second;
    }

    // Same window, entries equal (absent means zero).
    friend bool operator==(const CoeffTable &a, const CoeffTable &b)
    {
        return a.w_.lo == b.w_.lo && a.w_.hi == b.w_.hi && a.w_.max_weight == b.w_.max_weight && a.e_ == b.e_;
    }

private:
    Window w_;
    Entries e_;
};

namespace detail {

// One prepend step: multiply sum_mu c_mu u^mu (variables c+1..l) by
// G(v) prod_j f(u_j/v), keeping only vectors that can still reach the window.
// `earlier_lo` is the sum of lower bounds of the variables not yet added.
template <Scalar S>
std::map<IntegerVector, Element<S>> prepend_variable(const std::map<IntegerVector, Element<S>> &inner,
                                                     const CorrelationFactor<S> &f, const TruncatedSeries<S> &G,
                                                     const Window &w, int first, int earlier_lo)
{
    const int n_inner = w.arity() - first - 1;
    const int N = w.max_weight;

    // Weight of the final vector restricted to coordinates >= c is at most
    // N - (sum of lower bounds before c); increases needed to lift each
    // coordinate into the window must fit in the remaining budget.
    auto feasible = [&](const IntegerVector &v, int c0, int lo_before) {
        int wsum = 0, need = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            int c = c0 + static_cast<int>(i);
            if (v[i] > w.hi[c])
                return false;
            wsum += v[i];
            need += std::max(0, w.lo[c] - v[i]);
        }
        if (wsum < 0 || wsum > N)
            return false;
        return need <= N - lo_before - wsum;
    };

    // grouped[(nu, s)] = sum over r with |r| = s of prod f_{r_j} * inner[nu - r]
    std::map<std::pair<IntegerVector, int>, Element<S>> grouped;
    for (const auto &[mu, c] : inner) {
        std::vector<int> cap(n_inner);
        for (int j = 0; j < n_inner; ++j)
            cap[j] = w.hi[first + 1 + j] - mu[j];
        IntegerVector r(n_inner, 0);
        while (true) {
            S coef(Rational(1));
            int s = 0;
            for (int j = 0; j < n_inner && !coef.is_zero(); ++j) {
                coef = coef * f[r[j]];
                s += r[j];
            }
            if (!coef.is_zero()) {
                IntegerVector nu = mu;
                for (int j = 0; j < n_inner; ++j)
                    nu[j] += r[j];
                auto &slot = grouped[{std::move(nu), s}];
                slot += c * coef;
            }
            int j = n_inner - 1;
            while (j >= 0 && r[j] == cap[j]) {
                r[j] = 0;
                --j;
            }
            if (j < 0)
                break;
            ++r[j];
        }
    }

    std::map<IntegerVector, Element<S>> out;
    for (const auto &[key, g] : grouped) {
        if (g.is_zero())
            continue;
        const auto &[nu, s] = key;
        int wnu = 0;
        for (int x : nu)
            wnu += x;
        // new exponent a = k - s; total weight wnu - s + k <= N
        for (int k = 0; wnu - s + k <= N && k <= G.order(); ++k) {
            const Element<S> &q = G[k];
            if (q.is_zero())
                continue;
            IntegerVector v;
            v.reserve(nu.size() + 1);
            v.push_back(k - s);
            v.insert(v.end(), nu.begin(), nu.end());
            if (!feasible(v, first, earlier_lo))
                continue;
            Element<S> prod = q * g;
            if (prod.is_zero())
                continue;
            auto [it, ins] = out.try_emplace(std::move(v), std::move(prod));
            if (!ins) {
                it->second += prod;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

} // namespace detail

// Coefficients of prod_{i<j} f(u_j/u_i) prod_i G(u_i) inside the window,
// built right to left one variable at a time.
template <Scalar S>
CoeffTable<S> correlation_expand(const CorrelationFactor<S> &f, const TruncatedSeries<S> &G, const Window &w)
{
    w.validate();
    if (G.order() < w.max_weight)
        throw window_error("generator series is truncated below the table order");
    const int l = w.arity();
    std::map<IntegerVector, Element<S>> cur;
    cur.emplace(IntegerVector{}, Element<S>(1L));
    for (int c = l - 1; c >= 0; --c) {
        int lo_before = 0;
        for (int i = 0; i < c; ++i)
            lo_before += w.lo[i];
        cur = detail::prepend_variable(cur, f, G, w, c, lo_before);
    }
    std::map<IntegerVector, Element<S>> entries;
    for (auto &[v, e] : cur)
        if (w.contains(v))
            entries.emplace(v, std::move(e));
    return CoeffTable<S>(w, std::move(entries));
}

// ---- JSON ----

inline nlohmann::json window_to_json(const Window &w)
{
    return {{"lo", w.lo}, {"hi", w.hi}, {"max_weight", w.max_weight}};
}

template <Scalar S> nlohmann::json to_json(const CoeffTable<S> &t)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[v, e] : t.entries())
        entries.push_back({{"lambda", v}, {"element", e.to_string()}});
    return {{"arity", t.arity()}, {"window", window_to_json(t.window())}, {"entries", entries}};
}

template <Scalar S> CoeffTable<S> table_from_json(const nlohmann::json &j, ParseOptions opt = {})
{
    Window w{j.at("window").at("lo").get<IntegerVector>(), j.at("window").at("hi").get<IntegerVector>(),
             j.at("window").at("max_weight").get<int>()};
    typename CoeffTable<S>::Entries entries;
    for (const auto &e : j.at("entries"))
        entries.emplace(e.at("lambda").get<IntegerVector>(),
                        parse_element<S>(e.at("element").get<std::string>(), opt));
    return CoeffTable<S>(std::move(w), std::move(entries));
}

} // namespace symgen
