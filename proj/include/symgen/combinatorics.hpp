#pragma once

// Index combinatorics: partitions, integer vectors, straightening of integer
// vector indices, falling factorials and Stirling numbers.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symgen/errors.hpp"
#include "symgen/scalar.hpp"

namespace symgen {

using IntegerVector = std::vector<int>;

// Weakly decreasing sequence of positive integers. Zeros are stripped on
// construction so every partition is stored in canonical form.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        while (!parts_.empty() && parts_.back() == 0)
            parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0)
                throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    const std::vector<int> &parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int weight() const
    {
        int w = 0;
        for (int p : parts_)
            w += p;
        return w;
    }
    // λ_i with 1-based i; zero past the end.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    bool is_strict() const
    {
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] == parts_[i - 1])
                return false;
        return true;
    }
    // multiplicity of part value v (v >= 1)
    int multiplicity(int v) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), v)); }

    IntegerVector as_vector() const { return parts_; }
    IntegerVector padded(std::size_t len) const
    {
        IntegerVector v = parts_;
        v.resize(std::max(len, v.size()), 0);
        return v;
    }

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &a, const Partition &b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
};

inline Partition conjugate(const Partition &lambda)
{
    std::vector<int> c;
    int first = lambda.empty() ? 0 : lambda.parts()[0];
    for (int i = 1; i <= first; ++i) {
        int n = 0;
        for (int p : lambda.parts())
            n += p >= i ? 1 : 0;
        c.push_back(n);
    }
    return Partition(std::move(c));
}

// Either zero, or sign * s_partition.
struct StraightenResult {
    int sign = 0; // 0 encodes Zero
    Partition partition;

    static StraightenResult zero() { return {}; }
    bool is_zero() const { return sign == 0; }
    friend bool operator==(const StraightenResult &, const StraightenResult &) = default;
};

// Normalizes s_alpha to ±s_lambda or zero. Rows of det[h_{alpha_i-i+j}] are
// indexed by beta_i = alpha_i - i; sorting beta decreasingly is a sequence of
// row swaps, equal betas give equal rows, and a negative last part gives a
// zero row.
inline StraightenResult straighten(const IntegerVector &alpha)
{
    const int l = static_cast<int>(alpha.size());
    std::vector<int> beta(l);
    for (int i = 0; i < l; ++i)
        beta[i] = alpha[i] - (i + 1);

    int sign = 1;
    // insertion sort, counting transpositions
    for (int i = 1; i < l; ++i) {
        for (int j = i; j > 0 && beta[j] > beta[j - 1]; --j) {
            std::swap(beta[j], beta[j - 1]);
            sign = -sign;
        }
    }
    for (int i = 1; i < l; ++i)
        if (beta[i] == beta[i - 1])
            return StraightenResult::zero();

    std::vector<int> lam(l);
    for (int i = 0; i < l; ++i)
        lam[i] = beta[i] + (i + 1);
    if (l > 0 && lam[l - 1] < 0)
        return StraightenResult::zero();
    return {sign, Partition(std::move(lam))};
}

// (u|k): u(u-1)...(u-k+1) for k > 0, 1 for k = 0, 1/((u+1)...(u-k)) for k < 0.
inline Rational falling_factorial(const Rational &u, int k)
{
    Rational r(1);
    if (k >= 0) {
        for (int i = 0; i < k; ++i)
            r *= u - Rational(i);
        return r;
    }
    for (int j = 1; j <= -k; ++j) {
        Rational f = u + Rational(j);
        if (f.is_zero())
            throw division_by_zero("falling factorial (u|" + std::to_string(k) + ") has a vanishing factor at u = " +
                                   u.to_string());
        r *= f;
    }
    return Rational(1) / r;
}

inline std::uint64_t stirling2(int m, int k)
{
    if (m < 0 || k < 0)
        throw std::invalid_argument("stirling2 requires nonnegative arguments");
    if (m > 25)
        throw std::overflow_error("stirling2 supports m <= 25");
    if (k > m)
        return 0;
    std::vector<std::vector<std::uint64_t>> s(m + 1, std::vector<std::uint64_t>(m + 1, 0));
    s[0][0] = 1;
    for (int n = 1; n <= m; ++n)
        for (int j = 1; j <= n; ++j)
            s[n][j] = static_cast<std::uint64_t>(j) * s[n - 1][j] + s[n - 1][j - 1];
    return s[m][k];
}

namespace detail {

inline Rational binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    Rational r(1);
    for (int i = 1; i <= k; ++i)
        r = r * Rational(n - k + i) / Rational(i);
    return r;
}

} // namespace detail

// ---- bounded enumeration for sweeps ----

// All partitions of n with parts <= max_part, in reverse-lexicographic order.
inline std::vector<Partition> partitions_of(int n, int max_part = -1, int max_length = -1)
{
    std::vector<Partition> out;
    if (max_part < 0)
        max_part = n;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int cap) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        if (max_length >= 0 && static_cast<int>(cur.size()) >= max_length)
            return;
        for (int p = std::min(rest, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, max_part);
    return out;
}

inline std::vector<Partition> partitions_up_to(int max_weight, int max_length = -1)
{
    std::vector<Partition> out;
    for (int n = 0; n <= max_weight; ++n)
        for (auto &p : partitions_of(n, -1, max_length))
            out.push_back(std::move(p));
    return out;
}

inline std::vector<Partition> strict_partitions_up_to(int max_weight)
{
    std::vector<Partition> out;
    for (auto &p : partitions_up_to(max_weight))
        if (p.is_strict())
            out.push_back(std::move(p));
    return out;
}

// Every vector of the given length with entries in [lo, hi].
inline std::vector<IntegerVector> integer_vectors_in_box(int length, int lo, int hi)
{
    std::vector<IntegerVector> out;
    IntegerVector v(length, lo);
    if (length == 0) {
        out.push_back(v);
        return out;
    }
    while (true) {
        out.push_back(v);
        int i = length - 1;
        while (i >= 0 && v[i] == hi) {
            v[i] = lo;
            --i;
        }
        if (i < 0)
            break;
        ++v[i];
    }
    return out;
}

// ---- text forms ----

inline std::string format_vector(const IntegerVector &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string format_partition(const Partition &p) { return format_vector(p.parts()); }

inline IntegerVector parse_vector(std::string_view text)
{
    IntegerVector out;
    std::string s(text);
    if (s.empty())
        return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size())
                throw parse_error("bad integer '" + item + "'");
            out.push_back(v);
        } catch (const std::logic_error &) {
            throw parse_error("bad integer '" + item + "' in vector '" + s + "'");
        }
    }
    return out;
}

inline Partition parse_partition(std::string_view text)
{
    try {
        return Partition(parse_vector(text));
    } catch (const parse_error &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw parse_error(std::string("not a partition: ") + e.what());
    }
}

} // namespace symgen
