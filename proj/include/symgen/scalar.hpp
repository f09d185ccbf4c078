#pragma once

// Exact scalar rings: rationals (GMP-backed) and dense polynomials in t
// with rational coefficients.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "symgen/errors.hpp"

namespace symgen {

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d)
    {
        if (d == 0)
            throw division_by_zero("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "7", "-3", "3/2", "-12/8" (canonicalized).
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        if (s.empty())
            throw parse_error("empty rational literal");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw parse_error("bad rational literal '" + s + "'");
        if (q.get_den() == 0)
            throw division_by_zero("rational with zero denominator");
        q.canonicalize();
        return Rational(std::move(q));
    }

    const mpq_class &raw() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    long to_long() const { return v_.get_num().get_si(); }

    std::string to_string() const { return v_.get_str(); }

    Rational &operator+=(const Rational &o)
    {
        v_ += o.v_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        v_ -= o.v_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        v_ *= o.v_;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero())
            throw division_by_zero("rational division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

private:
    mpq_class v_;
};

inline Rational pow(const Rational &base, unsigned e)
{
    Rational r(1);
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

// Dense polynomial in t over Q. Trailing zero coefficients are trimmed, so the
// zero polynomial is the empty vector.
class TPoly {
public:
    TPoly() = default;
    TPoly(long n) : TPoly(Rational(n)) {}
    TPoly(Rational c)
    {
        if (!c.is_zero())
            c_.push_back(std::move(c));
    }
    explicit TPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static TPoly t() { return TPoly(std::vector<Rational>{Rational(0), Rational(1)}); }
    static TPoly monomial(const Rational &c, std::size_t deg)
    {
        std::vector<Rational> v(deg + 1);
        v[deg] = c;
        return TPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational> &coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational constant_term() const { return coeff(0); }

    Rational evaluate(const Rational &t) const
    {
        Rational acc;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * t + c_[i];
        return acc;
    }

    TPoly &operator+=(const TPoly &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    TPoly &operator-=(const TPoly &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend TPoly operator*(const TPoly &a, const TPoly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return TPoly(std::move(r));
    }
    TPoly &operator*=(const TPoly &o) { return *this = *this * o; }
    friend TPoly operator+(TPoly a, const TPoly &b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly &b) { return a -= b; }
    TPoly operator-() const
    {
        TPoly r = *this;
        for (auto &c : r.c_)
            c = -c;
        return r;
    }
    // Division by a nonzero rational constant only; Q[t] is not a field.
    TPoly &operator/=(const TPoly &o)
    {
        if (!o.is_constant() || o.is_zero())
            throw division_by_zero("TPoly division requires a nonzero constant divisor");
        for (auto &c : c_)
            c /= o.c_[0];
        return *this;
    }
    friend TPoly operator/(TPoly a, const TPoly &b) { return a /= b; }

    friend bool operator==(const TPoly &, const TPoly &) = default;

    // "1-t", "t^2-t", "3/2*t", "-2"
    std::string to_string() const
    {
        if (c_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rational &c = c_[i];
            if (c.is_zero())
                continue;
            Rational mag = c.abs();
            if (first)
                out += c.sign() < 0 ? "-" : "";
            else
                out += c.sign() < 0 ? "-" : "+";
            first = false;
            if (i == 0) {
                out += mag.to_string();
                continue;
            }
            if (!mag.is_one())
                out += mag.to_string() + "*";
            out += "t";
            if (i > 1)
                out += "^" + std::to_string(i);
        }
        return out;
    }
    friend std::ostream &operator<<(std::ostream &os, const TPoly &p) { return os << p.to_string(); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Hooks the generic code needs from a scalar ring.
template <typename S> struct scalar_traits;

template <> struct scalar_traits<Rational> {
    static constexpr bool has_t = false;
    static Rational from_rational(const Rational &r) { return r; }
    static Rational at(const Rational &s, const std::optional<Rational> &) { return s; }
    static bool is_single_term(const Rational &) { return true; }
    static int lead_sign(const Rational &s) { return s.sign(); }
};

template <> struct scalar_traits<TPoly> {
    static constexpr bool has_t = true;
    static TPoly from_rational(const Rational &r) { return TPoly(r); }
    static TPoly variable() { return TPoly::t(); }
    static Rational at(const TPoly &s, const std::optional<Rational> &t)
    {
        if (s.is_constant())
            return s.constant_term();
        if (!t)
            throw missing_value("evaluation of a t-dependent scalar requires a value for t");
        return s.evaluate(*t);
    }
    static bool is_single_term(const TPoly &s)
    {
        int n = 0;
        for (const auto &c : s.coeffs())
            n += c.is_zero() ? 0 : 1;
        return n <= 1;
    }
    static int lead_sign(const TPoly &s)
    {
        for (const auto &c : s.coeffs())
            if (!c.is_zero())
                return c.sign();
        return 0;
    }
};

template <typename S>
concept Scalar = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
    scalar_traits<S>::has_t;
};

// Substitute a numeric t into a Q[t] scalar; identity on rationals.
inline Rational specialize(const TPoly &p, const Rational &t) { return p.evaluate(t); }
inline Rational specialize(const Rational &r, const Rational &) { return r; }

} // namespace symgen
