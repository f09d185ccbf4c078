#pragma once

// Polynomial algebra in family-tagged commuting generators over an exact
// scalar ring, with a canonical text form and the Hasse–Schmidt derivation
// framework.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symgen/errors.hpp"
#include "symgen/scalar.hpp"

namespace symgen {

enum class Family : unsigned char { QGeneric, H, E, P, QSchur, HStar, EStar };

inline std::string_view family_symbol(Family f)
{
    switch (f) {
    case Family::QGeneric:
    case Family::QSchur:
        return "Q";
    case Family::H:
        return "h";
    case Family::E:
        return "e";
    case Family::P:
        return "p";
    case Family::HStar:
        return "hs";
    case Family::EStar:
        return "es";
    }
    return "?";
}

// Index >= 1. Q_0 = 1 and negative indices never become generators.
struct GeneratorRef {
    Family family;
    int index;

    GeneratorRef(Family f, int k) : family(f), index(k)
    {
        if (k < 1)
            throw std::invalid_argument("generator index must be >= 1");
    }
    friend bool operator==(const GeneratorRef &, const GeneratorRef &) = default;
    friend auto operator<=>(const GeneratorRef &, const GeneratorRef &) = default;
    std::string to_string() const { return std::string(family_symbol(family)) + "[" + std::to_string(index) + "]"; }
};

// Sorted by generator, exponents > 0.
class Monomial {
public:
    using Factor = std::pair<GeneratorRef, int>;

    Monomial() = default;
    explicit Monomial(GeneratorRef g, int e = 1)
    {
        if (e > 0)
            f_.emplace_back(g, e);
    }

    const std::vector<Factor> &factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const
    {
        int d = 0;
        for (const auto &[g, e] : f_)
            d += g.index * e;
        return d;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial r;
        r.f_.reserve(a.f_.size() + b.f_.size());
        auto i = a.f_.begin(), j = b.f_.begin();
        while (i != a.f_.end() && j != b.f_.end()) {
            if (i->first == j->first) {
                r.f_.emplace_back(i->first, i->second + j->second);
                ++i, ++j;
            } else if (i->first < j->first) {
                r.f_.push_back(*i++);
            } else {
                r.f_.push_back(*j++);
            }
        }
        r.f_.insert(r.f_.end(), i, a.f_.end());
        r.f_.insert(r.f_.end(), j, b.f_.end());
        return r;
    }

    // Generator indices repeated by exponent, largest first.
    std::vector<int> index_sequence() const
    {
        std::vector<int> s;
        for (const auto &[g, e] : f_)
            for (int k = 0; k < e; ++k)
                s.push_back(g.index);
        std::sort(s.rbegin(), s.rend());
        return s;
    }

    std::string to_string() const
    {
        std::vector<Factor> v = f_;
        std::stable_sort(v.begin(), v.end(),
                         [](const Factor &a, const Factor &b) { return a.first.index > b.first.index; });
        std::string s;
        for (const auto &[g, e] : v) {
            if (!s.empty())
                s += "*";
            s += g.to_string();
            if (e > 1)
                s += "^" + std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;
    friend bool operator<(const Monomial &a, const Monomial &b) { return a.f_ < b.f_; }

private:
    std::vector<Factor> f_;
};

template <Scalar S> class Element {
public:
    using Terms = std::map<Monomial, S>;

    Element() = default;
    Element(long c) : Element(Rational(c)) {}
    Element(const Rational &c)
    {
        if (!c.is_zero())
            t_.emplace(Monomial(), scalar_traits<S>::from_rational(c));
    }
    Element(S c)
        requires(!std::is_same_v<S, Rational>)
    {
        if (!c.is_zero())
            t_.emplace(Monomial(), std::move(c));
    }
    static Element constant(S c)
    {
        Element r;
        if (!c.is_zero())
            r.t_.emplace(Monomial(), std::move(c));
        return r;
    }
    static Element gen(GeneratorRef g, int e = 1)
    {
        Element r;
        r.t_.emplace(Monomial(g, e), S(Rational(1)));
        return r;
    }
    // Generator with the conventions index 0 -> 1, negative -> 0.
    static Element gen_or_unit(Family f, int k)
    {
        if (k == 0)
            return constant(S(Rational(1)));
        if (k < 0)
            return {};
        return gen(GeneratorRef(f, k));
    }
    static Element monomial(Monomial m, S c)
    {
        Element r;
        if (!c.is_zero())
            r.t_.emplace(std::move(m), std::move(c));
        return r;
    }

    const Terms &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    S coefficient(const Monomial &m) const
    {
        auto it = t_.find(m);
        return it == t_.end() ? S() : it->second;
    }
    S constant_term() const { return coefficient(Monomial()); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

    int degree() const
    {
        if (t_.empty())
            throw undefined_degree("degree of the zero element");
        int d = 0;
        for (const auto &[m, c] : t_)
            d = std::max(d, m.degree());
        return d;
    }
    int max_index() const
    {
        int k = 0;
        for (const auto &[m, c] : t_)
            for (const auto &[g, e] : m.factors())
                k = std::max(k, g.index);
        return k;
    }

    void add_term(const Monomial &m, const S &c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                t_.erase(it);
        }
    }

    Element &operator+=(const Element &o)
    {
        for (const auto &[m, c] : o.t_)
            add_term(m, c);
        return *this;
    }
    Element &operator-=(const Element &o)
    {
        for (const auto &[m, c] : o.t_)
            add_term(m, -c);
        return *this;
    }
    Element &operator*=(const S &s)
    {
        if (s.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto it = t_.begin(); it != t_.end();) {
            it->second = it->second * s;
            it = it->second.is_zero() ? t_.erase(it) : std::next(it);
        }
        return *this;
    }
    friend Element operator+(Element a, const Element &b) { return a += b; }
    friend Element operator-(Element a, const Element &b) { return a -= b; }
    Element operator-() const
    {
        Element r = *this;
        for (auto &[m, c] : r.t_)
            c = -c;
        return r;
    }
    friend Element operator*(const Element &a, const Element &b)
    {
        Element r;
        for (const auto &[ma, ca] : a.t_)
            for (const auto &[mb, cb] : b.t_)
                r.add_term(ma * mb, ca * cb);
        return r;
    }
    Element &operator*=(const Element &o) { return *this = *this * o; }
    friend Element operator*(Element a, const S &s) { return a *= s; }
    friend Element operator*(const S &s, Element a) { return a *= s; }

    friend bool operator==(const Element &, const Element &) = default;

    // Keep terms of total degree <= n.
    Element truncated(int n) const
    {
        Element r;
        for (const auto &[m, c] : t_)
            if (m.degree() <= n)
                r.t_.emplace(m, c);
        return r;
    }

    std::string to_string() const;

private:
    Terms t_;
};

template <Scalar S> Element<S> pow(const Element<S> &a, int e)
{
    Element<S> r(1L);
    for (int i = 0; i < e; ++i)
        r *= a;
    return r;
}

// Printing order: higher degree first; within a degree, index sequences
// (largest index first) in ascending lexicographic order.
namespace detail {

inline bool print_before(const Monomial &a, const Monomial &b)
{
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    return a.index_sequence() < b.index_sequence();
}

template <Scalar S> std::string scalar_factor(const S &c, bool &negative)
{
    // Returns the magnitude text and sets negative when a leading minus can be
    // pulled out. Multi-term t-polynomials are parenthesized.
    if constexpr (std::is_same_v<S, Rational>) {
        negative = c.sign() < 0;
        return c.abs().to_string();
    } else {
        if (scalar_traits<S>::is_single_term(c)) {
            negative = scalar_traits<S>::lead_sign(c) < 0;
            return (negative ? -c : c).to_string();
        }
        negative = false;
        return "(" + c.to_string() + ")";
    }
}

} // namespace detail

template <Scalar S> std::string Element<S>::to_string() const
{
    if (t_.empty())
        return "0";
    std::vector<const typename Terms::value_type *> order;
    for (const auto &kv : t_)
        order.push_back(&kv);
    std::stable_sort(order.begin(), order.end(),
                     [](auto *a, auto *b) { return detail::print_before(a->first, b->first); });
    std::string out;
    bool first = true;
    for (const auto *kv : order) {
        bool neg = false;
        std::string mag = detail::scalar_factor(kv->second, neg);
        std::string body;
        if (kv->first.is_one())
            body = mag;
        else if (mag == "1")
            body = kv->first.to_string();
        else
            body = mag + "*" + kv->first.to_string();
        if (first)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

template <Scalar S> std::ostream &operator<<(std::ostream &os, const Element<S> &a) { return os << a.to_string(); }

using QElement = Element<Rational>;
using TElement = Element<TPoly>;

// ---- homomorphisms ----

// Ring homomorphism fixing scalars, given by generator images.
template <Scalar S, typename F> Element<S> substitute(const Element<S> &a, F &&image)
{
    std::map<GeneratorRef, std::vector<Element<S>>> powers;
    auto power = [&](const GeneratorRef &g, int e) -> const Element<S> & {
        auto &v = powers[g];
        if (v.empty()) {
            v.push_back(Element<S>(1L));
            v.push_back(image(g));
        }
        while (static_cast<int>(v.size()) <= e)
            v.push_back(v.back() * v[1]);
        return v[e];
    };
    Element<S> r;
    for (const auto &[m, c] : a.terms()) {
        Element<S> term = Element<S>::constant(c);
        for (const auto &[g, e] : m.factors())
            term = term * power(g, e);
        r += term;
    }
    return r;
}

// Ring homomorphism into the scalars; values must cover every generator.
template <Scalar S, typename F> S evaluate(const Element<S> &a, F &&value)
{
    S acc;
    std::map<GeneratorRef, S> cache;
    for (const auto &[m, c] : a.terms()) {
        S term = c;
        for (const auto &[g, e] : m.factors()) {
            auto it = cache.find(g);
            if (it == cache.end())
                it = cache.emplace(g, value(g)).first;
            for (int k = 0; k < e; ++k)
                term = term * it->second;
        }
        acc += term;
    }
    return acc;
}

template <Scalar S> Element<S> retag(const Element<S> &a, Family from, Family to)
{
    Element<S> r;
    for (const auto &[m, c] : a.terms()) {
        Monomial nm;
        for (const auto &[g, e] : m.factors())
            nm = nm * Monomial(GeneratorRef(g.family == from ? to : g.family, g.index), e);
        r.add_term(nm, c);
    }
    return r;
}

inline QElement specialize_t(const TElement &a, const Rational &t)
{
    QElement r;
    for (const auto &[m, c] : a.terms())
        r.add_term(m, c.evaluate(t));
    return r;
}

inline TElement lift(const QElement &a)
{
    TElement r;
    for (const auto &[m, c] : a.terms())
        r.add_term(m, TPoly(c));
    return r;
}

// ---- Hasse–Schmidt derivations ----

// D_m on generators; hs_apply extends by D_m(ab) = sum_{k+l=m} D_k(a) D_l(b)
// and D_m(1) = [m == 0].
template <Scalar S> struct DerivationFamily {
    std::function<Element<S>(int m, const GeneratorRef &)> rule;
    std::function<bool(const GeneratorRef &)> covers = [](const GeneratorRef &) { return true; };
};

// All of D_0(a), ..., D_M(a).
template <Scalar S> std::vector<Element<S>> hs_apply_all(const DerivationFamily<S> &D, int M, const Element<S> &a)
{
    std::vector<Element<S>> out(M + 1);
    std::map<GeneratorRef, std::vector<Element<S>>> gen_cache;
    auto gen_values = [&](const GeneratorRef &g) -> const std::vector<Element<S>> & {
        auto it = gen_cache.find(g);
        if (it != gen_cache.end())
            return it->second;
        if (!D.covers(g))
            throw missing_rule("no derivation rule for generator " + g.to_string());
        std::vector<Element<S>> v(M + 1);
        for (int m = 0; m <= M; ++m)
            v[m] = D.rule(m, g);
        return gen_cache.emplace(g, std::move(v)).first->second;
    };
    for (const auto &[mono, c] : a.terms()) {
        std::vector<Element<S>> acc(M + 1);
        acc[0] = Element<S>::constant(c);
        for (const auto &[g, e] : mono.factors()) {
            const auto &dg = gen_values(g);
            for (int rep = 0; rep < e; ++rep) {
                std::vector<Element<S>> next(M + 1);
                for (int i = 0; i <= M; ++i) {
                    if (acc[i].is_zero())
                        continue;
                    for (int j = 0; i + j <= M; ++j)
                        if (!dg[j].is_zero())
                            next[i + j] += acc[i] * dg[j];
                }
                acc = std::move(next);
            }
        }
        for (int m = 0; m <= M; ++m)
            out[m] += acc[m];
    }
    return out;
}

template <Scalar S> Element<S> hs_apply(const DerivationFamily<S> &D, int m, const Element<S> &a)
{
    if (m < 0)
        return {};
    return hs_apply_all(D, m, a)[m];
}

// ---- parser ----

struct ParseOptions {
    Family q_family = Family::QGeneric; // family for "Q[k]"
};

namespace detail {

template <Scalar S> class ElementParser {
public:
    ElementParser(std::string_view s, ParseOptions opt) : s_(s), opt_(opt) {}

    Element<S> run()
    {
        Element<S> r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &why)
    {
        throw parse_error(why + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    long integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Element<S> expr()
    {
        Element<S> r;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Element<S> t = term();
        r = neg ? -t : t;
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    Element<S> term()
    {
        Element<S> r = factor();
        while (true) {
            if (eat('*')) {
                r = r * factor();
            } else if (peek() == '/') {
                ++pos_;
                Element<S> d = factor();
                if (!d.is_constant() || d.is_zero())
                    fail("division only by a nonzero constant");
                S c = d.constant_term();
                if constexpr (std::is_same_v<S, Rational>) {
                    r *= Rational(1) / c;
                } else {
                    if (!c.is_constant())
                        fail("division only by a rational constant");
                    r *= S(Rational(1) / c.constant_term());
                }
            } else {
                break;
            }
        }
        return r;
    }

    Element<S> factor()
    {
        if (eat('-'))
            return -factor();
        Element<S> b = primary();
        if (eat('^')) {
            long e = integer();
            return pow(b, static_cast<int>(e));
        }
        return b;
    }

    Element<S> primary()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Element<S> r = expr();
            if (!eat(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Element<S>(Rational(integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "t" && peek() != '[') {
                if constexpr (scalar_traits<S>::has_t)
                    return Element<S>::constant(scalar_traits<S>::variable());
                else
                    fail("'t' is not available over the rationals");
            }
            Family fam;
            if (name == "Q")
                fam = opt_.q_family;
            else if (name == "h")
                fam = Family::H;
            else if (name == "e")
                fam = Family::E;
            else if (name == "p")
                fam = Family::P;
            else if (name == "hs")
                fam = Family::HStar;
            else if (name == "es")
                fam = Family::EStar;
            else
                fail("unknown generator family '" + name + "'");
            if (!eat('['))
                fail("expected '['");
            bool neg = eat('-');
            long k = integer();
            if (!eat(']'))
                fail("expected ']'");
            return Element<S>::gen_or_unit(fam, neg ? -static_cast<int>(k) : static_cast<int>(k));
        }
        fail("unexpected character");
    }

    std::string_view s_;
    ParseOptions opt_;
    std::size_t pos_ = 0;
};

} // namespace detail

template <Scalar S> Element<S> parse_element(std::string_view text, ParseOptions opt = {})
{
    return detail::ElementParser<S>(text, opt).run();
}

} // namespace symgen
