#pragma once

// Shared helpers for the test binaries: seeded random data and brute-force
// oracles that do not reuse library algorithms.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "symgen/symgen.hpp"

namespace testsupport {

using namespace symgen;

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 g(20261017);
    return g;
}

inline Rational random_rational(std::mt19937_64 &g, int num_range = 9, int den_max = 5)
{
    std::uniform_int_distribution<long> n(-num_range, num_range), d(1, den_max);
    return Rational(n(g), d(g));
}

template <Scalar S> S random_scalar(std::mt19937_64 &g)
{
    if constexpr (std::is_same_v<S, Rational>) {
        return random_rational(g);
    } else {
        std::vector<Rational> c;
        std::uniform_int_distribution<int> deg(0, 2);
        int d = deg(g);
        for (int i = 0; i <= d; ++i)
            c.push_back(random_rational(g, 4, 3));
        return TPoly(c);
    }
}

template <Scalar S>
Element<S> random_element(std::mt19937_64 &g, Family fam, int max_terms = 6, int max_index = 4, int max_factors = 3)
{
    std::uniform_int_distribution<int> nt(0, max_terms), nf(0, max_factors), idx(1, max_index);
    Element<S> r;
    int terms = nt(g);
    for (int i = 0; i < terms; ++i) {
        Element<S> m = Element<S>::constant(random_scalar<S>(g));
        int f = nf(g);
        for (int j = 0; j < f; ++j)
            m = m * Element<S>::gen(GeneratorRef(fam, idx(g)));
        r += m;
    }
    return r;
}

// Leibniz expansion; exponential but independent of any elimination scheme.
template <typename T> T leibniz_det(const std::vector<std::vector<T>> &a, T zero, T one)
{
    const int n = static_cast<int>(a.size());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    T total = zero;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inv += p[i] > p[j];
        T term = one;
        for (int i = 0; i < n; ++i)
            term = term * a[i][p[i]];
        if (inv % 2)
            total = total - term;
        else
            total = total + term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline std::vector<Rational> distinct_points(std::mt19937_64 &g, int n)
{
    std::vector<Rational> x;
    while (static_cast<int>(x.size()) < n) {
        Rational r = random_rational(g, 12, 4);
        if (std::find(x.begin(), x.end(), r) == x.end())
            x.push_back(r);
    }
    return x;
}

} // namespace testsupport
