#pragma once

// Determinants over commutative rings (division-free) and over the rationals.

#include <bit>
#include <cstdint>
#include <vector>

#include "symgen/errors.hpp"
#include "symgen/scalar.hpp"

namespace symgen {

// Row-by-row expansion with memoization over the set of used columns:
// O(2^n n) ring operations, no division. Intended for n <= 12.
template <typename T> T det_bitmask(const std::vector<std::vector<T>> &a, const T &zero, const T &one)
{
    const int n = static_cast<int>(a.size());
    for (const auto &row : a)
        if (static_cast<int>(row.size()) != n)
            throw shape_error("determinant of a non-square matrix");
    if (n == 0)
        return one;
    if (n > 20)
        throw shape_error("determinant size exceeds the bitmask expansion limit");
    std::vector<T> dp(std::size_t(1) << n, zero);
    std::vector<bool> live(dp.size(), false);
    dp[0] = one;
    live[0] = true;
    for (std::uint32_t mask = 0; mask + 1 < dp.size(); ++mask) {
        if (!live[mask] || dp[mask].is_zero())
            continue;
        const int r = std::popcount(mask);
        for (int c = 0; c < n; ++c) {
            if (mask & (1u << c))
                continue;
            if (a[r][c].is_zero())
                continue;
            int above = std::popcount(mask >> (c + 1));
            T term = dp[mask] * a[r][c];
            std::uint32_t next = mask | (1u << c);
            if (above % 2)
                dp[next] = dp[next] - term;
            else
                dp[next] = dp[next] + term;
            live[next] = true;
        }
    }
    return dp.back();
}

// Gaussian elimination with exact pivoting.
inline Rational det_gauss(std::vector<std::vector<Rational>> a)
{
    const int n = static_cast<int>(a.size());
    Rational det(1);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c].is_zero())
            ++p;
        if (p == n)
            return Rational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero())
                continue;
            Rational m = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k)
                a[r][k] -= m * a[c][k];
        }
    }
    return det;
}

} // namespace symgen
