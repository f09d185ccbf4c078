#include <gtest/gtest.h>

#include "support.hpp"

using namespace symgen;
using namespace testsupport;

namespace {

QElement Q(int k) { return QElement::gen_or_unit(Family::QGeneric, k); }
QElement h(int k) { return QElement::gen_or_unit(Family::H, k); }

CorrelationFactor<Rational> schur_f() { return {{Rational(1), Rational(-1)}, {Rational(1)}}; }

// Every product of terms f_{r_ij} (u_j/u_i)^{r_ij} G_{k_i} u_i^{k_i}, summed
// into the coefficient of its exponent vector; bounded brute force.
template <Scalar S>
std::map<IntegerVector, Element<S>> direct_expand(const std::vector<S> &f, const TruncatedSeries<S> &G, int l,
                                                  const Window &w, int rmax)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            pairs.push_back({i, j});
    std::map<IntegerVector, Element<S>> out;
    IntegerVector k(l, 0);
    std::function<void(int, int)> over_k = [&](int i, int used) {
        if (i == l) {
            IntegerVector r(pairs.size(), 0);
            while (true) {
                IntegerVector e = k;
                S coef(Rational(1));
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    e[pairs[p].first] -= r[p];
                    e[pairs[p].second] += r[p];
                    coef = coef * (r[p] < static_cast<int>(f.size()) ? f[r[p]] : S());
                }
                if (!coef.is_zero() && w.contains(e)) {
                    Element<S> term = Element<S>::constant(coef);
                    for (int x = 0; x < l; ++x)
                        term = term * G[k[x]];
                    out[e] += term;
                }
                std::size_t p = 0;
                while (p < r.size() && r[p] == rmax)
                    r[p++] = 0;
                if (p == r.size())
                    break;
                ++r[p];
            }
            return;
        }
        for (int v = 0; used + v <= w.max_weight; ++v) {
            k[i] = v;
            over_k(i + 1, used + v);
        }
    };
    over_k(0, 0);
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

TEST(Invert, Examples)
{
    auto one = TruncatedSeries<Rational>::one(5);
    EXPECT_EQ(invert(one), one);
    auto r = invert(TruncatedSeries<Rational>::generators(Family::QGeneric, 4));
    EXPECT_EQ(r[1], -Q(1));
    EXPECT_EQ(r[2], Q(1) * Q(1) - Q(2));
    TruncatedSeries<Rational> bad(2);
    bad.at(0) = QElement(2L);
    EXPECT_THROW(invert(bad), non_unit);
}

TEST(Invert, InvolutionOnRandomUnitalSeries)
{
    auto &g = rng();
    for (int i = 0; i < 50; ++i) {
        TruncatedSeries<Rational> q(5);
        q.at(0) = QElement(1L);
        for (int k = 1; k <= 5; ++k)
            q.at(k) = random_element<Rational>(g, Family::QGeneric, 3, 3, 2);
        auto r = invert(q);
        EXPECT_EQ(invert(r), q);
        EXPECT_EQ(q * r, TruncatedSeries<Rational>::one(5));
    }
}

TEST(CorrelationFactor, Expansion)
{
    CorrelationFactor<Rational> schurq({Rational(1), Rational(-1)}, {Rational(1), Rational(1)});
    EXPECT_EQ(schurq.expand(3), (std::vector<Rational>{1, -2, 2, -2}));
    auto inv = schur_f().inverse();
    EXPECT_EQ(inv.expand(3), (std::vector<Rational>{1, 1, 1, 1}));
    EXPECT_THROW(CorrelationFactor<Rational>({Rational(1)}, {Rational(0), Rational(1)}), non_unit);
}

TEST(CorrelationExpand, Examples)
{
    auto G = TruncatedSeries<Rational>::generators(Family::H, 6);
    auto t1 = correlation_expand(schur_f(), G, Window::standard(1, 6));
    for (int k = 0; k <= 6; ++k)
        EXPECT_EQ(t1.extract({k}), h(k));
    auto t2 = correlation_expand(schur_f(), G, Window::standard(2, 6));
    EXPECT_EQ(t2.extract({0, 0}), QElement(1L));
    EXPECT_EQ(t2.extract({2, 1}), h(2) * h(1) - h(3));
    EXPECT_TRUE(t2.extract({1, 2}).is_zero());
    EXPECT_EQ(t2.extract({1, 3}), -(h(2) * h(2) - h(1) * h(3)));
    EXPECT_THROW(t2.extract({7, 0}), window_error);
    EXPECT_THROW(t2.extract({1}), window_error);

    CorrelationFactor<Rational> sq({Rational(1), Rational(-1)}, {Rational(1), Rational(1)});
    auto GQ = TruncatedSeries<Rational>::generators(Family::QSchur, 8);
    auto tq = correlation_expand(sq, GQ, Window::standard(2, 8));
    auto q = [](int k) { return QElement::gen_or_unit(Family::QSchur, k); };
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n < m && m + n <= 8; ++n) {
            QElement expect = q(m) * q(n);
            for (int s = 1; s <= n; ++s)
                expect += QElement(Rational(s % 2 ? -2 : 2)) * q(m + s) * q(n - s);
            EXPECT_EQ(tq.extract({m, n}), expect) << m << "," << n;
        }
}

TEST(CorrelationExpand, WindowErrors)
{
    auto G = TruncatedSeries<Rational>::generators(Family::H, 3);
    EXPECT_THROW(correlation_expand(schur_f(), G, Window::box(2, 1, 0, 3)), window_error);
    EXPECT_THROW(correlation_expand(schur_f(), G, Window::standard(2, 5)), window_error);
    EXPECT_THROW(correlation_expand(schur_f(), G, Window{{}, {}, 3}), window_error);
}

TEST(CorrelationExpand, MatchesDirectExpansion)
{
    const int N = 5;
    std::vector<CorrelationFactor<Rational>> fs = {
        schur_f(),
        {{Rational(1), Rational(-1)}, {Rational(1), Rational(1)}},
        {{Rational(1), Rational(2), Rational(-1, 3)}, {Rational(1), Rational(1, 2)}},
    };
    auto G = TruncatedSeries<Rational>::generators(Family::QGeneric, N);
    for (const auto &f : fs) {
        for (int l = 1; l <= 3; ++l) {
            for (const Window &w : {Window::standard(l, N), Window::box(l, -2, 3, N)}) {
                auto table = correlation_expand(f, G, w);
                auto direct = direct_expand(f.expand(2 * N + 2), G, l, w, 2 * N + 2);
                EXPECT_EQ(table.entries(), direct) << "l=" << l;
            }
        }
    }
}

TEST(CorrelationExpand, HallLittlewoodOverTPolyMatchesDirect)
{
    const int N = 4;
    CorrelationFactor<TPoly> f({TPoly(1), TPoly(-1)}, {TPoly(1), -TPoly::t()});
    auto G = TruncatedSeries<TPoly>::generators(Family::QGeneric, N);
    auto w = Window::standard(2, N);
    EXPECT_EQ(correlation_expand(f, G, w).entries(), direct_expand(f.expand(2 * N + 2), G, 2, w, 2 * N + 2));
}

// Appending a variable on the right: the coefficient of u^a v^m is
// sum_r prod f_{r_i} T[a + r] G_{m - |r|}.
TEST(CorrelationExpand, AppendStepAgreesWithDirectTable)
{
    const int N = 6;
    CorrelationFactor<Rational> f({Rational(1), Rational(-1)}, {Rational(1), Rational(1)});
    auto G = TruncatedSeries<Rational>::generators(Family::QGeneric, N);
    for (int l = 1; l <= 2; ++l) {
        Window inner_w = Window::box(l, -N, 2 * N, N);
        auto inner = correlation_expand(f, G, inner_w);
        Window outer_w = Window::standard(l + 1, N);
        auto outer = correlation_expand(f, G, outer_w);
        for (const auto &v : integer_vectors_in_box(l + 1, -N, N)) {
            if (!outer_w.contains(v))
                continue;
            IntegerVector a(v.begin(), v.end() - 1);
            int m = v.back();
            QElement acc;
            IntegerVector r(l, 0);
            while (true) {
                int s = 0;
                Rational coef(1);
                IntegerVector ar = a;
                for (int i = 0; i < l; ++i) {
                    s += r[i];
                    coef *= f[r[i]];
                    ar[i] += r[i];
                }
                if (s <= m && inner_w.contains(ar))
                    acc += QElement(coef) * inner.extract(ar) * G[m - s];
                int i = 0;
                while (i < l && r[i] == N)
                    r[i++] = 0;
                if (i == l)
                    break;
                ++r[i];
            }
            ASSERT_EQ(outer.extract(v), acc) << format_vector(v);
        }
    }
}

TEST(CoeffTableJson, RoundTrip)
{
    auto G = TruncatedSeries<Rational>::generators(Family::H, 4);
    auto t = correlation_expand(schur_f(), G, Window::standard(2, 4));
    auto j = to_json(t);
    EXPECT_EQ(j["arity"], 2);
    EXPECT_EQ(table_from_json<Rational>(j), t);
}
