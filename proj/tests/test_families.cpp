#include <gtest/gtest.h>

#include "support.hpp"

using namespace symgen;
using namespace testsupport;

namespace {

QElement h(int k) { return QElement::gen_or_unit(Family::H, k); }
QElement e(int k) { return QElement::gen_or_unit(Family::E, k); }
QElement q(int k) { return QElement::gen_or_unit(Family::QSchur, k); }

Valuation schur_valuation(const std::vector<Rational> &x, int K)
{
    return {{{Family::H, eval_generators(EvalKind::H, x, K)}, {Family::E, eval_generators(EvalKind::E, x, K)}}};
}

// Monomial symmetric sums straight from the definitions.
Rational brute_h(const std::vector<Rational> &x, int r)
{
    Rational total;
    std::function<void(int, int, Rational)> rec = [&](int from, int left, Rational acc) {
        if (left == 0) {
            total += acc;
            return;
        }
        for (int i = from; i < static_cast<int>(x.size()); ++i)
            rec(i, left - 1, acc * x[i]);
    };
    rec(0, r, Rational(1));
    return total;
}

} // namespace

TEST(CorrelationFunction, Examples)
{
    EXPECT_EQ(correlation_function<Rational>(FamilyTag::Schur, 3), (std::vector<Rational>{1, -1, 0, 0}));
    EXPECT_EQ(correlation_function<Rational>(FamilyTag::SchurQ, 3), (std::vector<Rational>{1, -2, 2, -2}));
    auto t = TPoly::t();
    auto hl = correlation_function<TPoly>(FamilyTag::HallLittlewood, 3);
    EXPECT_EQ(hl, (std::vector<TPoly>{TPoly(1), t - TPoly(1), t * t - t, t * t * t - t * t}));
    EXPECT_THROW(correlation_function<Rational>(FamilyTag::HallLittlewood, 3), std::invalid_argument);
}

TEST(SchurH, Examples)
{
    EXPECT_EQ(schur_h(IntegerVector{4}), h(4));
    EXPECT_EQ(schur_h(IntegerVector{2, 2}), h(2) * h(2) - h(1) * h(3));
    EXPECT_TRUE(schur_h(IntegerVector{1, 2}).is_zero());
    EXPECT_EQ(schur_h(IntegerVector{}), QElement(1L));
}

TEST(SchurH, StraightenConsistency)
{
    std::map<Partition, QElement> cache;
    auto check = [&](const IntegerVector &a) {
        auto s = straighten(a);
        QElement lhs = schur_h(a);
        if (s.is_zero()) {
            ASSERT_TRUE(lhs.is_zero()) << format_vector(a);
            return;
        }
        auto it = cache.find(s.partition);
        if (it == cache.end())
            it = cache.emplace(s.partition, schur_h(s.partition)).first;
        ASSERT_EQ(lhs, QElement(Rational(s.sign)) * it->second) << format_vector(a);
    };
    for (int len = 0; len <= 4; ++len)
        for (const auto &a : integer_vectors_in_box(len, -5, 8))
            check(a);
    auto &g = rng();
    std::uniform_int_distribution<int> d(-5, 8);
    for (int i = 0; i < 2000; ++i) {
        IntegerVector a(5);
        for (int &x : a)
            x = d(g);
        check(a);
    }
}

TEST(SchurE, Examples)
{
    EXPECT_EQ(schur_e(Partition{1, 1, 1}), e(3));
    EXPECT_EQ(schur_e(Partition{2, 1}), e(2) * e(1) - e(3));
    std::vector<Rational> x{1, 2, 3, 4};
    auto v = schur_valuation(x, 8);
    EXPECT_EQ(eval_element(schur_e(Partition{2, 2}), v), eval_element(schur_h(Partition{2, 2}), v));
}

TEST(Pfaffian, Examples)
{
    QElement a = QElement::gen(GeneratorRef(Family::P, 1));
    EXPECT_EQ(pfaffian(SkewMatrix<Rational>::from_upper({{{}, a}, {{}, {}}})), a);
    auto g = [](int i, int j) { return QElement::gen(GeneratorRef(Family::P, 10 * i + j)); };
    std::vector<std::vector<QElement>> m(4, std::vector<QElement>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            m[i][j] = g(i + 1, j + 1);
    EXPECT_EQ(pfaffian(SkewMatrix<Rational>::from_upper(m)),
              g(1, 2) * g(3, 4) - g(1, 3) * g(2, 4) + g(1, 4) * g(2, 3));
    EXPECT_THROW(pfaffian(SkewMatrix<Rational>::from_upper(std::vector<std::vector<QElement>>(3, std::vector<QElement>(3)))),
                 shape_error);
    EXPECT_THROW(SkewMatrix<Rational>({{QElement(1L), {}}, {{}, {}}}), shape_error);
    EXPECT_THROW(SkewMatrix<Rational>({{{}, QElement(1L)}, {QElement(1L), {}}}), shape_error);
}

TEST(Pfaffian, SquareEqualsDeterminant)
{
    auto &g = rng();
    for (int trial = 0; trial < 30; ++trial) {
        int n = trial % 2 ? 6 : 4;
        std::vector<std::vector<QElement>> m(n, std::vector<QElement>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m[i][j] = QElement(random_rational(g));
        auto A = SkewMatrix<Rational>::from_upper(m);
        std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r[i][j] = A(i, j).constant_term();
        QElement pf = pfaffian(A);
        EXPECT_EQ(pf * pf, QElement(leibniz_det(r, Rational(0), Rational(1))));
    }
}

TEST(SchurQ, Examples)
{
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(schurq(Partition{n}), q(n));
    EXPECT_EQ(schurq(Partition{2, 1}), q(2) * q(1) - QElement(2L) * q(3));
    EXPECT_EQ(schurq(Partition{3, 2, 1}), schurq_two_row(3, 2) * q(1) - schurq_two_row(3, 1) * q(2) +
                                              q(3) * schurq_two_row(2, 1));
    EXPECT_THROW(schurq(Partition{2, 2}), not_strict);
}

TEST(SchurQ, MatchesGeneratingTable)
{
    for (const auto &lam : strict_partitions_up_to(8)) {
        int l = std::max<int>(1, lam.length());
        auto table = family_table<Rational>(FamilyTag::SchurQ, Window::box(l, 0, 8, 8));
        EXPECT_EQ(table.extract(lam.padded(l)), schurq(lam)) << format_partition(lam);
    }
}

TEST(EvalGenerators, Examples)
{
    std::vector<Rational> ones{1, 1};
    auto hv = eval_generators(EvalKind::H, ones, 2);
    EXPECT_EQ(hv[1], Rational(2));
    EXPECT_EQ(hv[2], Rational(3));
    auto ev = eval_generators(EvalKind::E, ones, 3);
    EXPECT_EQ(ev, (std::vector<Rational>{1, 2, 1, 0}));
    auto qv = eval_generators(EvalKind::SchurQ, {Rational(1)}, 2);
    EXPECT_EQ(qv[1], Rational(2));
    EXPECT_EQ(qv[2], Rational(2));
    auto pv = eval_generators(EvalKind::P, {Rational(1), Rational(2)}, 2);
    EXPECT_EQ(pv[2], Rational(5));
    EXPECT_THROW(eval_generators(EvalKind::H, ones, 2, Rational(1)), std::invalid_argument);
}

TEST(EvalGenerators, MatchesDefiningSums)
{
    auto &g = rng();
    for (int trial = 0; trial < 5; ++trial) {
        auto x = distinct_points(g, 3);
        auto hv = eval_generators(EvalKind::H, x, 5);
        for (int r = 0; r <= 5; ++r)
            EXPECT_EQ(hv[r], brute_h(x, r));
        // H(u) E(-u) = 1
        auto ev = eval_generators(EvalKind::E, x, 5);
        for (int n = 1; n <= 5; ++n) {
            Rational acc;
            for (int i = 0; i <= n; ++i)
                acc += (i % 2 ? -ev[i] : ev[i]) * hv[n - i];
            EXPECT_TRUE(acc.is_zero());
        }
        // HL at t = 0 is h, at t = -1 is the Schur-Q generator
        EXPECT_EQ(eval_generators(EvalKind::HallLittlewood, x, 5, Rational(0)), hv);
        EXPECT_EQ(eval_generators(EvalKind::HallLittlewood, x, 5, Rational(-1)),
                  eval_generators(EvalKind::SchurQ, x, 5));
    }
}

TEST(EvalElement, ExamplesAndErrors)
{
    Valuation v{{{Family::H, {Rational(1), Rational(2)}}}};
    EXPECT_EQ(eval_element(h(1) * h(1), v), Rational(4));
    EXPECT_EQ(eval_element(QElement(), v), Rational(0));
    EXPECT_THROW(eval_element(h(2), v), missing_value);
    EXPECT_EQ(eval_element(schur_h(Partition{2, 1}), schur_valuation({Rational(1), Rational(1)}, 3)), Rational(2));
    TElement tq = parse_element<TPoly>("t*Q[1]");
    Valuation w{{{Family::QGeneric, {Rational(1), Rational(3)}}}};
    EXPECT_EQ(eval_element(tq, w, Rational(2)), Rational(6));
    EXPECT_THROW(eval_element(tq, w), missing_value);
}

TEST(EvalElement, IsRingHomomorphism)
{
    auto &g = rng();
    auto v = schur_valuation(distinct_points(g, 3), 8);
    for (int i = 0; i < 100; ++i) {
        auto a = random_element<Rational>(g, Family::H);
        auto b = random_element<Rational>(g, Family::H);
        EXPECT_EQ(eval_element(a * b, v), eval_element(a, v) * eval_element(b, v));
        EXPECT_EQ(eval_element(a + b, v), eval_element(a, v) + eval_element(b, v));
    }
}

TEST(Bialternant, ExamplesAndErrors)
{
    EXPECT_EQ(schur_bialternant(Partition{}, {Rational(1), Rational(2)}), Rational(1));
    EXPECT_EQ(schur_bialternant(Partition{1}, {Rational(1), Rational(2)}), Rational(3));
    std::vector<Rational> x{1, 2, 3};
    EXPECT_EQ(schur_bialternant(Partition{2, 1}, x), eval_element(schur_h(Partition{2, 1}), schur_valuation(x, 3)));
    EXPECT_THROW(schur_bialternant(Partition{1}, {Rational(1), Rational(1)}), coincident_points);
}

TEST(JacobiTrudi, OracleTriangle)
{
    auto &g = rng();
    auto x = distinct_points(g, 4);
    auto v = schur_valuation(x, 8);
    for (const auto &lam : partitions_up_to(6)) {
        Rational b = schur_bialternant(lam, x);
        EXPECT_EQ(eval_element(schur_h(lam), v), b) << format_partition(lam);
        EXPECT_EQ(eval_element(schur_e(lam), v), b) << format_partition(lam);
    }
}

TEST(SchurQ, EvaluationRelations)
{
    auto &g = rng();
    for (int n = 1; n <= 4; ++n) {
        auto qv = eval_generators(EvalKind::SchurQ, distinct_points(g, n), 10);
        for (int m = 1; m <= 5; ++m) {
            Rational acc;
            for (int i = 0; i <= 2 * m; ++i)
                acc += (i % 2 ? -qv[i] : qv[i]) * qv[2 * m - i];
            EXPECT_TRUE(acc.is_zero());
        }
    }
}

TEST(HallLittlewood, Examples)
{
    auto &g = rng();
    auto x = distinct_points(g, 3);
    for (const auto &lam : partitions_up_to(4, 3))
        EXPECT_EQ(hl_P(lam, x, Rational(0)), schur_bialternant(lam, x));
    Rational t(2, 3);
    EXPECT_EQ(hl_P(Partition{1}, x, t), x[0] + x[1] + x[2]);
    EXPECT_THROW(hl_P(Partition{1}, x, Rational(1)), pole_error);
    EXPECT_THROW(hl_P(Partition{1}, {Rational(1), Rational(1)}, t), coincident_points);
    EXPECT_EQ(hl_b(Partition{2, 1, 1}), (TPoly(1) - TPoly::t()) * (TPoly(1) - TPoly::t()) *
                                            (TPoly(1) - TPoly::t() * TPoly::t()));
}

TEST(HallLittlewood, ReductionsAtZeroAndMinusOne)
{
    auto w = Window::standard(2, 6);
    auto hl = family_table<TPoly>(FamilyTag::HallLittlewood, w);
    auto schur = family_table<Rational>(FamilyTag::Schur, w);
    auto sq = family_table<Rational>(FamilyTag::SchurQ, w);
    for (const auto &v : integer_vectors_in_box(2, -6, 6)) {
        if (!w.contains(v))
            continue;
        EXPECT_EQ(retag(specialize_t(hl.extract(v), Rational(0)), Family::QGeneric, Family::H), schur.extract(v));
        EXPECT_EQ(retag(specialize_t(hl.extract(v), Rational(-1)), Family::QGeneric, Family::QSchur), sq.extract(v));
    }
}

TEST(HallLittlewood, TableMatchesSymmetrization)
{
    auto &g = rng();
    for (const auto &lam : partitions_up_to(4)) {
        if (lam.empty())
            continue;
        int l = lam.length();
        auto table = family_table<TPoly>(FamilyTag::HallLittlewood, Window::box(l, 0, 4, 4));
        TElement coef = table.extract(lam.as_vector());
        for (int s = 0; s < 2; ++s) {
            auto x = distinct_points(g, 4);
            Rational t = random_rational(g, 5, 7);
            if (t == Rational(1) || t == Rational(-1) || t.is_zero())
                t = Rational(1, 3);
            Valuation v{{{Family::QGeneric, eval_generators(EvalKind::HallLittlewood, x, 4, t)}}};
            EXPECT_EQ(eval_element(coef, v, t), hl_b(lam).evaluate(t) * hl_P(lam, x, t)) << format_partition(lam);
        }
    }
}

TEST(HallLittlewood, SchurQAtMinusOne)
{
    auto &g = rng();
    for (const auto &lam : strict_partitions_up_to(5)) {
        if (lam.empty())
            continue;
        auto x = distinct_points(g, lam.length() + 1);
        Valuation v{{{Family::QSchur, eval_generators(EvalKind::SchurQ, x, 5)}}};
        EXPECT_EQ(hl_b(lam).evaluate(Rational(-1)) * hl_P(lam, x, Rational(-1)), eval_element(schurq(lam), v));
    }
}

TEST(RSide, ConjugateSchur)
{
    for (int l = 1; l <= 3; ++l) {
        auto rt = family_r_table<Rational>(FamilyTag::Schur, Window::box(l, 0, 8, 8));
        for (const auto &lam : partitions_up_to(8, l)) {
            QElement expect = schur_h(conjugate(lam));
            if (lam.weight() % 2)
                expect = -expect;
            EXPECT_EQ(rt.extract(lam.padded(l)), expect) << format_partition(lam);
        }
    }
}
