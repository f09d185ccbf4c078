#pragma once

// Named verification suites driven by the CLI. Each suite is deterministic
// given the seed; default bounds are the acceptance bounds.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgen/families.hpp"
#include "symgen/fock.hpp"
#include "symgen/operators.hpp"
#include "symgen/report.hpp"
#include "symgen/shifted.hpp"

namespace symgen {

struct VerifyOptions {
    std::optional<int> N, W, l, K;
    std::uint64_t seed = 0;
};

namespace detail {

// FNV-1a, so seeds do not depend on the standard library's std::hash.
inline std::uint32_t stable_hash(const std::string &s)
{
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s)
        h = (h ^ c) * 16777619u;
    return h;
}

inline std::mt19937_64 suite_rng(std::uint64_t seed, const std::string &suite)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stable_hash(suite)};
    return std::mt19937_64(seq);
}

inline Rational sample_rational(std::mt19937_64 &g, int num_range, int den_max)
{
    std::uniform_int_distribution<long> n(-num_range, num_range), d(1, den_max);
    return Rational(n(g), d(g));
}

inline std::vector<Rational> sample_distinct(std::mt19937_64 &g, int n)
{
    std::vector<Rational> x;
    while (static_cast<int>(x.size()) < n) {
        Rational r = sample_rational(g, 12, 4);
        if (std::find(x.begin(), x.end(), r) == x.end())
            x.push_back(r);
    }
    return x;
}

inline std::vector<std::string> texts(const std::vector<Rational> &x)
{
    std::vector<std::string> out;
    for (const auto &r : x)
        out.push_back(r.to_string());
    return out;
}

inline Report start(const std::string &suite, nlohmann::json params, const VerifyOptions &o)
{
    Report r;
    r.suite = suite;
    r.parameters = std::move(params);
    r.parameters["seed"] = o.seed;
    return r;
}

// Keeps the outer suite name when folding in a checker's record.
inline void absorb(Report &into, const Report &part, const std::string &check)
{
    Report tagged = part;
    for (auto &f : tagged.failures)
        f["check"] = f.contains("check") ? check + ": " + f["check"].get<std::string>() : check;
    into.merge(tagged);
}

// One step of tau read off its defining substitution u -> u - 1:
// h*_k -> h*_k + (k - 1) h*_{k-1}; the same rule is tau^{-1} on e*.
inline QElement tau_step(const QElement &a)
{
    return substitute(a, [](const GeneratorRef &g) {
        return QElement::gen_or_unit(g.family, g.index) +
               QElement(Rational(g.index - 1)) * QElement::gen_or_unit(g.family, g.index - 1);
    });
}

} // namespace detail

// Table coefficients of the Schur correlation product against signed
// straightened Jacobi-Trudi determinants, plus the h/e/bialternant triangle.
inline Report verify_jacobi_trudi(const VerifyOptions &o)
{
    const int l = o.l.value_or(3), N = o.N.value_or(8);
    const int n_points = 4, eval_N = std::min(N, 6);
    auto rep = detail::start("jacobi-trudi", {{"l", l}, {"N", N}, {"points", n_points}, {"eval_N", eval_N}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    const Window w = Window::standard(l, N);
    auto table = family_table<Rational>(FamilyTag::Schur, w);
    std::map<Partition, QElement> cache;
    for (const auto &v : integer_vectors_in_box(l, -N, N)) {
        if (!w.contains(v))
            continue;
        auto s = straighten(v);
        QElement expect;
        if (!s.is_zero()) {
            auto it = cache.find(s.partition);
            if (it == cache.end())
                it = cache.emplace(s.partition, schur_h(s.partition)).first;
            expect = QElement(Rational(s.sign)) * it->second;
        }
        QElement got = table.extract(v);
        rep.record(got == expect, {{"check", "table"}, {"lambda", v}, {"lhs", got.to_string()}, {"rhs", expect.to_string()}});
    }
    auto x = detail::sample_distinct(g, n_points);
    Valuation val{{{Family::H, eval_generators(EvalKind::H, x, eval_N)}, {Family::E, eval_generators(EvalKind::E, x, eval_N)}}};
    for (const auto &lam : partitions_up_to(eval_N)) {
        Rational b = schur_bialternant(lam, x), vh = eval_element(schur_h(lam), val), ve = eval_element(schur_e(lam), val);
        rep.record(vh == b && ve == b, {{"check", "triangle"},
                                        {"lambda", lam.parts()},
                                        {"x", detail::texts(x)},
                                        {"h", vh.to_string()},
                                        {"e", ve.to_string()},
                                        {"bialternant", b.to_string()}});
    }
    return rep;
}

// R_lambda = (-1)^|lambda| s_lambda' on the R-side Schur tables.
inline Report verify_r_conjugate(const VerifyOptions &o)
{
    const int L = o.l.value_or(3), N = o.N.value_or(8);
    auto rep = detail::start("r-conjugate", {{"l", L}, {"N", N}}, o);
    for (int l = 1; l <= L; ++l) {
        auto rt = family_r_table<Rational>(FamilyTag::Schur, Window::box(l, 0, N, N));
        for (const auto &lam : partitions_up_to(N, l)) {
            QElement expect = schur_h(conjugate(lam));
            if (lam.weight() % 2)
                expect = -expect;
            QElement got = rt.extract(lam.padded(l));
            rep.record(got == expect, {{"l", l}, {"lambda", lam.parts()}, {"lhs", got.to_string()}, {"rhs", expect.to_string()}});
        }
    }
    return rep;
}

// Pf(A)^2 = det A on random rational skew matrices of even size <= N.
inline Report verify_pfaffian(const VerifyOptions &o)
{
    const int N = o.N.value_or(6), trials = 30;
    auto rep = detail::start("pfaffian", {{"N", N}, {"trials", trials}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    const int sizes = std::max(1, N / 2);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 2 * (1 + trial % sizes);
        std::vector<std::vector<QElement>> m(n, std::vector<QElement>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m[i][j] = QElement(detail::sample_rational(g, 9, 5));
        auto A = SkewMatrix<Rational>::from_upper(m);
        std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r[i][j] = A(i, j).constant_term();
        QElement pf = pfaffian(A);
        Rational det = det_gauss(r);
        rep.record(pf * pf == QElement(det), {{"size", n}, {"pf", pf.to_string()}, {"det", det.to_string()}});
    }
    return rep;
}

// Pfaffian Q_lambda against the Schur-Q table, and Q(u)Q(-u) = 1 at points.
inline Report verify_schur_q(const VerifyOptions &o)
{
    const int N = o.N.value_or(8), M = 5, n_max = 4;
    auto rep = detail::start("schur-q-coherence", {{"N", N}, {"m", M}, {"n", n_max}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    std::map<int, CoeffTable<Rational>> tables;
    for (const auto &lam : strict_partitions_up_to(N)) {
        const int l = std::max<int>(1, lam.length());
        auto it = tables.find(l);
        if (it == tables.end())
            it = tables.emplace(l, family_table<Rational>(FamilyTag::SchurQ, Window::box(l, 0, N, N))).first;
        QElement got = it->second.extract(lam.padded(l)), expect = schurq(lam);
        rep.record(got == expect, {{"check", "table"}, {"lambda", lam.parts()}, {"lhs", got.to_string()}, {"rhs", expect.to_string()}});
    }
    for (int n = 1; n <= n_max; ++n) {
        auto x = detail::sample_distinct(g, n);
        auto qv = eval_generators(EvalKind::SchurQ, x, 2 * M);
        for (int m = 1; m <= M; ++m) {
            Rational acc;
            for (int i = 0; i <= 2 * m; ++i)
                acc += (i % 2 ? -qv[i] : qv[i]) * qv[2 * m - i];
            rep.record(acc.is_zero(), {{"check", "evaluation"}, {"n", n}, {"m", m}, {"x", detail::texts(x)}, {"lhs", acc.to_string()}});
        }
    }
    return rep;
}

// t = 0 and t = -1 reductions of the HL table; b_lambda P_lambda against
// extracted coefficients at random (x, t).
inline Report verify_hall_littlewood(const VerifyOptions &o)
{
    const int l = o.l.value_or(2), N = o.N.value_or(6), sym_N = std::min(N, 5), n = 5, samples = 5;
    auto rep = detail::start("hall-littlewood",
                             {{"l", l}, {"N", N}, {"sym_N", sym_N}, {"n", n}, {"t_samples", samples}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    const Window w = Window::standard(l, N);
    auto hl = family_table<TPoly>(FamilyTag::HallLittlewood, w);
    auto schur = family_table<Rational>(FamilyTag::Schur, w);
    auto sq = family_table<Rational>(FamilyTag::SchurQ, w);
    for (const auto &v : integer_vectors_in_box(l, -N, N)) {
        if (!w.contains(v))
            continue;
        QElement at0 = retag(specialize_t(hl.extract(v), Rational(0)), Family::QGeneric, Family::H);
        QElement at1 = retag(specialize_t(hl.extract(v), Rational(-1)), Family::QGeneric, Family::QSchur);
        rep.record(at0 == schur.extract(v), {{"check", "t=0"}, {"lambda", v}, {"lhs", at0.to_string()}});
        rep.record(at1 == sq.extract(v), {{"check", "t=-1"}, {"lambda", v}, {"lhs", at1.to_string()}});
    }
    std::map<int, CoeffTable<TPoly>> tables;
    for (const auto &lam : partitions_up_to(sym_N)) {
        if (lam.empty())
            continue;
        const int len = lam.length();
        auto it = tables.find(len);
        if (it == tables.end())
            it = tables.emplace(len, family_table<TPoly>(FamilyTag::HallLittlewood, Window::box(len, 0, sym_N, sym_N))).first;
        TElement coef = it->second.extract(lam.as_vector());
        for (int s = 0; s < samples; ++s) {
            auto x = detail::sample_distinct(g, n);
            Rational t;
            do
                t = detail::sample_rational(g, 5, 7);
            while (t.is_zero() || t == Rational(1) || t == Rational(-1));
            Valuation v{{{Family::QGeneric, eval_generators(EvalKind::HallLittlewood, x, sym_N, t)}}};
            Rational lhs = eval_element(coef, v, t), rhs = hl_b(lam).evaluate(t) * hl_P(lam, x, t);
            rep.record(lhs == rhs, {{"check", "symmetrization"},
                                    {"lambda", lam.parts()},
                                    {"x", detail::texts(x)},
                                    {"t", t.to_string()},
                                    {"lhs", lhs.to_string()},
                                    {"rhs", rhs.to_string()}});
        }
    }
    return rep;
}

inline Report verify_fermion(const VerifyOptions &o)
{
    const int N = o.N.value_or(6), W = o.W.value_or(3);
    auto rep = detail::start("fermion", {{"N", N}, {"W", W}}, o);
    detail::absorb(rep, check_fermion(N, W), "relations");
    return rep;
}

// p = 1 - t x over Q[t].
inline Report verify_twisted(const VerifyOptions &o)
{
    const int N = o.N.value_or(5), W = o.W.value_or(3);
    auto rep = detail::start("twisted", {{"N", N}, {"W", W}, {"p", "1 - t*x"}}, o);
    detail::absorb(rep, check_twisted<TPoly>({TPoly(1), -TPoly::t()}, N, W), "relations");
    return rep;
}

inline Report verify_normal_order(const VerifyOptions &o)
{
    const int L = o.l.value_or(2), N = o.N.value_or(6);
    auto rep = detail::start("normal-order", {{"l", L}, {"N", N}}, o);
    for (int l = 0; l <= L; ++l) {
        detail::absorb(rep, check_normal_order<Rational>(FamilyTag::Schur, l, N), "schur l=" + std::to_string(l));
        detail::absorb(rep, check_normal_order<Rational>(FamilyTag::SchurQ, l, N), "schur-q l=" + std::to_string(l));
        detail::absorb(rep, check_normal_order<TPoly>(FamilyTag::HallLittlewood, l, N),
                       "hall-littlewood l=" + std::to_string(l));
    }
    return rep;
}

// Q* and R* tables against shifted Schur determinants.
inline Report verify_shifted_gen(const VerifyOptions &o)
{
    const int l = o.l.value_or(2), K = o.K.value_or(o.N.value_or(6));
    auto rep = detail::start("shifted-gen", {{"l", l}, {"K", K}}, o);
    const Window w = Window::standard(l, K);
    auto qt = qstar_multivar(w).table;
    for (const auto &alpha : integer_vectors_in_box(l, -K, K)) {
        if (!w.contains(alpha))
            continue;
        QElement got = qt.extract(alpha), expect = shifted_schur(alpha);
        rep.record(got == expect, {{"side", "plus"}, {"lambda", alpha}, {"lhs", got.to_string()}, {"rhs", expect.to_string()}});
    }
    auto rt = rstar_multivar(w).table;
    for (const auto &lam : partitions_up_to(K, l)) {
        QElement expect = shifted_schur(conjugate(lam), Presentation::E);
        if (lam.weight() % 2)
            expect = -expect;
        QElement got = rt.extract(lam.padded(l));
        rep.record(got == expect, {{"side", "minus"}, {"lambda", lam.parts()}, {"lhs", got.to_string()}, {"rhs", expect.to_string()}});
    }
    return rep;
}

// tau^a against the iterated step, DR*/DQ* on generators and on products of
// two generators, Psi* relations and the decomposition tables.
inline Report verify_shifted_relations(const VerifyOptions &o)
{
    const int K = o.K.value_or(5), W = o.W.value_or(3), L = o.l.value_or(2);
    const int tau_a = 4, tau_k = 8;
    auto rep = detail::start("shifted-relations", {{"K", K}, {"W", W}, {"l", L}, {"tau_a", tau_a}, {"tau_k", tau_k}}, o);
    auto hs = [](int k) { return hstar(k); };
    auto es = [](int k) { return estar(k); };
    auto num = [](int n) { return QElement(Rational(n)); };
    for (int a = 1; a <= tau_a; ++a)
        for (int k = 1; k <= tau_k; ++k) {
            QElement ih = hs(k), ie = es(k);
            for (int s = 0; s < a; ++s) {
                ih = detail::tau_step(ih);
                ie = detail::tau_step(ie);
            }
            QElement th = tau_apply(a, hs(k)), te = tau_apply(-a, es(k));
            rep.record(th == ih, {{"check", "tau"}, {"a", a}, {"k", k}, {"lhs", th.to_string()}, {"rhs", ih.to_string()}});
            rep.record(te == ie, {{"check", "tau-inverse"}, {"a", a}, {"k", k}, {"lhs", te.to_string()}, {"rhs", ie.to_string()}});
        }
    auto expect_eq = [&](const char *what, int m, int a, int b, const QElement &got, const QElement &want) {
        rep.record(got == want, {{"check", what}, {"m", m}, {"a", a}, {"b", b}, {"lhs", got.to_string()}, {"rhs", want.to_string()}});
    };
    for (int k = 1; k <= tau_k; ++k)
        for (int m = 0; m <= 3; ++m) {
            QElement dr = m == 0 ? hs(k) + num(k - 2) * hs(k - 1) : m == 1 ? -hs(k - 1) : QElement();
            QElement dq = m == 0 ? es(k) + num(k - 2) * es(k - 1) : m == 1 ? es(k - 1) : QElement();
            expect_eq("DR* generator", m, k, 0, drstar_apply(m, hs(k)), dr);
            expect_eq("DQ* generator", m, k, 0, dqstar_apply(m, es(k)), dq);
        }
    // (A_a - u h_{a-1})(A_b - u h_{b-1}) with u^2 = (u|2) + (u|1), and
    // (C_a + (u+1) e_{a-1})(C_b + (u+1) e_{b-1}) with (u+1)^2 = (u+1)(u+2) - (u+1).
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b) {
            QElement A = hs(a) + num(a - 2) * hs(a - 1), B = hs(b) + num(b - 2) * hs(b - 1);
            QElement hh = hs(a - 1) * hs(b - 1);
            const QElement dr[] = {A * B, -(A * hs(b - 1) + hs(a - 1) * B) + hh, hh, {}};
            QElement C = es(a) + num(a - 2) * es(a - 1), D = es(b) + num(b - 2) * es(b - 1);
            QElement ee = es(a - 1) * es(b - 1);
            const QElement dq[] = {C * D, C * es(b - 1) + es(a - 1) * D - ee, ee, {}};
            for (int m = 0; m <= 3; ++m) {
                expect_eq("DR* product", m, a, b, drstar_apply(m, hs(a) * hs(b)), dr[m]);
                expect_eq("DQ* product", m, a, b, dqstar_apply(m, es(a) * es(b)), dq[m]);
            }
        }
    detail::absorb(rep, check_shifted(K, W, L), "relations");
    return rep;
}

inline Report verify_lem2(const VerifyOptions &o)
{
    const int L = o.l.value_or(4), samples = 20;
    auto rep = detail::start("lem2", {{"l", L}, {"samples", samples}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    for (int l = 1; l <= L; ++l) {
        std::vector<std::vector<Rational>> pts;
        for (int i = 0; i < samples; ++i)
            pts.push_back(pole_free_point(g, l, l + 1));
        detail::absorb(rep, lem2_check(l, pts), "l=" + std::to_string(l));
    }
    return rep;
}

// Q*(u) R*(u) = 1 through u^-K after rewriting in h*, and the solved
// conversions evaluated at random points.
inline Report verify_qstar_inverse(const VerifyOptions &o)
{
    const int K = o.K.value_or(8), n = 5, samples = 3;
    auto rep = detail::start("qstar-inverse", {{"K", K}, {"n", n}, {"samples", samples}}, o);
    auto g = detail::suite_rng(o.seed, rep.suite);
    auto c = invert_shifted(K);
    auto prod = to_inv_u(qstar_series(K), K) * to_inv_u(rstar_series(K), K);
    std::map<int, QElement> in_h;
    for (const auto &[e, x] : prod.terms())
        in_h.emplace(e, c.to_h(x));
    auto one = InvUSeries::truncated(in_h, K);
    rep.record(one.agrees_with(InvUSeries::monomial(0), K), {{"check", "product"}, {"lhs", one.to_string()}});
    for (int s = 0; s < samples; ++s) {
        std::vector<Rational> x;
        for (int i = 0; i < n; ++i)
            x.push_back(detail::sample_rational(g, 7, 4));
        auto [hv, ev] = shifted_generator_values(x, K);
        for (int k = 1; k <= K; ++k) {
            Rational e_via_h = eval_shifted(c.e_in_h[k], x), h_via_e = eval_shifted(c.h_in_e[k], x);
            rep.record(e_via_h == ev[k] && h_via_e == hv[k], {{"check", "presentations"},
                                                              {"k", k},
                                                              {"x", detail::texts(x)},
                                                              {"e_via_h", e_via_h.to_string()},
                                                              {"e", ev[k].to_string()},
                                                              {"h_via_e", h_via_e.to_string()},
                                                              {"h", hv[k].to_string()}});
        }
    }
    return rep;
}

// Clifford relations on every monomial with head length <= 6 in [-6, 8],
// charge |m| <= 2, and the boson-fermion dictionary.
inline Report verify_fock(const VerifyOptions &o)
{
    const int N = o.N.value_or(6), M = 2, head = 6, lo = -6, hi = 8, jlo = -4, jhi = 6;
    auto rep = detail::start(
        "fock", {{"N", N}, {"M", M}, {"head", head}, {"indices", {lo, hi}}, {"j", {jlo, jhi}}}, o);
    detail::absorb(rep, check_clifford(wedge_monomials(M, head, lo, hi), lo, hi), "clifford");
    detail::absorb(rep, check_bf(N, M, jlo, jhi), "dictionary");
    return rep;
}

inline const std::vector<std::pair<std::string, std::function<Report(const VerifyOptions &)>>> &verify_suites()
{
    static const std::vector<std::pair<std::string, std::function<Report(const VerifyOptions &)>>> s{
        {"jacobi-trudi", verify_jacobi_trudi},
        {"r-conjugate", verify_r_conjugate},
        {"pfaffian", verify_pfaffian},
        {"schur-q-coherence", verify_schur_q},
        {"hall-littlewood", verify_hall_littlewood},
        {"fermion", verify_fermion},
        {"twisted", verify_twisted},
        {"normal-order", verify_normal_order},
        {"shifted-gen", verify_shifted_gen},
        {"shifted-relations", verify_shifted_relations},
        {"lem2", verify_lem2},
        {"qstar-inverse", verify_qstar_inverse},
        {"fock", verify_fock},
    };
    return s;
}

inline bool is_suite(const std::string &name)
{
    if (name == "all")
        return true;
    for (const auto &[n, f] : verify_suites())
        if (n == name)
            return true;
    return false;
}

// "all" runs every suite with default bounds; the summary lists each one.
inline Report run_suite(const std::string &name, const VerifyOptions &o)
{
    if (name != "all") {
        for (const auto &[n, f] : verify_suites())
            if (n == name)
                return f(o);
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    VerifyOptions defaults;
    defaults.seed = o.seed;
    Report all = detail::start("all", {}, o);
    nlohmann::json summary = nlohmann::json::array();
    for (const auto &[n, f] : verify_suites()) {
        Report r = f(defaults);
        summary.push_back({{"suite", n}, {"instances", r.instances}, {"pass", r.pass()}, {"failure_count", r.failure_count}});
        detail::absorb(all, r, n);
    }
    all.parameters["suites"] = summary;
    return all;
}

} // namespace symgen
