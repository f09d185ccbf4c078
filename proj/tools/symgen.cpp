// symgen command-line front end: expand, closed-form, verify, eval.
// Exit codes: 0 success or pass, 1 verification failure, 2 usage or input error.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symgen/symgen.hpp"

using namespace symgen;
using nlohmann::json;

namespace {

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_points(const std::string &text)
{
    std::vector<Rational> x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        x.push_back(Rational::parse(item));
    return x;
}

// Two aligned columns.
void print_rows(const std::vector<std::pair<std::string, std::string>> &rows)
{
    std::size_t w = 0;
    for (const auto &r : rows)
        w = std::max(w, r.first.size());
    for (const auto &[k, v] : rows)
        std::cout << k << std::string(w - k.size() + 2, ' ') << v << "\n";
}

template <Scalar S> void print_table(const CoeffTable<S> &t, json extra, bool as_json)
{
    if (as_json) {
        json j = to_json(t);
        j.update(extra);
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto &[v, e] : t.entries())
        rows.emplace_back("(" + format_vector(v) + ")", e.to_string());
    print_rows(rows);
}

int cmd_expand(const std::string &family, int l, int N, const std::string &side, bool as_json)
{
    if (l < 1 || N < 0)
        throw Usage("--l must be >= 1 and --N >= 0");
    if (side != "q" && side != "r")
        throw Usage("--side must be q or r");
    const bool r_side = side == "r";
    const Window w = Window::standard(l, N);
    json extra{{"family", family}, {"side", side}};
    if (family == "shifted") {
        auto t = r_side ? rstar_multivar(w) : qstar_multivar(w);
        extra["basis"] = basis_name(t.basis);
        print_table(t.table, extra, as_json);
        return 0;
    }
    FamilyTag tag;
    if (family == "schur")
        tag = FamilyTag::Schur;
    else if (family == "schur-q")
        tag = FamilyTag::SchurQ;
    else if (family == "hall-littlewood")
        tag = FamilyTag::HallLittlewood;
    else
        throw Usage("unknown family '" + family + "'");
    if (tag == FamilyTag::HallLittlewood)
        print_table(r_side ? family_r_table<TPoly>(tag, w) : family_table<TPoly>(tag, w), extra, as_json);
    else
        print_table(r_side ? family_r_table<Rational>(tag, w) : family_table<Rational>(tag, w), extra, as_json);
    return 0;
}

int cmd_closed_form(const std::string &kind, const std::string &index, bool as_json)
{
    const IntegerVector alpha = parse_vector(index);
    if (kind == "straighten") {
        auto s = straighten(alpha);
        if (as_json)
            std::cout << json{{"input", alpha}, {"sign", s.sign}, {"partition", s.partition.parts()}}.dump(2) << "\n";
        else if (s.is_zero())
            std::cout << "0\n";
        else
            std::cout << "sign=" << s.sign << " partition=(" << format_partition(s.partition) << ")\n";
        return 0;
    }
    QElement e;
    if (kind == "schur")
        e = schur_h(alpha);
    else if (kind == "schur-e")
        e = schur_e(parse_partition(index));
    else if (kind == "schur-q")
        e = schurq(parse_partition(index));
    else if (kind == "shifted-schur")
        e = shifted_schur(alpha);
    else
        throw Usage("unknown closed form '" + kind + "'");
    if (as_json)
        std::cout << json{{"kind", kind}, {"index", alpha}, {"element", e.to_string()}}.dump(2) << "\n";
    else
        std::cout << e.to_string() << "\n";
    return 0;
}

int cmd_verify(const std::string &suite, const VerifyOptions &o, bool as_json)
{
    if (!is_suite(suite))
        throw Usage("unknown suite '" + suite + "'");
    Report r = run_suite(suite, o);
    if (as_json) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        std::cout << "suite " << r.suite << ": " << (r.pass() ? "pass" : "FAIL") << ", " << r.instances
                  << " instances, " << r.failure_count << " failures\n";
        if (r.parameters.contains("suites"))
            for (const auto &s : r.parameters["suites"])
                std::cout << "  " << s["suite"].get<std::string>() << ": " << (s["pass"].get<bool>() ? "pass" : "FAIL")
                          << ", " << s["instances"] << " instances\n";
        for (const auto &f : r.failures)
            std::cout << "  failure " << f.dump() << "\n";
    }
    return r.pass() ? 0 : 1;
}

int cmd_eval(const std::string &kind, const std::string &index, const std::string &points,
             const std::optional<std::string> &t_text, bool as_json)
{
    const auto x = parse_points(points);
    const Partition lambda = parse_partition(index);
    std::optional<Rational> t;
    if (t_text)
        t = Rational::parse(*t_text);
    if (t && kind != "hl")
        throw Usage("--t applies to hl only");
    Rational value;
    if (kind == "schur") {
        value = schur_bialternant(lambda, x);
    } else if (kind == "schur-q") {
        Valuation v{{{Family::QSchur, eval_generators(EvalKind::SchurQ, x, std::max(lambda.weight(), 1))}}};
        value = eval_element(schurq(lambda), v);
    } else if (kind == "shifted-schur") {
        value = shifted_schur_ratio(lambda, x);
    } else if (kind == "hl") {
        if (!t)
            throw Usage("hl needs --t");
        value = hl_P(lambda, x, *t);
    } else {
        throw Usage("unknown evaluation kind '" + kind + "'");
    }
    if (as_json) {
        json j{{"kind", kind}, {"lambda", lambda.parts()}, {"x", points}, {"value", value.to_string()}};
        if (t)
            j["t"] = t->to_string();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << value.to_string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Generating-function constructions of symmetric and shifted symmetric functions"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    std::string family, side = "q";
    int l = 2, N = 4;
    auto *expand = app.add_subcommand("expand", "Coefficient table of a generating function");
    expand->add_option("--family", family, "schur, schur-q, hall-littlewood or shifted")->required();
    expand->add_option("--l", l, "Number of variables");
    expand->add_option("--N", N, "Weight bound |lambda| <= N and box [-N, N]");
    expand->add_option("--side", side, "q for Q(u_1..u_l), r for R(u_1..u_l)");

    std::string kind, index;
    auto *closed = app.add_subcommand("closed-form", "Closed form of one function (use -- before negative indices)");
    closed->add_option("kind", kind, "schur, schur-e, schur-q, shifted-schur or straighten")->required();
    closed->add_option("index", index, "Comma-separated index vector")->required();

    std::string suite;
    std::optional<int> vN, vW, vl, vK;
    std::uint64_t seed = 42;
    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Suite name or all")->required();
    verify->add_option("--N", vN);
    verify->add_option("--W", vW);
    verify->add_option("--l", vl);
    verify->add_option("--K", vK);
    verify->add_option("--seed", seed);

    std::string ekind, eindex, points;
    std::optional<std::string> t_text;
    auto *eval = app.add_subcommand("eval", "Evaluate at a point");
    eval->add_option("kind", ekind, "schur, schur-q, shifted-schur or hl")->required();
    eval->add_option("lambda", eindex, "Partition")->required();
    eval->add_option("--x", points, "Comma-separated rational coordinates")->required();
    eval->add_option("--t", t_text, "Hall-Littlewood parameter");

    for (auto *sub : {expand, closed, verify, eval})
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    const bool as_json = format == "json";
    try {
        if (*expand)
            return cmd_expand(family, l, N, side, as_json);
        if (*closed)
            return cmd_closed_form(kind, index, as_json);
        if (*verify)
            return cmd_verify(suite, VerifyOptions{vN, vW, vl, vK, seed}, as_json);
        return cmd_eval(ekind, eindex, points, t_text, as_json);
    } catch (const std::exception &e) {
        // parse, shape, window, strictness and point errors are all input errors
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
