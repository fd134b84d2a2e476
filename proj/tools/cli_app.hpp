#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <continued_roots/continued_roots.hpp>

namespace continued_roots::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_error = 2;
inline constexpr int exit_io = 3;

struct options {
    std::string problem;
    std::string file;
    std::size_t order = 0;
    std::size_t kmax = 0;
    std::vector<double> xs;
    double L = 100.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

inline benchmark_problem load_problem(const options& opt)
{
    if (!opt.problem.empty()) {
        return problem(opt.problem);
    }
    if (opt.file.empty()) {
        throw error(error_kind::invalid_input, "one of --problem or --file is required");
    }
    std::ifstream in(opt.file);
    if (!in) {
        throw error(error_kind::invalid_input, "cannot read problem file '" + opt.file + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_problem(text);
}

inline nlohmann::json error_object(const error& e)
{
    nlohmann::json body{{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (e.depth()) {
        body["depth"] = *e.depth();
    }
    return {{"error", body}};
}

inline nlohmann::json fit_object(const benchmark_problem& p, const continued_root& approx)
{
    nlohmann::json out{{"problem", p.name},
                       {"order", approx.order()},
                       {"s", approx.power()},
                       {"A", std::vector<double>(approx.params().begin(), approx.params().end())},
                       {"is_real_valued", approx.is_real_valued()},
                       {"beta_k", finite_order_exponent(approx.power(), approx.order())}};
    try {
        out["B_k"] = amplitude(approx).amplitude;
    } catch (const error& e) {
        out["B_k"] = nullptr;
        out["amplitude_error"] = e.what();
    }
    return out;
}

inline continued_root fit_problem(const benchmark_problem& p, std::size_t order)
{
    if (order < 1) {
        throw error(error_kind::invalid_input, "--order must be at least 1");
    }
    return fit(p.series(order), exponent_to_power(p.beta));
}

struct outcome {
    std::string text;
    int code = exit_ok;
};

inline outcome cmd_fit(const options& opt)
{
    const auto p = load_problem(opt);
    return {fit_object(p, fit_problem(p, opt.order)).dump(2) + "\n"};
}

inline outcome cmd_table(const options& opt)
{
    if (opt.kmax < 2) {
        throw error(error_kind::invalid_input, "--kmax must be at least 2");
    }
    const auto p = load_problem(opt);
    const auto report = extrapolate(p.series(opt.kmax), p.target(), p.mapping(), 2, opt.kmax);
    const int code = report.any_failed() ? exit_failed : exit_ok;
    if (opt.format == "csv") {
        return {to_csv(report), code};
    }
    if (opt.format == "text") {
        return {to_text(report), code};
    }
    auto doc = to_json(report);
    doc["problem"] = p.name;
    return {doc.dump(2) + "\n", code};
}

inline outcome cmd_eval(const options& opt)
{
    const auto p = load_problem(opt);
    const auto approx = fit_problem(p, opt.order);
    nlohmann::json points = nlohmann::json::array();
    for (double x : opt.xs) {
        points.push_back({{"x", x}, {"f", evaluate(approx, x)}});
    }
    nlohmann::json out{{"problem", p.name}, {"order", approx.order()}, {"s", approx.power()}, {"points", points}};
    return {out.dump(2) + "\n"};
}

inline outcome cmd_diagnose(const options& opt)
{
    const auto p = load_problem(opt);
    auto doc = to_json(herschfeld_terms(fit_problem(p, opt.order), opt.L));
    doc["problem"] = p.name;
    doc["order"] = opt.order;
    return {doc.dump(2) + "\n", exit_ok};
}

struct pade_check_result {
    std::vector<double> params;
    double max_relative_deviation;
    std::size_t numerator_degree;
    std::size_t denominator_degree;
    bool passed;
};

/// Random positive parameters, nested s = -1 evaluation against the reduced
/// rational function on 20 evenly spaced points of [0, 10].
inline pade_check_result pade_check(std::size_t order, std::uint64_t seed)
{
    if (order < 1) {
        throw error(error_kind::invalid_input, "--order must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    std::vector<double> params(order);
    for (auto& a : params) {
        a = dist(rng);
    }
    const continued_root approx(-1.0, params);
    const auto rational = to_rational(approx);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = 10.0 * i / 19.0;
        const double nested = evaluate(approx, x);
        worst = std::max(worst, std::abs(nested - rational.evaluate(x)) / std::abs(nested));
    }
    const std::size_t want_num = order / 2;
    const std::size_t want_den = (order + 1) / 2;
    const bool degrees_ok = rational.numerator_degree() == want_num && rational.denominator_degree() == want_den;
    return {std::move(params), worst, rational.numerator_degree(), rational.denominator_degree(),
            worst < 1e-10 && degrees_ok};
}

inline outcome cmd_pade_check(const options& opt)
{
    const auto r = pade_check(opt.order, opt.seed);
    nlohmann::json out{{"order", opt.order},
                       {"seed", opt.seed},
                       {"A", r.params},
                       {"numerator_degree", r.numerator_degree},
                       {"denominator_degree", r.denominator_degree},
                       {"max_relative_deviation", r.max_relative_deviation},
                       {"verdict", r.passed ? "PASS" : "FAIL"}};
    return {out.dump(2) + "\n", r.passed ? exit_ok : exit_failed};
}

/// Runs one command line. Output goes to `out` or to --out; usage problems
/// go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Extrapolate small-variable series with self-similar continued roots", "continued-roots"};
    app.require_subcommand(1);
    options opt;

    auto add_source = [&](CLI::App* sub) {
        auto* prob = sub->add_option("--problem", opt.problem, "built-in problem name");
        auto* file = sub->add_option("--file", opt.file, "JSON problem file");
        prob->excludes(file);
        file->excludes(prob);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "write output to this path");
        sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* fit_cmd = app.add_subcommand("fit", "fit one approximant and report its parameters");
    add_source(fit_cmd);
    fit_cmd->add_option("--order", opt.order, "approximant order k")->required();
    add_output(fit_cmd);

    auto* table_cmd = app.add_subcommand("table", "amplitude table for orders 2..kmax");
    add_source(table_cmd);
    table_cmd->add_option("--kmax", opt.kmax, "highest order")->required();
    add_output(table_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a fitted approximant");
    add_source(eval_cmd);
    eval_cmd->add_option("--order", opt.order, "approximant order k")->required();
    eval_cmd->add_option("--x", opt.xs, "evaluation points")->required();
    add_output(eval_cmd);

    auto* diag_cmd = app.add_subcommand("diagnose", "nested-radical convergence diagnostics");
    add_source(diag_cmd);
    diag_cmd->add_option("--order", opt.order, "approximant order k")->required();
    diag_cmd->add_option("--L", opt.L, "variable bound")->capture_default_str();
    add_output(diag_cmd);

    auto* pade_cmd = app.add_subcommand("pade-check", "s = -1 rational reduction check");
    pade_cmd->add_option("--order", opt.order, "approximant order k")->required();
    pade_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    add_output(pade_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    outcome result;
    try {
        if (fit_cmd->parsed()) {
            result = cmd_fit(opt);
        } else if (table_cmd->parsed()) {
            result = cmd_table(opt);
        } else if (eval_cmd->parsed()) {
            result = cmd_eval(opt);
        } else if (diag_cmd->parsed()) {
            result = cmd_diagnose(opt);
        } else {
            result = cmd_pade_check(opt);
        }
    } catch (const error& e) {
        result = {error_object(e).dump(2) + "\n", exit_error};
    }

    if (opt.out.empty()) {
        out << result.text;
        return result.code;
    }
    std::ofstream file(opt.out, std::ios::binary);
    file << result.text;
    if (!file.good()) {
        err << "cannot write " << opt.out << '\n';
        return exit_io;
    }
    return result.code;
}

} // namespace continued_roots::cli
