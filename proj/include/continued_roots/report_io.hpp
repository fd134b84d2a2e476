#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "diagnostics.hpp"
#include "error.hpp"

namespace continued_roots {

/// Problem read from a JSON document:
///   {"name": "...", "coefficients": [1, ...], "beta": 2,
///    "known_amplitude": 0.06, "observable_prefactor": 1.23,
///    "observable_exact": 0.08, "reference_scale": 1}
/// Only name, coefficients and beta are required.
inline benchmark_problem problem_from_json(const nlohmann::json& doc)
{
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!doc.is_object() || !doc.contains(key)) {
            throw error(error_kind::invalid_input, std::string("problem file is missing '") + key + "'");
        }
        return doc.at(key);
    };
    auto optional_number = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key) || doc.at(key).is_null()) {
            return std::nullopt;
        }
        if (!doc.at(key).is_number()) {
            throw error(error_kind::invalid_input, std::string("'") + key + "' must be a number");
        }
        return doc.at(key).get<double>();
    };

    const auto& name = need("name");
    const auto& coeffs = need("coefficients");
    const auto& beta = need("beta");
    if (!name.is_string() || !coeffs.is_array() || !beta.is_number()) {
        throw error(error_kind::invalid_input, "problem file fields have the wrong types");
    }
    std::vector<double> a;
    for (const auto& c : coeffs) {
        if (!c.is_number()) {
            throw error(error_kind::invalid_input, "coefficients must be numbers");
        }
        a.push_back(c.get<double>());
    }
    if (a.empty()) {
        throw error(error_kind::invalid_input, "coefficients must not be empty");
    }
    if (a[0] != 1.0) {
        throw error(error_kind::invalid_input,
                    "coefficients[0] must be 1: divide the series by its known leading factor first");
    }
    const double b = beta.get<double>();
    if (!(b > -0.5)) {
        throw error(error_kind::domain, "beta must exceed -1/2");
    }

    benchmark_problem p;
    p.name = name.get<std::string>();
    p.max_order = a.size() - 1;
    p.coefficient_source = detail::fixed_coefficients(std::move(a));
    p.beta = b;
    p.known_amplitude = optional_number("known_amplitude");
    p.observable_prefactor = optional_number("observable_prefactor").value_or(1.0);
    p.observable_exact = optional_number("observable_exact");
    p.reference_scale = optional_number("reference_scale").value_or(1.0);
    if (!(p.observable_prefactor > 0.0) || !(p.reference_scale > 0.0)) {
        throw error(error_kind::invalid_input, "observable_prefactor and reference_scale must be positive");
    }
    return p;
}

inline benchmark_problem parse_problem(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(error_kind::invalid_input, std::string("problem file is not valid JSON: ") + e.what());
    }
    return problem_from_json(doc);
}

// Shortest decimal that parses back to the same double.
inline std::string format_exact(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::string format_fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline nlohmann::json to_json(const extrapolation_report& report)
{
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row{{"k", r.k}, {"B_k", opt(r.amplitude)}, {"beta_k", opt(r.exponent)},
                           {"observable", opt(r.observable)}, {"failed", r.failed()}};
        if (report.observable_exact) {
            row["percent_error"] = opt(r.percent_error);
        }
        if (r.failure) {
            row["error"] = *r.failure;
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json out{{"beta", report.beta},
                       {"s", report.beta / (1.0 + report.beta)},
                       {"observable_prefactor", report.observable_prefactor},
                       {"reference_scale", report.reference_scale},
                       {"known_amplitude", opt(report.known_amplitude)},
                       {"observable_exact", opt(report.observable_exact)},
                       {"rows", std::move(rows)}};
    return out;
}

namespace detail {

inline std::string csv_quote(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string q = "\"";
    for (char c : field) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    q += '"';
    return q;
}

} // namespace detail

/// CSV with header k,B_k,beta_k,observable,percent_error. Numbers carry full
/// round-trip precision; a failed row has its message in the B_k column.
inline std::string to_csv(const extrapolation_report& report)
{
    std::string out = "k,B_k,beta_k,observable,percent_error\r\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); };
    for (const auto& r : report.rows) {
        out += std::to_string(r.k) + ',';
        if (r.failed()) {
            out += detail::csv_quote("failed: " + *r.failure) + ",,,";
        } else {
            out += cell(r.amplitude) + ',' + cell(r.exponent) + ',' + cell(r.observable) + ',' + cell(r.percent_error);
        }
        out += "\r\n";
    }
    return out;
}

/// Fixed-width table with six decimals, matching how values are usually quoted.
inline std::string to_text(const extrapolation_report& report)
{
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%4s %12s %12s %12s %10s\n", "k", "B_k", "beta_k", "observable", "error %");
    os << line;
    for (const auto& r : report.rows) {
        if (r.failed()) {
            os << r.k << "  failed: " << *r.failure << '\n';
            continue;
        }
        std::string err = r.percent_error ? format_fixed(*r.percent_error, 2) : "-";
        std::snprintf(line, sizeof line, "%4zu %12.6f %12.6f %12.6f %10s\n", r.k, *r.amplitude, *r.exponent,
                      *r.observable, err.c_str());
        os << line;
    }
    return os.str();
}

/// RFC-4180 field splitter; enough for reading back reports.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            if (any || !field.empty()) {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            field.clear();
            record.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

inline nlohmann::json to_json(const convergence_diagnostics& d)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : d.terms) {
        terms.push_back({{"n", t.n}, {"gamma", t.gamma}, {"term", t.term}, {"bound", t.bound}});
    }
    return {{"s", d.s},
            {"L", d.L},
            {"M", d.M},
            {"s_valid", d.s_valid},
            {"bound_limit", d.bound_limit},
            {"bounded", d.bounded},
            {"certified_depth", d.certified_depth},
            {"certificate", "bounded up to finite depth " + std::to_string(d.certified_depth)},
            {"terms", std::move(terms)}};
}

} // namespace continued_roots
