#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"
#include "error.hpp"
#include "power_series.hpp"

namespace continued_roots {

// Rigid-wall particle-in-a-box energy function, f(g) = 1 + g²/32 + (g/4)√(1 + g²/64).
inline double string_exact_f(double g)
{
    return 1.0 + g * g / 32.0 + g / 4.0 * std::sqrt(1.0 + g * g / 64.0);
}

// Taylor coefficients of string_exact_f through g^K, from the binomial series
// of √(1 + g²/64).
inline std::vector<double> string_coefficients(std::size_t order)
{
    std::vector<double> a(order + 1, 0.0);
    a[0] = 1.0;
    if (order >= 2) {
        a[2] += 1.0 / 32.0;
    }
    double binom = 1.0; // C(1/2, m)
    double scale = 0.25; // (1/4) · 64^{-m}
    for (std::size_t m = 0; 2 * m + 1 <= order; ++m) {
        a[2 * m + 1] += binom * scale;
        binom *= (0.5 - static_cast<double>(m)) / static_cast<double>(m + 1);
        scale /= 64.0;
    }
    return a;
}

struct benchmark_problem {
    std::string name;
    std::function<std::vector<double>(std::size_t)> coefficient_source;
    std::optional<std::size_t> max_order; // nullopt: generator has no upper limit
    double beta;
    std::optional<double> known_amplitude;
    double observable_prefactor = 1.0;
    std::optional<double> observable_exact;
    // Point at which the finite-order asymptote B_k x^{beta_k} is referred to
    // the target exponent when forming the reported observable.
    double reference_scale = 1.0;

    std::vector<double> coefficients(std::size_t order) const
    {
        if (max_order && order > *max_order) {
            throw error(error_kind::invalid_input, name + " has coefficients only through order "
                                                       + std::to_string(*max_order));
        }
        return coefficient_source(order);
    }

    truncated_series<double> series(std::size_t order) const
    {
        return truncated_series<double>::from(coefficients(order));
    }

    exponent_target target() const { return {beta, known_amplitude}; }

    observable_mapping mapping() const { return {observable_prefactor, reference_scale, observable_exact}; }
};

inline constexpr std::array<std::string_view, 4> problem_names{
    "nls_coherent_modes", "froehlich_polaron", "fluid_membrane", "fluid_string"};

namespace detail {

inline std::function<std::vector<double>(std::size_t)> fixed_coefficients(std::vector<double> all)
{
    return [all = std::move(all)](std::size_t order) {
        return std::vector<double>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(order + 1));
    };
}

} // namespace detail

inline benchmark_problem problem(std::string_view name)
{
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    if (name == "nls_coherent_modes") {
        return {std::string(name),
                detail::fixed_coefficients({1.0, 1.0, -1.0 / 8.0, 1.0 / 32.0, -1.0 / 128.0, 3.0 / 2048.0}),
                5, 2.0 / 3.0, 1.5, 1.0, 1.5, 1.0};
    }
    if (name == "froehlich_polaron") {
        return {std::string(name), detail::fixed_coefficients({1.0, 1.591962e-2, 0.806070e-3}),
                2, 1.0, 0.108513, 1.0, 0.108513, 1.0};
    }
    if (name == "fluid_membrane") {
        return {std::string(name),
                detail::fixed_coefficients({1.0, 1.0 / 4.0, 1.0 / 32.0, 2.176347e-3, 0.552721e-4, -0.721482e-5,
                                            -1.777848e-6}),
                6, 2.0, 0.064683, pi2 / 8.0, 0.0798, pi2};
    }
    if (name == "fluid_string") {
        return {std::string(name), string_coefficients, std::nullopt, 2.0, 1.0 / 16.0, pi2 / 8.0, pi2 / 128.0, pi2};
    }
    std::string valid;
    for (auto n : problem_names) {
        valid += valid.empty() ? "" : ", ";
        valid += n;
    }
    throw error(error_kind::not_found, "unknown problem '" + std::string(name) + "'; valid names: " + valid);
}

} // namespace continued_roots
