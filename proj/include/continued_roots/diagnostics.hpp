#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "continued_root.hpp"
#include "error.hpp"
#include "power_series.hpp"

namespace continued_roots {

// gamma_n = (1 - s^{n-1}) / ((1 - s) s^{n-1}); gamma_1 = 0.
inline double nested_radical_gamma(double s, std::size_t n)
{
    if (n == 0) {
        throw error(error_kind::invalid_input, "gamma is indexed from n = 1");
    }
    const double s_nm1 = std::pow(s, static_cast<double>(n - 1));
    return (1.0 - s_nm1) / ((1.0 - s) * s_nm1);
}

struct herschfeld_term {
    std::size_t n;
    double gamma;
    double term;  // x_n^{s^n} evaluated at x = L
    double bound; // (L M)^{gamma_n s^n}
};

/// Nested-radical form of an approximant at x = L, with the boundedness
/// check that certifies convergence. Boundedness can only be verified up
/// to the available depth; `bound_limit` is the analytic n -> inf value.
struct convergence_diagnostics {
    double s;
    double L;
    double M;
    bool s_valid;
    std::vector<herschfeld_term> terms;
    double bound_limit;
    bool bounded;
    std::size_t certified_depth;
};

inline convergence_diagnostics herschfeld_terms(const continued_root& approx, double L)
{
    const double s = approx.power();
    if (!(std::abs(s) < 1.0)) {
        throw error(error_kind::convergence_precondition, "convergence requires |s| < 1");
    }
    if (!(L > 0.0)) {
        throw error(error_kind::invalid_input, "variable bound L must be positive");
    }
    const auto A = approx.params();
    for (std::size_t j = 0; j < A.size(); ++j) {
        if (!(A[j] > 0.0)) {
            throw error(error_kind::realness, "diagnostics need A_" + std::to_string(j + 1) + " > 0", j + 1);
        }
    }
    const double M = *std::max_element(A.begin(), A.end());
    const double log_lm = std::log(L * M);

    convergence_diagnostics d{s, L, M, true, {}, std::exp(log_lm * s / (1.0 - s)), true, A.size()};

    // x_n = L^{gamma_n} prod_{j<n} A_j^{s^{j-n}}, so
    // x_n^{s^n} = L^{gamma_n s^n} prod_{j<n} A_j^{s^j}.
    double log_prod = 0.0;
    double s_j = 1.0;
    double largest_bound = d.bound_limit;
    for (std::size_t n = 2; n <= A.size() + 1; ++n) {
        s_j *= s;
        log_prod += s_j * std::log(A[n - 2]);
        const double gamma = nested_radical_gamma(s, n);
        const double gamma_sn = (s - std::pow(s, static_cast<double>(n))) / (1.0 - s);
        herschfeld_term t{n, gamma, std::exp(gamma_sn * std::log(L) + log_prod), std::exp(gamma_sn * log_lm)};
        largest_bound = std::max(largest_bound, t.bound);
        d.terms.push_back(t);
    }
    for (const auto& t : d.terms) {
        if (!std::isfinite(t.term) || t.term > largest_bound * (1.0 + 1e-12)) {
            d.bounded = false;
        }
    }
    return d;
}

struct report_row {
    std::size_t k;
    std::optional<double> amplitude;
    std::optional<double> exponent;
    std::optional<double> observable;
    std::optional<double> percent_error;
    std::optional<std::string> failure;

    bool failed() const noexcept { return failure.has_value(); }
};

/// Per-order amplitudes mapped to the reported observable
///   observable_k = prefactor · B_k · reference_scale^(beta_k − beta),
/// with percent errors (approx − exact)/exact × 100 when the exact value is known.
struct extrapolation_report {
    std::vector<report_row> rows;
    double beta;
    std::optional<double> known_amplitude;
    std::optional<double> observable_exact;
    double observable_prefactor = 1.0;
    double reference_scale = 1.0;

    bool any_failed() const noexcept
    {
        return std::any_of(rows.begin(), rows.end(), [](const report_row& r) { return r.failed(); });
    }
};

struct observable_mapping {
    double prefactor = 1.0;
    double reference_scale = 1.0;
    std::optional<double> exact; // defaults to prefactor · known amplitude
};

namespace detail {

inline report_row make_row(const continued_root& approx, const extrapolation_report& report)
{
    report_row row{approx.order(), {}, {}, {}, {}, {}};
    try {
        const auto r = amplitude(approx);
        row.amplitude = r.amplitude;
        row.exponent = r.exponent;
        row.observable = report.observable_prefactor * r.amplitude
                         * std::pow(report.reference_scale, r.exponent - report.beta);
        if (report.observable_exact) {
            row.percent_error = (*row.observable - *report.observable_exact) / *report.observable_exact * 100.0;
        }
    } catch (const error& e) {
        row.failure = e.what();
    }
    return row;
}

inline extrapolation_report empty_report(const exponent_target& target, const observable_mapping& mapping)
{
    if (!(mapping.prefactor > 0.0) || !(mapping.reference_scale > 0.0)) {
        throw error(error_kind::invalid_input, "observable prefactor and reference scale must be positive");
    }
    extrapolation_report report;
    report.beta = target.beta;
    report.known_amplitude = target.amplitude;
    report.observable_prefactor = mapping.prefactor;
    report.reference_scale = mapping.reference_scale;
    if (mapping.exact) {
        report.observable_exact = mapping.exact;
    } else if (target.amplitude) {
        report.observable_exact = mapping.prefactor * *target.amplitude;
    }
    return report;
}

} // namespace detail

inline extrapolation_report sequence_report(std::span<const continued_root> fits, const exponent_target& target,
                                            const observable_mapping& mapping = {})
{
    for (std::size_t i = 1; i < fits.size(); ++i) {
        if (fits[i].order() <= fits[i - 1].order()) {
            throw error(error_kind::invalid_input, "approximants must be in ascending order");
        }
    }
    auto report = detail::empty_report(target, mapping);
    for (const auto& f : fits) {
        report.rows.push_back(detail::make_row(f, report));
    }
    return report;
}

/// Fits orders k_min..k_max of `series` with s from the target exponent and
/// reports each. A fit failure marks its row and does not stop the sequence.
inline extrapolation_report extrapolate(const truncated_series<double>& series, const exponent_target& target,
                                        const observable_mapping& mapping, std::size_t k_min, std::size_t k_max)
{
    if (k_min < 1 || k_min > k_max || k_max > series.order()) {
        throw error(error_kind::invalid_input, "order range must satisfy 1 <= k_min <= k_max <= series order");
    }
    const double s = exponent_to_power(target.beta);
    auto report = detail::empty_report(target, mapping);
    const auto c = series.coeffs();
    for (std::size_t k = k_min; k <= k_max; ++k) {
        try {
            const auto approx = fit(truncated_series<double>::from(std::vector<double>(c.begin(), c.begin() + k + 1)), s);
            report.rows.push_back(detail::make_row(approx, report));
        } catch (const error& e) {
            report.rows.push_back({k, {}, {}, {}, {}, std::string(e.what())});
        }
    }
    return report;
}

} // namespace continued_roots
