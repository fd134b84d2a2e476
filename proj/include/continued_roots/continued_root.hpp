#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "power_series.hpp"

namespace continued_roots {

/// f_k*(x) = (1 + A_1 x (1 + A_2 x ( ... (1 + A_k x)^s ... )^s )^s)^s
///
/// The same power s is used at every depth. Parameters may be negative;
/// such an approximant is still a valid object but is only guaranteed to
/// be real on [0, inf) when every A_n >= 0.
class continued_root {
public:
    continued_root(double s, std::vector<double> params) : s_(s), params_(std::move(params))
    {
        if (params_.empty()) {
            throw error(error_kind::invalid_input, "continued root needs at least one parameter");
        }
    }

    double power() const noexcept { return s_; }
    std::span<const double> params() const noexcept { return params_; }
    std::size_t order() const noexcept { return params_.size(); }

    bool is_real_valued() const noexcept
    {
        return std::all_of(params_.begin(), params_.end(), [](double a) { return a >= 0.0; });
    }

    // Same power, first `k` parameters.
    continued_root truncated(std::size_t k) const
    {
        if (k == 0 || k > params_.size()) {
            throw error(error_kind::invalid_input, "truncation order out of range");
        }
        return {s_, std::vector<double>(params_.begin(), params_.begin() + static_cast<std::ptrdiff_t>(k))};
    }

private:
    double s_;
    std::vector<double> params_;
};

/// Target large-variable law f(x) ~ B x^beta; beta > -1/2 so that |s| < 1.
struct exponent_target {
    double beta;
    std::optional<double> amplitude;
};

struct amplitude_result {
    double amplitude;
    double exponent;
    std::size_t order;
};

struct rational_function {
    std::vector<double> numerator;
    std::vector<double> denominator;

    std::size_t numerator_degree() const noexcept { return numerator.size() - 1; }
    std::size_t denominator_degree() const noexcept { return denominator.size() - 1; }

    double evaluate(double x) const
    {
        auto horner = [x](const std::vector<double>& p) {
            double acc = 0.0;
            for (auto it = p.rbegin(); it != p.rend(); ++it) {
                acc = acc * x + *it;
            }
            return acc;
        };
        return horner(numerator) / horner(denominator);
    }
};

// s = beta / (1 + beta)
inline double exponent_to_power(double beta)
{
    if (!(beta > -0.5)) {
        throw error(error_kind::domain, "large-variable exponent must exceed -1/2");
    }
    return beta / (1.0 + beta);
}

// beta = s / (1 - s), the k -> inf limit of the finite-order exponent.
inline double power_to_exponent(double s)
{
    if (!(std::abs(s) < 1.0)) {
        throw error(error_kind::domain, "power must satisfy |s| < 1");
    }
    return s / (1.0 - s);
}

// beta_k = s + s^2 + ... + s^k = (s - s^{k+1}) / (1 - s)
inline double finite_order_exponent(double s, std::size_t k)
{
    if (s == 1.0) {
        throw error(error_kind::domain, "finite-order exponent undefined at s = 1");
    }
    if (k == 0) {
        throw error(error_kind::invalid_input, "order must be at least 1");
    }
    return (s - std::pow(s, static_cast<double>(k + 1))) / (1.0 - s);
}

namespace detail {

// 1 + a·x·u(x), truncated at u's order.
inline truncated_series<double> one_plus_scaled_shift(double a, const truncated_series<double>& u)
{
    const std::size_t order = u.order();
    std::vector<double> c(order + 1, 0.0);
    c[0] = 1.0;
    for (std::size_t n = 1; n <= order; ++n) {
        c[n] = a * u[n - 1];
    }
    return truncated_series<double>::from(std::move(c));
}

inline bool is_integer(double v) { return std::floor(v) == v; }

} // namespace detail

/// Small-x Taylor expansion of the approximant to order K.
inline truncated_series<double> expand(const continued_root& approx, std::size_t order)
{
    const auto A = approx.params();
    const double s = approx.power();
    auto u = detail::one_plus_scaled_shift(A.back(), truncated_series<double>::unit(order));
    for (std::size_t n = A.size() - 1; n-- > 0;) {
        u = detail::one_plus_scaled_shift(A[n], power(u, s));
    }
    return power(u, s);
}

/// Accuracy-through-order fit of A_1..A_k to the series a_0..a_k (a_0 = 1).
///
/// The coefficient of x^n in the expansion depends affinely on A_n once
/// A_1..A_{n-1} are fixed, and not at all on A_m for m > n. Each step reads
/// the intercept and slope off two expansions of the order-n approximant.
inline continued_root fit(const truncated_series<double>& series, double s)
{
    if (s == 0.0) {
        throw error(error_kind::domain, "power s must be non-zero");
    }
    if (series[0] != 1.0) {
        throw error(error_kind::invalid_input, "series must be normalised to a_0 = 1");
    }
    const std::size_t k = series.order();
    if (k < 1) {
        throw error(error_kind::invalid_input, "fit needs a series of order >= 1");
    }
    if (series[1] == 0.0) {
        throw error(error_kind::degenerate_input, "a_1 = 0: the matching chain has no sensitivity", 1);
    }

    const double slope_floor = 1e-13 * std::max(1.0, std::abs(series[1]));
    std::vector<double> params;
    params.reserve(k);
    for (std::size_t n = 1; n <= k; ++n) {
        auto coefficient_at = [&](double trial) {
            params.push_back(trial);
            const double c = expand(continued_root(s, params), n)[n];
            params.pop_back();
            return c;
        };
        const double c0 = coefficient_at(0.0);
        const double c1 = coefficient_at(1.0);
        const double c2 = coefficient_at(2.0);
        const double slope = c1 - c0;
        if (std::abs(slope) < slope_floor) {
            throw error(error_kind::vanishing_sensitivity,
                        "coefficient of x^" + std::to_string(n) + " does not depend on A_" + std::to_string(n), n);
        }
        const double scale = std::max({1.0, std::abs(c0), std::abs(c1), std::abs(c2)});
        if (std::abs((c2 - c0) - 2.0 * slope) > 1e-8 * scale) {
            throw error(error_kind::internal, "matching equation is not affine at order " + std::to_string(n), n);
        }
        params.push_back((series[n] - c0) / slope);
    }
    return {s, std::move(params)};
}

/// Nested evaluation, innermost bracket first.
inline double evaluate(const continued_root& approx, double x)
{
    if (x < 0.0) {
        throw error(error_kind::domain, "continued root is evaluated on x >= 0");
    }
    const auto A = approx.params();
    const double s = approx.power();
    const bool integral_power = detail::is_integer(s);
    const std::size_t k = A.size();

    double u = 1.0 + A[k - 1] * x;
    if (u < 0.0 && !integral_power) {
        throw error(error_kind::complex_breakdown, "negative base at depth " + std::to_string(k), k);
    }
    for (std::size_t n = k - 1; n-- > 0;) {
        u = 1.0 + A[n] * x * std::pow(u, s);
        if (u < 0.0 && !integral_power) {
            throw error(error_kind::complex_breakdown, "negative base at depth " + std::to_string(n + 1), n + 1);
        }
    }
    return std::pow(u, s);
}

/// B_k = prod A_n^{s^n}, beta_k = s + ... + s^k.
inline amplitude_result amplitude(const continued_root& approx)
{
    const auto A = approx.params();
    const double s = approx.power();
    double log_b = 0.0;
    double s_n = 1.0;
    for (std::size_t n = 0; n < A.size(); ++n) {
        if (!(A[n] > 0.0)) {
            throw error(error_kind::realness, "amplitude needs A_" + std::to_string(n + 1) + " > 0", n + 1);
        }
        s_n *= s;
        log_b += s_n * std::log(A[n]);
    }
    return {std::exp(log_b), finite_order_exponent(s, A.size()), A.size()};
}

inline double asymptote(const continued_root& approx, double x)
{
    if (!(x > 0.0)) {
        throw error(error_kind::domain, "asymptote is evaluated on x > 0");
    }
    const auto r = amplitude(approx);
    return r.amplitude * std::pow(x, r.exponent);
}

/// Rational form of an s = -1 approximant (a continued fraction).
/// Even k gives P_{k/2 / k/2}, odd k gives P_{(k-1)/2 / (k+1)/2}.
inline rational_function to_rational(const continued_root& approx)
{
    if (approx.power() != -1.0) {
        throw error(error_kind::domain, "rational reduction requires s = -1");
    }
    const auto A = approx.params();

    auto add = [](std::vector<double> p, const std::vector<double>& q) {
        if (p.size() < q.size()) {
            p.resize(q.size(), 0.0);
        }
        for (std::size_t i = 0; i < q.size(); ++i) {
            p[i] += q[i];
        }
        return p;
    };
    auto shift_scale = [](double a, const std::vector<double>& p) {
        std::vector<double> r(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            r[i + 1] = a * p[i];
        }
        return r;
    };

    // u = num/den at the current depth; 1 + a·x/u = (num + a·x·den)/num.
    std::vector<double> num{1.0, A.back()};
    std::vector<double> den{1.0};
    for (std::size_t n = A.size() - 1; n-- > 0;) {
        auto next = add(num, shift_scale(A[n], den));
        den = std::move(num);
        num = std::move(next);
    }
    return {std::move(den), std::move(num)};
}

/// Highest-order member whose parameters are all non-negative.
inline const continued_root& best_real_order(std::span<const continued_root> fits)
{
    if (fits.empty()) {
        throw error(error_kind::invalid_input, "no approximants given");
    }
    for (std::size_t i = 1; i < fits.size(); ++i) {
        if (fits[i].order() <= fits[i - 1].order()) {
            throw error(error_kind::invalid_input, "approximants must be in ascending order");
        }
    }
    for (auto it = fits.rbegin(); it != fits.rend(); ++it) {
        if (it->is_real_valued()) {
            return *it;
        }
    }
    throw error(error_kind::no_real_approximant, "no approximant has all A_n >= 0");
}

} // namespace continued_roots
