#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace continued_roots {

// Formal power series c_0 + c_1 x + ... + c_K x^K. The order K is fixed at
// construction and every operation returns a series of the same order.
template <typename T = double>
class truncated_series {
public:
    using value_type = T;

    static truncated_series from(std::vector<T> coeffs)
    {
        if (coeffs.empty()) {
            throw error(error_kind::invalid_input, "truncated series needs at least one coefficient");
        }
        return truncated_series(std::move(coeffs));
    }

    static truncated_series from(std::initializer_list<T> coeffs)
    {
        return from(std::vector<T>(coeffs));
    }

    static truncated_series unit(std::size_t order)
    {
        std::vector<T> c(order + 1, T(0));
        c[0] = T(1);
        return truncated_series(std::move(c));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const T> coeffs() const noexcept { return coeffs_; }
    const T& operator[](std::size_t n) const { return coeffs_.at(n); }

    // Horner evaluation of the truncated polynomial.
    T evaluate(T x) const
    {
        T acc = coeffs_.back();
        for (std::size_t n = coeffs_.size() - 1; n-- > 0;) {
            acc = acc * x + coeffs_[n];
        }
        return acc;
    }

    friend bool operator==(const truncated_series&, const truncated_series&) = default;

private:
    explicit truncated_series(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}

    std::vector<T> coeffs_;
};

// Cauchy product truncated at the common order.
template <typename T>
truncated_series<T> multiply(const truncated_series<T>& a, const truncated_series<T>& b)
{
    if (a.order() != b.order()) {
        throw error(error_kind::invalid_input,
                    "series orders differ: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
    }
    const std::size_t order = a.order();
    std::vector<T> c(order + 1, T(0));
    for (std::size_t i = 0; i <= order; ++i) {
        for (std::size_t j = 0; i + j <= order; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return truncated_series<T>::from(std::move(c));
}

template <typename T>
truncated_series<T> operator*(const truncated_series<T>& a, const truncated_series<T>& b)
{
    return multiply(a, b);
}

/// Real power u^s of a series with unit constant term.
///
/// Uses the recurrence obtained from u·w' = s·u'·w with w = u^s:
///   n·w_n = Σ_{j=1..n} ((s+1)·j − n)·u_j·w_{n−j},   w_0 = 1.
/// The constant term must be exactly 1; any other value is a domain error
/// because the branch of the power is then not fixed by the series alone.
template <typename T>
truncated_series<T> power(const truncated_series<T>& u, T s)
{
    if (u[0] != T(1)) {
        throw error(error_kind::domain, "series power needs a unit constant term");
    }
    const std::size_t order = u.order();
    std::vector<T> w(order + 1, T(0));
    w[0] = T(1);
    for (std::size_t n = 1; n <= order; ++n) {
        T acc = T(0);
        for (std::size_t j = 1; j <= n; ++j) {
            acc += ((s + T(1)) * T(j) - T(n)) * u[j] * w[n - j];
        }
        w[n] = acc / T(n);
    }
    return truncated_series<T>::from(std::move(w));
}

} // namespace continued_roots
