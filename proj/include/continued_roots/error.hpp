#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace continued_roots {

enum class error_kind {
    invalid_input,
    domain,
    degenerate_input,
    vanishing_sensitivity,
    complex_breakdown,
    realness,
    convergence_precondition,
    no_real_approximant,
    not_found,
    internal,
};

inline std::string_view to_string(error_kind kind) noexcept
{
    switch (kind) {
    case error_kind::invalid_input: return "invalid_input";
    case error_kind::domain: return "domain";
    case error_kind::degenerate_input: return "degenerate_input";
    case error_kind::vanishing_sensitivity: return "vanishing_sensitivity";
    case error_kind::complex_breakdown: return "complex_breakdown";
    case error_kind::realness: return "realness";
    case error_kind::convergence_precondition: return "convergence_precondition";
    case error_kind::no_real_approximant: return "no_real_approximant";
    case error_kind::not_found: return "not_found";
    case error_kind::internal: return "internal";
    }
    return "unknown";
}

/// Library exception. `depth` names the nesting level or matching order the
/// failure refers to, when there is one.
class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what, std::optional<std::size_t> depth = std::nullopt)
        : std::runtime_error(what), kind_(kind), depth_(depth)
    {
    }

    error_kind kind() const noexcept { return kind_; }
    std::optional<std::size_t> depth() const noexcept { return depth_; }

private:
    error_kind kind_;
    std::optional<std::size_t> depth_;
};

} // namespace continued_roots
