#pragma once

#include <stdexcept>
#include <string>

namespace ccf {

enum class errc {
    reducible_polynomial,
    zero_leading_coefficient,
    incomparable_discriminants,
    contains_zero,
    zero_on_boundary,
    precision_exhausted,
    wrong_ring,
    parameter_out_of_range,
    not_in_target_set,
    not_a_zero,
    monotonicity_required,
    hypothesis_failed,
    enumeration_limit,
    factorization_budget,
    unsupported,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::reducible_polynomial: return "ReduciblePolynomial";
    case errc::zero_leading_coefficient: return "ZeroLeadingCoefficient";
    case errc::incomparable_discriminants: return "IncomparableDiscriminants";
    case errc::contains_zero: return "ContainsZero";
    case errc::zero_on_boundary: return "ZeroOnBoundary";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::wrong_ring: return "WrongRing";
    case errc::parameter_out_of_range: return "ParameterOutOfRange";
    case errc::not_in_target_set: return "NotInTargetSet";
    case errc::not_a_zero: return "NotAZero";
    case errc::monotonicity_required: return "MonotonicityRequired";
    case errc::hypothesis_failed: return "HypothesisFailed";
    case errc::enumeration_limit: return "EnumerationLimit";
    case errc::factorization_budget: return "FactorizationBudget";
    case errc::unsupported: return "Unsupported";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace ccf
