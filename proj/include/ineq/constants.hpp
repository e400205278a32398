#ifndef INEQ_CONSTANTS_HPP
#define INEQ_CONSTANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ineq/expr.hpp"

namespace ineq {

enum class ConstantKind { EndpointLimit, EndpointValue, ClosedForm, Root };

struct ConstantSpec {
    std::string id;
    ConstantKind kind = ConstantKind::ClosedForm;
    std::string definition;          // expression text (function of x, or closed form)
    double at = 0.0;                 // EndpointValue: evaluation point
    double lo = 0.0, hi = 0.0;       // Root: bracket
    double tol = 1e-13;              // Root: interval tolerance
    std::optional<double> paper_decimal;  // printed approximation, if any
    bool decimal_report_only = false;     // deviation reported, not asserted
    std::string note;
};

struct ConstantResult {
    std::string id;
    double value = 0.0;
    double error_estimate = 0.0;
    std::string method_trace;
};

struct NoLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Limit of fn(x) as x -> 0+ by Richardson extrapolation on x_j =
// 0.1 * 2^-j, j = 0..20, with even-power acceleration; extrapolation
// stops at the rounding-noise floor. Throws NoLimitError when the
// deltas never shrink.
ConstantResult limit_at_zero(const ExprPtr& fn, const std::string& id = "limit");

ConstantResult endpoint_value(const ExprPtr& fn, double at, const std::string& id = "value");

// Bisection; fn(lo) and fn(hi) must have opposite signs.
ConstantResult solve_root(const ExprPtr& fn, double lo, double hi, double tol,
                          const std::string& id = "root");

ConstantResult evaluate_constant(const ConstantSpec& spec);

// The collection's best constants and roots.
std::vector<ConstantSpec> builtin_constants();

}  // namespace ineq

#endif
