#ifndef INEQ_SEQBOUNDS_HPP
#define INEQ_SEQBOUNDS_HPP

#include <utility>
#include <vector>

#include "ineq/means.hpp"

namespace ineq {

// The three means realized as limits of the coupled arithmetic /
// geometric-root recurrence, together with per-step cube-root lower and
// weighted-average upper bounds that tighten at every iteration.
enum class SandwichKind { L, P, T };

SandwichKind sandwich_from_tag(const std::string& tag);  // "l" | "p" | "t"
MeanKind sandwich_mean(SandwichKind kind);

struct IterPair {
    double first = 0.0;   // updated as the arithmetic mean
    double second = 0.0;  // updated as the geometric root
};

// Applies first' = (first+second)/2, second' = sqrt(first'*second)
// exactly n times (n <= 64) and returns all n+1 states, initial included.
std::vector<IterPair> sb_iterate(double first0, double second0, int n);

struct BoundsStep {
    int n = 0;
    double first = 0.0;
    double second = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct BoundsTrace {
    SandwichKind kind = SandwichKind::P;
    std::vector<BoundsStep> steps;  // steps 0..n
    double target = 0.0;            // the mean being sandwiched
};

// Bounds after exactly n iterations: lower = cbrt(second^2*first),
// upper = (first + 2*second)/3. Start values per kind: P from (G, A),
// L from (A, G), T from (A, Q).
std::pair<double, double> bounds_for(SandwichKind kind, const PositivePair& pair, int n);

BoundsTrace bounds_trace(SandwichKind kind, const PositivePair& pair, int n);

struct ConvergeResult {
    double value = 0.0;
    int iterations = 0;
};

// Iterates until upper - lower <= rel_tol * value (rel_tol >= 1e-15);
// throws std::runtime_error if 64 steps do not suffice.
ConvergeResult converge(SandwichKind kind, const PositivePair& pair, double rel_tol);

}  // namespace ineq

#endif
