#include "ineq/seqbounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ineq {

namespace {

constexpr int kMaxIterations = 64;

IterPair start_values(SandwichKind kind, const PositivePair& pair) {
    const double a = mean_value(MeanKind::A, pair);
    switch (kind) {
        case SandwichKind::P:
            return {mean_value(MeanKind::G, pair), a};
        case SandwichKind::L:
            // The published recurrence starts from (a, b) with a special
            // b1 = sqrt(ab); from step 1 on it coincides with starting
            // at (A, G) directly.
            return {a, mean_value(MeanKind::G, pair)};
        case SandwichKind::T:
            return {a, mean_value(MeanKind::Q, pair)};
    }
    throw std::logic_error("unreachable sandwich kind");
}

IterPair step(const IterPair& p) {
    IterPair next;
    next.first = 0.5 * (p.first + p.second);
    next.second = std::sqrt(next.first * p.second);
    return next;
}

BoundsStep make_step(int n, const IterPair& p) {
    BoundsStep s;
    s.n = n;
    s.first = p.first;
    s.second = p.second;
    s.lower = std::cbrt(p.second * p.second * p.first);
    s.upper = (p.first + 2.0 * p.second) / 3.0;
    return s;
}

void check_iteration_count(int n) {
    if (n < 0 || n > kMaxIterations)
        throw std::domain_error("iteration count must be in [0, 64]");
}

}  // namespace

SandwichKind sandwich_from_tag(const std::string& tag) {
    if (tag == "l" || tag == "L") return SandwichKind::L;
    if (tag == "p" || tag == "P") return SandwichKind::P;
    if (tag == "t" || tag == "T") return SandwichKind::T;
    throw std::domain_error("unknown sandwich kind '" + tag + "'");
}

MeanKind sandwich_mean(SandwichKind kind) {
    switch (kind) {
        case SandwichKind::L: return MeanKind::L;
        case SandwichKind::P: return MeanKind::P;
        case SandwichKind::T: return MeanKind::T;
    }
    throw std::logic_error("unreachable sandwich kind");
}

std::vector<IterPair> sb_iterate(double first0, double second0, int n) {
    check_iteration_count(n);
    if (!(first0 > 0.0) || !(second0 > 0.0) || !std::isfinite(first0) ||
        !std::isfinite(second0))
        throw std::domain_error("iteration start values must be positive");
    std::vector<IterPair> out;
    out.reserve(static_cast<size_t>(n) + 1);
    IterPair p{first0, second0};
    out.push_back(p);
    for (int i = 0; i < n; ++i) {
        p = step(p);
        out.push_back(p);
    }
    return out;
}

std::pair<double, double> bounds_for(SandwichKind kind, const PositivePair& pair, int n) {
    check_iteration_count(n);
    IterPair p = start_values(kind, pair);
    for (int i = 0; i < n; ++i) p = step(p);
    const BoundsStep s = make_step(n, p);
    return {s.lower, s.upper};
}

BoundsTrace bounds_trace(SandwichKind kind, const PositivePair& pair, int n) {
    check_iteration_count(n);
    BoundsTrace trace;
    trace.kind = kind;
    trace.target = mean_value(sandwich_mean(kind), pair);
    IterPair p = start_values(kind, pair);
    trace.steps.push_back(make_step(0, p));
    for (int i = 1; i <= n; ++i) {
        p = step(p);
        trace.steps.push_back(make_step(i, p));
    }
    return trace;
}

ConvergeResult converge(SandwichKind kind, const PositivePair& pair, double rel_tol) {
    if (!(rel_tol >= 1e-15)) throw std::domain_error("rel_tol must be >= 1e-15");
    IterPair p = start_values(kind, pair);
    for (int n = 0; n <= kMaxIterations; ++n) {
        const BoundsStep s = make_step(n, p);
        const double value = 0.5 * (s.lower + s.upper);
        if (s.upper - s.lower <= rel_tol * value) return {value, n};
        p = step(p);
    }
    throw std::runtime_error("sandwich iteration did not converge in 64 steps");
}

}  // namespace ineq
