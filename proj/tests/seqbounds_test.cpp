#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ineq/seqbounds.hpp"

using namespace ineq;

namespace {

constexpr double kPi = std::numbers::pi;

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    // Pair with a half-difference u in [0.05, 0.999]: the n=0 gap is of
    // order u^4/36, so anything much closer to degenerate pushes the
    // twelve-step gap below double resolution and strictness becomes
    // unrepresentable (see the floor test below).
    PositivePair pair() {
        const double center = std::exp(uniform(-2.0, 2.0));
        const double u = std::exp(uniform(std::log(0.05), std::log(0.999)));
        return PositivePair(center * (1.0 + u), center * (1.0 - u));
    }
};

}  // namespace

TEST_CASE("iteration fixed point and one hand-applied step") {
    const auto fixed = sb_iterate(2.5, 2.5, 5);
    REQUIRE(fixed.size() == 6);
    for (const auto& s : fixed) {
        CHECK(s.first == 2.5);
        CHECK(s.second == 2.5);
    }

    const double g = std::sqrt(0.75);
    const auto steps = sb_iterate(g, 1.0, 1);
    const double first1 = (g + 1.0) / 2.0;
    CHECK(steps[1].first == doctest::Approx(first1).epsilon(1e-15));
    CHECK(steps[1].first == doctest::Approx(0.9330127018922193).epsilon(1e-14));
    CHECK(steps[1].second == doctest::Approx(std::sqrt(first1)).epsilon(1e-15));
    CHECK(steps[1].second == doctest::Approx(0.9659258262890683).epsilon(1e-14));

    // near-degenerate start stays finite
    const auto tiny = sb_iterate(1.0, 1.0 + 1e-12, 3);
    for (const auto& s : tiny) {
        CHECK(std::isfinite(s.first));
        CHECK(std::isfinite(s.second));
        CHECK(std::fabs(s.first - 1.0) <= 1.1e-12);
        CHECK(std::fabs(s.second - 1.0) <= 1.1e-12);
    }

    CHECK_THROWS_AS(sb_iterate(1.0, 1.0, 65), std::domain_error);
    CHECK_THROWS_AS(sb_iterate(-1.0, 1.0, 3), std::domain_error);
}

TEST_CASE("n=0 sandwich for P at (1.5, 0.5)") {
    const auto [lower, upper] = bounds_for(SandwichKind::P, PositivePair(1.5, 0.5), 0);
    // cbrt(A^2 G) and (G + 2A)/3 with A = 1, G = sqrt(3)/2
    CHECK(lower == doctest::Approx(0.9531842929969366).epsilon(1e-12));
    CHECK(upper == doctest::Approx(0.9553418012614795).epsilon(1e-12));
    const double target = 3.0 / kPi;
    CHECK(lower < target);
    CHECK(target < upper);
}

TEST_CASE("degenerate pair collapses all bounds") {
    for (int n : {0, 1, 7}) {
        const auto [lower, upper] = bounds_for(SandwichKind::L, PositivePair(4.2, 4.2), n);
        CHECK(lower == doctest::Approx(4.2).epsilon(1e-15));
        CHECK(upper == doctest::Approx(4.2).epsilon(1e-15));
    }
}

TEST_CASE("T bounds sandwich the direct value at hyp pair") {
    const PositivePair p = hyp_pair(1.0);
    const double t = mean_value(MeanKind::T, p);
    CHECK(t == doctest::Approx(1.8056).epsilon(1e-4));
    const auto [lower, upper] = bounds_for(SandwichKind::T, p, 1);
    CHECK(lower < t);
    CHECK(t < upper);
}

TEST_CASE("sandwich, nesting, and gap decay on seeded pairs") {
    // The bounds gap contracts ~16x per step (quadratically in the
    // iterate gap), so for most pairs it dives below 1 ulp well before
    // n = 12. Strictness is asserted wherever the gap is resolvable
    // beyond the 1e-13 tie band; inside the band the bounds must still
    // never invert beyond rounding.
    Rng rng(101);
    const double tie = 1e-13;
    const SandwichKind kinds[] = {SandwichKind::L, SandwichKind::P, SandwichKind::T};
    for (int i = 0; i < 200; ++i) {
        const PositivePair pair = rng.pair();
        for (SandwichKind kind : kinds) {
            const double target = mean_value(sandwich_mean(kind), pair);
            const BoundsTrace trace = bounds_trace(kind, pair, 12);
            REQUIRE(trace.steps.size() == 13);
            CHECK(trace.target == target);
            int strict_steps = 0;
            for (std::size_t n = 0; n < trace.steps.size(); ++n) {
                const auto& s = trace.steps[n];
                const double gap = s.upper - s.lower;
                if (gap > tie * target) {
                    CHECK(s.lower < target);
                    CHECK(target < s.upper);
                    ++strict_steps;
                } else {
                    CHECK(s.lower <= target * (1.0 + 1e-13));
                    CHECK(target <= s.upper * (1.0 + 1e-13));
                }
                if (n > 0) {
                    const auto& prev = trace.steps[n - 1];
                    CHECK(s.lower >= prev.lower - 1e-15 * target);
                    CHECK(s.upper <= prev.upper + 1e-15 * target);
                    const double prev_gap = prev.upper - prev.lower;
                    if (n >= 3 && prev_gap > tie * target)
                        CHECK(gap <= 0.5 * prev_gap);
                }
            }
            CHECK(strict_steps >= 4);  // u >= 0.05 resolves at least n <= 3
        }
    }
}

TEST_CASE("converge agrees with direct evaluation") {
    const auto p = converge(SandwichKind::P, PositivePair(1.5, 0.5), 1e-13);
    CHECK(std::fabs(p.value - 3.0 / kPi) <= 2e-13 * (3.0 / kPi));
    CHECK(p.iterations <= 64);

    const auto l = converge(SandwichKind::L, PositivePair(10.0, 0.1), 1e-13);
    const double closed = 9.9 / std::log(100.0);
    CHECK(std::fabs(l.value - closed) <= 2e-13 * closed);

    const auto t = converge(SandwichKind::T, PositivePair(3.3, 3.3), 1e-13);
    CHECK(t.value == doctest::Approx(3.3).epsilon(1e-15));
    CHECK(t.iterations <= 1);

    Rng rng(202);
    for (int i = 0; i < 100; ++i) {
        const PositivePair pair(std::exp(rng.uniform(-2.0, 2.0)),
                                std::exp(rng.uniform(-2.0, 2.0)));
        for (SandwichKind kind : {SandwichKind::L, SandwichKind::P, SandwichKind::T}) {
            const double direct = mean_value(sandwich_mean(kind), pair);
            const auto res = converge(kind, pair, 1e-13);
            CHECK(std::fabs(res.value - direct) <= 1e-12 * direct);
        }
    }

    CHECK_THROWS_AS(converge(SandwichKind::P, PositivePair(1.0, 2.0), 1e-16),
                    std::domain_error);
}

TEST_CASE("near-degenerate pairs stay ordered at the resolution floor") {
    // For a pair this close to equal the n=0 gap is ~u^4/36 and the
    // iteration reaches 1 ulp within a few steps; from there on the
    // bounds may tie with the target but must never invert.
    const PositivePair pair(1.0 + 1e-3, 1.0 - 1e-3);
    const double target = mean_value(MeanKind::P, pair);
    const BoundsTrace tr = bounds_trace(SandwichKind::P, pair, 12);
    for (const auto& s : tr.steps) {
        CHECK(s.lower <= target * (1.0 + 1e-15));
        CHECK(target <= s.upper * (1.0 + 1e-15));
        CHECK(s.upper - s.lower >= 0.0);
    }
    CHECK(tr.steps[0].lower < target);
    CHECK(target < tr.steps[0].upper);
}
