#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ineq/means.hpp"
#include "oracle.hpp"

using namespace ineq;

namespace {

constexpr double kPi = std::numbers::pi;

// Deterministic pair generator shared by the property tests.
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
    PositivePair pair() {
        const double a = std::exp(uniform(-3.0, 3.0));
        const double b = std::exp(uniform(-3.0, 3.0));
        return PositivePair(a, b);
    }
};

const std::vector<MeanKind> kAllKinds = {
    MeanKind::A, MeanKind::G, MeanKind::H, MeanKind::Q, MeanKind::L,
    MeanKind::I, MeanKind::P, MeanKind::T, MeanKind::M, MeanKind::S,
    MeanKind::X, MeanKind::Y};

const std::vector<MeanKind> kBetweenKinds = {
    MeanKind::A, MeanKind::G, MeanKind::H, MeanKind::Q, MeanKind::L,
    MeanKind::I, MeanKind::P, MeanKind::T, MeanKind::M};

}  // namespace

TEST_CASE("reference values") {
    CHECK(mean_value(MeanKind::A, PositivePair(3, 1)) == 2.0);
    CHECK(mean_value(MeanKind::L, PositivePair(2.5, 2.5)) == 2.5);
    CHECK(mean_value(MeanKind::P, PositivePair(1.5, 0.5)) ==
          doctest::Approx(3.0 / kPi).epsilon(1e-14));
    // L(e^x, e^-x) = sinh(x)/x at x = 1
    CHECK(mean_value(MeanKind::L, PositivePair(std::exp(1.0), std::exp(-1.0))) ==
          doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(mean_value(MeanKind::I, PositivePair(std::exp(1.0), std::exp(-1.0))) ==
          doctest::Approx(std::exp(1.0 / std::tanh(1.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("normalized evaluation reference values") {
    for (MeanKind k : kAllKinds) CHECK(mean_normalized(k, 0.0) == 1.0);
    CHECK(mean_normalized(MeanKind::G, 0.6) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(mean_normalized(MeanKind::L, 0.5) ==
          doctest::Approx(0.5 / std::atanh(0.5)).epsilon(1e-14));
    CHECK(mean_normalized(MeanKind::L, 0.5) ==
          doctest::Approx(0.9102392266268374).epsilon(1e-13));
}

TEST_CASE("normalized evaluation matches the extended-precision oracle") {
    // Crosses the series switchover at |u| = 1e-4 and reaches the
    // near-degenerate and near-extreme ends.
    const std::vector<double> us = {1e-12, 1e-9, 1e-6, 5e-5,  9.9e-5, 1.01e-4,
                                    2e-4,  1e-3, 1e-2, 0.1,   0.25,   0.5,
                                    0.75,  0.9,  0.99, 0.999, 0.9999999};
    for (MeanKind k : kAllKinds) {
        for (double u : us) {
            const double got = mean_normalized(k, u);
            const double want = static_cast<double>(oracle::mean_normalized(k, u));
            CHECK(std::fabs(got - want) <= 1e-13 * std::fabs(want));
        }
    }
}

TEST_CASE("pair evaluation matches the definitional oracle") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const PositivePair p = rng.pair();
        for (MeanKind k : kAllKinds) {
            const double got = mean_value(k, p);
            const double want = static_cast<double>(
                oracle::mean_pair(k, static_cast<long double>(p.a),
                                  static_cast<long double>(p.b)));
            CHECK(std::fabs(got - want) <= 1e-13 * std::fabs(want));
        }
    }
}

TEST_CASE("power mean") {
    const PositivePair p(4, 1);
    CHECK(mean_value(MeanSpec::power(0.0), p) == mean_value(MeanKind::G, p));
    CHECK(mean_value(MeanSpec::power(2.0), p) ==
          doctest::Approx(mean_value(MeanKind::Q, p)).epsilon(1e-15));
    CHECK(mean_value(MeanSpec::power(-1.0), p) ==
          doctest::Approx(mean_value(MeanKind::H, p)).epsilon(1e-15));
    CHECK(mean_value(MeanSpec::power(1.0 / 3.0), p) ==
          doctest::Approx(std::pow((std::pow(4.0, 1.0 / 3.0) + 1.0) / 2.0, 3.0))
              .epsilon(1e-14));
    CHECK_THROWS_AS(mean_value(MeanSpec::power(std::nan("")), p), std::domain_error);
}

TEST_CASE("symmetry is exact") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const PositivePair p = rng.pair();
        const PositivePair q(p.b, p.a);
        for (MeanKind k : kAllKinds) CHECK(mean_value(k, p) == mean_value(k, q));
    }
}

TEST_CASE("homogeneity") {
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const PositivePair p = rng.pair();
        const double lambda = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
        for (MeanKind k : kAllKinds) {
            const double direct =
                mean_value(k, PositivePair(lambda * p.a, lambda * p.b));
            const double scaled = lambda * mean_value(k, p);
            CHECK(std::fabs(direct - scaled) <= 1e-12 * std::fabs(scaled));
        }
    }
}

TEST_CASE("betweenness") {
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        const PositivePair p = rng.pair();
        const double lo = std::min(p.a, p.b), hi = std::max(p.a, p.b);
        for (MeanKind k : kBetweenKinds) {
            const double m = mean_value(k, p);
            CHECK(m >= lo * (1.0 - 1e-14));
            CHECK(m <= hi * (1.0 + 1e-14));
        }
        const double third = mean_value(MeanSpec::power(1.0 / 3.0), p);
        CHECK(third >= lo * (1.0 - 1e-14));
        CHECK(third <= hi * (1.0 + 1e-14));
    }
}

TEST_CASE("strict ordering chain G < L < P < I < A < M < T < Q") {
    Rng rng(19);
    const std::vector<MeanKind> chain = {MeanKind::G, MeanKind::L, MeanKind::P,
                                         MeanKind::I, MeanKind::A, MeanKind::M,
                                         MeanKind::T, MeanKind::Q};
    for (int i = 0; i < 1000; ++i) {
        PositivePair p = rng.pair();
        if (p.a == p.b) p = PositivePair(p.a * 1.5, p.b);
        double prev = mean_value(chain[0], p);
        for (std::size_t j = 1; j < chain.size(); ++j) {
            const double cur = mean_value(chain[j], p);
            CHECK(prev < cur);
            prev = cur;
        }
    }
}

TEST_CASE("X and Y placement: G < X < P and H < Y < G") {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        PositivePair p = rng.pair();
        if (p.a == p.b) p = PositivePair(p.a * 2.0, p.b);
        CHECK(mean_value(MeanKind::G, p) < mean_value(MeanKind::X, p));
        CHECK(mean_value(MeanKind::X, p) < mean_value(MeanKind::P, p));
        CHECK(mean_value(MeanKind::H, p) < mean_value(MeanKind::Y, p));
        CHECK(mean_value(MeanKind::Y, p) < mean_value(MeanKind::G, p));
    }
}

TEST_CASE("normalized-vs-pair consistency") {
    Rng rng(29);
    for (int i = 0; i < 400; ++i) {
        const double u = std::exp(rng.uniform(std::log(1e-4), std::log(0.999)));
        const double center = std::exp(rng.uniform(-2.0, 2.0));
        const PositivePair p(center * (1.0 + u), center * (1.0 - u));
        for (MeanKind k : kAllKinds) {
            const double via_norm = center * mean_normalized(k, u);
            const double direct = mean_value(k, p);
            CHECK(std::fabs(via_norm - direct) <= 1e-12 * std::fabs(direct));
        }
    }
}

TEST_CASE("trig pair") {
    const PositivePair p = trig_pair(kPi / 6.0);
    CHECK(p.a == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.b == doctest::Approx(0.5).epsilon(1e-13));
    // P(1+sin x, 1-sin x) = sin(x)/x, G = cos x, A = 1
    for (double x : {0.3, kPi / 4.0, 1.2, 1.5}) {
        const PositivePair t = trig_pair(x);
        CHECK(mean_value(MeanKind::P, t) ==
              doctest::Approx(std::sin(x) / x).epsilon(1e-13));
        CHECK(mean_value(MeanKind::G, t) ==
              doctest::Approx(std::cos(x)).epsilon(1e-13));
        CHECK(mean_value(MeanKind::A, t) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(mean_value(MeanKind::P, trig_pair(kPi / 4.0)) ==
          doctest::Approx(0.9003163161571061).epsilon(1e-13));
    // right endpoint: b stays positive
    const PositivePair edge = trig_pair(kPi / 2.0 - 1e-9);
    CHECK(edge.b > 0.0);
    CHECK(edge.b == doctest::Approx(5e-19).epsilon(1e-5));
    CHECK_THROWS_AS(trig_pair(0.0), std::domain_error);
    CHECK_THROWS_AS(trig_pair(kPi / 2.0), std::domain_error);
}

TEST_CASE("hyperbolic pair identities") {
    const PositivePair p = hyp_pair(1.0);
    CHECK(mean_value(MeanKind::A, p) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(mean_value(MeanKind::G, p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean_value(MeanKind::L, p) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(mean_value(MeanKind::Q, p) ==
          doctest::Approx(std::sqrt(std::cosh(2.0))).epsilon(1e-14));
    CHECK(mean_value(MeanKind::I, p) ==
          doctest::Approx(std::exp(1.0 / std::tanh(1.0) - 1.0)).epsilon(1e-14));
    CHECK(mean_value(MeanKind::S, p) ==
          doctest::Approx(std::exp(std::tanh(1.0))).epsilon(1e-14));
    for (double x : {0.25, 1.0, 3.0}) {
        const PositivePair h = hyp_pair(x);
        const double th = std::tanh(x);
        CHECK(mean_value(MeanKind::P, h) ==
              doctest::Approx(std::sinh(x) / std::asin(th)).epsilon(1e-13));
        CHECK(mean_value(MeanKind::T, h) ==
              doctest::Approx(std::sinh(x) / std::atan(th)).epsilon(1e-13));
        CHECK(mean_value(MeanKind::M, h) ==
              doctest::Approx(std::sinh(x) / std::asinh(th)).epsilon(1e-13));
    }
    CHECK(mean_value(MeanKind::T, hyp_pair(1.0)) ==
          doctest::Approx(1.8055569233479242).epsilon(1e-13));
    // extreme but in-range argument
    const PositivePair big = hyp_pair(300.0);
    CHECK(mean_value(MeanKind::G, big) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(hyp_pair(0.0), std::domain_error);
    CHECK_THROWS_AS(hyp_pair(300.1), std::domain_error);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(PositivePair(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PositivePair(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(PositivePair(1.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(PositivePair(std::numeric_limits<double>::infinity(), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(mean_normalized(MeanKind::L, 1.0), std::domain_error);
    CHECK_THROWS_AS(mean_normalized(MeanKind::L, -1.0), std::domain_error);
    CHECK_THROWS_AS(mean_normalized(MeanKind::L, std::nan("")), std::domain_error);
}

TEST_CASE("normalization round trip") {
    const PositivePair p(7.25, 0.4);
    const NormalizedPair n = normalize(p);
    CHECK(n.center * (1.0 + n.u) == doctest::Approx(p.a).epsilon(1e-15));
    CHECK(n.center * (1.0 - n.u) == doctest::Approx(p.b).epsilon(1e-15));
    CHECK(std::fabs(n.u) < 1.0);
}
