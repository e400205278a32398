#include "ineq/means.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ineq {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Even Taylor series for the kinds with a 0/0 form at u=0, used for
// |u| < kSeriesSwitch. Coefficients cross-checked against a
// high-precision evaluation of the closed forms (see tests).
constexpr double kSeriesSwitch = 1e-4;

double series_L(double u2) {
    return 1.0 + u2 * (-1.0 / 3.0 + u2 * (-4.0 / 45.0 + u2 * (-44.0 / 945.0)));
}
double series_P(double u2) {
    return 1.0 + u2 * (-1.0 / 6.0 + u2 * (-17.0 / 360.0 + u2 * (-367.0 / 15120.0)));
}
double series_T(double u2) {
    return 1.0 + u2 * (1.0 / 3.0 + u2 * (-4.0 / 45.0 + u2 * (44.0 / 945.0)));
}
double series_M(double u2) {
    return 1.0 + u2 * (1.0 / 6.0 + u2 * (-17.0 / 360.0 + u2 * (367.0 / 15120.0)));
}
double series_lnI(double u2) {
    return u2 * (-1.0 / 6.0 + u2 * (-1.0 / 20.0 + u2 * (-1.0 / 42.0)));
}

// Core evaluation on the normalized pair (1+u, 1-u), u = |u| in [0, 1).
// vp and vm are 1+u and 1-u; passing them in keeps the extreme-ratio
// case accurate (they can be formed exactly from the original pair).
double eval_normalized(const MeanSpec& spec, double u, double vp, double vm) {
    const double u2 = u * u;
    switch (spec.kind) {
        case MeanKind::A:
            return 1.0;
        case MeanKind::G:
            return std::sqrt(vp * vm);
        case MeanKind::H:
            return vp * vm;
        case MeanKind::Q:
            return std::sqrt(1.0 + u2);
        case MeanKind::Ak: {
            const double k = spec.exponent;
            if (k == 0.0) return std::sqrt(vp * vm);
            return std::pow((std::pow(vp, k) + std::pow(vm, k)) / 2.0, 1.0 / k);
        }
        case MeanKind::L:
            return u < kSeriesSwitch ? series_L(u2) : u / std::atanh(u);
        case MeanKind::P:
            return u < kSeriesSwitch ? series_P(u2) : u / std::asin(u);
        case MeanKind::T:
            return u < kSeriesSwitch ? series_T(u2) : u / std::atan(u);
        case MeanKind::M:
            return u < kSeriesSwitch ? series_M(u2) : u / std::asinh(u);
        case MeanKind::I: {
            if (u < kSeriesSwitch) return std::exp(series_lnI(u2));
            const double ln_i =
                (vp * std::log1p(u) - vm * std::log1p(-u)) / (2.0 * u) - 1.0;
            return std::exp(ln_i);
        }
        case MeanKind::S: {
            const double ln_s =
                (vp * std::log1p(u) + vm * std::log1p(-u)) / 2.0;
            return std::exp(ln_s);
        }
        case MeanKind::X: {
            const double g = eval_normalized(MeanKind::G, u, vp, vm);
            const double p = eval_normalized(MeanKind::P, u, vp, vm);
            return std::exp(g / p - 1.0);
        }
        case MeanKind::Y: {
            const double g = eval_normalized(MeanKind::G, u, vp, vm);
            const double l = eval_normalized(MeanKind::L, u, vp, vm);
            return g * std::exp(l - 1.0);
        }
    }
    throw std::logic_error("unreachable mean kind");
}

void require_valid_spec(const MeanSpec& spec) {
    if (spec.kind == MeanKind::Ak && !std::isfinite(spec.exponent))
        throw std::domain_error("power mean exponent must be finite");
}

}  // namespace

MeanSpec mean_from_tag(const std::string& tag) {
    if (tag.size() == 1) {
        switch (tag[0]) {
            case 'a': return MeanSpec(MeanKind::A);
            case 'g': return MeanSpec(MeanKind::G);
            case 'h': return MeanSpec(MeanKind::H);
            case 'q': return MeanSpec(MeanKind::Q);
            case 'l': return MeanSpec(MeanKind::L);
            case 'i': return MeanSpec(MeanKind::I);
            case 'p': return MeanSpec(MeanKind::P);
            case 't': return MeanSpec(MeanKind::T);
            case 'm': return MeanSpec(MeanKind::M);
            case 's': return MeanSpec(MeanKind::S);
            case 'x': return MeanSpec(MeanKind::X);
            case 'y': return MeanSpec(MeanKind::Y);
            default: break;
        }
    }
    throw std::domain_error("unknown mean tag '" + tag + "'");
}

const char* mean_tag(MeanKind kind) {
    switch (kind) {
        case MeanKind::A: return "a";
        case MeanKind::G: return "g";
        case MeanKind::H: return "h";
        case MeanKind::Q: return "q";
        case MeanKind::Ak: return "ak";
        case MeanKind::L: return "l";
        case MeanKind::I: return "i";
        case MeanKind::P: return "p";
        case MeanKind::T: return "t";
        case MeanKind::M: return "m";
        case MeanKind::S: return "s";
        case MeanKind::X: return "x";
        case MeanKind::Y: return "y";
    }
    return "?";
}

PositivePair::PositivePair(double a_, double b_) : a(a_), b(b_) {
    if (!positive_finite(a) || !positive_finite(b))
        throw std::domain_error("pair entries must be finite and positive");
}

NormalizedPair normalize(const PositivePair& p) {
    NormalizedPair n;
    const double s = p.a + p.b;
    n.center = 0.5 * s;
    n.u = (p.a - p.b) / s;
    return n;
}

PositivePair trig_pair(double x) {
    if (!(x > 0.0) || !(x < std::numbers::pi / 2.0))
        throw std::domain_error("trig_pair requires 0 < x < pi/2");
    const double s = std::sin(x);
    // 1 - sin x via the half-angle square keeps b positive all the way
    // to the right endpoint, where 1 - sin(x) rounds to 0 directly.
    const double d = std::sin(std::numbers::pi / 4.0 - 0.5 * x);
    return PositivePair(1.0 + s, 2.0 * d * d);
}

PositivePair hyp_pair(double x) {
    if (!(x > 0.0) || !(x <= 300.0))
        throw std::domain_error("hyp_pair requires 0 < x <= 300");
    return PositivePair(std::exp(x), std::exp(-x));
}

double mean_normalized(const MeanSpec& spec, double u) {
    require_valid_spec(spec);
    if (!std::isfinite(u) || !(std::fabs(u) < 1.0))
        throw std::domain_error("normalized argument must satisfy |u| < 1");
    const double au = std::fabs(u);
    return eval_normalized(spec, au, 1.0 + au, 1.0 - au);
}

double mean_value(const MeanSpec& spec, const PositivePair& pair) {
    require_valid_spec(spec);
    if (pair.a == pair.b) return pair.a;
    const double s = pair.a + pair.b;
    const double hi = pair.a > pair.b ? pair.a : pair.b;
    const double lo = pair.a > pair.b ? pair.b : pair.a;
    const double au = (hi - lo) / s;
    // 1 +- u formed from the pair itself; exact to one rounding even
    // when the ratio hi/lo is astronomically large.
    const double vp = 2.0 * hi / s;
    const double vm = 2.0 * lo / s;
    return 0.5 * s * eval_normalized(spec, au, vp, vm);
}

}  // namespace ineq
