#ifndef INEQ_MEANS_HPP
#define INEQ_MEANS_HPP

#include <stdexcept>
#include <string>

namespace ineq {

// The thirteen bivariate means used by the catalog. Ak is the power mean
// of order k (Ak(0) coincides with G).
enum class MeanKind { A, G, H, Q, Ak, L, I, P, T, M, S, X, Y };

struct MeanSpec {
    MeanKind kind = MeanKind::A;
    double exponent = 0.0;  // meaningful for Ak only

    MeanSpec() = default;
    MeanSpec(MeanKind k) : kind(k) {}
    static MeanSpec power(double k) {
        MeanSpec s(MeanKind::Ak);
        s.exponent = k;
        return s;
    }
};

// One-letter tag used by the expression language and the CLI ("a".."y").
// Throws std::domain_error for an unknown tag. Ak has no tag.
MeanSpec mean_from_tag(const std::string& tag);
const char* mean_tag(MeanKind kind);

struct PositivePair {
    double a = 1.0, b = 1.0;

    PositivePair() = default;
    // Throws std::domain_error unless both entries are finite and > 0.
    PositivePair(double a_, double b_);
};

// Scale-free form: pair = center*(1+u), center*(1-u) with |u| < 1.
struct NormalizedPair {
    double center = 1.0;
    double u = 0.0;
};

NormalizedPair normalize(const PositivePair& p);

// (1+sin x, 1-sin x) for 0 < x < pi/2; P of the pair equals sin(x)/x.
PositivePair trig_pair(double x);
// (e^x, e^-x) for 0 < x <= 300; L of the pair equals sinh(x)/x.
PositivePair hyp_pair(double x);

// Mean(1+u, 1-u) for |u| < 1. Relative error <= 1e-13 over the whole
// range; the kinds singular at u=0 (L, I, P, T, M) switch to an even
// Taylor series below |u| = 1e-4.
double mean_normalized(const MeanSpec& spec, double u);

double mean_value(const MeanSpec& spec, const PositivePair& pair);

}  // namespace ineq

#endif
