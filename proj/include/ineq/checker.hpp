#ifndef INEQ_CHECKER_HPP
#define INEQ_CHECKER_HPP

#include <optional>

#include "ineq/catalog.hpp"

namespace ineq {

CheckReport check_entry(const CatalogEntry& entry, const CheckConfig& config);

// One report per entry, in catalog order. threads <= 1 runs inline.
std::vector<CheckReport> check_all(const Catalog& catalog, const CheckConfig& config,
                                   int threads = 1);

// Aggregate pass criterion: every as-printed / corrected entry holds and
// every misprint-suspected entry is violated (as expected).
bool report_matches_expectation(const CatalogEntry& entry, const CheckReport& report);
bool all_reports_as_expected(const Catalog& catalog,
                             const std::vector<CheckReport>& reports);

struct Crossing {
    double x1 = 0.0;  // first expression below the second here
    double x2 = 0.0;  // and above it here
    double gap1 = 0.0, gap2 = 0.0;
};

struct CrossingResult {
    std::optional<Crossing> crossing;
    bool indeterminate = false;  // evaluation errors while scanning
};

// Scans for two interior points ordering the expressions both ways.
CrossingResult find_crossing(const ExprPtr& a, const ExprPtr& b,
                             const DomainSpec& domain, const CheckConfig& config);

struct ClaimReport {
    FunctionClaim claim = FunctionClaim::Increasing;
    Verdict verdict = Verdict::Indeterminate;
    std::vector<PointAssignment> violations;
};

struct MonotonicityReport {
    std::string function_id;
    Verdict verdict = Verdict::Indeterminate;  // holds iff every claim holds
    std::vector<ClaimReport> claims;
};

MonotonicityReport monotonicity_scan(const NamedFunction& fn, const CheckConfig& config);
// Scan an explicit claim regardless of what the function declares.
ClaimReport scan_claim(const NamedFunction& fn, FunctionClaim claim,
                       const CheckConfig& config);

CheckReport region_check_2d(const CatalogEntry& entry, const CheckConfig& config);

// Margin sample (for --dump-margins): one row per grid point.
struct MarginSample {
    PointAssignment point;
    double margin = 0.0;  // normalized
};
std::vector<MarginSample> margin_profile(const CatalogEntry& entry,
                                         const CheckConfig& config);

// Deterministic probe values for mean-level domains: the fixed u grid
// plus `count` seeded log-ratio pairs mapped to u = (rho-1)/(rho+1).
std::vector<double> mean_domain_probes(std::uint64_t seed, int count = 100);

}  // namespace ineq

#endif
