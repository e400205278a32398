#ifndef INEQ_CATALOG_HPP
#define INEQ_CATALOG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ineq/expr.hpp"

namespace ineq {

struct SecondVariable {
    std::string name;
    double lo = 0.0, hi = 1.0;
    bool open_lo = true, open_hi = true;
    RelationChain constraint;  // e.g. "y < asin(x)"
};

struct DomainSpec {
    std::string variable = "x";
    double lo = 0.0, hi = 1.0;
    bool open_lo = true, open_hi = true;
    // Mean-level domains (a,b) = (1+u, 1-u): sampled over (0,1) plus a
    // fixed probe grid and seeded random log-ratio pairs.
    bool mean_domain = false;
    // Insertion-ordered parameter grids.
    std::vector<std::pair<std::string, std::vector<double>>> parameter_grids;
    std::optional<SecondVariable> second;

    bool two_dimensional() const { return second.has_value(); }
};

enum class EntryStatus { AsPrinted, Corrected, MisprintSuspected };

const char* status_name(EntryStatus s);

struct CatalogEntry {
    // Primary id first; duplicated results carry aliases after '='
    // (e.g. "P2.4.3=P4.10").
    std::string id;
    EntryStatus status = EntryStatus::AsPrinted;
    RelationChain chain;
    std::string chain_text;
    DomainSpec domain;
    std::string source_note;
    std::string correction_note;  // non-empty for corrected entries

    std::string primary_id() const;
    bool matches_id(const std::string& query) const;
};

struct CheckConfig {
    int samples = 2001;                      // odd, >= 101
    double interior_margin_fraction = 1e-3;
    double tie_tolerance = 1e-13;
    int endpoint_zoom_levels = 6;
    enum class Normalization { Relative, Absolute };
    Normalization normalization = Normalization::Relative;
    std::uint64_t seed = 20250810;           // mean-domain random pairs

    void validate() const;  // throws std::domain_error
};

enum class Verdict { Holds, Violated, Indeterminate };

const char* verdict_name(Verdict v);

using PointAssignment = std::vector<std::pair<std::string, double>>;

struct Violation {
    enum class Kind { Order, Domain };
    Kind kind = Kind::Order;
    PointAssignment point;
    double lhs = 0.0, rhs = 0.0;  // adjacent pair values (Order only)
    int relation_index = -1;
    std::string detail;           // evaluation error text (Domain only)
};

struct CheckReport {
    std::string entry_id;
    Verdict verdict = Verdict::Indeterminate;
    long n_evaluated = 0;
    double min_margin = 0.0;  // normalized; over non-tie sample points
    PointAssignment argmin;
    std::vector<Violation> violations;      // Order kind
    std::vector<Violation> domain_errors;   // Domain kind
    // Points whose |margin| fell below tie_tolerance*scale (equality
    // degeneration, typically toward an endpoint).
    std::vector<PointAssignment> endpoint_flags;
};

enum class FunctionClaim { Increasing, Decreasing, Convex, Concave };

const char* claim_name(FunctionClaim c);

struct NamedFunction {
    std::string id;
    std::string body_text;
    RelationChain body;  // single expression
    DomainSpec domain;
    std::vector<FunctionClaim> claims;
    std::string note;
};

class Catalog {
public:
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* lookup(const std::string& id) const;
    const std::vector<NamedFunction>& functions() const { return functions_; }
    const NamedFunction* lookup_function(const std::string& id) const;

    static Catalog builtin();
    static Catalog from_manifest_text(const std::string& text);
    static Catalog from_manifest_file(const std::string& path);

private:
    std::vector<CatalogEntry> entries_;
    std::vector<NamedFunction> functions_;
};

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a numeric bound given as a constant expression ("pi/2", "0.5").
double parse_bound(const std::string& text);

}  // namespace ineq

#endif
