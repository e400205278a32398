#include "ineq/catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ineq {

namespace detail {
extern const char embedded_manifest[];
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ManifestError("manifest line " + std::to_string(line) + ": " + msg);
}

// Range syntax: name:(lo,hi) with '(' / '[' open/closed brackets, or the
// special form u:mean.
void parse_range(const std::string& text, int line, std::string& name, double& lo,
                 double& hi, bool& open_lo, bool& open_hi, bool& mean_domain) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) fail(line, "bad range '" + text + "'");
    name = trim(text.substr(0, colon));
    const std::string body = trim(text.substr(colon + 1));
    if (body == "mean") {
        mean_domain = true;
        lo = 0.0;
        hi = 1.0;
        open_lo = open_hi = true;
        return;
    }
    mean_domain = false;
    if (body.size() < 5 || (body.front() != '(' && body.front() != '[') ||
        (body.back() != ')' && body.back() != ']'))
        fail(line, "bad range '" + text + "'");
    open_lo = body.front() == '(';
    open_hi = body.back() == ')';
    const std::string inner = body.substr(1, body.size() - 2);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) fail(line, "bad range '" + text + "'");
    lo = parse_bound(trim(inner.substr(0, comma)));
    hi = parse_bound(trim(inner.substr(comma + 1)));
    if (!(lo < hi)) fail(line, "range requires lo < hi in '" + text + "'");
}

DomainSpec parse_domain(const std::string& text, int line) {
    DomainSpec d;
    const std::vector<std::string> parts = split(text, ';');
    parse_range(parts[0], line, d.variable, d.lo, d.hi, d.open_lo, d.open_hi,
                d.mean_domain);
    if (parts.size() == 1) return d;
    if (d.mean_domain) fail(line, "mean domain cannot carry a second variable");
    if (parts.size() != 3)
        fail(line, "two-variable domain needs range;range;constraint");
    SecondVariable sv;
    bool mean2 = false;
    parse_range(parts[1], line, sv.name, sv.lo, sv.hi, sv.open_lo, sv.open_hi, mean2);
    if (mean2) fail(line, "mean domain cannot be a second variable");
    try {
        sv.constraint = parse(trim(parts[2]));
    } catch (const ParseError& e) {
        fail(line, "constraint parse error: " + std::string(e.what()));
    }
    if (!sv.constraint.is_chain()) fail(line, "constraint must be a relation");
    d.second = std::move(sv);
    return d;
}

std::vector<std::pair<std::string, std::vector<double>>> parse_grids(
    const std::string& text, int line) {
    std::vector<std::pair<std::string, std::vector<double>>> grids;
    const std::string t = trim(text);
    if (t == "-" || t.empty()) return grids;
    for (const std::string& part : split(t, ';')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) fail(line, "bad parameter grid '" + part + "'");
        std::vector<double> values;
        for (const std::string& v : split(part.substr(eq + 1), ',')) {
            const std::string value = trim(v);
            if (value.empty()) fail(line, "empty parameter grid in '" + part + "'");
            try {
                values.push_back(parse_bound(value));
            } catch (const ParseError& e) {
                fail(line, "bad grid value '" + value + "': " + e.what());
            }
        }
        if (values.empty()) fail(line, "empty parameter grid in '" + part + "'");
        grids.emplace_back(trim(part.substr(0, eq)), std::move(values));
    }
    return grids;
}

EntryStatus parse_status(const std::string& s, int line) {
    if (s == "as-printed") return EntryStatus::AsPrinted;
    if (s == "corrected") return EntryStatus::Corrected;
    if (s == "misprint-suspected") return EntryStatus::MisprintSuspected;
    fail(line, "unknown status '" + s + "'");
}

// Integrity checks over the full entry list: unique ids, chain variables
// covered, misprint entries paired with corrected ones.
void validate_entries(const std::vector<CatalogEntry>& entries) {
    std::set<std::string> seen;
    for (const CatalogEntry& e : entries) {
        for (const std::string& id : split(e.id, '='))
            if (!seen.insert(id).second)
                throw ManifestError("duplicate catalog id '" + id + "'");
    }
    for (const CatalogEntry& e : entries) {
        std::set<std::string> allowed{e.domain.variable};
        if (e.domain.second) allowed.insert(e.domain.second->name);
        for (const auto& grid : e.domain.parameter_grids) allowed.insert(grid.first);
        for (const std::string& v : free_variables(e.chain))
            if (!allowed.count(v))
                throw ManifestError("entry " + e.primary_id() + ": variable '" + v +
                                    "' not covered by domain or grids");
        if (e.status == EntryStatus::Corrected && e.correction_note.empty())
            throw ManifestError("entry " + e.primary_id() +
                                ": corrected entry lacks a correction note");
        if (e.status == EntryStatus::MisprintSuspected) {
            const std::string suffix = "-as-printed";
            const std::string& pid = e.primary_id();
            if (pid.size() <= suffix.size() ||
                pid.compare(pid.size() - suffix.size(), suffix.size(), suffix) != 0)
                throw ManifestError("entry " + pid +
                                    ": misprint-suspected id must end in -as-printed");
            const std::string base = pid.substr(0, pid.size() - suffix.size());
            bool paired = false;
            for (const CatalogEntry& other : entries)
                if (other.status == EntryStatus::Corrected && other.matches_id(base))
                    paired = true;
            if (!paired)
                throw ManifestError("entry " + pid + ": no corrected entry for '" +
                                    base + "'");
        }
    }
}

DomainSpec simple_domain(const char* var, double lo, double hi) {
    DomainSpec d;
    d.variable = var;
    d.lo = lo;
    d.hi = hi;
    return d;
}

NamedFunction make_function(const char* id, const char* body, DomainSpec domain,
                            std::vector<FunctionClaim> claims, const char* note) {
    NamedFunction f;
    f.id = id;
    f.body_text = body;
    f.body = parse(body);
    f.domain = std::move(domain);
    f.claims = std::move(claims);
    f.note = note;
    return f;
}

// The papers' auxiliary functions with their claimed shape properties.
std::vector<NamedFunction> builtin_functions() {
    using FC = FunctionClaim;
    const double half_pi = parse_bound("pi/2");
    std::vector<NamedFunction> fns;
    fns.push_back(make_function("p1_g", "sin(x)/x", simple_domain("x", 0, half_pi),
                                {FC::Decreasing, FC::Concave},
                                "printed claim says increasing; the function "
                                "decreases on (0, pi/2), concavity stands"));
    fns.push_back(make_function("p1_q", "(1-cos(x))/x^2",
                                simple_domain("x", 0, half_pi),
                                {FC::Decreasing, FC::Concave}, ""));
    fns.push_back(make_function("p1_f", "tan(x/2)/x", simple_domain("x", 0, half_pi),
                                {FC::Increasing, FC::Convex}, ""));
    fns.push_back(make_function("p1_a", "2/x - 1/tan(x/2)",
                                simple_domain("x", 0, half_pi),
                                {FC::Increasing, FC::Convex}, ""));
    fns.push_back(make_function("p2_f1", "tanh(x)/x", simple_domain("x", 0, 5),
                                {FC::Decreasing}, ""));
    fns.push_back(make_function("p4_f", "x*(2+cos(x))/sin(x)",
                                simple_domain("x", 0, half_pi), {FC::Increasing},
                                ""));
    fns.push_back(make_function("p4_g", "x*(4/pi+cos(x))/sin(x)",
                                simple_domain("x", 0, half_pi), {FC::Decreasing},
                                ""));
    fns.push_back(make_function("p4_fh", "x*(2+cosh(x))/sinh(x)",
                                simple_domain("x", 0, 5), {FC::Increasing}, ""));
    fns.push_back(make_function("p4_gh", "x*(pi+cosh(x))/sinh(x)",
                                simple_domain("x", 0, half_pi), {FC::Decreasing},
                                ""));
    fns.push_back(make_function("p4_k", "1/tanh(x) - 1/x", simple_domain("x", 0, 5),
                                {FC::Increasing, FC::Concave}, ""));
    fns.push_back(make_function("p8_h1", "ln(x/sin(x))/ln(cosh(x))",
                                simple_domain("x", 0, half_pi), {FC::Increasing},
                                ""));
    fns.push_back(make_function("p8_h2", "ln(2/(cos(x)+1))/ln(sinh(x)/x)",
                                simple_domain("x", 0, half_pi), {FC::Increasing},
                                ""));
    fns.push_back(make_function("p9_h", "ln(x/sin(x))/ln(sinh(x)/x)",
                                simple_domain("x", 0, half_pi), {FC::Increasing},
                                ""));
    fns.push_back(make_function("p10_f", "x*exp(1/x-1)", simple_domain("x", 1, 5),
                                {FC::Increasing}, ""));
    // lower branch starts at 0.02: exp(1/x - 1) overflows a double when
    // x shrinks much further
    fns.push_back(make_function("p10_f_lower", "x*exp(1/x-1)",
                                simple_domain("x", 0.02, 1), {FC::Decreasing}, ""));
    return fns;
}

}  // namespace

const char* status_name(EntryStatus s) {
    switch (s) {
        case EntryStatus::AsPrinted: return "as-printed";
        case EntryStatus::Corrected: return "corrected";
        case EntryStatus::MisprintSuspected: return "misprint-suspected";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

const char* claim_name(FunctionClaim c) {
    switch (c) {
        case FunctionClaim::Increasing: return "increasing";
        case FunctionClaim::Decreasing: return "decreasing";
        case FunctionClaim::Convex: return "convex";
        case FunctionClaim::Concave: return "concave";
    }
    return "?";
}

std::string CatalogEntry::primary_id() const {
    const std::size_t eq = id.find('=');
    return eq == std::string::npos ? id : id.substr(0, eq);
}

bool CatalogEntry::matches_id(const std::string& query) const {
    for (const std::string& candidate : split(id, '='))
        if (candidate == query) return true;
    return false;
}

void CheckConfig::validate() const {
    if (samples < 101) throw std::domain_error("samples must be >= 101");
    if (samples % 2 == 0) throw std::domain_error("samples must be odd");
    if (!(interior_margin_fraction > 0.0) || !(interior_margin_fraction < 0.5))
        throw std::domain_error("interior_margin_fraction must be in (0, 0.5)");
    if (!(tie_tolerance > 0.0)) throw std::domain_error("tie_tolerance must be positive");
    if (endpoint_zoom_levels < 0 || endpoint_zoom_levels > 12)
        throw std::domain_error("endpoint_zoom_levels must be in [0, 12]");
}

double parse_bound(const std::string& text) {
    const ExprPtr e = parse_expr(text);
    const double v = eval_expr(e, Bindings{});
    if (!std::isfinite(v)) throw std::domain_error("bound is not finite: " + text);
    return v;
}

const CatalogEntry* Catalog::lookup(const std::string& id) const {
    for (const CatalogEntry& e : entries_)
        if (e.matches_id(id)) return &e;
    return nullptr;
}

const NamedFunction* Catalog::lookup_function(const std::string& id) const {
    for (const NamedFunction& f : functions_)
        if (f.id == id) return &f;
    return nullptr;
}

Catalog Catalog::builtin() { return from_manifest_text(detail::embedded_manifest); }

Catalog Catalog::from_manifest_text(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split(raw, '\t');
        if (fields.size() != 6)
            fail(line_no, "expected 6 tab-separated fields, got " +
                              std::to_string(fields.size()));
        CatalogEntry e;
        e.id = trim(fields[0]);
        e.status = parse_status(trim(fields[1]), line_no);
        e.domain = parse_domain(trim(fields[2]), line_no);
        e.domain.parameter_grids = parse_grids(fields[3], line_no);
        e.chain_text = trim(fields[4]);
        try {
            e.chain = parse(e.chain_text);
        } catch (const ParseError& err) {
            fail(line_no, "chain parse error at offset " +
                              std::to_string(err.offset) + ": " + err.what());
        }
        if (!e.chain.is_chain()) fail(line_no, "chain needs at least one relation");
        std::string note = trim(fields[5]);
        const std::string marker = " || fix: ";
        const std::size_t pos = note.find(marker);
        if (pos != std::string::npos) {
            e.correction_note = note.substr(pos + marker.size());
            note = note.substr(0, pos);
        }
        e.source_note = note;
        cat.entries_.push_back(std::move(e));
    }
    validate_entries(cat.entries_);
    cat.functions_ = builtin_functions();
    return cat;
}

Catalog Catalog::from_manifest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestError("cannot open manifest file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_manifest_text(buf.str());
}

}  // namespace ineq
