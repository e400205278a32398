// Command-line front end: catalog checks, crossing scans, monotonicity
// scans, best constants, sandwich bound traces, and expression evaluation.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "ineq/checker.hpp"
#include "ineq/constants.hpp"
#include "ineq/report_io.hpp"
#include "ineq/seqbounds.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;

ineq::Catalog load_catalog() {
    const char* path = std::getenv("INEQFORGE_MANIFEST");
    if (path && *path) return ineq::Catalog::from_manifest_file(path);
    return ineq::Catalog::builtin();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

int run_list(const ineq::Catalog& catalog) {
    for (const auto& e : catalog.entries()) {
        std::printf("%-22s %-19s %s\n", e.id.c_str(), ineq::status_name(e.status),
                    e.chain_text.c_str());
    }
    std::printf("# %zu entries, %zu named functions\n", catalog.entries().size(),
                catalog.functions().size());
    return kExitOk;
}

int run_check(const ineq::Catalog& catalog, const std::string& id,
              const ineq::CheckConfig& config, const std::string& dump_margins) {
    const ineq::CatalogEntry* entry = catalog.lookup(id);
    if (!entry) {
        std::fprintf(stderr, "unknown entry id '%s'\n", id.c_str());
        return kExitUsage;
    }
    const ineq::CheckReport report = ineq::check_entry(*entry, config);
    std::fputs(ineq::reports_to_csv({report}).c_str(), stdout);
    if (!dump_margins.empty()) {
        std::string csv = "point,margin\n";
        for (const auto& row : ineq::margin_profile(*entry, config)) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), ",%.17g\n", row.margin);
            csv += ineq::format_point(row.point);
            csv += buf;
        }
        if (!write_file(dump_margins, csv)) {
            std::fprintf(stderr, "cannot write %s\n", dump_margins.c_str());
            return kExitUsage;
        }
    }
    return ineq::report_matches_expectation(*entry, report) ? kExitOk
                                                            : kExitUnexpected;
}

int run_check_all(const ineq::Catalog& catalog, const ineq::CheckConfig& config,
                  int threads, const std::string& report_path,
                  const std::string& json_path) {
    const auto reports = ineq::check_all(catalog, config, threads);
    const std::string csv = ineq::reports_to_csv(reports);
    std::fputs(csv.c_str(), stdout);
    if (!report_path.empty() && !write_file(report_path, csv)) {
        std::fprintf(stderr, "cannot write %s\n", report_path.c_str());
        return kExitUsage;
    }
    if (!json_path.empty() &&
        !write_file(json_path, ineq::reports_to_json(catalog, reports))) {
        std::fprintf(stderr, "cannot write %s\n", json_path.c_str());
        return kExitUsage;
    }
    return ineq::all_reports_as_expected(catalog, reports) ? kExitOk
                                                           : kExitUnexpected;
}

int run_crossing(const std::string& a_text, const std::string& b_text,
                 const std::string& lo, const std::string& hi,
                 const ineq::CheckConfig& config) {
    const ineq::ExprPtr a = ineq::parse_expr(a_text);
    const ineq::ExprPtr b = ineq::parse_expr(b_text);
    ineq::DomainSpec domain;
    domain.variable = "x";
    domain.lo = ineq::parse_bound(lo);
    domain.hi = ineq::parse_bound(hi);
    if (!(domain.lo < domain.hi))
        throw std::runtime_error("crossing requires lo < hi");
    const ineq::CrossingResult res = ineq::find_crossing(a, b, domain, config);
    if (res.crossing) {
        std::printf("crossing: a<b at x=%.9g (gap %.3e), a>b at x=%.9g (gap %.3e)\n",
                    res.crossing->x1, res.crossing->gap1, res.crossing->x2,
                    res.crossing->gap2);
    } else if (res.indeterminate) {
        std::printf("indeterminate (evaluation errors during scan)\n");
    } else {
        std::printf("none\n");
    }
    return kExitOk;
}

int run_mono(const ineq::Catalog& catalog, const std::string& name,
             const ineq::CheckConfig& config) {
    const ineq::NamedFunction* fn = catalog.lookup_function(name);
    if (!fn) {
        std::fprintf(stderr, "unknown function '%s'; available:\n", name.c_str());
        for (const auto& f : catalog.functions())
            std::fprintf(stderr, "  %-14s %s\n", f.id.c_str(), f.body_text.c_str());
        return kExitUsage;
    }
    const ineq::MonotonicityReport rep = ineq::monotonicity_scan(*fn, config);
    for (const auto& claim : rep.claims) {
        std::printf("%s,%s,%s,%zu\n", fn->id.c_str(), ineq::claim_name(claim.claim),
                    ineq::verdict_name(claim.verdict), claim.violations.size());
    }
    if (!fn->note.empty()) std::printf("# note: %s\n", fn->note.c_str());
    return rep.verdict == ineq::Verdict::Holds ? kExitOk : kExitUnexpected;
}

int run_constants() {
    std::printf("id,value,error_estimate,paper_decimal,deviation\n");
    bool ok = true;
    for (const auto& spec : ineq::builtin_constants()) {
        try {
            const ineq::ConstantResult r = ineq::evaluate_constant(spec);
            std::printf("%s,%.17g,%.3e,", r.id.c_str(), r.value, r.error_estimate);
            if (spec.paper_decimal)
                std::printf("%.9g,%.3e\n", *spec.paper_decimal,
                            std::fabs(r.value - *spec.paper_decimal));
            else
                std::printf(",\n");
        } catch (const std::exception& e) {
            std::printf("%s,error,,,%s\n", spec.id.c_str(), e.what());
            ok = false;
        }
    }
    return ok ? kExitOk : kExitUnexpected;
}

int run_bounds(const std::string& mean_tag, double a, double b, int iters) {
    const ineq::SandwichKind kind = ineq::sandwich_from_tag(mean_tag);
    const ineq::BoundsTrace trace =
        ineq::bounds_trace(kind, ineq::PositivePair(a, b), iters);
    std::printf("n,lower,upper,gap\n");
    for (const auto& s : trace.steps)
        std::printf("%d,%.17g,%.17g,%.17g\n", s.n, s.lower, s.upper,
                    s.upper - s.lower);
    return kExitOk;
}

int run_eval(const std::string& expr_text, const std::string& at) {
    const ineq::ExprPtr expr = ineq::parse_expr(expr_text);
    ineq::Bindings bindings;
    if (!at.empty()) {
        std::size_t start = 0;
        while (start < at.size()) {
            std::size_t end = at.find(',', start);
            if (end == std::string::npos) end = at.size();
            const std::string item = at.substr(start, end - start);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--at expects name=value[,name=value...]");
            bindings.set(item.substr(0, eq), ineq::parse_bound(item.substr(eq + 1)));
            start = end + 1;
        }
    }
    std::printf("%.7f\n", ineq::eval_expr(expr, bindings));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ineqforge: numerical certification of the catalog of "
                 "trigonometric and hyperbolic inequalities"};
    app.require_subcommand(1);

    ineq::CheckConfig config;
    int threads = 1;
    app.add_option("--samples", config.samples, "interior samples per entry (odd)");
    app.add_option("--seed", config.seed, "seed for random pair sampling");
    app.fallthrough();

    auto* c_list = app.add_subcommand("list", "print the catalog table");

    std::string id, dump_margins;
    auto* c_check = app.add_subcommand("check", "check one catalog entry");
    c_check->add_option("--id", id, "entry id")->required();
    c_check->add_option("--dump-margins", dump_margins, "write margin-vs-x CSV");

    std::string report_path, json_path;
    auto* c_all = app.add_subcommand("check-all", "check every entry");
    c_all->add_option("--report", report_path, "write the CSV report here");
    c_all->add_option("--json", json_path, "write the full JSON report here");
    c_all->add_option("--threads", threads, "worker threads (default 1)");

    std::string expr_a, expr_b, lo = "0", hi = "1";
    auto* c_cross = app.add_subcommand("crossing", "find opposite orderings of two expressions");
    c_cross->add_option("--a", expr_a, "first expression")->required();
    c_cross->add_option("--b", expr_b, "second expression")->required();
    c_cross->add_option("--lo", lo, "interval start (constant expression)")->required();
    c_cross->add_option("--hi", hi, "interval end (constant expression)")->required();

    std::string fn_name;
    auto* c_mono = app.add_subcommand("mono", "verify a named function's claimed shape");
    c_mono->add_option("--fn", fn_name, "function id")->required();

    auto* c_const = app.add_subcommand("constants", "print all best-constant results");

    std::string mean_tag;
    double pa = 1.0, pb = 1.0;
    int iters = 8;
    auto* c_bounds = app.add_subcommand("bounds", "print the sandwich bound trace");
    c_bounds->add_option("--mean", mean_tag, "L, P, or T")->required();
    c_bounds->add_option("--a", pa, "first argument")->required();
    c_bounds->add_option("--b", pb, "second argument")->required();
    c_bounds->add_option("--iters", iters, "iterations (default 8)");

    std::string expr_text, at_text;
    auto* c_eval = app.add_subcommand("eval", "evaluate one expression");
    c_eval->add_option("--expr", expr_text, "expression text")->required();
    c_eval->add_option("--at", at_text, "bindings, e.g. x=1 or x=0.5,t=2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        config.validate();
        if (c_list->parsed()) return run_list(load_catalog());
        if (c_check->parsed())
            return run_check(load_catalog(), id, config, dump_margins);
        if (c_all->parsed())
            return run_check_all(load_catalog(), config, threads, report_path,
                                 json_path);
        if (c_cross->parsed()) return run_crossing(expr_a, expr_b, lo, hi, config);
        if (c_mono->parsed()) return run_mono(load_catalog(), fn_name, config);
        if (c_const->parsed()) return run_constants();
        if (c_bounds->parsed()) return run_bounds(mean_tag, pa, pb, iters);
        if (c_eval->parsed()) return run_eval(expr_text, at_text);
    } catch (const ineq::ParseError& e) {
        std::fprintf(stderr, "parse error at offset %zu: %s\n", e.offset, e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
