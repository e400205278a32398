#include "ineq/checker.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <thread>

namespace ineq {

namespace {

// splitmix64; hand-rolled so sampled points are stable across platforms.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct PointMode {
    bool probe = false;  // zoom / mean-grid points flag but never fail
};

// Shared margin bookkeeping for one entry across all parameter combos.
struct Accumulator {
    const CatalogEntry* entry = nullptr;
    const CheckConfig* config = nullptr;
    CheckReport report;
    bool has_min = false;

    void visit(const Bindings& bindings, const PointAssignment& point,
               const PointMode& mode) {
        ++report.n_evaluated;
        std::vector<double> values(entry->chain.exprs.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            try {
                values[i] = eval_expr(entry->chain.exprs[i], bindings);
            } catch (const EvalError& err) {
                Violation v;
                v.kind = Violation::Kind::Domain;
                v.point = point;
                v.detail = std::string(err.what()) + " in " + err.node_text;
                report.domain_errors.push_back(std::move(v));
                return;
            }
        }
        double point_margin = 0.0;
        bool point_has_margin = false;
        bool tie = false;
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            const double l = values[i], r = values[i + 1];
            const double raw = r - l;
            const double scale = std::max(1.0, std::fabs(l) + std::fabs(r));
            const double tie_band = config->tie_tolerance * scale;
            if (raw < -tie_band) {
                if (!mode.probe) {
                    Violation v;
                    v.kind = Violation::Kind::Order;
                    v.point = point;
                    v.lhs = l;
                    v.rhs = r;
                    v.relation_index = static_cast<int>(i);
                    report.violations.push_back(std::move(v));
                    const double normalized =
                        config->normalization == CheckConfig::Normalization::Relative
                            ? raw / scale
                            : raw;
                    if (!has_min || normalized < report.min_margin) {
                        report.min_margin = normalized;
                        report.argmin = point;
                        has_min = true;
                    }
                } else {
                    report.endpoint_flags.push_back(point);
                }
                tie = true;  // no further relations at this point
                break;
            }
            if (std::fabs(raw) <= tie_band) {
                tie = true;
                report.endpoint_flags.push_back(point);
                break;
            }
            const double normalized =
                config->normalization == CheckConfig::Normalization::Relative
                    ? raw / scale
                    : raw;
            if (!point_has_margin || normalized < point_margin) {
                point_margin = normalized;
                point_has_margin = true;
            }
        }
        if (tie || !point_has_margin) return;
        if (!has_min || point_margin < report.min_margin) {
            report.min_margin = point_margin;
            report.argmin = point;
            has_min = true;
        }
    }

    void finish() {
        if (!report.violations.empty())
            report.verdict = Verdict::Violated;
        else if (!report.domain_errors.empty() || !has_min)
            report.verdict = Verdict::Indeterminate;
        else
            report.verdict = report.min_margin > 0.0 ? Verdict::Holds
                                                     : Verdict::Indeterminate;
    }
};

std::vector<double> interior_grid(double lo, double hi, int samples, double fraction) {
    const double span = hi - lo;
    const double start = lo + fraction * span;
    const double stop = hi - fraction * span;
    const double step = (stop - start) / static_cast<double>(samples - 1);
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        xs[static_cast<std::size_t>(i)] = start + step * static_cast<double>(i);
    return xs;
}

std::vector<double> zoom_points(double lo, double hi, int levels) {
    const double span = hi - lo;
    std::vector<double> xs;
    double scale = 0.1;
    for (int j = 1; j <= levels; ++j, scale *= 0.1) {
        const double a = lo + span * scale;
        const double b = hi - span * scale;
        if (a > lo && a < hi) xs.push_back(a);
        if (b > lo && b < hi && b != a) xs.push_back(b);
    }
    return xs;
}

// Cartesian product over parameter grids, visited in manifest order.
void for_each_combo(const DomainSpec& domain,
                    const std::function<void(const PointAssignment&)>& fn) {
    const auto& grids = domain.parameter_grids;
    PointAssignment combo(grids.size());
    std::function<void(std::size_t)> recur = [&](std::size_t level) {
        if (level == grids.size()) {
            fn(combo);
            return;
        }
        for (double v : grids[level].second) {
            combo[level] = {grids[level].first, v};
            recur(level + 1);
        }
    };
    recur(0);
}

void check_1d(const CatalogEntry& entry, const CheckConfig& config, Accumulator& acc) {
    const DomainSpec& d = entry.domain;
    const std::vector<double> grid =
        interior_grid(d.lo, d.hi, config.samples, config.interior_margin_fraction);
    std::vector<double> probes = zoom_points(d.lo, d.hi, config.endpoint_zoom_levels);
    if (d.mean_domain) {
        const std::vector<double> extra = mean_domain_probes(config.seed);
        probes.insert(probes.end(), extra.begin(), extra.end());
    }
    for_each_combo(d, [&](const PointAssignment& combo) {
        Bindings bindings;
        for (const auto& [name, value] : combo) bindings.set(name, value);
        auto run = [&](const std::vector<double>& xs, bool probe) {
            for (double x : xs) {
                bindings.set(d.variable, x);
                PointAssignment point;
                point.emplace_back(d.variable, x);
                point.insert(point.end(), combo.begin(), combo.end());
                acc.visit(bindings, point, PointMode{probe});
            }
        };
        run(grid, false);
        run(probes, true);
    });
}

void check_2d(const CatalogEntry& entry, const CheckConfig& config, Accumulator& acc) {
    const DomainSpec& d = entry.domain;
    const SecondVariable& sv = *d.second;
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(config.samples))));
    if (side % 2 == 0) ++side;
    if (side < 11) side = 11;
    const std::vector<double> xs =
        interior_grid(d.lo, d.hi, side, config.interior_margin_fraction);
    const std::vector<double> ys =
        interior_grid(sv.lo, sv.hi, side, config.interior_margin_fraction);
    for_each_combo(d, [&](const PointAssignment& combo) {
        Bindings bindings;
        for (const auto& [name, value] : combo) bindings.set(name, value);
        for (double x : xs) {
            bindings.set(d.variable, x);
            for (double y : ys) {
                bindings.set(sv.name, y);
                bool keep = true;
                try {
                    std::vector<double> cv(sv.constraint.exprs.size());
                    for (std::size_t i = 0; i < cv.size(); ++i)
                        cv[i] = eval_expr(sv.constraint.exprs[i], bindings);
                    for (std::size_t i = 0; i + 1 < cv.size() && keep; ++i)
                        keep = sv.constraint.rels[i] == Rel::Less
                                   ? cv[i] < cv[i + 1]
                                   : cv[i] <= cv[i + 1];
                } catch (const EvalError&) {
                    keep = false;  // outside the constraint's own domain
                }
                if (!keep) continue;
                PointAssignment point;
                point.emplace_back(d.variable, x);
                point.emplace_back(sv.name, y);
                point.insert(point.end(), combo.begin(), combo.end());
                acc.visit(bindings, point, PointMode{false});
            }
        }
    });
}

double eval_function(const NamedFunction& fn, double x, bool& ok) {
    Bindings b;
    b.set(fn.domain.variable, x);
    try {
        ok = true;
        return eval_expr(fn.body.exprs.front(), b);
    } catch (const EvalError&) {
        ok = false;
        return 0.0;
    }
}

}  // namespace

std::vector<double> mean_domain_probes(std::uint64_t seed, int count) {
    // Fixed grid toward both the degenerate (a=b) and extreme-ratio ends.
    std::vector<double> us = {1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999};
    SplitMix rng(seed);
    const double lo = std::log(1.001), hi = std::log(1000.0);
    for (int i = 0; i < count; ++i) {
        const double ratio = std::exp(lo + (hi - lo) * rng.uniform01());
        us.push_back((ratio - 1.0) / (ratio + 1.0));
    }
    return us;
}

CheckReport check_entry(const CatalogEntry& entry, const CheckConfig& config) {
    config.validate();
    Accumulator acc;
    acc.entry = &entry;
    acc.config = &config;
    acc.report.entry_id = entry.primary_id();
    if (entry.domain.two_dimensional())
        check_2d(entry, config, acc);
    else
        check_1d(entry, config, acc);
    acc.finish();
    return acc.report;
}

std::vector<CheckReport> check_all(const Catalog& catalog, const CheckConfig& config,
                                   int threads) {
    const auto& entries = catalog.entries();
    std::vector<CheckReport> reports(entries.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i)
            reports[i] = check_entry(entries[i], config);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            reports[i] = check_entry(entries[i], config);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(entries.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return reports;
}

bool report_matches_expectation(const CatalogEntry& entry, const CheckReport& report) {
    if (entry.status == EntryStatus::MisprintSuspected)
        return report.verdict == Verdict::Violated;
    return report.verdict == Verdict::Holds;
}

bool all_reports_as_expected(const Catalog& catalog,
                             const std::vector<CheckReport>& reports) {
    const auto& entries = catalog.entries();
    if (entries.size() != reports.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!report_matches_expectation(entries[i], reports[i])) return false;
    return true;
}

CrossingResult find_crossing(const ExprPtr& a, const ExprPtr& b,
                             const DomainSpec& domain, const CheckConfig& config) {
    config.validate();
    CrossingResult out;
    const std::vector<double> grid = interior_grid(
        domain.lo, domain.hi, config.samples, config.interior_margin_fraction);
    bool have_low = false, have_high = false;
    Crossing c;
    Bindings bindings;
    for (double x : grid) {
        bindings.set(domain.variable, x);
        double va = 0.0, vb = 0.0;
        try {
            va = eval_expr(a, bindings);
            vb = eval_expr(b, bindings);
        } catch (const EvalError&) {
            out.indeterminate = true;
            continue;
        }
        const double scale = std::max(1.0, std::fabs(va) + std::fabs(vb));
        const double band = config.tie_tolerance * scale;
        if (!have_low && vb - va > band) {
            c.x1 = x;
            c.gap1 = vb - va;
            have_low = true;
        }
        if (!have_high && va - vb > band) {
            c.x2 = x;
            c.gap2 = va - vb;
            have_high = true;
        }
        if (have_low && have_high) break;
    }
    if (have_low && have_high) out.crossing = c;
    return out;
}

ClaimReport scan_claim(const NamedFunction& fn, FunctionClaim claim,
                       const CheckConfig& config) {
    ClaimReport rep;
    rep.claim = claim;
    const std::vector<double> xs =
        interior_grid(fn.domain.lo, fn.domain.hi, config.samples,
                      config.interior_margin_fraction);
    std::vector<double> fv(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        bool ok = false;
        fv[i] = eval_function(fn, xs[i], ok);
        if (!ok) {
            rep.verdict = Verdict::Indeterminate;
            return rep;
        }
    }
    auto flag = [&](std::size_t i) {
        PointAssignment p;
        p.emplace_back(fn.domain.variable, xs[i]);
        rep.violations.push_back(std::move(p));
    };
    const double tie = config.tie_tolerance;
    if (claim == FunctionClaim::Increasing || claim == FunctionClaim::Decreasing) {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double scale = std::max(1.0, std::fabs(fv[i]) + std::fabs(fv[i + 1]));
            const double d = fv[i + 1] - fv[i];
            if (claim == FunctionClaim::Increasing ? d <= -tie * scale
                                                   : d >= tie * scale)
                flag(i + 1);
        }
    } else {
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            const double scale = std::max(
                1.0, std::fabs(fv[i - 1]) + 2.0 * std::fabs(fv[i]) + std::fabs(fv[i + 1]));
            const double d2 = fv[i + 1] - 2.0 * fv[i] + fv[i - 1];
            if (claim == FunctionClaim::Convex ? d2 < -tie * scale
                                               : d2 > tie * scale)
                flag(i);
        }
    }
    rep.verdict = rep.violations.empty() ? Verdict::Holds : Verdict::Violated;
    return rep;
}

MonotonicityReport monotonicity_scan(const NamedFunction& fn, const CheckConfig& config) {
    config.validate();
    MonotonicityReport rep;
    rep.function_id = fn.id;
    bool all_hold = true, any_indeterminate = false;
    for (FunctionClaim claim : fn.claims) {
        rep.claims.push_back(scan_claim(fn, claim, config));
        const Verdict v = rep.claims.back().verdict;
        if (v != Verdict::Holds) all_hold = false;
        if (v == Verdict::Indeterminate) any_indeterminate = true;
    }
    rep.verdict = all_hold ? Verdict::Holds
                           : (any_indeterminate ? Verdict::Indeterminate
                                                : Verdict::Violated);
    return rep;
}

CheckReport region_check_2d(const CatalogEntry& entry, const CheckConfig& config) {
    if (!entry.domain.two_dimensional())
        throw std::domain_error("entry has no second variable");
    return check_entry(entry, config);
}

std::vector<MarginSample> margin_profile(const CatalogEntry& entry,
                                         const CheckConfig& config) {
    config.validate();
    if (entry.domain.two_dimensional())
        throw std::domain_error("margin profile supports one-dimensional entries");
    std::vector<MarginSample> rows;
    const DomainSpec& d = entry.domain;
    const std::vector<double> grid =
        interior_grid(d.lo, d.hi, config.samples, config.interior_margin_fraction);
    for_each_combo(d, [&](const PointAssignment& combo) {
        Bindings bindings;
        for (const auto& [name, value] : combo) bindings.set(name, value);
        for (double x : grid) {
            bindings.set(d.variable, x);
            MarginSample row;
            row.point.emplace_back(d.variable, x);
            row.point.insert(row.point.end(), combo.begin(), combo.end());
            bool ok = true;
            std::vector<double> values(entry.chain.exprs.size());
            for (std::size_t i = 0; i < values.size() && ok; ++i) {
                try {
                    values[i] = eval_expr(entry.chain.exprs[i], bindings);
                } catch (const EvalError&) {
                    ok = false;
                }
            }
            if (!ok) continue;
            double margin = 0.0;
            bool first = true;
            for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                const double raw = values[i + 1] - values[i];
                const double scale =
                    std::max(1.0, std::fabs(values[i]) + std::fabs(values[i + 1]));
                const double m =
                    config.normalization == CheckConfig::Normalization::Relative
                        ? raw / scale
                        : raw;
                if (first || m < margin) {
                    margin = m;
                    first = false;
                }
            }
            row.margin = margin;
            rows.push_back(std::move(row));
        }
    });
    return rows;
}

}  // namespace ineq
