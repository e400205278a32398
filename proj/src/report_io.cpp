#include "ineq/report_io.hpp"

#include <cstdio>
#include <json.hpp>

namespace ineq {

namespace {

std::string num(double v, const char* fmt = "%.9g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string format_point(const PointAssignment& point) {
    std::string out;
    for (const auto& [name, value] : point) {
        if (!out.empty()) out += ' ';
        out += name;
        out += '=';
        out += num(value);
    }
    return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::string out = "id,verdict,min_margin,argmin,flags\n";
    for (const CheckReport& r : reports) {
        out += r.entry_id;
        out += ',';
        out += verdict_name(r.verdict);
        out += ',';
        out += num(r.min_margin, "%.6e");
        out += ',';
        out += format_point(r.argmin);
        out += ',';
        if (!r.endpoint_flags.empty())
            out += "indeterminate-at-endpoint:" + std::to_string(r.endpoint_flags.size());
        out += '\n';
    }
    return out;
}

std::string reports_to_json(const Catalog& catalog,
                            const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CheckReport& r = reports[i];
        nlohmann::ordered_json j;
        j["id"] = r.entry_id;
        if (i < catalog.entries().size()) {
            const CatalogEntry& e = catalog.entries()[i];
            j["status"] = status_name(e.status);
            j["chain"] = e.chain_text;
        }
        j["verdict"] = verdict_name(r.verdict);
        j["n_evaluated"] = r.n_evaluated;
        j["min_margin"] = r.min_margin;
        j["argmin"] = format_point(r.argmin);
        auto points = nlohmann::ordered_json::array();
        for (const Violation& v : r.violations) {
            nlohmann::ordered_json pv;
            pv["point"] = format_point(v.point);
            pv["lhs"] = v.lhs;
            pv["rhs"] = v.rhs;
            pv["relation_index"] = v.relation_index;
            points.push_back(std::move(pv));
        }
        j["violations"] = std::move(points);
        auto errors = nlohmann::ordered_json::array();
        for (const Violation& v : r.domain_errors) {
            nlohmann::ordered_json pv;
            pv["point"] = format_point(v.point);
            pv["error"] = v.detail;
            errors.push_back(std::move(pv));
        }
        j["domain_errors"] = std::move(errors);
        j["endpoint_flags"] = r.endpoint_flags.size();
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

}  // namespace ineq
