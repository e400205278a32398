#ifndef INEQ_REPORT_IO_HPP
#define INEQ_REPORT_IO_HPP

#include <string>
#include <vector>

#include "ineq/checker.hpp"

namespace ineq {

// CSV with fixed header id,verdict,min_margin,argmin,flags; argmin is
// space-joined name=value pairs, flags is a flag-kind summary.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

// Full reports (violations, domain errors, flags) as a JSON document.
std::string reports_to_json(const Catalog& catalog,
                            const std::vector<CheckReport>& reports);

std::string format_point(const PointAssignment& point);

}  // namespace ineq

#endif
