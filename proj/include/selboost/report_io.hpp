#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "selboost/metrics.hpp"

namespace selboost {

nlohmann::json report_to_json(const MetricsReport& report);

MetricsReport report_from_json(const nlohmann::json& j);

/// Single-evaluation table: one row per metric, one column per class plus
/// the macro column. Undefined entries render as "n/a".
std::string render_report_text(const std::string& title,
                               const MetricsReport& report);

/// Cross-validation grid: metric rows, fold columns, trailing average
/// column; a macro grid first, then one grid per class.
std::string render_cv_text(const std::vector<MetricsReport>& folds,
                           const MetricsReport& average);

}  // namespace selboost
