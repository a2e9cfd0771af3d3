#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "obstructo/scenarios.hpp"
#include <json.hpp>

namespace obstructo {

enum class Format { text, json };

/// "text" or "json"; InvalidArgument otherwise.
Format parse_format(const std::string& name);

nlohmann::ordered_json report_json(const ScenarioReport& report);
/// {"dim": n, "rows": [[[re, im], ...], ...]}
nlohmann::ordered_json matrix_json(const Eigen::MatrixXcd& m);

/// A single report renders as an object, several as an array.
std::string emit_reports(const std::vector<ScenarioReport>& reports, Format format);
std::string emit_report(const ScenarioReport& report, Format format);
std::string emit_matrix(const Eigen::MatrixXcd& m, Format format);

/// Short text for a numeric residual.
std::string format_residual(double value);

}  // namespace obstructo
