#include "obstructo/report.hpp"

#include <cstdio>
#include <sstream>

#include "obstructo/error.hpp"

namespace obstructo {

using json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  throw InvalidArgument("format must be text or json, got '" + name + "'");
}

std::string format_residual(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

json report_json(const ScenarioReport& report) {
  json params = json::object();
  for (const auto& [key, value] : report.params)
    std::visit([&](const auto& v) { params[key] = v; }, value);
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry;
    entry["id"] = c.id;
    std::visit([&](const auto& v) { entry["residual"] = v; }, c.residual);
    entry["pass"] = c.pass;
    entry["source"] = std::string(source_name(c.source));
    checks.push_back(std::move(entry));
  }
  json out;
  out["scenario"] = report.scenario;
  out["params"] = std::move(params);
  out["checks"] = std::move(checks);
  out["verdict"] = std::string(verdict_name(report.verdict()));
  return out;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  json out;
  out["dim"] = m.rows();
  out["rows"] = std::move(rows);
  return out;
}

namespace {

std::string param_text(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_residual(x);
        else return std::to_string(x);
      },
      v);
}

void text_report(std::ostream& os, const ScenarioReport& report) {
  os << "scenario " << report.scenario;
  for (const auto& [k, v] : report.params) os << "  " << k << "=" << param_text(v);
  os << "\n";
  for (const auto& c : report.checks) {
    os << (c.pass ? "  PASS " : "  FAIL ") << "[" << source_name(c.source) << "] " << c.id << "\n";
    os << "       residual: "
       << std::visit(
              [](const auto& v) -> std::string {
                if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) return format_residual(v);
                else return v;
              },
              c.residual)
       << "\n";
  }
  os << "verdict " << verdict_name(report.verdict()) << "\n";
}

}  // namespace

std::string emit_report(const ScenarioReport& report, Format format) {
  if (format == Format::json) return report_json(report).dump(2) + "\n";
  std::ostringstream os;
  text_report(os, report);
  return os.str();
}

std::string emit_reports(const std::vector<ScenarioReport>& reports, Format format) {
  if (reports.size() == 1) return emit_report(reports.front(), format);
  if (format == Format::json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k) os << "\n";
    text_report(os, reports[k]);
  }
  return os.str();
}

std::string emit_matrix(const Eigen::MatrixXcd& m, Format format) {
  if (format == Format::json) return matrix_json(m).dump() + "\n";
  std::ostringstream os;
  os << "dim " << m.rows() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      auto z = m(r, c);
      char buf[64];
      if (z.imag() == 0.0) std::snprintf(buf, sizeof buf, "%10.4g", z.real());
      else std::snprintf(buf, sizeof buf, "%10.4g%+.4gi", z.real(), z.imag());
      os << (c ? " " : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace obstructo
