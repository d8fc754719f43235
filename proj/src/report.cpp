#include "fraccalc/report.hpp"

#include <json.hpp>

#include "fraccalc/version.hpp"

namespace fraccalc::io {

std::string report_document(const std::vector<harness::CheckReport>& reports,
                            const harness::SuiteConfig& config) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["tool_version"] = std::string(kVersion);

  ordered_json echo;
  ordered_json suite = ordered_json::array();
  for (const auto& r : reports) suite.push_back(r.check_id);
  echo["suite"] = std::move(suite);
  echo["n"] = config.n;
  echo["seed"] = config.seed;
  doc["config_echo"] = std::move(echo);

  ordered_json list = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["check_id"] = r.check_id;
    j["anchor"] = r.anchor;
    j["grid_n"] = r.grid_n;
    j["max_error"] = r.max_error;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    ordered_json details = ordered_json::object();
    for (const auto& [key, value] : r.details) details[key] = value;
    j["details"] = std::move(details);
    if (!r.error.empty()) j["error"] = r.error;
    list.push_back(std::move(j));
  }
  doc["reports"] = std::move(list);
  doc["aggregate_pass"] = harness::aggregate_pass(reports);
  return doc.dump(2) + "\n";
}

}  // namespace fraccalc::io
