#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace equilens {

/// Serialized form of every measure result; field names are stable and
/// versioned through "schema".
struct MeasureReport {
  std::string measure;
  double value = 0.0;
  std::optional<std::vector<long long>> argmax_index;
  double K = 0.0;
  double tail_bound = 0.0;
  long long N = 0;
  std::string system;
  std::string weight;
  /// Measure-specific settings (alpha, base, resolution, ...), printed so
  /// results describe themselves.
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
};

inline constexpr const char* kSchemaVersion = "1";

nlohmann::ordered_json to_json(const MeasureReport& report);

/// Throws ArgumentError when a JSON object does not match the schema. The
/// ordered overload keeps the key order of "parameters".
MeasureReport report_from_json(const nlohmann::ordered_json& j);
MeasureReport report_from_json(const nlohmann::json& j);

/// Header row and one row of the CSV sweep format.
std::string csv_header();
std::string csv_row(const MeasureReport& report);

}  // namespace equilens
