#include "equilens/report.hpp"

#include <cstdio>
#include <sstream>

#include "equilens/errors.hpp"

namespace equilens {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <class T, class J>
T required(const J& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("result is missing field '") + key + "'");
  try {
    return j.at(key).template get<T>();
  } catch (const nlohmann::detail::exception&) {
    throw ArgumentError(std::string("result field '") + key + "' has the wrong type");
  }
}

}  // namespace

nlohmann::ordered_json to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["measure"] = report.measure;
  j["value"] = report.value;
  if (report.argmax_index) {
    j["argmax_index"] = *report.argmax_index;
  } else {
    j["argmax_index"] = nullptr;
  }
  j["K"] = report.K;
  j["tail_bound"] = report.tail_bound;
  j["N"] = report.N;
  j["system"] = report.system;
  j["weight"] = report.weight;
  j["parameters"] = report.parameters;
  return j;
}

MeasureReport report_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ArgumentError("result must be a JSON object");
  if (required<std::string>(j, "schema") != kSchemaVersion) throw ArgumentError("unsupported result schema version");
  MeasureReport r;
  r.measure = required<std::string>(j, "measure");
  r.value = required<double>(j, "value");
  if (!j.contains("argmax_index")) throw ArgumentError("result is missing field 'argmax_index'");
  if (!j.at("argmax_index").is_null()) r.argmax_index = required<std::vector<long long>>(j, "argmax_index");
  r.K = required<double>(j, "K");
  r.tail_bound = required<double>(j, "tail_bound");
  r.N = required<long long>(j, "N");
  r.system = required<std::string>(j, "system");
  r.weight = required<std::string>(j, "weight");
  if (!j.contains("parameters") || !j.at("parameters").is_object()) {
    throw ArgumentError("result field 'parameters' must be an object");
  }
  r.parameters = j.at("parameters");
  if (r.N < 0 || r.tail_bound < 0.0) throw ArgumentError("result has negative N or tail bound");
  return r;
}

MeasureReport report_from_json(const nlohmann::json& j) {
  return report_from_json(nlohmann::ordered_json::parse(j.dump()));
}

std::string csv_header() { return "measure,N,value,K,tail_bound,system,weight"; }

std::string csv_row(const MeasureReport& report) {
  std::ostringstream os;
  os << csv_field(report.measure) << ',' << report.N << ',' << num(report.value) << ',' << num(report.K) << ','
     << num(report.tail_bound) << ',' << csv_field(report.system) << ',' << csv_field(report.weight);
  return os.str();
}

}  // namespace equilens
