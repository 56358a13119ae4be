#include "interp_lab/harness.hpp"

#include <Eigen/Core>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace interp {

namespace {

std::string join_fields(const std::vector<std::string>& fields) {
  std::string out = "invalid config:";
  for (const auto& f : fields) out += "\n  " + f;
  return out;
}

bool same_kind(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) return !(a.is_number_integer() && b.is_number_float());
  return a.type() == b.type();
}

bool looks_like_couple(const Json& j) { return j.is_object() && j.contains("X0"); }

void validate_value(const Json& given, const Json& fallback, const std::string& where,
                    std::vector<std::string>& errors) {
  if (!same_kind(given, fallback)) {
    errors.push_back(where + ": expected " + std::string(fallback.type_name()) + ", got " + given.type_name());
    return;
  }
  try {
    if (looks_like_couple(fallback)) {
      couple_from_json(given, where);
    } else if (fallback.is_array() && !fallback.empty() && looks_like_couple(fallback[0])) {
      for (std::size_t i = 0; i < given.size(); ++i) couple_from_json(given[i], where + "[" + std::to_string(i) + "]");
    }
  } catch (const std::exception& e) {
    errors.push_back(e.what());
  }
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : list_suites()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> f) : std::invalid_argument(join_fields(f)), fields(std::move(f)) {}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  std::vector<std::string> errors;
  ExperimentConfig c;
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
  if (j.contains("version") && (!j["version"].is_number_integer() || j["version"].get<int>() != kConfigVersion)) {
    errors.push_back("version: unsupported (expected " + std::to_string(kConfigVersion) + ")");
  }
  if (!j.contains("suite") || !j["suite"].is_string()) {
    errors.push_back("suite: missing string");
  } else {
    c.suite = j["suite"].get<std::string>();
  }
  if (!j.contains("seed") || !j["seed"].is_number_integer() ||
      (j["seed"].is_number_integer() && !j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0)) {
    errors.push_back("seed: required unsigned integer");
  } else {
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) {
      errors.push_back("params: expected an object");
    } else {
      c.params = j["params"];
    }
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) {
      errors.push_back("output: expected a string");
    } else {
      c.output_dir = j["output"].get<std::string>();
    }
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "version" && key != "suite" && key != "seed" && key != "params" && key != "output") {
      errors.push_back(key + ": unknown field");
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
  return c;
}

Json ExperimentConfig::to_json() const {
  return {{"version", kConfigVersion}, {"suite", suite}, {"seed", seed}, {"params", params}, {"output", output_dir}};
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kHeuristic:
      return "heuristic";
  }
  return "fail";
}

void Series::add(std::vector<double> row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_double(v));
  rows.push_back(std::move(cells));
}

std::string Series::csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CheckRecord& SuiteReport::check_le(const std::string& name, const Json& inputs, double lhs, double rhs,
                                   double tolerance, bool heuristic) {
  CheckRecord r;
  r.name = name;
  r.inputs = inputs;
  r.inputs_digest = digest(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.margin = rhs + tolerance - lhs;
  const bool ok = lhs <= rhs + tolerance;  // NaN fails
  r.status = heuristic ? CheckStatus::kHeuristic : (ok ? CheckStatus::kPass : CheckStatus::kFail);
  r.values["holds"] = ok;
  checks.push_back(std::move(r));
  return checks.back();
}

bool SuiteReport::passed() const { return count(CheckStatus::kFail) == 0; }

int SuiteReport::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s ? 1 : 0;
  return n;
}

Json SuiteReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name},
                  {"inputs_digest", c.inputs_digest},
                  {"inputs", c.inputs},
                  {"values", c.values},
                  {"lhs", format_double(c.lhs)},
                  {"rhs", format_double(c.rhs)},
                  {"tolerance", format_double(c.tolerance)},
                  {"margin", format_double(c.margin)},
                  {"status", to_string(c.status)}});
  }
  Json names = Json::array();
  for (const auto& [name, _] : series) names.push_back(name);
  return {{"suite", suite},
          {"config", config},
          {"environment", environment},
          {"summary",
           {{"pass", count(CheckStatus::kPass)},
            {"fail", count(CheckStatus::kFail)},
            {"heuristic", count(CheckStatus::kHeuristic)},
            {"passed", passed()}}},
          {"checks", cs},
          {"series", names}};
}

void SuiteReport::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  {
    std::ofstream out(base / (suite + ".json"), std::ios::binary);
    out << to_json().dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write report to " + dir);
  }
  for (const auto& [name, s] : series) {
    std::ofstream out(base / (suite + "_" + name + ".csv"), std::ios::binary);
    out << s.csv();
    if (!out) throw std::runtime_error("cannot write series to " + dir);
  }
}

Json effective_params(const ExperimentConfig& config) {
  const SuiteInfo* info = find_suite(config.suite);
  if (info == nullptr) throw ConfigError({"suite: unknown suite '" + config.suite + "'"});
  std::vector<std::string> errors;
  Json merged = info->defaults;
  for (const auto& [key, value] : config.params.items()) {
    if (!info->defaults.contains(key)) {
      errors.push_back("params." + key + ": unknown parameter for suite " + config.suite);
      continue;
    }
    validate_value(value, info->defaults[key], "params." + key, errors);
    merged[key] = value;
  }
  if (!errors.empty()) throw ConfigError(errors);
  return merged;
}

SuiteReport run_suite(const ExperimentConfig& config) {
  const Json params = effective_params(config);
  SuiteReport report;
  report.suite = config.suite;
  Json echo = config.to_json();
  echo["params"] = params;
  echo.erase("output");
  report.config = echo;
  report.environment = {{"library", "interp_lab 0.1.0"},
                        {"compiler", __VERSION__},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                      "." + std::to_string(EIGEN_MINOR_VERSION)},
                        {"config_version", kConfigVersion}};
  detail::suite_functions().at(config.suite)(params, config.seed, report);
  if (!config.output_dir.empty()) report.write(config.output_dir);
  return report;
}

}  // namespace interp
