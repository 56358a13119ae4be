#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "interp_lab/serialization.hpp"

namespace interp {

/// Raised when a config does not validate; `fields` lists every offender.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::vector<std::string> fields);
  std::vector<std::string> fields;
};

struct ExperimentConfig {
  std::string suite;
  std::uint64_t seed = 0;
  Json params = Json::object();  ///< overrides of the suite defaults
  std::string output_dir;        ///< empty: nothing written

  /// {"version": 1, "suite": ..., "seed": ..., "params": {...}, "output": ...}
  static ExperimentConfig from_json(const Json& j);
  [[nodiscard]] Json to_json() const;
};

inline constexpr int kConfigVersion = 1;

enum class CheckStatus { kPass, kFail, kHeuristic };
const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  Json inputs;
  Json values = Json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  double margin = 0.0;  ///< rhs + tolerance - lhs
  CheckStatus status = CheckStatus::kPass;
};

/// A CSV table; cells are preformatted so output is byte-stable.
struct Series {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<double> row);
  [[nodiscard]] std::string csv() const;
};

struct SuiteReport {
  std::string suite;
  Json config;
  Json environment;
  std::vector<CheckRecord> checks;
  std::map<std::string, Series> series;

  /// Records lhs <= rhs + tolerance; heuristic checks never fail.
  CheckRecord& check_le(const std::string& name, const Json& inputs, double lhs, double rhs, double tolerance,
                        bool heuristic = false);

  [[nodiscard]] bool passed() const;  ///< no non-heuristic failure
  [[nodiscard]] int exit_code() const { return passed() ? 0 : 1; }
  [[nodiscard]] int count(CheckStatus s) const;
  [[nodiscard]] Json to_json() const;
  /// Writes <dir>/<suite>.json and <dir>/<suite>_<series>.csv.
  void write(const std::string& dir) const;
};

struct SuiteInfo {
  std::string name;
  std::string description;
  Json defaults;
};

/// Registered suites in a fixed order.
const std::vector<SuiteInfo>& list_suites();

/// Suite defaults merged with the config overrides.
Json effective_params(const ExperimentConfig& config);

/// Validates the config, runs the suite and writes outputs when
/// `output_dir` is set.
SuiteReport run_suite(const ExperimentConfig& config);

/// 64-bit FNV-1a of a JSON dump, as 16 hex digits.
std::string digest(const Json& j);

namespace detail {
using SuiteFn = std::function<void(const Json& params, std::uint64_t seed, SuiteReport& report)>;
const std::map<std::string, SuiteFn>& suite_functions();
}  // namespace detail

}  // namespace interp
