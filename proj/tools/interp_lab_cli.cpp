// interp-lab: run suites and query single norms from the shell.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "interp_lab/harness.hpp"
#include "interp_lab/interpolation.hpp"

using namespace interp;

namespace {

// Inline JSON or a path to a JSON file.
Json load_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return Json::parse(text);
  std::ifstream in(text);
  if (!in) throw std::runtime_error("cannot open " + text);
  return Json::parse(in);
}

NormMode parse_mode(const std::string& s) {
  if (s == "closed") return NormMode::kClosed;
  if (s == "numeric") return NormMode::kNumeric;
  if (s == "both") return NormMode::kBoth;
  throw std::runtime_error("mode must be closed, numeric or both");
}

Json estimate_json(const NormEstimate& e) {
  return {{"lower", format_double(e.lower)}, {"upper", format_double(e.upper)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interp-lab: numerical experiments on interpolation of weighted sequence spaces"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list the registered suites");

  auto* run = app.add_subcommand("run", "run a suite and write its report");
  std::string suite;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  run->add_option("suite", suite, "suite name")->required();
  run->add_option("--config", config_path, "config JSON (params override suite defaults)");
  auto* seed_opt = run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory for JSON and CSV");

  std::string couple_text;
  std::string x_text;
  double theta = 0.5;
  double t = 1.0;
  std::string mode = "closed";
  int half_width = 12;
  int degree = 32;

  auto* norm_cmd = app.add_subcommand("norm", "interpolated norm of a vector");
  norm_cmd->add_option("--couple", couple_text, "couple JSON or path")->required();
  norm_cmd->add_option("--x", x_text, "vector as JSON, entries number or [re, im]")->required();
  norm_cmd->add_option("--theta", theta, "interpolation parameter")->check(CLI::Range(0.0, 1.0));
  norm_cmd->add_option("--mode", mode, "closed | numeric | both");
  norm_cmd->add_option("--degree", degree, "Laurent degree for the numeric mode");

  auto* decompose = app.add_subcommand("decompose", "K-functional decomposition x = x0 + x1");
  decompose->add_option("--couple", couple_text, "couple JSON or path")->required();
  decompose->add_option("--x", x_text, "vector as JSON")->required();
  decompose->add_option("--t", t, "K-functional parameter")->check(CLI::PositiveNumber);
  decompose->add_option("--theta", theta, "theta for the Lions-Peetre constants")->check(CLI::Range(0.0, 1.0));

  auto* peetre = app.add_subcommand("peetre", "Peetre representation and norm bracket");
  peetre->add_option("--couple", couple_text, "couple JSON or path")->required();
  peetre->add_option("--x", x_text, "vector as JSON")->required();
  peetre->add_option("--theta", theta, "interpolation parameter")->check(CLI::Range(0.0, 1.0));
  peetre->add_option("--half-width", half_width, "terms k in [-K, K]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& s : list_suites()) std::cout << s.name << "\t" << s.description << "\n";
      return 0;
    }
    if (*run) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        Json j = load_json(config_path);
        if (!j.contains("suite")) j["suite"] = suite;
        if (*seed_opt) j["seed"] = seed;
        config = ExperimentConfig::from_json(j);
        if (config.suite != suite) throw ConfigError({"suite: config names '" + config.suite + "', command line names '" + suite + "'"});
      } else {
        if (!*seed_opt) throw ConfigError({"seed: required (pass --seed or a config with a seed)"});
        config.suite = suite;
        config.seed = seed;
      }
      if (!out_dir.empty()) config.output_dir = out_dir;
      const auto start = std::chrono::steady_clock::now();
      const SuiteReport report = run_suite(config);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto& c : report.checks) {
        std::cout << to_string(c.status) << "\t" << c.name << "\tlhs=" << format_double(c.lhs)
                  << " rhs=" << format_double(c.rhs) << " tol=" << format_double(c.tolerance) << "\n";
      }
      std::cerr << report.suite << ": " << report.count(CheckStatus::kPass) << " pass, "
                << report.count(CheckStatus::kFail) << " fail, " << report.count(CheckStatus::kHeuristic)
                << " heuristic in " << secs << " s\n";
      return report.exit_code();
    }

    const Couple couple = couple_from_json(load_json(couple_text));
    const CVector x = vector_from_json(Json::parse(x_text), "x");
    const InterpolationRequest req(couple, theta);
    Json out;
    if (*norm_cmd) {
      NumericNormOptions opts;
      opts.minimize.degree = degree;
      const InterpolatedNorm n = interpolated_norm(req, x, parse_mode(mode), opts);
      out = {{"estimate", estimate_json(n.estimate)}, {"discrepancy", format_double(n.discrepancy)}};
      if (n.closed_form) out["closed_form"] = format_double(*n.closed_form);
    } else if (*decompose) {
      const LionsPeetreReport r = lions_peetre_decompose(req, x, t);
      out = {{"x0", to_json(r.decomposition.part0)},
             {"x1", to_json(r.decomposition.part1)},
             {"K", format_double(r.decomposition.objective)},
             {"lower_bound", format_double(r.decomposition.lower_bound)},
             {"converged", r.decomposition.status.converged},
             {"constant0", format_double(r.constant0)},
             {"constant1", format_double(r.constant1)}};
    } else if (*peetre) {
      const PeetreRepresentation rep = dyadic_threshold_representation(req, x, half_width);
      Json terms = Json::array();
      for (int k = -half_width; k <= half_width; ++k) {
        if (rep.term(k).cwiseAbs().maxCoeff() > 0.0) terms.push_back({k, to_json(rep.term(k))});
      }
      out = {{"terms", terms}, {"bracket", estimate_json(peetre_norm_bracket(req, rep))},
             {"closed_form", format_double(closed_form_norm(req, x))}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
