#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "interp_lab/harness.hpp"

using namespace interp;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("suite registry") {
  const auto& suites = list_suites();
  CHECK(suites.size() >= 13);
  CHECK(suites.front().name == "polarization");
  for (const auto& s : suites) {
    CHECK(detail::suite_functions().count(s.name) == 1);
    CHECK(s.defaults.is_object());
  }
}

TEST_CASE("config validation lists every offender") {
  Json j = {{"version", 1}, {"suite", "parseval"}, {"seed", 3},
            {"params", {{"instances", "many"}, {"bogus", 1}, {"tolerance", 1e-9}}}};
  try {
    run_suite(ExperimentConfig::from_json(j));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.fields.size() == 2);
    const auto has = [&](const std::string& f) {
      return std::any_of(e.fields.begin(), e.fields.end(), [&](const std::string& s) { return s.find(f) != std::string::npos; });
    };
    CHECK(has("instances"));
    CHECK(has("bogus"));
  }
  Json bad = {{"version", 2}, {"suite", "nope"}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  ExperimentConfig unknown;
  unknown.suite = "nope";
  CHECK_THROWS_AS(run_suite(unknown), ConfigError);
}

TEST_CASE("config json round trip") {
  ExperimentConfig c;
  c.suite = "mho";
  c.seed = 42;
  c.params = {{"families", 5}};
  c.output_dir = "out";
  const ExperimentConfig d = ExperimentConfig::from_json(c.to_json());
  CHECK(d.suite == "mho");
  CHECK(d.seed == 42);
  CHECK(d.params == c.params);
  CHECK(d.output_dir == "out");
}

TEST_CASE("check records and margins") {
  SuiteReport r;
  r.check_le("a", Json::object(), 1.0, 2.0, 0.0);
  r.check_le("b", Json::object(), 3.0, 2.0, 0.5, true);
  CHECK(r.passed());
  CHECK(r.count(CheckStatus::kHeuristic) == 1);
  CHECK(r.checks[0].margin == doctest::Approx(1.0));
  r.check_le("c", Json::object(), 3.0, 2.0, 0.5);
  CHECK_FALSE(r.passed());
  CHECK(r.exit_code() == 1);
  CHECK(digest(Json{{"x", 1}}) == digest(Json{{"x", 1}}));
  CHECK(digest(Json{{"x", 1}}).size() == 16);
}

TEST_CASE("series csv formatting") {
  Series s;
  s.header = {"k", "v"};
  s.add({1.0, 0.1});
  s.add({2.0, kInf});
  CHECK(s.csv() == "k,v\n1,0.10000000000000001\n2,inf\n");
}

TEST_CASE("output is byte deterministic") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "interp_lab_harness_test";
  fs::remove_all(base);
  ExperimentConfig c;
  c.suite = "mho";
  c.seed = 7;
  c.params = {{"families", 10}, {"vectors", 10}};
  c.output_dir = (base / "a").string();
  run_suite(c);
  c.output_dir = (base / "b").string();
  run_suite(c);
  int files = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    ++files;
    CHECK(slurp(e.path()) == slurp(base / "b" / e.path().filename()));
  }
  CHECK(files >= 2);
  fs::remove_all(base);
}

TEST_CASE("serialization round trips") {
  Rng rng(4);
  RVector w(2);
  w << 1.5, 0.25;
  const Couple c(WeightedSpace(Exponent(3.0), w), WeightedSpace::lp(2, Exponent::infinity()));
  const Couple d = couple_from_json(Json::parse(to_json(c).dump()));
  CHECK(d.space0() == c.space0());
  CHECK(d.space1() == c.space1());

  const CVector v = rng.complex_vector(3);
  CHECK(vector_from_json(Json::parse(to_json(v).dump())) == v);

  LaurentFamily phi(2, 2);
  phi.set_coefficient(-1, rng.complex_vector(2));
  CHECK(family_from_json(to_json(phi)).coefficients() == phi.coefficients());

  const SymMultilinearMap t = SymMultilinearMap::random(3, 2, 2, rng);
  CHECK(multilinear_from_json(Json::parse(to_json(t).dump())).coefficients() == t.coefficients());

  CHECK_THROWS_AS(space_from_json(Json{{"dim", 2}, {"p", 0.5}}), SchemaError);
  CHECK(format_double(kInf) == "inf");
}
