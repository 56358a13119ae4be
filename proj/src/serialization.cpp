#include "interp_lab/serialization.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

namespace interp {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

Exponent exponent_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::infinity();
    fail(where, "exponent string must be \"inf\"");
  }
  if (!j.is_number()) fail(where, "exponent must be a number >= 1 or \"inf\"");
  const double p = j.get<double>();
  if (!(p >= 1.0)) fail(where, "exponent must be >= 1");
  return std::isinf(p) ? Exponent::infinity() : Exponent(p);
}

Json exponent_to_json(Exponent p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

}  // namespace

Json to_json(const WeightedSpace& s) {
  // huge interpolated exponents overflow w = a^p, fall back to multipliers
  const bool finite = s.weights().allFinite();
  Json w = Json::array();
  for (double v : finite ? s.weights() : s.multipliers()) w.push_back(v);
  return {{"dim", s.dim()}, {"p", exponent_to_json(s.exponent())}, {finite ? "weights" : "multipliers", w}};
}

WeightedSpace space_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  if (!j.contains("p")) fail(where + ".p", "missing");
  const Exponent p = exponent_from_json(j["p"], where + ".p");
  Eigen::Index dim = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) fail(where + ".dim", "must be a positive integer");
    dim = j["dim"].get<long>();
  }
  if (j.contains("weights") && j.contains("multipliers")) fail(where, "give weights or multipliers, not both");
  const std::string key = j.contains("multipliers") ? "multipliers" : "weights";
  RVector w;
  if (j.contains(key)) {
    const Json& jw = j[key];
    if (!jw.is_array() || jw.empty()) fail(where + "." + key, "must be a nonempty array");
    w.resize(static_cast<Eigen::Index>(jw.size()));
    for (std::size_t i = 0; i < jw.size(); ++i) {
      if (!jw[i].is_number() || !(jw[i].get<double>() > 0.0) || !std::isfinite(jw[i].get<double>())) {
        fail(where + "." + key + "[" + std::to_string(i) + "]", "must be a finite positive number");
      }
      w[static_cast<Eigen::Index>(i)] = jw[i].get<double>();
    }
    if (dim != 0 && dim != w.size()) fail(where + "." + key, "length differs from dim");
  } else {
    if (dim == 0) fail(where, "need dim or weights");
    w = RVector::Ones(dim);
  }
  if (key == "multipliers") return WeightedSpace::from_multipliers(p, w);
  return {p, w};
}

Json to_json(const Couple& c) { return {{"X0", to_json(c.space0())}, {"X1", to_json(c.space1())}}; }

Couple couple_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("X0") || !j.contains("X1")) fail(where, "expected {\"X0\": ..., \"X1\": ...}");
  WeightedSpace s0 = space_from_json(j["X0"], where + ".X0");
  WeightedSpace s1 = space_from_json(j["X1"], where + ".X1");
  if (s0.dim() != s1.dim()) fail(where, "endpoint dimensions differ");
  return {std::move(s0), std::move(s1)};
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

CVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    if (e.is_number()) {
      v[static_cast<Eigen::Index>(i)] = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      v[static_cast<Eigen::Index>(i)] = {e[0].get<double>(), e[1].get<double>()};
    } else {
      fail(where + "[" + std::to_string(i) + "]", "expected a number or [re, im]");
    }
  }
  return v;
}

Json to_json(const LaurentFamily& phi) {
  Json coeffs = Json::array();
  for (int k = -phi.degree(); k <= phi.degree(); ++k) {
    const CVector c = phi.coefficient(k);
    if (c.cwiseAbs().maxCoeff() > 0.0) coeffs.push_back({k, to_json(c)});
  }
  return {{"M", phi.degree()}, {"dim", phi.dim()}, {"coefficients", coeffs}};
}

LaurentFamily family_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("M") || !j["M"].is_number_integer()) fail(where + ".M", "missing integer degree");
  const int m = j["M"].get<int>();
  if (m < 0) fail(where + ".M", "must be >= 0");
  if (!j.contains("coefficients") || !j["coefficients"].is_array()) fail(where + ".coefficients", "missing array");
  const Json& cs = j["coefficients"];
  Eigen::Index dim = j.contains("dim") ? j["dim"].get<long>() : 0;
  if (dim == 0) {
    if (cs.empty()) fail(where, "need dim or at least one coefficient");
    dim = static_cast<Eigen::Index>(cs[0].at(1).size());
  }
  LaurentFamily phi(dim, m);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string at = where + ".coefficients[" + std::to_string(i) + "]";
    if (!cs[i].is_array() || cs[i].size() != 2 || !cs[i][0].is_number_integer()) fail(at, "expected [k, vector]");
    const int k = cs[i][0].get<int>();
    if (k < -m || k > m) fail(at, "k outside [-M, M]");
    const CVector v = vector_from_json(cs[i][1], at);
    if (v.size() != dim) fail(at, "vector length differs from dim");
    phi.set_coefficient(k, v);
  }
  return phi;
}

Json to_json(const SymMultilinearMap& t) {
  Json entries = Json::array();
  const MultisetIndex& idx = t.index();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const CVector c = t.coefficients().col(static_cast<Eigen::Index>(r));
    if (c.cwiseAbs().maxCoeff() > 0.0) entries.push_back({idx.multiset(r), to_json(c)});
  }
  return {{"m", t.degree()}, {"n", t.domain_dim()}, {"q", t.codomain_dim()}, {"entries", entries}};
}

SymMultilinearMap multilinear_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const char* key : {"m", "n", "q"}) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 1) {
      fail(where + "." + key, "missing positive integer");
    }
  }
  const int m = j["m"].get<int>();
  const int n = j["n"].get<int>();
  const int q = j["q"].get<int>();
  SymMultilinearMap t(m, n, q);
  if (!j.contains("entries")) return t;
  const Json& es = j["entries"];
  if (!es.is_array()) fail(where + ".entries", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string at = where + ".entries[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2 || !es[i][0].is_array()) fail(at, "expected [multiset, vector]");
    std::vector<int> tuple;
    for (const Json& v : es[i][0]) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= n) fail(at, "index outside [0, n)");
      tuple.push_back(v.get<int>());
    }
    if (static_cast<int>(tuple.size()) != m) fail(at, "multiset must have m indices");
    const CVector value = vector_from_json(es[i][1], at);
    if (value.size() != q) fail(at, "vector length differs from q");
    t.set_entry(tuple, value);
  }
  return t;
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw SchemaError("circle function: truncated input");
  return v;
}

}  // namespace

void write_circle_function(std::ostream& out, const CircleFunction& f) {
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.size()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.dim()));
  for (int j = 0; j < f.size(); ++j) {
    for (Eigen::Index i = 0; i < f.dim(); ++i) {
      put<double>(out, f.samples()(i, j).real());
      put<double>(out, f.samples()(i, j).imag());
    }
  }
}

CircleFunction read_circle_function(std::istream& in) {
  const auto n = get<std::uint64_t>(in);
  const auto dim = get<std::uint64_t>(in);
  if (n > (1U << 24U) || dim > (1U << 16U) || dim == 0) throw SchemaError("circle function: implausible header");
  CMatrix s(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re, im};
    }
  }
  return CircleFunction(std::move(s));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace interp
