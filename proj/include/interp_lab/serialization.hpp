#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "interp_lab/analytic.hpp"
#include "interp_lab/fourier.hpp"
#include "interp_lab/polynomials.hpp"

namespace interp {

using Json = nlohmann::json;

/// Raised by the from_json helpers; the message names the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {"dim": n, "p": number | "inf", "weights": [...]}; weights default to 1.
// "multipliers": [...] may replace weights (norm ||a x||_p).
Json to_json(const WeightedSpace& s);
WeightedSpace space_from_json(const Json& j, const std::string& where = "space");

// {"X0": space, "X1": space}
Json to_json(const Couple& c);
Couple couple_from_json(const Json& j, const std::string& where = "couple");

// [re, im] pairs
Json to_json(const CVector& v);
CVector vector_from_json(const Json& j, const std::string& where = "vector");

// {"M": degree, "coefficients": [[k, vector], ...]}; missing k are zero.
Json to_json(const LaurentFamily& phi);
LaurentFamily family_from_json(const Json& j, const std::string& where = "family");

// {"m": degree, "n": domain dim, "q": codomain dim, "entries": [[multiset, vector], ...]}
Json to_json(const SymMultilinearMap& t);
SymMultilinearMap multilinear_from_json(const Json& j, const std::string& where = "polynomial");

/// Little-endian header {uint64 N, uint64 dim}, then N columns of dim
/// interleaved float64 (re, im) pairs.
void write_circle_function(std::ostream& out, const CircleFunction& f);
CircleFunction read_circle_function(std::istream& in);

std::string format_double(double v);  ///< %.17g, "inf" / "nan" spelled out

}  // namespace interp
