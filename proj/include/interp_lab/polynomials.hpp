#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "interp_lab/random.hpp"
#include "interp_lab/spaces.hpp"

namespace interp {

/// Sorted index tuples (i_1 <= ... <= i_m) over {0..n-1} in lexicographic
/// order, with a dense lookup from full tuples to their multiset rank.
class MultisetIndex {
 public:
  MultisetIndex(int n, int m);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] std::size_t size() const { return multisets_.size(); }
  [[nodiscard]] const std::vector<int>& multiset(std::size_t r) const { return multisets_[r]; }
  /// m! / prod(count_i!) for multiset r.
  [[nodiscard]] double multiplicity(std::size_t r) const { return multiplicity_[r]; }
  /// Rank of the multiset underlying a full tuple encoded base n
  /// (slot 0 most significant).
  [[nodiscard]] std::size_t rank_of_code(std::size_t code) const { return full_to_rank_[code]; }
  [[nodiscard]] std::size_t full_size() const { return full_to_rank_.size(); }
  /// Rank of an arbitrary (unsorted) tuple.
  [[nodiscard]] std::size_t rank(std::span<const int> tuple) const;

  static std::shared_ptr<const MultisetIndex> shared(int n, int m);

 private:
  int n_;
  int m_;
  std::vector<std::vector<int>> multisets_;
  std::vector<double> multiplicity_;
  std::vector<std::size_t> full_to_rank_;
};

/// Symmetric m-linear map C^n x ... x C^n -> C^q stored as a packed
/// symmetric tensor: one codomain vector per multiset of slot indices.
/// Symmetry is structural.
class SymMultilinearMap {
 public:
  /// Zero map.
  SymMultilinearMap(int degree, int domain_dim, int codomain_dim);
  /// `coefficients` is q x (number of multisets).
  SymMultilinearMap(int degree, int domain_dim, CMatrix coefficients);

  static SymMultilinearMap random(int degree, int domain_dim, int codomain_dim, Rng& rng);
  /// Linear map x -> A x.
  static SymMultilinearMap linear(const CMatrix& matrix);
  /// Diagonal map (x_1..x_m) -> (d_i prod_l x_l[i])_i.
  static SymMultilinearMap diagonal(int degree, const CVector& d);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int domain_dim() const { return index_->n(); }
  [[nodiscard]] int codomain_dim() const { return static_cast<int>(coeffs_.rows()); }
  [[nodiscard]] const CMatrix& coefficients() const { return coeffs_; }
  [[nodiscard]] const MultisetIndex& index() const { return *index_; }

  /// Tensor entry for a (possibly unsorted) slot tuple.
  [[nodiscard]] CVector entry(std::span<const int> tuple) const;
  void set_entry(std::span<const int> tuple, const CVector& value);

  /// T(x_1, ..., x_m) by full tensor contraction.
  [[nodiscard]] CVector operator()(std::span<const CVector> args) const;
  /// T(x, ..., x) using multinomial multiplicities.
  [[nodiscard]] CVector diagonal_value(const CVector& x) const;
  /// q x n Jacobian of x -> T(x, ..., x).
  [[nodiscard]] CMatrix diagonal_jacobian(const CVector& x) const;
  /// q x n Jacobian of slot `slot` at args (linear in that slot).
  [[nodiscard]] CMatrix slot_jacobian(std::span<const CVector> args, int slot) const;

  /// Channel-scaled copy: output channel i multiplied by scale[i].
  [[nodiscard]] SymMultilinearMap scaled_channels(const RVector& scale) const;
  [[nodiscard]] SymMultilinearMap operator-(const SymMultilinearMap& other) const;

  /// Linear maps only: the q x n matrix.
  [[nodiscard]] CMatrix as_matrix() const;

 private:
  int degree_;
  std::shared_ptr<const MultisetIndex> index_;
  CMatrix coeffs_;
};

/// m-homogeneous polynomial P(x) = polar(x, ..., x).
class HomPolynomial {
 public:
  explicit HomPolynomial(SymMultilinearMap polar) : polar_(std::move(polar)) {}

  [[nodiscard]] const SymMultilinearMap& polar() const { return polar_; }
  [[nodiscard]] int degree() const { return polar_.degree(); }
  [[nodiscard]] int domain_dim() const { return polar_.domain_dim(); }
  [[nodiscard]] int codomain_dim() const { return polar_.codomain_dim(); }

  [[nodiscard]] CVector operator()(const CVector& x) const;

 private:
  SymMultilinearMap polar_;
};

CVector evaluate(const HomPolynomial& p, const CVector& x);

/// Polar recovered from P alone by the signed average
///   1/(2^m m!) sum_{eps = +-1} eps_1...eps_m P(eps_1 x_1 + ... + eps_m x_m).
CVector polarize_via_formula(const HomPolynomial& p, std::span<const CVector> args);

/// Largest degree the 2^m sign sum accepts.
inline constexpr int kMaxPolarizationDegree = 12;

struct ExpansionError {
  double absolute = 0.0;
  /// absolute / (largest summand norm); the floating point relative error.
  double relative = 0.0;
};

/// Compares T(s,...,s), s = x0 + x1, with
///   T(x0,...,x0) - sum_{k=1}^m (-1)^k C(m,k) T(s^(m-k), x1^k).
ExpansionError lemma_expansion_check(const SymMultilinearMap& t, const CVector& x0, const CVector& x1);

/// Relative discrepancy between polarize_via_formula and the structural
/// polar, scaled by the largest summand of the sign sum.
ExpansionError polarization_discrepancy(const HomPolynomial& p, std::span<const CVector> args);

enum class Certification {
  kExact,      ///< upper bound is the exact norm
  kBound,      ///< upper bound is rigorous but may be loose
  kHeuristic,  ///< no rigorous upper bound
};

const char* to_string(Certification c);

struct OpNormEstimate {
  NormEstimate estimate;
  Certification certification = Certification::kHeuristic;
  /// Best maximizer found by the ascent (first slot for multilinear).
  CVector argmax;
  SolverStatus status;
};

struct AscentOptions {
  int starts = 64;
  int iterations = 150;
};

/// ||P||_{X->Y} = sup{ ||P x||_Y : ||x||_X <= 1 }: lower bound by multistart
/// ascent on the unit sphere, upper bound from exact formulas where
/// available and rigorous factorization bounds otherwise.
OpNormEstimate estimate_op_norm(const HomPolynomial& p, const WeightedSpace& x_space,
                                const WeightedSpace& y_space, const AscentOptions& options,
                                std::uint64_t seed);

/// Same for the multilinear norm sup ||T(x_1..x_m)||_Y over ||x_l||_X <= 1.
OpNormEstimate estimate_multilinear_norm(const SymMultilinearMap& t, const WeightedSpace& x_space,
                                         const WeightedSpace& y_space, const AscentOptions& options,
                                         std::uint64_t seed);

/// Rigorous upper bound on ||P||_{X->Y} and whether it is exact.
std::pair<double, Certification> certified_polynomial_upper(const HomPolynomial& p,
                                                            const WeightedSpace& x_space,
                                                            const WeightedSpace& y_space);
/// Rigorous upper bound on the multilinear norm and whether it is exact.
std::pair<double, Certification> certified_multilinear_upper(const SymMultilinearMap& t,
                                                             const WeightedSpace& x_space,
                                                             const WeightedSpace& y_space);

/// Exact norm of the diagonal polynomial x -> (d_i x_i^m) from l^p(w) to
/// l^q(v); coincides with the norm of its polar.
double diagonal_polynomial_norm(const CVector& d, int degree, const WeightedSpace& x_space,
                                const WeightedSpace& y_space);

double martin_constant(int m);  ///< m^m / m!

struct MartinReport {
  bool checkable = false;
  double polar_lower = 0.0;       ///< ascent lower bound on ||P~||
  double polynomial_upper = 0.0;  ///< certified upper bound on ||P||
  double bound = 0.0;             ///< (m^m/m!) * polynomial_upper
  bool holds = false;             ///< polar_lower <= bound + 1e-9
  double polynomial_lower = 0.0;
  double polar_upper = kInf;
  bool dominance_holds = true;    ///< polynomial_lower <= polar_upper
  double margin = 0.0;            ///< bound - polar_lower
};

MartinReport martin_bound_check(const HomPolynomial& p, const WeightedSpace& x_space,
                                const WeightedSpace& y_space, const AscentOptions& options,
                                std::uint64_t seed);

struct MultilinearInterpolationReport {
  double lower_theta = 0.0;  ///< ascent lower bound on ||T||_{X_theta -> Y_theta}
  double m0 = 0.0;
  double m1 = 0.0;
  double bound = 0.0;        ///< m0^(1-theta) m1^theta
  bool heuristic = false;    ///< an endpoint norm was not certified
  bool holds = false;
};

/// Interpolation of an m-linear map: every slot uses the couple `x`, the
/// codomain couple is `y`; both must admit the closed-form interpolated
/// space. Endpoint norms M_j are certified upper bounds.
MultilinearInterpolationReport multilinear_interpolation_check(const SymMultilinearMap& t,
                                                               const Couple& x, const Couple& y,
                                                               double theta,
                                                               const AscentOptions& options,
                                                               std::uint64_t seed);

/// Per-degree norms ||P_m f(x)|| for m = 0..M_max.
struct TaylorData {
  std::vector<double> norms;
  bool certified = true;

  [[nodiscard]] int truncation() const { return static_cast<int>(norms.size()) - 1; }
};

/// 1 / max_{m in [M/2, M]} norms[m]^(1/m); +inf when the window vanishes.
double radius_from_norms(const TaylorData& data);

struct RadiusReport {
  double r0 = 0.0;
  double r1 = 0.0;
  double r_theta = 0.0;
  double bound = 0.0;  ///< r0^(1-theta) r1^theta / e
  bool heuristic = false;
  bool holds = false;
};

RadiusReport radius_bound_check(const TaylorData& data0, const TaylorData& data1,
                                const TaylorData& data_theta, double theta, double tolerance = 1e-12);

}  // namespace interp
