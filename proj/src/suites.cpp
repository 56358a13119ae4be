#include <algorithm>
#include <cmath>
#include <numbers>

#include "interp_lab/compactness.hpp"
#include "interp_lab/fourier.hpp"
#include "interp_lab/harness.hpp"
#include "interp_lab/interpolation.hpp"

namespace interp {

namespace {

Rng rng_for(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

RVector random_weights(Eigen::Index dim, Rng& rng, double lo = 0.25, double hi = 4.0) {
  RVector w(dim);
  for (Eigen::Index i = 0; i < dim; ++i) w[i] = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return w;
}

Exponent random_exponent(Rng& rng) {
  static const double choices[] = {1.0, 1.5, 2.0, 3.0, 4.0, kInf};
  const double p = choices[rng.integer(0, 5)];
  return std::isinf(p) ? Exponent::infinity() : Exponent(p);
}

Couple random_couple(Eigen::Index dim, Rng& rng) {
  WeightedSpace s0(random_exponent(rng), random_weights(dim, rng));
  WeightedSpace s1(random_exponent(rng), random_weights(dim, rng));
  return {std::move(s0), std::move(s1)};
}

Couple weighted_l2_couple(Eigen::Index dim, Rng& rng) {
  WeightedSpace s0(Exponent(2.0), random_weights(dim, rng));
  WeightedSpace s1(Exponent(2.0), random_weights(dim, rng));
  return {std::move(s0), std::move(s1)};
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }
std::vector<int> ints(const Json& j) { return j.get<std::vector<int>>(); }

AscentOptions ascent_from(const Json& p) {
  AscentOptions a;
  a.starts = p.at("starts").get<int>();
  a.iterations = p.at("iterations").get<int>();
  return a;
}

LaurentFamily random_family(Eigen::Index dim, int degree, Rng& rng) {
  LaurentFamily phi(dim, degree);
  for (int k = -degree; k <= degree; ++k) {
    phi.set_coefficient(k, rng.complex_vector(dim) / std::max(1.0, std::exp(static_cast<double>(k))));
  }
  return phi;
}

// ------------------------------------------------------------------ suites

void suite_polarization(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int instances = p["instances"];
  const double tol = p["tolerance"];
  Series& s = report.series["errors"];
  s.header = {"m", "n", "q", "max_relative", "mean_relative"};
  std::uint64_t counter = 0;
  for (int m = 1; m <= p["max_degree"].get<int>(); ++m) {
    for (int n = 1; n <= p["max_dim"].get<int>(); ++n) {
      for (int q = 1; q <= p["max_codim"].get<int>(); ++q) {
        double worst = 0.0;
        double mean = 0.0;
        for (int i = 0; i < instances; ++i) {
          Rng rng = rng_for(seed, counter++);
          const HomPolynomial poly(SymMultilinearMap::random(m, n, q, rng));
          std::vector<CVector> args;
          for (int l = 0; l < m; ++l) args.push_back(rng.complex_vector(n));
          const double e = polarization_discrepancy(poly, args).relative;
          worst = std::max(worst, e);
          mean += e / instances;
        }
        s.add({double(m), double(n), double(q), worst, mean});
        report.check_le("polarization m=" + std::to_string(m) + " n=" + std::to_string(n) + " q=" + std::to_string(q),
                        {{"m", m}, {"n", n}, {"q", q}, {"instances", instances}}, worst, tol, 0.0);
      }
    }
  }
}

void suite_lemma_expansion(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int instances = p["instances"];
  const double tol = p["tolerance"];
  Series& s = report.series["errors"];
  s.header = {"m", "max_relative", "mean_relative"};
  std::uint64_t counter = 0;
  for (int m = 1; m <= p["max_degree"].get<int>(); ++m) {
    double worst = 0.0;
    double mean = 0.0;
    for (int i = 0; i < instances; ++i) {
      Rng rng = rng_for(seed, counter++);
      const int n = 1 + i % 4;
      const int q = 1 + (i / 4) % 4;
      const SymMultilinearMap t = SymMultilinearMap::random(m, n, q, rng);
      const CVector x0 = rng.complex_vector(n);
      const CVector x1 = rng.complex_vector(n);
      const double e = lemma_expansion_check(t, x0, x1).relative;
      worst = std::max(worst, e);
      mean += e / instances;
    }
    s.add({double(m), worst, mean});
    report.check_le("expansion m=" + std::to_string(m), {{"m", m}, {"instances", instances}}, worst, tol, 0.0);
  }
}

void suite_riesz_thorin(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int maps = p["maps"];
  const int max_dim = p["max_dim"];
  const double tol = p["tolerance"];
  const auto thetas = doubles(p["thetas"]);
  const AscentOptions ascent = ascent_from(p);
  Series& s = report.series["instances"];
  s.header = {"instance", "theta", "rows", "cols", "lower_theta", "m0", "m1", "bound"};
  std::vector<double> worst(thetas.size(), -kInf);
  std::vector<int> violations(thetas.size(), 0);
  bool exact = true;
  for (int i = 0; i < maps; ++i) {
    Rng rng = rng_for(seed, i);
    const int rows = rng.integer(1, max_dim);
    const int cols = rng.integer(1, max_dim);
    CMatrix a(rows, cols);
    for (Eigen::Index c = 0; c < a.cols(); ++c) a.col(c) = rng.complex_vector(rows);
    const HomPolynomial poly(SymMultilinearMap::linear(a));
    const Couple x(WeightedSpace::lp(cols, Exponent(1.0)), WeightedSpace::lp(cols, Exponent::infinity()));
    const Couple y(WeightedSpace::lp(rows, Exponent(1.0)), WeightedSpace::lp(rows, Exponent::infinity()));
    const auto [m0, c0] = certified_polynomial_upper(poly, x.space0(), y.space0());
    const auto [m1, c1] = certified_polynomial_upper(poly, x.space1(), y.space1());
    exact = exact && c0 == Certification::kExact && c1 == Certification::kExact;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      const double theta = thetas[j];
      const WeightedSpace xt = interpolated_space(InterpolationRequest(x, theta));
      const WeightedSpace yt = interpolated_space(InterpolationRequest(y, theta));
      const double lower = estimate_op_norm(poly, xt, yt, ascent, derive_seed(seed, 1000000 + i * 16 + j)).estimate.lower;
      const double bound = std::pow(m0, 1.0 - theta) * std::pow(m1, theta);
      worst[j] = std::max(worst[j], lower - bound);
      if (lower > bound + tol) ++violations[j];
      s.add({double(i), theta, double(rows), double(cols), lower, m0, m1, bound});
    }
  }
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    auto& rec = report.check_le("riesz-thorin theta=" + format_double(thetas[j]),
                                {{"maps", maps}, {"theta", thetas[j]}, {"max_dim", max_dim}}, worst[j], 0.0, tol);
    rec.values["violations"] = violations[j];
  }
  report.check_le("endpoint norms exact", {{"maps", maps}}, exact ? 0.0 : 1.0, 0.0, 0.0);
}

void suite_calderon(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int couples = p["couples"];
  const int max_dim = p["max_dim"];
  MinimizeOptions opts;
  opts.degree = p["degree"];
  opts.grid.samples = p["grid"];
  opts.budget = p["budget"];
  const double rel_tol = p["relative_tolerance"];
  const double below_tol = p["below_tolerance"];
  Series& s = report.series["instances"];
  s.header = {"instance", "dim", "theta", "closed_form", "optimizer", "relative_excess"};
  double worst_excess = -kInf;
  double worst_below = -kInf;
  for (int i = 0; i < couples; ++i) {
    Rng rng = rng_for(seed, i);
    const int dim = rng.integer(1, max_dim);
    const Couple c = weighted_l2_couple(dim, rng);
    const double theta = rng.uniform(0.1, 0.9);
    const CVector x = rng.complex_vector(dim);
    const double closed = closed_form_norm(InterpolationRequest(c, theta), x);
    const double value = minimize_family(c, theta, x, opts).value;
    const double excess = (value - closed) / closed;
    worst_excess = std::max(worst_excess, excess);
    worst_below = std::max(worst_below, closed - value);
    s.add({double(i), double(dim), theta, closed, value, excess});
  }
  report.check_le("optimizer within relative tolerance of closed form", {{"couples", couples}, {"M", opts.degree}},
                  worst_excess, rel_tol, 0.0);
  report.check_le("optimizer never below closed form", {{"couples", couples}, {"M", opts.degree}}, worst_below, 0.0,
                  below_tol);
}

void suite_three_lines(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int vectors = p["vectors"];
  const double tol = p["tolerance"];
  double worst = 0.0;
  for (int i = 0; i < vectors; ++i) {
    Rng rng = rng_for(seed, i);
    const int dim = rng.integer(1, 4);
    const Couple c = random_couple(dim, rng);
    const double theta = rng.uniform(0.0, 1.0);
    worst = std::max(worst, interpolation_inequality_check(InterpolationRequest(c, theta), rng.complex_vector(dim)).implied_c);
  }
  report.check_le("interpolation inequality implied C", {{"vectors", vectors}}, worst, 1.0, tol);

  const int families = p["families"];
  const int degree = p["family_degree"];
  const auto grids = ints(p["grids"]);
  const auto thetas = doubles(p["thetas"]);
  Series& s = report.series["implied_c"];
  s.header = {"couple", "theta", "grid", "sup_implied_c", "anomalies"};
  for (int ci = 0; ci < p["couples"].get<int>(); ++ci) {
    Rng crng = rng_for(seed, 1000000 + ci);
    const int dim = crng.integer(1, 4);
    const Couple c = ci == 0 ? weighted_l2_couple(dim, crng) : random_couple(dim, crng);
    for (double theta : thetas) {
      std::vector<double> sups;
      int anomalies = 0;
      for (int g : grids) {
        double sup = 0.0;
        for (int f = 0; f < families; ++f) {
          Rng frng = rng_for(seed, 2000000 + ci * 100000 + f);
          const ThreeLinesReport r = three_lines_check(random_family(dim, degree, frng), c, theta, BoundaryGrid{g});
          sup = std::max(sup, r.implied_c);
          anomalies += r.anomaly ? 1 : 0;
        }
        sups.push_back(sup);
        s.add({double(ci), theta, double(g), sup, double(anomalies)});
      }
      const Json inputs = {{"couple", to_json(c)}, {"theta", theta}, {"families", families}};
      report.check_le("three-lines sup finite", inputs, std::isfinite(sups.back()) ? 0.0 : 1.0, 0.0, 0.0);
      report.check_le("three-lines anomalies", inputs, anomalies, 0.0, 0.0);
      const double change = std::abs(sups.back() - sups.front()) / sups.front();
      report.check_le("three-lines grid refinement", inputs, change, p["refinement_tolerance"].get<double>(), 0.0);
    }
  }
}

void suite_parseval(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int instances = p["instances"];
  const int n = p["n"];
  const int bandwidth = p["bandwidth"];
  Series& s = report.series["instances"];
  s.header = {"instance", "degree", "lhs", "rhs", "relative"};
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    Rng rng = rng_for(seed, i);
    const int m = 1 + i % 2;
    const int dim = rng.integer(1, 4);
    const int q = rng.integer(1, 3);
    const int degree = rng.integer(0, bandwidth / m);
    const HomPolynomial poly(SymMultilinearMap::random(m, dim, q, rng));
    const CircleFunction f = random_band_limited(dim, n, degree, rng).mapped(poly);
    const ParsevalReport r = parseval_check(f, rng.complex_vector(q));
    worst = std::max(worst, r.relative);
    s.add({double(i), double(m * degree), r.lhs, r.rhs, r.relative});
  }
  report.check_le("parseval relative discrepancy", {{"instances", instances}, {"n", n}}, worst, p["tolerance"].get<double>(), 0.0);

  Series& rt = report.series["roundtrip"];
  rt.header = {"n", "max_relative"};
  for (int size : ints(p["roundtrip_sizes"])) {
    double err = 0.0;
    for (int i = 0; i < 20; ++i) {
      Rng rng = rng_for(seed, 1000000 + size * 100 + i);
      const CircleFunction f = random_band_limited(rng.integer(1, 4), size, size / 2 - 1, rng);
      const CircleFunction g = synthesize(coefficients(f));
      err = std::max(err, (g.samples() - f.samples()).cwiseAbs().maxCoeff() / f.samples().cwiseAbs().maxCoeff());
    }
    rt.add({double(size), err});
    report.check_le("round trip n=" + std::to_string(size), {{"n", size}}, err, p["roundtrip_tolerance"].get<double>(), 0.0);
  }
}

void suite_vallee_poussin(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int n = p["n"];
  const double exact_tol = p["exact_tolerance"];
  for (int order : ints(p["orders"])) {
    double err = 0.0;
    for (int i = 0; i < 20; ++i) {
      Rng rng = rng_for(seed, order * 1000 + i);
      const CircleFunction f = random_band_limited(rng.integer(1, 3), n, order, rng);
      const CoefficientTable once = vallee_poussin(coefficients(f), order);
      const CircleFunction g = synthesize(once);
      err = std::max(err, (g.samples() - f.samples()).cwiseAbs().maxCoeff() / f.samples().cwiseAbs().maxCoeff());
      const CoefficientTable twice = vallee_poussin(once, order);
      err = std::max(err, (twice.coefficients() - once.coefficients()).cwiseAbs().maxCoeff());
    }
    report.check_le("reproduces degree <= N, N=" + std::to_string(order), {{"order", order}, {"n", n}}, err, 0.0, exact_tol);
    if (order % 2 == 0) {
      const double w = vallee_poussin_window(3 * order / 2, order);
      report.check_le("window at 3N/2 is 1/2, N=" + std::to_string(order), {{"order", order}}, std::abs(w - 0.5), 0.0, 0.0);
    }
    report.check_le("window vanishes at 2N, N=" + std::to_string(order), {{"order", order}},
                    std::abs(vallee_poussin_window(2 * order, order)), 0.0, 0.0);
  }

  const int population = p["population"];
  const int degree = p["family_degree"];
  const BoundaryGrid grid{p["grid"].get<int>()};
  Rng crng = rng_for(seed, 5000000);
  const int dim = p["dim"];
  const Couple c = weighted_l2_couple(dim, crng);
  std::vector<LaurentFamily> families;
  for (int i = 0; i < population; ++i) {
    Rng rng = rng_for(seed, 6000000 + i);
    families.push_back(random_family(dim, degree, rng));
  }
  const SnFamilyReport r = sn_family_bound_report(families, c, ints(p["orders"]), grid);
  Series& s = report.series["sn_ratio"];
  s.header = {"order", "sup_ratio"};
  for (std::size_t i = 0; i < r.orders.size(); ++i) s.add({double(r.orders[i]), r.sup_by_order[i]});
  auto& rec = report.check_le("S_N ratio sup stable from half to full population",
                              {{"population", population}, {"degree", degree}, {"couple", to_json(c)}},
                              r.relative_change, p["stability_tolerance"].get<double>(), 0.0);
  rec.values["sup"] = r.sup;
  rec.values["sup_half"] = r.sup_half;
  report.check_le("S_N ratio sup finite", {{"population", population}}, std::isfinite(r.sup) ? 0.0 : 1.0, 0.0, 0.0);
}

void suite_lemma3(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int dim = p["dim"];
  const int codim = p["codim"];
  const int k_max = p["k_max"];
  const double factor = p["factor"];
  const double theta = p["theta"];
  Rng rng = rng_for(seed, 0);
  const CompactProxy proxy = CompactProxy::geometric(2, dim, codim, p["sigma_ratio"].get<double>(), rng);
  const Couple x = weighted_l2_couple(dim, rng);
  const Couple y(WeightedSpace(Exponent(2.0), random_weights(codim, rng, 0.5, 2.0)),
                 WeightedSpace(Exponent::infinity(), random_weights(codim, rng, 0.5, 2.0)));

  const int degree = p["family_degree"];
  int size = 8;
  while (size < std::max(4 * degree + 2, 2 * k_max + 2)) size *= 2;
  std::vector<LaurentFamily> families;
  for (int i = 0; i < p["families"].get<int>(); ++i) {
    Rng frng = rng_for(seed, 1000 + i);
    families.push_back(random_smooth_family(dim, degree, p["decay"].get<double>(), x, BoundaryGrid{size}, frng));
  }
  const Lemma3Report r = lemma3_diagnostics(proxy.polynomial(), families, x, y, theta, doubles(p["deltas"]), k_max, factor);

  std::vector<CircleFunction> circle;
  for (int i = 0; i < p["circle_functions"].get<int>(); ++i) {
    Rng crng = rng_for(seed, 100000 + i);
    circle.push_back(random_smooth_circle_function(dim, size, p["decay"].get<double>(), crng));
  }
  const RiemannLebesgueReport rl = riemann_lebesgue_report(proxy.polynomial(), circle, y.space0(), k_max, factor);

  Series& s = report.series["decay"];
  s.header = {"k", "y0_sup", "theta_sup", "riemann_lebesgue_sup"};
  for (int k = 0; k <= k_max; ++k) s.add({double(k), r.y0_series.value[k], r.theta_series.value[k], rl.series.value[k]});
  Series& cs = report.series["counts"];
  cs.header = {"delta", "max_count", "budget"};
  for (const auto& row : r.counts) cs.add({row.delta, double(row.max_count), row.budget});

  const Json inputs = {{"families", families.size()}, {"k_max", k_max}, {"theta", theta}};
  report.check_le("(b) tail sup vs head sup", inputs, r.y0_series.tail, factor * r.y0_series.head, 0.0);
  for (const auto& row : r.counts) {
    report.check_le("(c) count bound delta=" + format_double(row.delta), inputs, row.max_count, row.budget, 0.0);
  }
  report.check_le("(d) scaled tail sup vs head sup", inputs, r.theta_series.tail, factor * r.theta_series.head, 0.0);
  report.check_le("riemann-lebesgue tail vs head", {{"functions", circle.size()}, {"k_max", k_max}}, rl.series.tail,
                  factor * rl.series.head, 0.0);
}

void suite_lions_peetre(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int samples = p["samples"];
  const int half = p["half"];
  const int points = p["t_points"];
  const double lo = std::log10(p["t_min"].get<double>());
  const double hi = std::log10(p["t_max"].get<double>());
  Series& s = report.series["constants"];
  s.header = {"couple", "theta", "t", "sup_half", "sup_all"};
  int ci = 0;
  for (const Json& spec : p["couples"]) {
    const Couple c = couple_from_json(spec);
    for (double theta : doubles(p["thetas"])) {
      const InterpolationRequest req(c, theta);
      double sup_half = 0.0;
      double sup_all = 0.0;
      double worst_residual = 0.0;
      int unconverged = 0;
      std::vector<double> per_t_half(points, 0.0);
      std::vector<double> per_t_all(points, 0.0);
      for (int i = 0; i < samples; ++i) {
        Rng rng = rng_for(seed, ci * 100000 + i);
        const CVector x = rng.complex_vector(c.dim());
        for (int j = 0; j < points; ++j) {
          const double t = std::pow(10.0, lo + (hi - lo) * j / (points - 1));
          const LionsPeetreReport r = lions_peetre_decompose(req, x, t);
          const double k = std::max(r.constant0, r.constant1);
          per_t_all[j] = std::max(per_t_all[j], k);
          if (i < half) per_t_half[j] = std::max(per_t_half[j], k);
          worst_residual = std::max(worst_residual, (r.decomposition.part0 + r.decomposition.part1 - x).norm() / x.norm());
          unconverged += r.decomposition.status.converged ? 0 : 1;
        }
      }
      for (int j = 0; j < points; ++j) {
        const double t = std::pow(10.0, lo + (hi - lo) * j / (points - 1));
        s.add({double(ci), theta, t, per_t_half[j], per_t_all[j]});
        sup_half = std::max(sup_half, per_t_half[j]);
        sup_all = std::max(sup_all, per_t_all[j]);
      }
      const Json inputs = {{"couple", spec}, {"theta", theta}, {"samples", samples}};
      auto& fin = report.check_le("constant finite", inputs, std::isfinite(sup_all) ? sup_all : kInf, 1e12, 0.0);
      fin.values["sup_all"] = sup_all;
      auto& st = report.check_le("constant stable from half to full sample", inputs, (sup_all - sup_half) / sup_all,
                                 p["stability_tolerance"].get<double>(), 0.0);
      st.values["sup_half"] = sup_half;
      st.values["sup_all"] = sup_all;
      report.check_le("decomposition reproduces x", inputs, worst_residual, 0.0, 1e-12);
      auto& gap = report.check_le("duality gap certified", inputs, unconverged, 0.0, 0.0);
      gap.values["unconverged"] = unconverged;
    }
    ++ci;
  }
}

void suite_truncation_chain(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int dim = p["domain_dim"];
  const int codim = p["codim"];
  const double theta = p["theta"];
  const double target = p["decay_target"];
  const AscentOptions ascent = ascent_from(p);
  Series& s = report.series["chain"];
  s.header = {"instance", "n", "lhs", "rhs"};
  for (int i = 0; i < p["instances"].get<int>(); ++i) {
    Rng rng = rng_for(seed, i);
    const CompactProxy proxy = CompactProxy::geometric(p["degree"].get<int>(), dim, codim, p["sigma_ratio"].get<double>(), rng);
    const Couple x = weighted_l2_couple(dim, rng);
    const Couple y(WeightedSpace(Exponent::infinity(), random_weights(codim, rng, 0.5, 2.0)),
                   WeightedSpace(Exponent::infinity(), random_weights(codim, rng, 0.5, 2.0)));
    std::vector<int> grid;
    for (int n = 0; n <= codim; ++n) grid.push_back(n);
    const TruncationChainReport r = truncation_chain_check(proxy, x, y, theta, grid, ascent, derive_seed(seed, 1000 + i));
    const Json inputs = {{"instance", i}, {"codim", codim}, {"theta", theta}};
    for (const auto& row : r.rows) {
      s.add({double(i), double(row.n), row.lhs, row.rhs});
      report.check_le("chain inequality n=" + std::to_string(row.n), inputs, row.lhs, row.rhs * (1.0 + 1e-9), 1e-12,
                      r.heuristic);
    }
    report.check_le("right side nonincreasing", inputs, r.rhs_monotone ? 0.0 : 1.0, 0.0, 0.0);
    const TruncationRow& first = r.rows.front();
    const TruncationRow& last = r.rows[static_cast<std::size_t>(codim - 1)];
    auto& l = report.check_le("left side decay at n=dim-1", inputs, last.lhs / first.lhs, target, 0.0);
    l.values["n"] = codim - 1;
    auto& rr = report.check_le("right side decay at n=dim-1", inputs, last.rhs / first.rhs, target, 0.0);
    rr.values["n"] = codim - 1;
  }
}

void suite_later_transfer(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const auto degrees = ints(p["degrees"]);
  const auto dims = ints(p["dims"]);
  const double eps = p["eps"];
  const double theta = p["theta"];
  Series& s = report.series["runs"];
  s.header = {"m", "dim", "c_prime_measured", "c_prime_used", "t", "net_size", "coverage_rate", "tail_within_rate",
              "tail_within_rate_uninflated"};
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Rng rng = rng_for(seed, i);
    const int m = degrees[i];
    const int dim = dims[i];
    const CompactProxy proxy = CompactProxy::geometric(m, dim, 1, 1.0, rng);
    const RVector w0 = random_weights(dim, rng, 0.5, 2.0);
    RVector w1 = w0;
    for (Eigen::Index k = 0; k < dim; ++k) w1[k] *= 1.0 + 3.0 * rng.uniform();
    const Couple x(WeightedSpace(Exponent(2.0), w0), WeightedSpace(Exponent(2.0), w1));
    const WeightedSpace y = WeightedSpace::lp(1, Exponent(2.0));
    LaterTransferOptions opts;
    opts.seed = derive_seed(seed, 1000 + i);
    opts.test_samples = p["test_samples"];
    opts.net_samples = p["net_samples"];
    opts.constant_samples = p["constant_samples"];
    opts.safety = p["safety"];
    const LaterTransferReport r = theorem_later_transfer_check(proxy, x, y, theta, eps, opts);
    s.add({double(m), double(dim), r.c_prime_measured, r.c_prime_used, r.t, double(r.net_size), r.coverage_rate,
           double(r.tail_within) / r.samples, double(r.tail_within_uninflated) / r.samples});
    const Json inputs = {{"m", m}, {"dim", dim}, {"eps", eps}, {"theta", theta}, {"samples", r.samples}};
    auto& cov = report.check_le("coverage at prescribed t", inputs, 1.0 - r.coverage_rate, 0.0, 0.0);
    cov.values["coverage_rate"] = r.coverage_rate;
    cov.values["t"] = r.t;
    cov.values["C_prime_used"] = r.c_prime_used;
    cov.values["worst_distance"] = r.worst_distance;
    auto& tail = report.check_le("tail within eps/2 at uninflated constant", inputs,
                                 r.samples - r.tail_within_uninflated, 0.0, 0.0, true);
    tail.values["t_uninflated"] = r.t_uninflated;
    report.check_le("decomposition solver converged", inputs, r.solver_converged ? 0.0 : 1.0, 0.0, 0.0, true);
  }
}

void suite_radius_bound(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int instances = p["instances"];
  const int truncation = p["truncation"];
  Series& s = report.series["instances"];
  s.header = {"instance", "dim", "theta", "r0", "r1", "r_theta", "bound"};
  double worst = -kInf;
  int violations = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng = rng_for(seed, i);
    const int dim = 1 + i % 2;
    const Couple x = random_couple(dim, rng);
    const Couple y = random_couple(dim, rng);
    RVector rho(dim);
    for (int k = 0; k < dim; ++k) rho[k] = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
    std::vector<CVector> d;
    for (int m = 0; m <= truncation; ++m) {
      CVector dm(dim);
      for (int k = 0; k < dim; ++k) dm[k] = rng.unit_phase() * rng.uniform(0.5, 1.5) * std::pow(rho[k], -m);
      d.push_back(dm);
    }
    const auto norms = [&](const WeightedSpace& xs, const WeightedSpace& ys) {
      TaylorData t;
      for (int m = 0; m <= truncation; ++m) t.norms.push_back(diagonal_polynomial_norm(d[m], m, xs, ys));
      return t;
    };
    const TaylorData d0 = norms(x.space0(), y.space0());
    const TaylorData d1 = norms(x.space1(), y.space1());
    for (double theta : doubles(p["thetas"])) {
      const TaylorData dt = norms(interpolated_space(InterpolationRequest(x, theta)),
                                  interpolated_space(InterpolationRequest(y, theta)));
      const RadiusReport r = radius_bound_check(d0, d1, dt, theta);
      worst = std::max(worst, (r.bound - r.r_theta) / r.bound);
      violations += r.holds ? 0 : 1;
      s.add({double(i), double(dim), theta, r.r0, r.r1, r.r_theta, r.bound});
    }
  }
  auto& rec = report.check_le("radius bound relative deficit", {{"instances", instances}, {"truncation", truncation}},
                              worst, 0.0, 1e-12);
  rec.values["violations"] = violations;
}

void suite_mho(const Json& p, std::uint64_t seed, SuiteReport& report) {
  const int families = p["families"];
  const int degree = p["degree"];
  const int phases = p["phase_samples"];
  Rng crng = rng_for(seed, 0);
  const int dim = p["dim"];
  const Couple c = random_couple(dim, crng);

  const MembershipBracket zero = mho_membership(LaurentFamily(dim, degree), c, phases, seed);
  report.check_le("zero family bracket", {{"dim", dim}}, zero.upper, 0.0, 0.0);
  report.check_le("zero family member", {{"dim", dim}}, zero.verdict == Membership::kMember ? 0.0 : 1.0, 0.0, 0.0);

  CVector c0 = crng.complex_vector(dim);
  c0 *= 0.5 / std::max(c.space0().norm(c0), c.space1().norm(c0));
  const MembershipBracket single = mho_membership(LaurentFamily::constant(c0), c, phases, seed);
  report.check_le("single coefficient upper = 0.5", {{"dim", dim}}, std::abs(single.upper - 0.5), 0.0, 1e-12);
  report.check_le("single coefficient lower = 0.5", {{"dim", dim}}, std::abs(single.lower - 0.5), 0.0, 1e-12);

  double worst_order = -kInf;
  double worst_positive = 0.0;
  Series& s = report.series["brackets"];
  s.header = {"family", "positive", "lower", "upper"};
  for (int i = 0; i < families; ++i) {
    Rng rng = rng_for(seed, 1000 + i);
    LaurentFamily phi = random_family(dim, degree, rng);
    const bool positive = i % 2 == 0;
    if (positive) {
      CMatrix a = phi.coefficients().cwiseAbs().cast<Complex>();
      phi = LaurentFamily(a);
    }
    const MembershipBracket b = mho_membership(phi, c, phases, derive_seed(seed, 5000 + i));
    worst_order = std::max(worst_order, b.lower - b.upper);
    if (positive) worst_positive = std::max(worst_positive, (b.upper - b.lower) / b.upper);
    s.add({double(i), positive ? 1.0 : 0.0, b.lower, b.upper});
  }
  report.check_le("bracket ordered", {{"families", families}}, worst_order, 0.0, 0.0);
  report.check_le("nonnegative families collapse", {{"families", families}}, worst_positive, 0.0, 1e-12);

  double worst_peetre = -kInf;
  double worst_reconstruct = 0.0;
  for (int i = 0; i < p["vectors"].get<int>(); ++i) {
    Rng rng = rng_for(seed, 900000 + i);
    const InterpolationRequest req(c, rng.uniform(0.1, 0.9));
    const CVector x = rng.complex_vector(dim);
    const PeetreRepresentation rep = dyadic_threshold_representation(req, x, p["half_width"].get<int>());
    worst_reconstruct = std::max(worst_reconstruct, (rep.reconstruct() - x).norm() / x.norm());
    const NormEstimate e = peetre_norm_bracket(req, rep, phases, derive_seed(seed, 950000 + i));
    worst_peetre = std::max(worst_peetre, e.lower - e.upper);
  }
  report.check_le("peetre representation reproduces x", {{"vectors", p["vectors"]}}, worst_reconstruct, 0.0, 1e-12);
  report.check_le("peetre bracket ordered", {{"vectors", p["vectors"]}}, worst_peetre, 0.0, 0.0);
}

Json default_couples() {
  return Json::parse(R"([
    {"X0": {"p": 1, "weights": [1.0, 2.0, 0.5]}, "X1": {"p": "inf", "weights": [3.0, 1.0, 1.0]}},
    {"X0": {"p": 2, "weights": [1.0, 0.3, 2.0, 1.5]}, "X1": {"p": 2, "weights": [0.5, 4.0, 1.0, 1.0]}},
    {"X0": {"p": 1.5, "weights": [1.0, 1.0]}, "X1": {"p": 4, "weights": [0.25, 3.0]}}
  ])");
}

}  // namespace

const std::vector<SuiteInfo>& list_suites() {
  static const std::vector<SuiteInfo> suites = {
      {"polarization", "sign-sum polarization against the stored symmetric tensor",
       {{"instances", 1000}, {"max_degree", 5}, {"max_dim", 4}, {"max_codim", 4}, {"tolerance", 1e-10}}},
      {"lemma-expansion", "binomial expansion of T(x0+x1,...) in mixed arguments",
       {{"instances", 1000}, {"max_degree", 6}, {"tolerance", 1e-10}}},
      {"riesz-thorin", "interpolated norm of linear maps against M0^(1-theta) M1^theta",
       {{"maps", 200}, {"max_dim", 8}, {"thetas", {0.25, 0.5, 0.75}}, {"starts", 12}, {"iterations", 150},
        {"tolerance", 1e-9}}},
      {"calderon-crosscheck", "annulus family minimization against the closed form",
       {{"couples", 50}, {"max_dim", 4}, {"degree", 32}, {"grid", 256}, {"budget", 6000},
        {"relative_tolerance", 0.05}, {"below_tolerance", 1e-6}}},
      {"parseval", "Parseval identity and transform round trips",
       {{"instances", 1000}, {"n", 256}, {"bandwidth", 64}, {"tolerance", 1e-8},
        {"roundtrip_sizes", {64, 128, 256, 512, 1024}}, {"roundtrip_tolerance", 1e-12}}},
      {"vallee-poussin", "de la Vallee Poussin window and family-norm ratios",
       {{"orders", {2, 4, 8}}, {"n", 128}, {"population", 1000}, {"family_degree", 32}, {"grid", 128}, {"dim", 2},
        {"stability_tolerance", 0.05}, {"exact_tolerance", 1e-12}}},
      {"lemma3", "coefficient decay and counting budget for P composed with families",
       {{"families", 200}, {"family_degree", 48}, {"decay", 0.8}, {"dim", 3}, {"codim", 3}, {"sigma_ratio", 0.5},
        {"theta", 0.5}, {"k_max", 128}, {"deltas", {0.1, 0.03, 0.01, 0.003, 0.001}}, {"factor", 0.1},
        {"circle_functions", 200}}},
      {"lions-peetre", "K-functional decompositions and their empirical constants",
       {{"couples", default_couples()}, {"thetas", {0.5}}, {"samples", 200}, {"half", 100}, {"t_points", 13},
        {"t_min", 1e-3}, {"t_max", 1e3}, {"stability_tolerance", 0.1}}},
      {"truncation-chain", "norm of P - pi_n P at theta against the endpoint chain",
       {{"instances", 3}, {"domain_dim", 4}, {"codim", 6}, {"degree", 2}, {"sigma_ratio", 0.3}, {"theta", 0.5},
        {"starts", 24}, {"iterations", 150}, {"decay_target", 1e-3}}},
      {"later-transfer", "covering of P(B_theta) by a net of P(B_0)",
       {{"degrees", {1, 2}}, {"dims", {4, 3}}, {"eps", 0.1}, {"theta", 0.5}, {"test_samples", 500},
        {"net_samples", 2000}, {"constant_samples", 30}, {"safety", 2.0}}},
      {"radius-bound", "radius of convergence at theta against R0^(1-theta) R1^theta / e",
       {{"instances", 50}, {"truncation", 40}, {"thetas", {0.25, 0.5, 0.75}}}},
      {"mho", "unconditional-sum brackets and Peetre representations",
       {{"families", 200}, {"degree", 4}, {"dim", 3}, {"phase_samples", 256}, {"vectors", 100}, {"half_width", 12}}},
      {"three-lines", "interpolation inequality and boundary-average bounds",
       {{"vectors", 10000}, {"couples", 3}, {"thetas", {0.3, 0.7}}, {"families", 500}, {"family_degree", 8},
        {"grids", {128, 512}}, {"tolerance", 1e-9}, {"refinement_tolerance", 0.01}}},
  };
  return suites;
}

namespace detail {

const std::map<std::string, SuiteFn>& suite_functions() {
  static const std::map<std::string, SuiteFn> fns = {
      {"polarization", suite_polarization},     {"lemma-expansion", suite_lemma_expansion},
      {"riesz-thorin", suite_riesz_thorin},     {"calderon-crosscheck", suite_calderon},
      {"parseval", suite_parseval},             {"vallee-poussin", suite_vallee_poussin},
      {"lemma3", suite_lemma3},                 {"lions-peetre", suite_lions_peetre},
      {"truncation-chain", suite_truncation_chain}, {"later-transfer", suite_later_transfer},
      {"radius-bound", suite_radius_bound},     {"mho", suite_mho},
      {"three-lines", suite_three_lines},
  };
  return fns;
}

}  // namespace detail

}  // namespace interp
