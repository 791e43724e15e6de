#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "magbilap/family.hpp"
#include "magbilap/graph.hpp"

namespace magbilap {

enum class GrowthClass { divergent, undetermined, square_summable_candidate };
enum class Conclusion { consistent_with_delta_zero, defect_suspected, inconclusive };

const char* to_string(GrowthClass c);
const char* to_string(Conclusion c);

// The probe is evidence, never a proof; every report carries this text.
extern const char* const kProbeCaveat;

// A complex number kept as mantissa * 10^exponent, so recurrences with
// super-exponential growth (W(k) = -k) never overflow.
struct ScaledComplex {
  Complex mantissa;
  double exponent = 0.0;

  static ScaledComplex from(Complex z);
  double log10_abs() const;  // -inf for zero
  Complex value() const;     // may overflow to inf
};

struct ProbeOptions {
  double divergence_factor = 10.0;  // P_N grows at least this much over the last quarter
  double decay_ratio = 0.99;        // per-step ratio of tail increments for an l2 candidate
  int reorthogonalize_every = 4;
  double decrease_factor = 0.95;    // s_N counts as decreasing when s_{N'} <= 0.95 s_N
  int decreasing_run = 3;           // horizons in a decreasing run that suggest a defect
  std::size_t svd_column_cap = 4000;
};

struct ShootingSolution {
  std::string basis;  // "e1", "e2" or "minimal"
  ScaledComplex u0, u1;
  std::vector<ScaledComplex> values;        // u(0..horizon)
  std::vector<double> log10_partial_norms;  // log10 sum_{k <= N} mu(k) |u(k)|^2
  double max_residual = 0.0;  // |(Hu)(k) - s i nu u(k)| relative to the stencil terms
  GrowthClass growth_class = GrowthClass::undetermined;
};

// Solves (H u)(k) = sign * i * nu * u(k) for k = 0..horizon-2 on a path family
// from free data u(0), u(1); each equation fixes u(k + 2).
ShootingSolution shoot_from(const GraphFamily& f, const RadialFunction& w, double nu, int sign, int horizon,
                            Complex u0, Complex u1, const ProbeOptions& options = {});

struct ShootingReport {
  double nu = 1.0;
  int sign = 1;
  int horizon = 0;
  std::vector<ShootingSolution> solutions;  // e1, e2, minimal
  Conclusion conclusion = Conclusion::inconclusive;

  nlohmann::json to_json() const;
  // nu, basis, k, log10|u(k)|, log10 P_k for every solution.
  void write_csv(std::ostream& out, bool header = true) const;
};

// Basis solutions from u(0), u(1) = (1, 0) and (0, 1), plus the combination of
// slowest growth, found by re-orthogonalizing against the first every few steps.
ShootingReport shoot(const GraphFamily& f, const RadialFunction& w, double nu, int sign, int horizon,
                     const ProbeOptions& options = {});

struct ResidualPoint {
  int horizon = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double s_min = 0.0;
};

struct ResidualReport {
  double nu = 1.0;
  int sign = 1;
  std::vector<ResidualPoint> points;
  Conclusion conclusion = Conclusion::inconclusive;

  nlohmann::json to_json() const;
};

// s_N = smallest singular value (in l2_mu) of the interior-rows operator of
// H - sign * i * nu, for every horizon.
ResidualReport rectangular_residual(const GraphFamily& f, const RadialFunction& w, double nu, int sign,
                                    const std::vector<int>& horizons, const ProbeOptions& options = {});

struct ProbeRun {
  double nu = 1.0;
  std::optional<ShootingReport> shooting;
  std::optional<ResidualReport> residual;
};

// Re-runs both probes at several nu (deficiency indices do not depend on nu)
// and requires every conclusion to agree.
struct ConsistencyReport {
  int sign = 1;
  std::vector<ProbeRun> runs;
  bool agreed = false;
  Conclusion conclusion = Conclusion::inconclusive;

  nlohmann::json to_json() const;
};

ConsistencyReport probe_consistency(const GraphFamily& f, const RadialFunction& w, const std::vector<double>& nus,
                                    int sign, int shooting_horizon, const std::vector<int>& horizons,
                                    const ProbeOptions& options = {});

}  // namespace magbilap
