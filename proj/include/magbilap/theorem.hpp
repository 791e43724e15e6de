#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "magbilap/family.hpp"
#include "magbilap/operators.hpp"

namespace magbilap {

// q(s) = scale * s^exponent + offset, or values tabulated on s = 0, 1, 2, ...
// (linearly interpolated in between).
class QFunction {
 public:
  static QFunction power(double scale, double exponent, double offset);
  static QFunction constant(double value) { return power(0.0, 0.0, value); }
  static QFunction tabulated(std::vector<double> values);

  double operator()(double s) const;
  bool is_power() const noexcept { return table_.empty(); }
  double scale() const noexcept { return scale_; }
  double exponent() const noexcept { return exponent_; }
  double offset() const noexcept { return offset_; }
  nlohmann::json to_json() const;

 private:
  double scale_ = 0.0;
  double exponent_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> table_;
};

// Witness that q(s) <= c_q * s^alpha for all s >= s0.
struct QCertificate {
  QFunction q = QFunction::constant(1.0);
  double alpha = 0.0;
  double c_q = 1.0;
  double s0 = 0.0;
  bool monotone_certified = false;  // set once q was seen non-decreasing on the grid
};

// Closed-form certificate for a power-form q with exponent <= alpha:
// s0 = 1, c_q = scale + offset (s0 = 0 when alpha = 0). Tabulated q needs an
// explicit certificate.
QCertificate derive_certificate(const QFunction& q, double alpha);

// W(r) = scale * r^exponent, a radial table, or the family's own potential.
RadialFunction radial_power(double scale, double exponent);
RadialFunction radial_table(std::vector<double> values);

enum class Verdict { satisfied, not_satisfied, inconclusive };
enum class AlphaCase { zero, positive };
enum class Basis { from_growth_model, empirical_to_horizon };

const char* to_string(Verdict v);
const char* to_string(AlphaCase c);
const char* to_string(Basis b);

struct MinorantResult {
  bool passed = true;
  int checked_to = 0;
  std::optional<std::string> witness;  // first violating vertex id
  double witness_w = 0.0;
  double witness_bound = 0.0;          // -q(r(witness))
};

// W(x) >= -q(r(x)) for every vertex with r(x) <= horizon.
MinorantResult check_minorant(const MagneticGraph& g, const Potential& w, const QCertificate& qc,
                              int horizon);
MinorantResult check_minorant(const GraphFamily& f, const RadialFunction& w, const QCertificate& qc,
                              int horizon, std::uint64_t vertex_cap = kDefaultVertexCap);

struct GrowthRow {
  int n = 0;
  int d_n = 0;
  double p_n = 0.0;
  double scaled = 0.0;  // n^{alpha-1} d_n p_n, or d_n p_n / n when alpha = 0
};

struct GrowthCheck {
  AlphaCase alpha_case = AlphaCase::zero;
  Verdict verdict = Verdict::inconclusive;
  Basis basis = Basis::empirical_to_horizon;
  std::vector<GrowthRow> rows;
  bool tail_non_increasing = false;
  // d_n p_n / n <= K for N <= n <= horizon, K < mu0/2 (first N that works).
  std::optional<double> K;
  std::optional<int> N;
  // beta_n <= C1 < 1 for N1 <= n <= horizon/2 (tightest empirical C1).
  std::optional<double> C1;
  std::optional<int> N1;
  std::vector<std::string> notes;
};

inline constexpr double kGrowthTolerance = 1e-9;
// Empirical verdicts need the scaled sequence non-increasing from this n on.
inline constexpr int kTailStart = 3;

// Growth hypothesis of the main theorem over n = 1..horizon. With a growth
// model the verdict is exact exponent arithmetic; otherwise it is empirical and
// never stronger than "inconclusive" unless the tail is non-increasing.
GrowthCheck check_growth(const GraphFamily& f, const QCertificate& qc, int horizon,
                         bool use_growth_model = true, std::uint64_t vertex_cap = kDefaultVertexCap);

struct SubCheck {
  std::string name;
  Verdict verdict;
  std::string detail;
};

struct HypothesisReport {
  Verdict verdict = Verdict::inconclusive;
  AlphaCase alpha_case = AlphaCase::zero;
  double alpha = 0.0;
  int horizon = 0;
  int w_minorant_checked_to = 0;
  double mu_floor_used = 0.0;
  std::vector<SubCheck> checks;
  GrowthCheck growth;
  MinorantResult minorant;
  nlohmann::json to_json() const;
};

struct TheoremInstance {
  FamilySpec family;
  RadialFunction potential;
  QCertificate certificate;
  int horizon = 20;
  bool use_growth_model = true;
};

// Instance documents:
//   {"family": {...}, "potential": {"kind": "family_default" | "power" | "tabulated", ...},
//    "q": {"kind": "power", "scale", "exponent", "offset"} | {"kind": "tabulated", "values"},
//    "alpha": a, "certificate": {"c_q", "s0"} (optional for power q),
//    "horizon": H, "use_growth_model": true}
TheoremInstance load_instance(const nlohmann::json& document);

// "satisfied" means the theorem applies, so H is essentially self-adjoint on
// C_c(V). The other verdicts mean the theorem is silent.
HypothesisReport check_theorem(const TheoremInstance& instance,
                               std::uint64_t vertex_cap = kDefaultVertexCap);

}  // namespace magbilap
