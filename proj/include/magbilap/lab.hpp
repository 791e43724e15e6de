#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "magbilap/family.hpp"
#include "magbilap/operators.hpp"
#include "magbilap/theorem.hpp"

namespace magbilap {

struct QCase {
  std::string label;
  QCertificate certificate;
};

// The three built-in q(s) used by the radial bound: s + 1 (alpha = 1),
// sqrt(s) + 1 (alpha = 1/2) and the constant 1 (alpha = 0).
std::vector<QCase> default_q_cases();

struct TrialConfig {
  int trials = 500;  // per family and check
  std::vector<int> n_range = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  double positivity_slack = 1e-12;
  // u lives on B(x0, 2n + support_margin), so it straddles the edge of supp chi_n.
  int support_margin = 1;
  // On branching families the support keeps at most this many vertices per
  // sphere (a random sector), which keeps hosts small while reaching radius 2n.
  std::size_t sector_width = 4;
  bool random_phase = true;
  std::vector<FamilySpec> families = {
      {FamilyKind::half_line_unit, 0.0, std::nullopt},
      {FamilyKind::half_line_sqrt, 0.0, std::nullopt},
      {FamilyKind::radial_tree, 0.5, std::nullopt},
  };
  std::vector<double> eps_grid = {0.1, 0.25, 0.5, 0.75, 0.9};
  std::vector<QCase> q_cases = default_q_cases();

  nlohmann::json to_json() const;
};

// A finite piece of an infinite family around a support set S: the host holds
// every vertex within distance 3 of S, so S and its 2-neighbourhood are
// complete and Delta_theta^2 of anything supported in S is exact. Edges get
// random phases when requested; b and mu are the family's.
struct LabHost {
  MagneticGraph graph;
  std::string family;
  int n = 0;
  int support_radius = 0;
  std::vector<VertexIndex> support;  // S, ancestor-closed, reaches support_radius
  std::vector<VertexIndex> ramp;     // vertices of S with n < r < 2n
  std::vector<int> distance_to_support;
  RealField chi;     // chi_n, exact on the 2-neighbourhood of S and 0 beyond
  RealField chi_sq;  // chi_n^2, likewise
  double beta = 0.0; // d_{2n} p_{2n} / (mu0 n)
};

LabHost build_lab_host(const GraphFamily& f, int n, int support_radius, std::size_t sector_width,
                       bool random_phase, std::uint64_t seed);

enum class CheckKind { identity, inequality, lower_bound };
const char* to_string(CheckKind kind);

struct CheckResult {
  std::string name;
  std::string statement;
  CheckKind kind = CheckKind::identity;
  long trials = 0;
  // identity: max relative residual; inequality: max LHS/RHS; lower_bound: min value.
  double worst = 0.0;
  bool passed = true;
  nlohmann::json witness;  // null when no trial ran
};

struct LabReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// Suites: product_rule, expansion_identity, commutator_bounds,
// localized_gradient_bound, squared_cutoff_bounds, q_bound, scalar_inequalities,
// green_identities, or "all".
const std::vector<std::string>& lab_suites();
LabReport run_lab(const TrialConfig& cfg, const std::vector<std::string>& suites = {"all"});

}  // namespace magbilap
