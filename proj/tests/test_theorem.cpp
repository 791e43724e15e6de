#include <doctest.h>

#include <cmath>
#include <fstream>

#include "magbilap/theorem.hpp"

using namespace magbilap;

namespace {

nlohmann::json read_instance(const std::string& name) {
  std::ifstream in(std::string(MAGBILAP_DATA_DIR) + "/instances/" + name + ".json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

// Exponent of d_n p_n for the built-in families: 2 (unit line), 2 sqrt(n+1)
// (sqrt line) and (floor(n^kappa) + 2) * 1 (tree).
double dp_exponent(const FamilySpec& f) {
  switch (f.kind) {
    case FamilyKind::half_line_unit: return 0.0;
    case FamilyKind::half_line_sqrt: return 0.5;
    case FamilyKind::radial_tree: return f.kappa;
  }
  return 0.0;
}

// Independent verdict for pure power laws: alpha > 0 needs n^{alpha-1} d_n p_n
// bounded; alpha = 0 needs d_n p_n / n eventually below mu0 / 2 = 1/2, which
// for these families holds exactly when the exponent is below 1.
bool growth_ok(const FamilySpec& f, double alpha) {
  const double e = dp_exponent(f);
  return alpha > 0 ? alpha - 1.0 + e <= 0.0 : e < 1.0;
}

}  // namespace

TEST_CASE("minorant checks") {
  const auto unit = build_example({});
  const auto sqrt_line = build_example({FamilyKind::half_line_sqrt, 0.0, std::nullopt});
  const auto linear = derive_certificate(QFunction::power(1.0, 1.0, 1.0), 1.0);
  CHECK(check_minorant(unit, *unit.potential_model(), linear, 50).passed);
  const auto root = derive_certificate(QFunction::power(1.0, 0.5, 1.0), 0.5);
  CHECK(check_minorant(sqrt_line, *sqrt_line.potential_model(), root, 50).passed);

  const auto fail = check_minorant(unit, radial_power(-1.0, 2.0), linear, 10);
  CHECK_FALSE(fail.passed);
  REQUIRE(fail.witness);
  CHECK(*fail.witness == "2");
  CHECK(fail.witness_w == -4.0);
  CHECK(fail.witness_bound == -3.0);
}

TEST_CASE("certificates") {
  const auto c = derive_certificate(QFunction::power(1.0, 1.0, 1.0), 1.0);
  CHECK(c.c_q == 2.0);
  CHECK(c.s0 == 1.0);
  for (int s = 1; s <= 100; ++s) CHECK(c.q(s) <= c.c_q * std::pow(s, c.alpha));
  const auto k = derive_certificate(QFunction::constant(3.0), 0.0);
  CHECK(k.s0 == 0.0);
  CHECK(k.c_q == 3.0);
  CHECK(QFunction::tabulated({0.0, 1.0, 4.0})(1.5) == 2.5);
}

TEST_CASE("growth case analysis on the reference families") {
  const auto unit = build_example({});
  const auto g1 = check_growth(unit, derive_certificate(QFunction::power(1.0, 1.0, 1.0), 1.0), 20);
  CHECK(g1.verdict == Verdict::satisfied);
  CHECK(g1.basis == Basis::from_growth_model);
  for (const auto& row : g1.rows) CHECK(row.scaled == 2.0);
  REQUIRE(g1.C1);
  CHECK(*g1.C1 < 1.0);
  // beta_n = 2 / n < 1 first at n = 3.
  CHECK(*g1.N1 == 3);

  const auto sqrt_line = build_example({FamilyKind::half_line_sqrt, 0.0, std::nullopt});
  const auto g2 = check_growth(sqrt_line, derive_certificate(QFunction::power(1.0, 0.5, 1.0), 0.5), 20);
  CHECK(g2.verdict == Verdict::satisfied);
  for (const auto& row : g2.rows) CHECK(row.scaled == doctest::Approx(2.0 * std::sqrt(row.n + 1.0) / std::sqrt(row.n)));

  const auto steep = build_example({FamilyKind::radial_tree, 1.5, std::nullopt});
  const auto g3 = check_growth(steep, derive_certificate(QFunction::constant(1.0), 0.0), 5);
  CHECK(g3.alpha_case == AlphaCase::zero);
  CHECK(g3.verdict == Verdict::not_satisfied);

  // alpha = 0 on the unit line: d_n p_n / n = 2 / n < 1/2 from n = 5 on.
  const auto g4 = check_growth(unit, derive_certificate(QFunction::constant(1.0), 0.0), 20);
  CHECK(g4.verdict == Verdict::satisfied);
  REQUIRE(g4.N);
  CHECK(*g4.N == 5);
  CHECK(*g4.K == doctest::Approx(0.4));
}

TEST_CASE("empirical growth never certifies an increasing tail") {
  // alpha = 1 on the sqrt half-line: n^0 d_n p_n = 2 sqrt(n + 1) keeps growing.
  const auto sqrt_line = build_example({FamilyKind::half_line_sqrt, 0.0, std::nullopt});
  const auto qc = derive_certificate(QFunction::power(1.0, 1.0, 1.0), 1.0);
  const auto g = check_growth(sqrt_line, qc, 30, false);
  CHECK(g.basis == Basis::empirical_to_horizon);
  CHECK(g.verdict != Verdict::satisfied);
  CHECK_FALSE(g.tail_non_increasing);
  // The same data with the model gives the exact verdict.
  CHECK(check_growth(sqrt_line, qc, 30, true).verdict == Verdict::not_satisfied);

  // A tail that is flat on the horizon is accepted empirically.
  const auto unit = build_example({});
  CHECK(check_growth(unit, qc, 30, false).verdict == Verdict::satisfied);
}

TEST_CASE("instance verdicts match exponent arithmetic") {
  for (const auto* name : {"half_line_unit", "half_line_sqrt", "tree_kappa0.5_alpha0.5", "tree_kappa0_alpha1",
                           "tree_kappa1.5_alpha0", "tree_kappa0.5_alpha0.8"}) {
    CAPTURE(name);
    const auto instance = load_instance(read_instance(name));
    const auto report = check_theorem(instance);
    const double alpha = instance.certificate.alpha;
    const bool expected = growth_ok(instance.family, alpha);
    CHECK((report.verdict == Verdict::satisfied) == expected);
    CHECK((report.growth.verdict == Verdict::satisfied) == expected);
    CHECK(report.alpha_case == (alpha > 0 ? AlphaCase::positive : AlphaCase::zero));
    CHECK(report.mu_floor_used == 1.0);
    // Verdict "satisfied" only if every sub-check passed.
    bool all = true;
    for (const auto& c : report.checks) all = all && c.verdict == Verdict::satisfied;
    CHECK(all == (report.verdict == Verdict::satisfied));
    CHECK(report.to_json().dump() == check_theorem(instance).to_json().dump());
  }
}

TEST_CASE("instance loading errors") {
  CHECK_THROWS_AS(load_instance(nlohmann::json{{"family", {{"builder", "half_line_unit"}}}}), Error);
  auto doc = read_instance("half_line_unit");
  doc["alpha"] = 1.5;
  CHECK_THROWS_AS(load_instance(doc), Error);
  // A tabulated potential shorter than the horizon is undefined on part of the ball.
  doc = read_instance("half_line_unit");
  doc["potential"] = {{"kind", "tabulated"}, {"values", {0.0, -1.0}}};
  CHECK_THROWS_AS(check_theorem(load_instance(doc)), Error);
}

TEST_CASE("a longer horizon never turns an empirical failure into success") {
  const auto tree = build_example({FamilyKind::radial_tree, 0.5, std::nullopt});
  const auto qc = derive_certificate(QFunction::power(1.0, 0.8, 1.0), 0.8);
  bool seen_failure = false;
  for (int horizon = 2; horizon <= 12; ++horizon) {
    const auto v = check_growth(tree, qc, horizon, false).verdict;
    if (seen_failure) CHECK(v != Verdict::satisfied);
    seen_failure = seen_failure || v != Verdict::satisfied;
  }
}
