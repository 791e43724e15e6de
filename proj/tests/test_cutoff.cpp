#include <doctest.h>

#include "magbilap/cutoff.hpp"
#include "magbilap/family.hpp"

using namespace magbilap;

TEST_CASE("cut-off values") {
  CHECK(cutoff_value(2, 3) == 0.5);
  for (int n = 1; n <= 6; ++n) {
    for (int r = 0; r <= n; ++r) CHECK(cutoff_value(n, r) == 1.0);
    for (int r = 2 * n; r <= 3 * n; ++r) CHECK(cutoff_value(n, r) == 0.0);
  }
}

TEST_CASE("cut-off fields on the half-line and the tree") {
  const auto line = build_example({FamilyKind::half_line_unit, 0.0, std::nullopt});
  auto chi1 = chi_as_amplitudes(line, 1, 4);
  CHECK(chi1 == RealField{1, 1, 0, 0, 0});
  auto chi2 = chi_as_amplitudes(line, 2, 5);
  CHECK(chi2 == RealField{1, 1, 1, 0.5, 0, 0});
  CHECK_THROWS_AS(chi_as_amplitudes(line, 3, 5), Error);

  const auto tree = build_example({FamilyKind::radial_tree, 0.0, std::nullopt});
  const auto chi = chi_as_amplitudes(tree, 1, 2);
  const auto g = tree.generate(2);
  std::size_t support = 0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (chi[x] != 0.0) {
      ++support;
      CHECK(g.radius(x) <= 1);
    }
  }
  CHECK(support == 3);
}

TEST_CASE("property checker") {
  for (auto spec : {FamilySpec{FamilyKind::half_line_unit, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::half_line_sqrt, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::radial_tree, 0.5, std::nullopt}}) {
    const auto f = build_example(spec);
    for (int n = 1; n <= 5; ++n) {
      const auto report = check_cutoff_properties(f, n);
      CHECK(report.ok());
      CHECK(report.checked_vertices == f.ball_size(2 * n + 1));
      CHECK(report.checked_edges > 0);
    }
  }
  // Equality in |chi(x) - chi(y)| <= 1/n on consecutive ramp vertices.
  for (int n = 1; n <= 10; ++n) {
    for (int r = n; r < 2 * n; ++r) CHECK(cutoff_value(n, r) - cutoff_value(n, r + 1) == doctest::Approx(1.0 / n));
  }
  const auto json = check_cutoff_properties(build_example({}), 3).to_json();
  CHECK(json["n"] == 3);
  CHECK(json["violations"].empty());
  CHECK(json.contains("checked_vertices"));
  CHECK(json.contains("checked_edges"));
}

TEST_CASE("a host cut off inside B(x0, 2n) is rejected") {
  // A graph whose vertex of radius 2 is marked incomplete cannot host chi_1.
  const auto g = build_example({}).generate(2);
  CHECK_THROWS_AS(check_cutoff_properties(g, 1), Error);
}
