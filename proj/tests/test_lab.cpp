#include <doctest.h>

#include <algorithm>

#include "magbilap/cutoff.hpp"
#include "magbilap/lab.hpp"

using namespace magbilap;

namespace {

// Index in generate(N) of a lab vertex id ("k" on the half-lines, "level.index" on trees).
VertexIndex generated_index(const GraphFamily& f, const std::string& id) {
  const auto dot = id.find('.');
  if (dot == std::string::npos) return static_cast<VertexIndex>(std::stoul(id));
  const int level = std::stoi(id.substr(0, dot));
  const auto index = std::stoull(id.substr(dot + 1));
  return static_cast<VertexIndex>((level == 0 ? 0 : f.ball_size(level - 1)) + index);
}

TrialConfig small_config() {
  TrialConfig cfg;
  cfg.trials = 60;
  cfg.n_range = {1, 2, 3, 4};
  return cfg;
}

}  // namespace

TEST_CASE("lab hosts are exact pieces of the generated family") {
  for (auto spec : {FamilySpec{FamilyKind::half_line_unit, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::half_line_sqrt, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::radial_tree, 0.5, std::nullopt},
                    FamilySpec{FamilyKind::radial_tree, 0.0, std::nullopt}}) {
    const auto f = build_example(spec);
    for (int n = 1; n <= 2; ++n) {
      const auto host = build_lab_host(f, n, 2 * n + 1, 3, false, 42 + n);
      const auto g = f.generate(2 * n + 4);
      CHECK(host.n == n);
      for (VertexIndex x = 0; x < host.graph.vertex_count(); ++x) {
        const VertexIndex gx = generated_index(f, host.graph.id(x));
        REQUIRE(gx < g.vertex_count());
        CHECK(host.graph.radius(x) == g.radius(gx));
        CHECK(host.graph.measure(x) == g.measure(gx));
        if (host.graph.is_complete(x)) CHECK(host.graph.degree(x) == g.degree(gx));
        for (const auto& nb : host.graph.neighbors(x)) {
          const VertexIndex gy = generated_index(f, host.graph.id(nb.vertex));
          const auto gn = g.neighbors(gx);
          const auto it = std::find_if(gn.begin(), gn.end(), [&](const Neighbor& m) { return m.vertex == gy; });
          REQUIRE(it != gn.end());
          CHECK(it->weight == nb.weight);
        }
        if (host.distance_to_support[x] <= 2) {
          CHECK(host.graph.is_complete(x));
          CHECK(host.chi[x] == cutoff_value(n, host.graph.radius(x)));
          CHECK(host.chi_sq[x] == host.chi[x] * host.chi[x]);
        }
      }
      // The support is ancestor-closed and reaches the requested radius.
      int reach = 0;
      for (auto x : host.support) {
        reach = std::max(reach, host.graph.radius(x));
        if (x == host.graph.root()) continue;
        bool has_parent = false;
        for (const auto& nb : host.graph.neighbors(x)) {
          if (host.graph.radius(nb.vertex) + 1 == host.graph.radius(x) &&
              std::find(host.support.begin(), host.support.end(), nb.vertex) != host.support.end()) {
            has_parent = true;
          }
        }
        CHECK(has_parent);
      }
      CHECK(reach == 2 * n + 1);
      for (auto x : host.ramp) CHECK((host.graph.radius(x) > n && host.graph.radius(x) < 2 * n));
    }
  }
}

TEST_CASE("lab host beta matches the growth statistics") {
  const auto f = build_example({FamilyKind::half_line_sqrt, 0.0, std::nullopt});
  for (int n = 1; n <= 5; ++n) {
    const auto host = build_lab_host(f, n, 2 * n, 4, true, 1);
    CHECK(host.beta == doctest::Approx(growth_stats(f, 2 * n).d_n * growth_stats(f, 2 * n).p_n / n));
  }
}

TEST_CASE("every suite passes on a reduced run") {
  const auto report = run_lab(small_config());
  CHECK(report.all_passed());
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
    CHECK(c.trials > 0);
  }
  CHECK(report.to_table().find("product_rule") != std::string::npos);
}

TEST_CASE("runs are deterministic in the seed") {
  auto cfg = small_config();
  cfg.trials = 20;
  const auto a = run_lab(cfg, {"product_rule", "green_identities"}).to_json().dump();
  const auto b = run_lab(cfg, {"product_rule", "green_identities"}).to_json().dump();
  CHECK(a == b);
  cfg.seed = 2;
  CHECK(run_lab(cfg, {"product_rule", "green_identities"}).to_json().dump() != a);
}

TEST_CASE("the ratio checks are not vacuous") {
  // An impossible tolerance makes the identity checks fail; a loose slack keeps
  // the inequality worst ratios well above zero, so the bounds are exercised.
  auto cfg = small_config();
  cfg.trials = 20;
  cfg.tolerance = 0.0;
  const auto strict = run_lab(cfg, {"expansion_identity"});
  CHECK_FALSE(strict.all_passed());
  const auto bounds = run_lab(small_config(), {"commutator_bounds"});
  for (const auto& c : bounds.checks) CHECK(c.worst > 0.1);
}

TEST_CASE("unknown suites are rejected") {
  CHECK_THROWS_AS(run_lab(small_config(), {"no_such_suite"}), Error);
}
