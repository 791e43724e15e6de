#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "magbilap/family.hpp"
#include "magbilap/graph.hpp"
#include "magbilap/graph_io.hpp"

using namespace magbilap;

namespace {

template <typename F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

MagneticGraph path(int length) {
  MagneticGraph::Builder b(1.0);
  for (int k = 0; k <= length; ++k) b.add_vertex(1.0);
  for (int k = 0; k < length; ++k) b.add_edge(k, k + 1, 1.0);
  return std::move(b).build();
}

// All-pairs shortest paths by Floyd-Warshall on the edge list.
std::vector<std::vector<int>> floyd_warshall(const MagneticGraph& g) {
  const int inf = std::numeric_limits<int>::max() / 4;
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace

TEST_CASE("distance on the half-line and the binary tree") {
  const auto g = path(8);
  CHECK(distance(g, 0, 5) == 5);
  CHECK(distance(g, 3, 3) == 0);

  const auto tree = build_example({FamilyKind::radial_tree, 0.0, std::nullopt}).generate(2);
  std::vector<VertexIndex> level1;
  for (VertexIndex x = 0; x < tree.vertex_count(); ++x)
    if (tree.radius(x) == 1) level1.push_back(x);
  REQUIRE(level1.size() == 2);
  CHECK(distance(tree, level1[0], level1[1]) == 2);
  CHECK(error_code([&] { distance(g, 0, 99); }) == "unknown_vertex");
}

TEST_CASE("breadth-first distance agrees with Floyd-Warshall") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    // Random spanning tree plus extra chords keeps the graph connected.
    const int n = 3 + static_cast<int>(rng() % 20);
    MagneticGraph::Builder b(1.0);
    for (int k = 0; k < n; ++k) b.add_vertex(1.0);
    std::set<std::pair<int, int>> seen;
    for (int k = 1; k < n; ++k) {
      const int parent = static_cast<int>(rng() % k);
      b.add_edge(parent, k, 1.0);
      seen.insert({parent, k});
    }
    for (int extra = 0; extra < n / 2; ++extra) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) continue;
      b.add_edge(u, v, 0.5);
    }
    const auto g = std::move(b).build();
    const auto d = floyd_warshall(g);
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
      CHECK(g.radius(x) == d[0][x]);
      for (VertexIndex y = 0; y < g.vertex_count(); ++y) CHECK(distance(g, x, y) == d[x][y]);
    }
  }
  // The same on generated tree balls up to radius 6.
  for (double kappa : {0.0, 0.5, 1.0}) {
    const auto g = build_example({FamilyKind::radial_tree, kappa, std::nullopt}).generate(kappa == 0.0 ? 6 : 5);
    const auto d = floyd_warshall(g);
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) CHECK(g.radius(x) == d[0][x]);
  }
}

TEST_CASE("balls") {
  const auto g = path(6);
  const auto b3 = ball(g, 3);
  CHECK(b3.vertices == std::vector<VertexIndex>{0, 1, 2, 3});
  CHECK(b3.edges == std::vector<std::pair<VertexIndex, VertexIndex>>{{0, 1}, {1, 2}, {2, 3}});
  const auto b0 = ball(g, 0);
  CHECK(b0.vertices == std::vector<VertexIndex>{0});
  CHECK(b0.edges.empty());
  CHECK(error_code([&] { ball(g, -1); }) == "negative_radius");
}

TEST_CASE("radial tree level counts follow the branching rule") {
  for (double kappa : {0.0, 0.5, 1.0, 1.5}) {
    const auto f = build_example({FamilyKind::radial_tree, kappa, std::nullopt});
    const int horizon = kappa >= 1.0 ? 5 : 7;
    const auto g = f.generate(horizon);
    std::vector<long long> level(horizon + 1, 0);
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) ++level[g.radius(x)];
    // Independent oracle: |S_{n+1}| = |S_n| (floor(n^kappa) + 1), with 0^0 = 1.
    long long expected = 1;
    std::uint64_t total = 0;
    for (int n = 0; n <= horizon; ++n) {
      CHECK(level[n] == expected);
      total += expected;
      const double power = (n == 0 && kappa == 0.0) ? 1.0 : std::pow(n, kappa);
      expected *= static_cast<long long>(std::floor(power + 1e-12)) + 1;
    }
    CHECK(f.ball_size(horizon) == total);
  }
  // kappa = 0: |S_n| = 2^n.
  const auto g = build_example({FamilyKind::radial_tree, 0.0, std::nullopt}).generate(4);
  CHECK(g.vertex_count() == 1 + 2 + 4 + 8 + 16);
  // kappa = 1: the root has floor(0^1) + 1 = 1 child, S_1 vertices have 2.
  CHECK(build_example({FamilyKind::radial_tree, 1.0, std::nullopt}).generate(2).vertex_count() == 4);
}

TEST_CASE("generated balls are nested and mark their outer sphere") {
  for (auto kind : {FamilyKind::half_line_unit, FamilyKind::half_line_sqrt, FamilyKind::radial_tree}) {
    const auto f = build_example({kind, 0.5, std::nullopt});
    const auto small = f.generate(4);
    const auto large = f.generate(6);
    REQUIRE(small.vertex_count() <= large.vertex_count());
    for (VertexIndex x = 0; x < small.vertex_count(); ++x) {
      CHECK(small.measure(x) == large.measure(x));
      CHECK(small.radius(x) == large.radius(x));
      CHECK(small.is_complete(x) == (small.radius(x) < 4));
      for (const auto& nb : small.neighbors(x)) {
        const auto lnb = large.neighbors(x);
        const auto it = std::find_if(lnb.begin(), lnb.end(), [&](const Neighbor& m) { return m.vertex == nb.vertex; });
        REQUIRE(it != lnb.end());
        CHECK(it->weight == nb.weight);
        CHECK(it->angle == nb.angle);
      }
    }
  }
  CHECK(error_code([] { build_example({FamilyKind::radial_tree, -1.0, std::nullopt}); }) != "");
}

TEST_CASE("reference families and growth statistics") {
  const auto unit = build_example({FamilyKind::half_line_unit, 0.0, std::nullopt});
  const auto g = unit.generate(4);
  CHECK(g.vertex_count() == 5);
  for (const auto& e : g.edges()) {
    CHECK(e.weight == 1.0);
    CHECK(std::abs(static_cast<int>(e.u) - static_cast<int>(e.v)) == 1);
  }
  for (VertexIndex x = 0; x < 5; ++x) CHECK(g.measure(x) == 1.0);
  for (int n = 1; n <= 12; ++n) {
    const auto s = growth_stats(unit, n);
    CHECK(s.d_n == 2);
    CHECK(s.p_n == 1.0);
    CHECK(s.beta_n == doctest::Approx(2.0 / n).epsilon(1e-15));
  }

  const auto sqrt_family = build_example({FamilyKind::half_line_sqrt, 0.0, std::nullopt});
  for (int n = 1; n <= 12; ++n) CHECK(growth_stats(sqrt_family, n).p_n == doctest::Approx(std::sqrt(n + 1.0)));

  for (double kappa : {0.0, 0.5, 1.0}) {
    const auto tree = build_example({FamilyKind::radial_tree, kappa, std::nullopt});
    const auto table = growth_stats_table(tree, kappa == 1.0 ? 3 : 4);
    for (const auto& s : table) {
      // Every vertex of S_n has one parent and floor(n^kappa) + 1 children.
      CHECK(s.d_n == floor_power(s.n, kappa) + 2);
      CHECK(s.p_n == 1.0);
    }
    for (std::size_t i = 1; i < table.size(); ++i) {
      CHECK(table[i].d_n >= table[i - 1].d_n);
      CHECK(table[i].p_n >= table[i - 1].p_n);
    }
  }

  const GrowthTable short_table(unit.generate(3));
  CHECK(error_code([&] { short_table.d(5); }) == "insufficient_horizon");
}

TEST_CASE("builder validation") {
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex("1", 1.0);
          b.add_vertex("2", 1.0);
          b.add_edge(0, 1, 1.0);
          b.add_edge(1, 0, 2.0);
        }) == "asymmetric_weight");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex("1", 1.0);
          b.add_vertex("2", 1.0);
          b.add_edge(0, 1, 1.0, 0.5);
          b.add_edge(1, 0, 1.0, 0.5);
        }) == "phase_not_antisymmetric");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex(1.0);
          b.add_vertex(1.0);
          b.add_edge(0, 1, 1.0, 3.5);
        }) == "phase_out_of_range");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex(1.0);
          b.add_edge(0, 0, 1.0);
        }) == "self_loop");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex(1.0);
          b.add_vertex(1.0);
          std::move(b).build();
        }) == "disconnected");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex(0.0);
        }) == "non_positive_measure");
  CHECK(error_code([] {
          MagneticGraph::Builder b(1.0);
          b.add_vertex(0.5);
          std::move(b).build();
        }) == "measure_below_floor");
  // The single vertex without edges is a valid graph.
  MagneticGraph::Builder b(1.0);
  b.add_vertex(1.0);
  CHECK(std::move(b).build().vertex_count() == 1);
}

TEST_CASE("phase canonicalization") {
  CHECK(canonical_angle(-std::numbers::pi) == std::numbers::pi);
  CHECK(canonical_angle(0.25) == 0.25);
  CHECK(error_code([] { canonical_angle(4.0); }) == "phase_out_of_range");
}

TEST_CASE("graph documents round-trip") {
  const Json doc = {
      {"root", "a"},
      {"mu_floor", 0.5},
      {"vertices", {{{"id", "a"}, {"mu", 1.0}}, {{"id", "b"}, {"mu", 2.0}}, {{"id", "c"}, {"mu", 0.5}, {"complete", false}}}},
      {"edges", {{{"u", "a"}, {"v", "b"}, {"b", 1.5}, {"theta", 0.25}}, {{"u", "b"}, {"v", "c"}, {"b", 3.0}, {"theta", -1.0}}}},
  };
  const auto g = load_graph(doc);
  CHECK(g.vertex_count() == 3);
  CHECK_FALSE(g.is_complete(g.index_of("c")));
  CHECK(g.is_complete(g.index_of("a")));
  const Json saved = save_graph(g);
  CHECK(saved == doc);
  CHECK(save_graph(load_graph(saved)) == saved);

  // The reverse orientation carries the opposite phase.
  const auto b = g.index_of("b");
  for (const auto& nb : g.neighbors(b)) {
    if (nb.vertex == g.index_of("a")) CHECK(nb.angle == -0.25);
  }

  Json asym = doc;
  asym["edges"].push_back({{"u", "b"}, {"v", "a"}, {"b", 2.0}, {"theta", -0.25}});
  CHECK(error_code([&] { load_graph(asym); }) == "asymmetric_weight");
  Json split = doc;
  split["edges"].erase(1);
  CHECK(error_code([&] { load_graph(split); }) == "disconnected");
  Json minus_pi = doc;
  minus_pi["edges"][0]["theta"] = -std::numbers::pi;
  CHECK(save_graph(load_graph(minus_pi))["edges"][0]["theta"] == std::numbers::pi);
  CHECK(error_code([] { load_graph_text("{not json"); }) != "");
  CHECK(error_code([] { load_graph(Json{{"root", "a"}}); }) == "schema");
}

TEST_CASE("family documents") {
  const auto spec = load_family_spec(Json{{"builder", "radial_tree"}, {"kappa", 0.5}, {"potential_exponent", 0.8}});
  CHECK(spec.kind == FamilyKind::radial_tree);
  CHECK(spec.kappa == 0.5);
  CHECK(spec.potential_exponent == 0.8);
  CHECK(load_family_spec(save_family_spec(spec)).kappa == 0.5);
  CHECK(error_code([] { load_family_spec(Json{{"builder", "torus"}}); }) != "");
}
