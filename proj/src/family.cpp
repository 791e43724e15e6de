#include "magbilap/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace magbilap {

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::half_line_unit: return "half_line_unit";
    case FamilyKind::half_line_sqrt: return "half_line_sqrt";
    case FamilyKind::radial_tree: return "radial_tree";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "half_line_unit") return FamilyKind::half_line_unit;
  if (name == "half_line_sqrt") return FamilyKind::half_line_sqrt;
  if (name == "radial_tree") return FamilyKind::radial_tree;
  throw Error(ErrorKind::input, "unknown_builder", "unknown family builder '" + name + "'");
}

long long floor_power(int n, double kappa) {
  if (n == 0) return kappa == 0.0 ? 1 : 0;
  const double v = std::pow(static_cast<double>(n), kappa);
  // pow may return k - ulp for an exact integer power k.
  return static_cast<long long>(std::floor(v * (1.0 + 4 * std::numeric_limits<double>::epsilon())));
}

GraphFamily::GraphFamily(std::string name, FamilySpec spec, double mu_floor, bool path,
                         Generator generator, SizeFunction ball_size,
                         std::optional<GrowthModel> growth, std::optional<RadialFunction> potential)
    : name_(std::move(name)),
      spec_(spec),
      mu_floor_(mu_floor),
      path_(path),
      generator_(std::move(generator)),
      ball_size_(std::move(ball_size)),
      growth_(std::move(growth)),
      potential_(std::move(potential)) {}

int GraphFamily::max_horizon(std::uint64_t vertex_cap) const {
  int h = 0;
  while (h < 1'000'000 && ball_size(h + 1) <= vertex_cap) ++h;
  return h;
}

MagneticGraph GraphFamily::generate(int horizon, std::uint64_t vertex_cap) const {
  if (horizon < 0) throw Error(ErrorKind::input, "negative_horizon", "horizon must be non-negative");
  const auto size = ball_size(horizon);
  if (size > vertex_cap) {
    throw Error(ErrorKind::capacity, "vertex_cap_exceeded",
                name_ + ": ball of radius " + std::to_string(horizon) + " has " +
                    (size == std::numeric_limits<std::uint64_t>::max() ? std::string("too many")
                                                                        : std::to_string(size)) +
                    " vertices, above the cap of " + std::to_string(vertex_cap));
  }
  return generator_(horizon);
}

namespace {

MagneticGraph half_line(int horizon, const std::function<double(int)>& weight) {
  MagneticGraph::Builder builder(1.0);
  for (int k = 0; k <= horizon; ++k) builder.add_vertex(1.0, k < horizon);
  for (int k = 0; k < horizon; ++k) {
    builder.add_edge(static_cast<VertexIndex>(k), static_cast<VertexIndex>(k + 1), weight(k));
  }
  return std::move(builder).build();
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

std::uint64_t tree_ball_size(double kappa, int horizon) {
  std::uint64_t level = 1;
  std::uint64_t total = 1;
  for (int m = 0; m < horizon; ++m) {
    level = saturating_mul(level, static_cast<std::uint64_t>(floor_power(m, kappa) + 1));
    total = saturating_add(total, level);
  }
  return total;
}

MagneticGraph radial_tree(double kappa, int horizon) {
  MagneticGraph::Builder builder(1.0);
  builder.add_vertex(1.0, horizon > 0);
  VertexIndex level_begin = 0;
  VertexIndex level_end = 1;
  for (int m = 0; m < horizon; ++m) {
    const auto children = static_cast<VertexIndex>(floor_power(m, kappa) + 1);
    VertexIndex next = level_end;
    for (VertexIndex parent = level_begin; parent < level_end; ++parent) {
      for (VertexIndex c = 0; c < children; ++c) {
        builder.add_vertex(1.0, m + 1 < horizon);
        builder.add_edge(parent, next++, 1.0);
      }
    }
    level_begin = level_end;
    level_end = next;
  }
  return std::move(builder).build();
}

}  // namespace

GraphFamily build_example(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::half_line_unit: {
      GrowthModel growth{"d_n = 2", "p_n = 1", [](int) { return 2; }, [](int) { return 1.0; }, 0.0,
                         2.0};
      RadialFunction w{"W(k) = -k", [](int r) { return -static_cast<double>(r); }};
      return GraphFamily(
          "half_line_unit", spec, 1.0, true,
          [](int h) { return half_line(h, [](int) { return 1.0; }); },
          [](int h) { return static_cast<std::uint64_t>(h) + 1; }, growth, w);
    }
    case FamilyKind::half_line_sqrt: {
      GrowthModel growth{"d_n = 2", "p_n = sqrt(n+1)", [](int) { return 2; },
                         [](int n) { return std::sqrt(n + 1.0); }, 0.5, 2.0};
      RadialFunction w{"W(k) = -sqrt(k)", [](int r) { return -std::sqrt(static_cast<double>(r)); }};
      return GraphFamily(
          "half_line_sqrt", spec, 1.0, true,
          [](int h) { return half_line(h, [](int k) { return std::sqrt(k + 1.0); }); },
          [](int h) { return static_cast<std::uint64_t>(h) + 1; }, growth, w);
    }
    case FamilyKind::radial_tree: {
      const double kappa = spec.kappa;
      if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw Error(ErrorKind::input, "negative_kappa", "radial tree requires kappa >= 0");
      }
      const double alpha = spec.potential_exponent.value_or(std::clamp(1.0 - kappa, 0.0, 1.0));
      FamilySpec resolved = spec;
      resolved.potential_exponent = alpha;
      GrowthModel growth{"d_n = floor(n^kappa) + 2", "p_n = 1",
                         [kappa](int n) { return static_cast<int>(floor_power(n, kappa)) + 2; },
                         [](int) { return 1.0; }, kappa, kappa == 0.0 ? 3.0 : 1.0};
      RadialFunction w{"W = -n^alpha on S_n",
                       [alpha](int r) { return -std::pow(static_cast<double>(r), alpha); }};
      return GraphFamily(
          "radial_tree", resolved, 1.0, false, [kappa](int h) { return radial_tree(kappa, h); },
          [kappa](int h) { return tree_ball_size(kappa, h); }, growth, w);
    }
  }
  throw Error(ErrorKind::input, "unknown_builder", "unknown family builder");
}

GrowthTable::GrowthTable(const MagneticGraph& g) : mu_floor_(g.mu_floor()) {
  const int rmax = g.max_radius();
  std::vector<int> degree_at(rmax + 1, 0);
  std::vector<double> weight_at(rmax + 1, 0.0);
  // First radius holding an incomplete vertex; d_n and p_n are exact below it.
  int first_incomplete = std::numeric_limits<int>::max();
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const int r = g.radius(x);
    if (!g.is_complete(x)) first_incomplete = std::min(first_incomplete, r);
    degree_at[r] = std::max(degree_at[r], static_cast<int>(g.degree(x)));
    for (const auto& nb : g.neighbors(x)) weight_at[r] = std::max(weight_at[r], nb.weight);
  }
  max_n_ = first_incomplete == std::numeric_limits<int>::max() ? rmax : first_incomplete - 1;
  degree_prefix_.resize(rmax + 1);
  weight_prefix_.resize(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    degree_prefix_[r] = std::max(degree_at[r], r > 0 ? degree_prefix_[r - 1] : 0);
    weight_prefix_[r] = std::max(weight_at[r], r > 0 ? weight_prefix_[r - 1] : 0.0);
  }
}

void GrowthTable::require(int n) const {
  if (n < 0) throw Error(ErrorKind::input, "negative_radius", "n must be non-negative");
  if (n > max_n_) {
    throw Error(ErrorKind::insufficient_horizon, "insufficient_horizon",
                "growth statistics at n = " + std::to_string(n) +
                    " need complete vertices up to that radius; the ball supports n <= " +
                    std::to_string(max_n_));
  }
}

int GrowthTable::d(int n) const {
  require(n);
  return degree_prefix_[std::min<std::size_t>(n, degree_prefix_.size() - 1)];
}

double GrowthTable::p(int n) const {
  require(n);
  return weight_prefix_[std::min<std::size_t>(n, weight_prefix_.size() - 1)];
}

double GrowthTable::beta(int n) const {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "beta_n needs n >= 1");
  return d(2 * n) * p(2 * n) / (mu_floor_ * n);
}

GrowthStats GrowthTable::stats(int n) const { return {n, d(n), p(n), beta(n)}; }

GrowthStats growth_stats(const GraphFamily& f, int n, std::uint64_t vertex_cap) {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "growth statistics need n >= 1");
  return GrowthTable(f.generate(2 * n + 1, vertex_cap)).stats(n);
}

std::vector<GrowthStats> growth_stats_table(const GraphFamily& f, int n_max, std::uint64_t vertex_cap) {
  if (n_max < 1) throw Error(ErrorKind::input, "non_positive_n", "n_max must be >= 1");
  const GrowthTable table(f.generate(2 * n_max + 1, vertex_cap));
  std::vector<GrowthStats> rows;
  for (int n = 1; n <= n_max; ++n) rows.push_back(table.stats(n));
  return rows;
}

}  // namespace magbilap
