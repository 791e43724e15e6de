#include "magbilap/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numbers>

namespace magbilap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::validation: return "validation";
    case ErrorKind::margin_violation: return "margin_violation";
    case ErrorKind::insufficient_horizon: return "insufficient_horizon";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::structural: return "structural";
  }
  return "unknown";
}

double canonical_angle(double theta) {
  if (!std::isfinite(theta) || std::abs(theta) > std::numbers::pi) {
    throw Error(ErrorKind::validation, "phase_out_of_range",
                "phase " + std::to_string(theta) + " lies outside [-pi, pi]");
  }
  return theta == -std::numbers::pi ? std::numbers::pi : theta;
}

namespace {

std::uint64_t pair_key(VertexIndex a, VertexIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// theta(y, x) for a stored theta(x, y), respecting the pi == -pi identification.
double reversed_angle(double angle) {
  return angle == std::numbers::pi ? std::numbers::pi : -angle;
}

}  // namespace

VertexIndex MagneticGraph::Builder::add_vertex(double mu, bool complete) {
  if (named_) {
    throw Error(ErrorKind::input, "mixed_naming", "cannot mix named and unnamed vertices");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorKind::validation, "non_positive_measure",
                "vertex measure must be positive, got " + std::to_string(mu));
  }
  measure_.push_back(mu);
  complete_.push_back(complete ? 1 : 0);
  return static_cast<VertexIndex>(measure_.size() - 1);
}

VertexIndex MagneticGraph::Builder::add_vertex(std::string id, double mu, bool complete) {
  if (!named_ && !measure_.empty()) {
    throw Error(ErrorKind::input, "mixed_naming", "cannot mix named and unnamed vertices");
  }
  named_ = true;
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorKind::validation, "non_positive_measure",
                "vertex '" + id + "' has non-positive measure " + std::to_string(mu));
  }
  const auto index = static_cast<VertexIndex>(measure_.size());
  if (!id_lookup_.emplace(id, index).second) {
    throw Error(ErrorKind::validation, "duplicate_vertex", "vertex '" + id + "' declared twice");
  }
  measure_.push_back(mu);
  complete_.push_back(complete ? 1 : 0);
  ids_.push_back(std::move(id));
  return index;
}

void MagneticGraph::Builder::add_edge(VertexIndex u, VertexIndex v, double weight, double angle) {
  const auto n = measure_.size();
  if (u >= n || v >= n) {
    throw Error(ErrorKind::validation, "unknown_vertex", "edge refers to an undeclared vertex");
  }
  if (u == v) {
    throw Error(ErrorKind::validation, "self_loop", "self-loops are not allowed (b(x,x) = 0)");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorKind::validation, "non_positive_weight",
                "edge weight must be positive, got " + std::to_string(weight));
  }
  angle = canonical_angle(angle);
  if (!named_) {
    // Index-built graphs come from generators; repeated pairs are caught in build().
    edges_.push_back({u, v, weight, angle});
    return;
  }
  const auto key = pair_key(u, v);
  if (auto it = edge_slot_.find(key); it != edge_slot_.end()) {
    const EdgeRecord& existing = edges_[it->second];
    if (existing.u == u) {
      throw Error(ErrorKind::validation, "duplicate_edge", "edge supplied twice in the same orientation");
    }
    if (existing.weight != weight) {
      throw Error(ErrorKind::validation, "asymmetric_weight",
                  "asymmetric weight: b(x,y) = " + std::to_string(existing.weight) +
                      " but b(y,x) = " + std::to_string(weight));
    }
    if (reversed_angle(existing.angle) != angle) {
      throw Error(ErrorKind::validation, "phase_not_antisymmetric",
                  "theta(y,x) must equal -theta(x,y)");
    }
    return;
  }
  edge_slot_.emplace(key, edges_.size());
  edges_.push_back({u, v, weight, angle});
}

MagneticGraph MagneticGraph::Builder::build() && {
  const std::size_t n = measure_.size();
  if (n == 0) throw Error(ErrorKind::validation, "empty_graph", "graph has no vertices");
  if (!(mu_floor_ > 0.0)) {
    throw Error(ErrorKind::validation, "non_positive_floor", "mu_floor must be positive");
  }
  if (root_ >= n) throw Error(ErrorKind::validation, "unknown_root", "root is not a vertex");
  for (std::size_t x = 0; x < n; ++x) {
    if (measure_[x] < mu_floor_) {
      throw Error(ErrorKind::validation, "measure_below_floor",
                  "vertex measure " + std::to_string(measure_[x]) + " is below mu_floor " +
                      std::to_string(mu_floor_));
    }
  }

  MagneticGraph g;
  g.root_ = root_;
  g.mu_floor_ = mu_floor_;
  g.measure_ = std::move(measure_);
  g.complete_ = std::move(complete_);
  g.ids_ = std::move(ids_);
  g.id_lookup_ = std::move(id_lookup_);
  g.edges_ = std::move(edges_);

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) g.offsets_[x + 1] = g.offsets_[x] + degree[x];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    const double back = reversed_angle(e.angle);
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight, e.angle, std::polar(1.0, e.angle)};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight, back, std::polar(1.0, back)};
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x]);
    const auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    if (std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
          return a.vertex == b.vertex;
        }) != last) {
      throw Error(ErrorKind::validation, "duplicate_edge", "edge supplied twice");
    }
  }

  g.radius_.assign(n, -1);
  std::deque<VertexIndex> queue{g.root_};
  g.radius_[g.root_] = 0;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(x)) {
      if (g.radius_[nb.vertex] < 0) {
        g.radius_[nb.vertex] = g.radius_[x] + 1;
        g.max_radius_ = std::max(g.max_radius_, g.radius_[nb.vertex]);
        ++reached;
        queue.push_back(nb.vertex);
      }
    }
  }
  if (reached != n) {
    throw Error(ErrorKind::validation, "disconnected",
                "graph is disconnected: " + std::to_string(n - reached) +
                    " vertices unreachable from the root");
  }
  return g;
}

std::string MagneticGraph::id(VertexIndex x) const {
  return ids_.empty() ? std::to_string(x) : ids_[x];
}

std::optional<VertexIndex> MagneticGraph::find(std::string_view id) const {
  if (ids_.empty()) {
    VertexIndex value = 0;
    const auto* end = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(id.data(), end, value);
    if (ec != std::errc{} || ptr != end || id.empty() || value >= vertex_count()) return std::nullopt;
    if (std::to_string(value) != id) return std::nullopt;  // reject "007"
    return value;
  }
  if (auto it = id_lookup_.find(std::string(id)); it != id_lookup_.end()) return it->second;
  return std::nullopt;
}

VertexIndex MagneticGraph::index_of(std::string_view id) const {
  if (auto x = find(id)) return *x;
  throw Error(ErrorKind::input, "unknown_vertex", "unknown vertex id '" + std::string(id) + "'");
}

int distance(const MagneticGraph& g, VertexIndex x, VertexIndex y) {
  const auto n = g.vertex_count();
  if (x >= n || y >= n) throw Error(ErrorKind::input, "unknown_vertex", "vertex index out of range");
  if (x == y) return 0;
  std::vector<int> dist(n, -1);
  std::deque<VertexIndex> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const VertexIndex a = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(a)) {
      if (dist[nb.vertex] >= 0) continue;
      dist[nb.vertex] = dist[a] + 1;
      if (nb.vertex == y) return dist[y];
      queue.push_back(nb.vertex);
    }
  }
  throw Error(ErrorKind::validation, "disconnected", "vertices are not connected");
}

Ball ball(const MagneticGraph& g, int n) {
  if (n < 0) throw Error(ErrorKind::input, "negative_radius", "ball radius must be non-negative");
  Ball b;
  b.n = n;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (g.radius(x) <= n) b.vertices.push_back(x);
  }
  for (const auto& e : g.edges()) {
    if (g.radius(e.u) <= n && g.radius(e.v) <= n) {
      b.edges.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
  }
  std::sort(b.edges.begin(), b.edges.end());
  return b;
}

MagneticGraph induced_ball(const MagneticGraph& g, int n) {
  const Ball b = ball(g, n);
  std::vector<VertexIndex> remap(g.vertex_count(), static_cast<VertexIndex>(-1));
  bool prefix = true;
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    remap[b.vertices[i]] = static_cast<VertexIndex>(i);
    prefix = prefix && b.vertices[i] == i;
  }
  const bool keep_implicit = !g.has_explicit_ids() && prefix;

  MagneticGraph::Builder builder(g.mu_floor());
  for (VertexIndex x : b.vertices) {
    bool complete = g.is_complete(x);
    for (const auto& nb : g.neighbors(x)) complete = complete && g.radius(nb.vertex) <= n;
    if (keep_implicit) {
      builder.add_vertex(g.measure(x), complete);
    } else {
      builder.add_vertex(g.id(x), g.measure(x), complete);
    }
  }
  for (const auto& e : g.edges()) {
    if (g.radius(e.u) <= n && g.radius(e.v) <= n) {
      builder.add_edge(remap[e.u], remap[e.v], e.weight, e.angle);
    }
  }
  builder.set_root(remap[g.root()]);
  return std::move(builder).build();
}

}  // namespace magbilap
