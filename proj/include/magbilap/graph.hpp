#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "magbilap/errors.hpp"

namespace magbilap {

using VertexIndex = std::uint32_t;
using Complex = std::complex<double>;

// One oriented half of an undirected edge, as seen from its source vertex.
struct Neighbor {
  VertexIndex vertex;
  double weight;   // b(x, y) > 0
  double angle;    // theta(x, y) in (-pi, pi]
  Complex phase;   // exp(i * theta(x, y)), cached
};

// An undirected edge in the orientation it was supplied in.
struct EdgeRecord {
  VertexIndex u;
  VertexIndex v;
  double weight;
  double angle;  // theta(u, v)
};

// Finite, connected, locally finite weighted graph with a magnetic phase and a
// distinguished root. A vertex is "complete" when every neighbour it has in the
// underlying (possibly infinite) graph is present; vertices on the outer shell
// of a generated ball are incomplete. Immutable once built.
class MagneticGraph {
 public:
  class Builder;

  std::size_t vertex_count() const noexcept { return measure_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  VertexIndex root() const noexcept { return root_; }
  double mu_floor() const noexcept { return mu_floor_; }
  double measure(VertexIndex x) const { return measure_[x]; }
  std::span<const double> measures() const noexcept { return measure_; }

  std::span<const Neighbor> neighbors(VertexIndex x) const {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::size_t degree(VertexIndex x) const { return offsets_[x + 1] - offsets_[x]; }

  bool is_complete(VertexIndex x) const { return complete_[x] != 0; }
  // Combinatorial distance from the root.
  int radius(VertexIndex x) const { return radius_[x]; }
  int max_radius() const noexcept { return max_radius_; }

  const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }

  std::string id(VertexIndex x) const;
  std::optional<VertexIndex> find(std::string_view id) const;
  // Throws ErrorKind::input for an unknown id.
  VertexIndex index_of(std::string_view id) const;
  bool has_explicit_ids() const noexcept { return !ids_.empty(); }

 private:
  MagneticGraph() = default;

  VertexIndex root_ = 0;
  double mu_floor_ = 1.0;
  std::vector<double> measure_;
  std::vector<std::uint8_t> complete_;
  std::vector<int> radius_;
  int max_radius_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<EdgeRecord> edges_;
  // Empty when vertices are named by their decimal index.
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> id_lookup_;
};

// Collects vertices and edges, validates every structural invariant and
// produces an immutable graph. Phases equal to -pi are stored as pi.
class MagneticGraph::Builder {
 public:
  explicit Builder(double mu_floor) : mu_floor_(mu_floor) {}

  VertexIndex add_vertex(double mu, bool complete = true);
  VertexIndex add_vertex(std::string id, double mu, bool complete = true);
  // Adds the undirected edge {u, v} with theta(u, v) = angle. Supplying the
  // reverse orientation of an existing edge is accepted only if it agrees.
  void add_edge(VertexIndex u, VertexIndex v, double weight, double angle = 0.0);
  void set_root(VertexIndex root) { root_ = root; }

  MagneticGraph build() &&;

 private:
  double mu_floor_;
  VertexIndex root_ = 0;
  bool named_ = false;
  std::vector<double> measure_;
  std::vector<std::uint8_t> complete_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> id_lookup_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::uint64_t, std::size_t> edge_slot_;
};

// Returns theta with -pi mapped to pi; throws for |theta| > pi.
double canonical_angle(double theta);

// Shortest-path length between x and y (breadth-first search).
int distance(const MagneticGraph& g, VertexIndex x, VertexIndex y);

struct Ball {
  int n = 0;
  std::vector<VertexIndex> vertices;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges;  // u < v
};

Ball ball(const MagneticGraph& g, int n);

// The induced graph on B(root, n), with completeness recomputed: a vertex stays
// complete only if it was complete in g and none of its neighbours was cut off.
MagneticGraph induced_ball(const MagneticGraph& g, int n);

}  // namespace magbilap
