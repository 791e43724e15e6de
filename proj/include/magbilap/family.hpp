#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "magbilap/graph.hpp"

namespace magbilap {

inline constexpr std::uint64_t kDefaultVertexCap = std::uint64_t{1} << 21;

enum class FamilyKind { half_line_unit, half_line_sqrt, radial_tree };

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::half_line_unit;
  double kappa = 0.0;                       // radial_tree branching exponent
  std::optional<double> potential_exponent;  // radial_tree: W = -n^alpha on S_n
};

// A real function of the combinatorial radius r(x) = d(x0, x).
struct RadialFunction {
  std::string description;
  std::function<double(int)> at;
};

// Closed forms for the ball-wise maxima of a family, plus the power law
// d_n p_n ~ coefficient * n^exponent used for exact boundedness verdicts.
struct GrowthModel {
  std::string degree_formula;
  std::string weight_formula;
  std::function<int(int)> degree;
  std::function<double(int)> max_weight;
  double exponent = 0.0;
  double coefficient = 0.0;
};

// A lazily generated infinite rooted graph. generate(N) returns the induced
// graph on B(x0, N) with vertices in breadth-first order, so generate(N) is a
// prefix of generate(M) for N <= M. Vertices on the sphere of radius N are
// marked incomplete.
class GraphFamily {
 public:
  using Generator = std::function<MagneticGraph(int)>;
  using SizeFunction = std::function<std::uint64_t(int)>;

  GraphFamily(std::string name, FamilySpec spec, double mu_floor, bool path, Generator generator,
              SizeFunction ball_size, std::optional<GrowthModel> growth,
              std::optional<RadialFunction> potential);

  const std::string& name() const noexcept { return name_; }
  const FamilySpec& spec() const noexcept { return spec_; }
  double mu_floor() const noexcept { return mu_floor_; }
  // Every vertex k is adjacent to k - 1 and k + 1 only.
  bool is_path() const noexcept { return path_; }

  // Vertex count of B(x0, horizon), saturating at UINT64_MAX.
  std::uint64_t ball_size(int horizon) const { return ball_size_(horizon); }
  // Largest horizon whose ball fits under the cap.
  int max_horizon(std::uint64_t vertex_cap = kDefaultVertexCap) const;
  // Throws ErrorKind::capacity when the ball would exceed vertex_cap.
  MagneticGraph generate(int horizon, std::uint64_t vertex_cap = kDefaultVertexCap) const;

  const std::optional<GrowthModel>& growth_model() const noexcept { return growth_; }
  const std::optional<RadialFunction>& potential_model() const noexcept { return potential_; }

 private:
  std::string name_;
  FamilySpec spec_;
  double mu_floor_;
  bool path_;
  Generator generator_;
  SizeFunction ball_size_;
  std::optional<GrowthModel> growth_;
  std::optional<RadialFunction> potential_;
};

// The three reference families: unit half-line (W(k) = -k), half-line with
// b(k, k+1) = sqrt(k+1) (W(k) = -sqrt(k)), and the radial tree in which every
// vertex of S_n has floor(n^kappa) + 1 children (W = -n^alpha on S_n).
GraphFamily build_example(const FamilySpec& spec);

// floor(n^kappa) with 0^0 = 1, robust to pow() landing just below an integer.
long long floor_power(int n, double kappa);

struct GrowthStats {
  int n = 0;
  int d_n = 0;        // max degree over B(x0, n)
  double p_n = 0.0;   // max edge weight leaving any vertex of B(x0, n)
  double beta_n = 0;  // d_{2n} p_{2n} / (mu0 n)
};

// Prefix maxima of degree and edge weight by radius, read off a generated
// ball. d_n and p_n are available only while B(x0, n) consists of complete
// vertices; asking beyond that is an insufficient-horizon error.
class GrowthTable {
 public:
  explicit GrowthTable(const MagneticGraph& g);

  int max_n() const noexcept { return max_n_; }
  int d(int n) const;
  double p(int n) const;
  double beta(int n) const;
  GrowthStats stats(int n) const;

 private:
  void require(int n) const;

  double mu_floor_;
  int max_n_;
  std::vector<int> degree_prefix_;
  std::vector<double> weight_prefix_;
};

// Generates horizon 2n + 1 and returns d_n, p_n and beta_n.
GrowthStats growth_stats(const GraphFamily& f, int n, std::uint64_t vertex_cap = kDefaultVertexCap);
std::vector<GrowthStats> growth_stats_table(const GraphFamily& f, int n_max,
                                            std::uint64_t vertex_cap = kDefaultVertexCap);

}  // namespace magbilap
