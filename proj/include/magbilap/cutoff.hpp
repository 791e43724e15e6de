#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "magbilap/family.hpp"
#include "magbilap/operators.hpp"

namespace magbilap {

// chi_n(x) = min(max((2n - r(x)) / n, 0), 1).
double cutoff_value(int n, int radius);

// Cut-off family over a generated ball; radii come from the graph's cached
// breadth-first layering.
class CutoffFamily {
 public:
  explicit CutoffFamily(const MagneticGraph& g) : graph_(&g) {}

  double chi(int n, VertexIndex x) const;
  // chi_n on every vertex of the host; requires the host to reach radius 2n.
  RealField field(int n) const;
  RealField squared_field(int n) const;

 private:
  const MagneticGraph* graph_;
};

// chi_n as a real field on generate(horizon); horizon must be at least 2n.
RealField chi_as_amplitudes(const GraphFamily& f, int n, int horizon);

struct CutoffViolation {
  std::string property;  // "i" ... "vii", or "vii-sum" for chi(x) + chi(y) <= 3 chi(x)
  std::vector<std::string> vertices;
  std::vector<double> values;
};

struct CutoffReport {
  int n = 0;
  std::vector<CutoffViolation> violations;
  std::size_t checked_vertices = 0;
  std::size_t checked_edges = 0;

  bool ok() const noexcept { return violations.empty(); }
  nlohmann::json to_json() const;
};

// Slack for comparisons of quotients such as (2n - r)/n that are rounded once.
inline constexpr double kCutoffSlack = 1e-12;

// Checks properties (i)-(vii) of chi_n on every vertex and edge of g within
// radius 2n + 1. Property (v) is finitized: chi_m(x) = 1 for every
// m in [max(1, r(x)), 2n + 1]. Every vertex of B(x0, 2n) must be complete.
CutoffReport check_cutoff_properties(const MagneticGraph& g, int n);
CutoffReport check_cutoff_properties(const GraphFamily& f, int n,
                                     std::uint64_t vertex_cap = kDefaultVertexCap);

}  // namespace magbilap
