#include "magbilap/cutoff.hpp"

#include <algorithm>
#include <cmath>

namespace magbilap {

double cutoff_value(int n, int radius) {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "cut-off index must be >= 1");
  // Numerator clamped in integers, so chi_n is a single rounded quotient.
  const int numerator = std::clamp(2 * n - radius, 0, n);
  return static_cast<double>(numerator) / static_cast<double>(n);
}

double CutoffFamily::chi(int n, VertexIndex x) const {
  if (x >= graph_->vertex_count()) {
    throw Error(ErrorKind::input, "unknown_vertex", "vertex index outside the host graph");
  }
  return cutoff_value(n, graph_->radius(x));
}

RealField CutoffFamily::field(int n) const {
  // The support B(x0, 2n - 1) must consist of complete vertices.
  for (VertexIndex x = 0; x < graph_->vertex_count(); ++x) {
    if (!graph_->is_complete(x) && graph_->radius(x) < 2 * n) {
      throw Error(ErrorKind::insufficient_horizon, "insufficient_horizon",
                  "chi_" + std::to_string(n) + " needs a ball of radius at least " + std::to_string(2 * n));
    }
  }
  RealField out(graph_->vertex_count());
  for (VertexIndex x = 0; x < graph_->vertex_count(); ++x) out[x] = cutoff_value(n, graph_->radius(x));
  return out;
}

RealField CutoffFamily::squared_field(int n) const {
  RealField out = field(n);
  for (auto& v : out) v *= v;
  return out;
}

RealField chi_as_amplitudes(const GraphFamily& f, int n, int horizon) {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "cut-off index must be >= 1");
  if (horizon < 2 * n) {
    throw Error(ErrorKind::insufficient_horizon, "insufficient_horizon",
                "chi_" + std::to_string(n) + " is supported in B(x0, " + std::to_string(2 * n) +
                    "); horizon " + std::to_string(horizon) + " is too small");
  }
  const MagneticGraph g = f.generate(horizon);
  return CutoffFamily(g).field(n);
}

nlohmann::json CutoffReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    list.push_back({{"property", v.property}, {"vertices", v.vertices}, {"values", v.values}});
  }
  return {{"n", n},
          {"violations", std::move(list)},
          {"checked_vertices", checked_vertices},
          {"checked_edges", checked_edges}};
}

CutoffReport check_cutoff_properties(const MagneticGraph& g, int n) {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "cut-off index must be >= 1");
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (g.radius(x) <= 2 * n && !g.is_complete(x)) {
      throw Error(ErrorKind::insufficient_horizon, "insufficient_horizon",
                  "cut-off checks at n = " + std::to_string(n) + " need horizon >= " +
                      std::to_string(2 * n + 1));
    }
  }
  const CutoffFamily chi(g);
  CutoffReport report;
  report.n = n;
  const auto flag = [&](const char* property, std::vector<VertexIndex> xs, std::vector<double> values) {
    CutoffViolation v{property, {}, std::move(values)};
    for (VertexIndex x : xs) v.vertices.push_back(g.id(x));
    report.violations.push_back(std::move(v));
  };

  const int reach = 2 * n + 1;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const int r = g.radius(x);
    if (r > reach) continue;
    ++report.checked_vertices;
    const double cx = chi.chi(n, x);
    if (!(cx >= 0.0 && cx <= 1.0)) flag("i", {x}, {cx});
    if (r <= n && cx != 1.0) flag("ii", {x}, {cx});
    if (r >= 2 * n && cx != 0.0) flag("iii", {x}, {cx});
    if (r == reach && cx != 0.0) flag("iv", {x}, {cx});
    for (int m = std::max(1, r); m <= reach; ++m) {
      if (chi.chi(m, x) != 1.0) {
        flag("v", {x}, {static_cast<double>(m), chi.chi(m, x)});
        break;
      }
    }
    for (const auto& nb : g.neighbors(x)) {
      const VertexIndex y = nb.vertex;
      if (g.radius(y) > reach) continue;
      if (x < y) ++report.checked_edges;
      const double cy = chi.chi(n, y);
      if (std::abs(cx - cy) > 1.0 / n + kCutoffSlack) flag("vi", {x, y}, {cx, cy});
      if (cx != 0.0) {
        if (cy / cx > 2.0 + kCutoffSlack) flag("vii", {x, y}, {cx, cy});
        if (cx + cy > 3.0 * cx + kCutoffSlack) flag("vii-sum", {x, y}, {cx, cy});
      }
    }
  }
  return report;
}

CutoffReport check_cutoff_properties(const GraphFamily& f, int n, std::uint64_t vertex_cap) {
  if (n < 1) throw Error(ErrorKind::input, "non_positive_n", "cut-off index must be >= 1");
  return check_cutoff_properties(f.generate(2 * n + 1, vertex_cap), n);
}

}  // namespace magbilap
