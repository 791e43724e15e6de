#include "magbilap/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace magbilap {

const char* to_string(Boundary boundary) {
  return boundary == Boundary::dirichlet ? "dirichlet" : "interior_rows";
}

Boundary boundary_from_string(const std::string& name) {
  if (name == "dirichlet") return Boundary::dirichlet;
  if (name == "interior_rows") return Boundary::interior_rows;
  throw Error(ErrorKind::input, "unknown_boundary", "unknown boundary convention '" + name + "'");
}

std::vector<Complex> SparseOperator::multiply(const std::vector<Complex>& x) const {
  if (x.size() != cols) throw Error(ErrorKind::input, "size_mismatch", "matrix-vector size mismatch");
  std::vector<Complex> y(rows);
  for (const auto& e : entries) y[e.row] += e.value * x[e.col];
  return y;
}

DenseMatrix SparseOperator::to_dense() const {
  DenseMatrix d(rows, cols);
  for (const auto& e : entries) d(e.row, e.col) = e.value;
  return d;
}

DenseMatrix SparseOperator::to_weighted_dense() const {
  DenseMatrix d(rows, cols);
  for (const auto& e : entries) {
    d(e.row, e.col) = e.value * std::sqrt(row_measure[e.row] / col_measure[e.col]);
  }
  return d;
}

std::vector<std::pair<VertexIndex, Complex>> row_stencil(
    const MagneticGraph& g, const Potential& w, VertexIndex x,
    const std::function<bool(VertexIndex)>& in_support) {
  const auto margin = [&](VertexIndex v) {
    throw Error(ErrorKind::margin_violation, "margin_violation",
                "row of vertex '" + g.id(x) + "' needs the full neighbourhood of vertex '" + g.id(v) +
                    "', which the horizon cuts off");
  };
  if (!g.is_complete(x)) margin(x);

  std::map<VertexIndex, Complex> coeff;
  // Adds scale * (Delta_theta u)(v) to the row.
  const auto add_laplacian_row = [&](VertexIndex v, Complex scale) {
    const double inv_mu = 1.0 / g.measure(v);
    if (in_support(v)) {
      if (!g.is_complete(v)) margin(v);
      double total = 0.0;
      for (const auto& nb : g.neighbors(v)) total += nb.weight;
      coeff[v] += scale * total * inv_mu;
    }
    for (const auto& nb : g.neighbors(v)) {
      if (in_support(nb.vertex)) coeff[nb.vertex] -= scale * nb.weight * nb.phase * inv_mu;
    }
  };

  const double inv_mu = 1.0 / g.measure(x);
  double total = 0.0;
  for (const auto& nb : g.neighbors(x)) total += nb.weight;
  add_laplacian_row(x, total * inv_mu);
  for (const auto& nb : g.neighbors(x)) add_laplacian_row(nb.vertex, -nb.weight * nb.phase * inv_mu);
  if (in_support(x)) coeff[x] += w.values[x];

  std::vector<std::pair<VertexIndex, Complex>> out;
  // The diagonal is kept even when it vanishes, so callers can shift it.
  for (const auto& [col, value] : coeff) {
    if (value != Complex{} || col == x) out.emplace_back(col, value);
  }
  return out;
}

SparseOperator assemble_truncation(const GraphFamily& f, const RadialFunction& w, int horizon,
                                   Boundary boundary, Complex shift, std::uint64_t vertex_cap) {
  if (horizon < 4) throw Error(ErrorKind::input, "horizon_too_small", "truncations need N >= 4");
  const int generated = boundary == Boundary::dirichlet ? horizon + 1 : horizon;
  const MagneticGraph g = f.generate(generated, vertex_cap);
  const Potential pot = Potential::radial(g, w);
  const int row_radius = boundary == Boundary::dirichlet ? horizon : horizon - 2;

  // Breadth-first vertex order makes B(x0, r) an index prefix.
  std::size_t cols = 0, rows = 0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (g.radius(x) <= horizon) cols = x + 1;
    if (g.radius(x) <= row_radius) rows = x + 1;
  }
  const auto in_columns = [&](VertexIndex y) { return g.radius(y) <= horizon; };

  SparseOperator a;
  a.rows = rows;
  a.cols = cols;
  for (VertexIndex x = 0; x < rows; ++x) {
    for (const auto& [col, value] : row_stencil(g, pot, x, in_columns)) {
      const Complex v = col == x ? value + shift : value;
      if (v != Complex{}) a.entries.push_back({x, col, v});
    }
    a.row_ids.push_back(g.id(x));
    a.row_measure.push_back(g.measure(x));
  }
  for (VertexIndex y = 0; y < cols; ++y) {
    a.col_ids.push_back(g.id(y));
    a.col_measure.push_back(g.measure(y));
  }
  if (rows == cols) {
    std::map<std::pair<std::size_t, std::size_t>, Complex> lookup;
    for (const auto& e : a.entries) lookup[{e.row, e.col}] = e.value;
    // With a constant measure the compression is Hermitian as a plain matrix;
    // mirror the upper triangle so rounding in the two summation orders cannot
    // break that exactly.
    const bool uniform = std::all_of(a.row_measure.begin(), a.row_measure.end(),
                                     [&](double mu) { return mu == a.row_measure.front(); });
    if (uniform && shift.real() == 0.0 && shift.imag() == 0.0) {
      for (auto& e : a.entries) {
        if (e.row <= e.col) continue;
        if (auto it = lookup.find({e.col, e.row}); it != lookup.end()) e.value = std::conj(it->second);
      }
      for (const auto& e : a.entries) lookup[{e.row, e.col}] = e.value;
    }
    a.hermitian = std::all_of(a.entries.begin(), a.entries.end(), [&](const MatrixEntry& e) {
      auto it = lookup.find({e.col, e.row});
      return it != lookup.end() && it->second == std::conj(e.value);
    });
  }
  return a;
}

void write_matrix_market(std::ostream& out, const SparseOperator& a, const std::string& comment) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  if (!comment.empty()) out << "% " << comment << "\n";
  out << a.rows << " " << a.cols << " " << a.entries.size() << "\n";
  char buffer[96];
  for (const auto& e : a.entries) {
    std::snprintf(buffer, sizeof buffer, "%zu %zu %.17g %.17g\n", e.row + 1, e.col + 1, e.value.real(),
                  e.value.imag());
    out << buffer;
  }
}

nlohmann::json matrix_sidecar(const SparseOperator& a) {
  return {{"rows", a.row_ids},
          {"columns", a.col_ids},
          {"row_measure", a.row_measure},
          {"column_measure", a.col_measure},
          {"hermitian", a.hermitian},
          {"index_base", 1}};
}

}  // namespace magbilap
