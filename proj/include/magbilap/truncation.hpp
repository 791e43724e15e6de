#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "magbilap/dense.hpp"
#include "magbilap/family.hpp"
#include "magbilap/operators.hpp"

namespace magbilap {

enum class Boundary {
  dirichlet,     // square compression of H to B(x0, N), u = 0 outside
  interior_rows  // rows B(x0, N-2), columns B(x0, N): exact full-graph equations
};

const char* to_string(Boundary boundary);
Boundary boundary_from_string(const std::string& name);

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

// Coordinate-form operator on a truncation. Rows and columns are labelled by
// vertex ids and carry the vertex measures, so the l2_mu operator can be
// recovered by diagonal scaling.
struct SparseOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<MatrixEntry> entries;  // row-major, no duplicates
  bool hermitian = false;            // A(x, y) == conj(A(y, x)) exactly as stored
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  std::vector<double> row_measure;
  std::vector<double> col_measure;

  std::vector<Complex> multiply(const std::vector<Complex>& x) const;
  DenseMatrix to_dense() const;
  // D_row^{1/2} A D_col^{-1/2}: singular values of this matrix are the l2_mu ones.
  DenseMatrix to_weighted_dense() const;
};

// Coefficients c_y with (H u)(x) = sum_y c_y u(y) for every u supported in
// {y : in_support(y)}; the diagonal entry is present even when it vanishes.
// Raises a margin violation when the row needs the full degree of a vertex the
// horizon cut off.
std::vector<std::pair<VertexIndex, Complex>> row_stencil(
    const MagneticGraph& g, const Potential& w, VertexIndex x,
    const std::function<bool(VertexIndex)>& in_support);

// Realizes H + shift on B(x0, N). Requires N >= 4.
SparseOperator assemble_truncation(const GraphFamily& f, const RadialFunction& w, int horizon,
                                   Boundary boundary, Complex shift = 0.0,
                                   std::uint64_t vertex_cap = kDefaultVertexCap);

// %%MatrixMarket matrix coordinate complex general, 1-based indices.
void write_matrix_market(std::ostream& out, const SparseOperator& a, const std::string& comment = {});
nlohmann::json matrix_sidecar(const SparseOperator& a);

}  // namespace magbilap
