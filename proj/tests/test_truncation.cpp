#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "magbilap/dense.hpp"
#include "magbilap/theorem.hpp"
#include "magbilap/truncation.hpp"

using namespace magbilap;

namespace {

const RadialFunction zero_w{"0", [](int) { return 0.0; }};
const RadialFunction minus_k{"-k", [](int k) { return -static_cast<double>(k); }};

double smallest(const std::vector<double>& s) { return s.back(); }

}  // namespace

TEST_CASE("Dirichlet truncation of the bi-Laplacian on a path") {
  const auto f = build_example({});
  const auto a = assemble_truncation(f, zero_w, 4, Boundary::dirichlet);
  REQUIRE(a.rows == 5);
  REQUIRE(a.cols == 5);
  CHECK(a.hermitian);
  // Hand assembly: row 0 of Delta^2 on the half-line is (2, -3, 1), row 1 is
  // (-3, 6, -4, 1), interior rows are (1, -4, 6, -4, 1).
  const double expected[5][5] = {{2, -3, 1, 0, 0},
                                 {-3, 6, -4, 1, 0},
                                 {1, -4, 6, -4, 1},
                                 {0, 1, -4, 6, -4},
                                 {0, 0, 1, -4, 6}};
  const auto d = a.to_dense();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(d(i, j) == Complex(expected[i][j]));
}

TEST_CASE("truncations are Hermitian and agree with apply_H") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  for (auto spec : {FamilySpec{FamilyKind::half_line_unit, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::half_line_sqrt, 0.0, std::nullopt},
                    FamilySpec{FamilyKind::radial_tree, 0.5, std::nullopt}}) {
    const auto f = build_example(spec);
    const int horizon = 7;
    const auto w = *f.potential_model();
    const auto a = assemble_truncation(f, w, horizon, Boundary::dirichlet);
    CHECK(a.hermitian);
    const auto dense = a.to_dense();
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) CHECK(dense(i, j) == std::conj(dense(j, i)));

    const auto g = f.generate(horizon + 1);
    const auto pot = Potential::radial(g, w);
    std::vector<Complex> x(a.cols);
    Amplitudes u(g.vertex_count());
    for (VertexIndex v = 0; v < a.cols; ++v) {
      if (g.radius(v) <= horizon - 2) u[v] = x[v] = {u01(rng), u01(rng)};
    }
    const auto y = a.multiply(x);
    const auto hu = apply_H(g, pot, u);
    for (VertexIndex v = 0; v < a.rows; ++v) CHECK(std::abs(y[v] - hu[v]) <= 1e-12 * (1.0 + std::abs(hu[v])));

    // Interior rows equal the full-graph equations for any u on B(x0, N).
    const auto r = assemble_truncation(f, w, horizon, Boundary::interior_rows);
    CHECK(r.cols == a.cols);
    CHECK(r.rows == f.ball_size(horizon - 2));
    // H of u on B(x0, N) needs the sphere N + 2 in the host.
    const auto wide = f.generate(horizon + 2);
    const auto wide_pot = Potential::radial(wide, w);
    Amplitudes full(wide.vertex_count());
    std::vector<Complex> xf(r.cols);
    for (VertexIndex v = 0; v < r.cols; ++v) full[v] = xf[v] = {u01(rng), u01(rng)};
    const auto yr = r.multiply(xf);
    const auto hf = apply_H(wide, wide_pot, full);
    for (VertexIndex v = 0; v < r.rows; ++v) CHECK(std::abs(yr[v] - hf[v]) <= 1e-12 * (1.0 + std::abs(hf[v])));
  }
  CHECK_THROWS_AS(assemble_truncation(build_example({}), zero_w, 3, Boundary::dirichlet), Error);
}

TEST_CASE("a shift lands on every diagonal entry, including vanishing ones") {
  // H(6, 6) = 6 - 6 = 0 on the unit half-line with W(k) = -k.
  const auto f = build_example({});
  const Complex shift{0.0, -2.0};
  for (auto boundary : {Boundary::dirichlet, Boundary::interior_rows}) {
    const auto plain = assemble_truncation(f, minus_k, 12, boundary).to_dense();
    const auto shifted = assemble_truncation(f, minus_k, 12, boundary, shift).to_dense();
    for (std::size_t i = 0; i < shifted.rows(); ++i) {
      for (std::size_t j = 0; j < shifted.cols(); ++j) {
        CHECK(shifted(i, j) == plain(i, j) + (i == j ? shift : Complex{}));
      }
    }
  }
}

TEST_CASE("singular values") {
  // Diagonal and rank-one oracles.
  DenseMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = Complex(0.0, -5.0);
  d(2, 2) = 1.0;
  const auto s = singular_values(d);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == doctest::Approx(5.0));
  CHECK(s[1] == doctest::Approx(3.0));
  CHECK(s[2] == doctest::Approx(1.0));

  DenseMatrix rank_one(2, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    rank_one(0, j) = 1.0;
    rank_one(1, j) = 2.0;
  }
  const auto r = singular_values(rank_one);
  CHECK(r[0] == doctest::Approx(std::sqrt(15.0)));
  CHECK(r[1] == doctest::Approx(0.0).epsilon(1e-12));

  // Against the spectrum of a symmetric tridiagonal matrix with known eigenvalues
  // 2 - 2 cos(k pi / (m + 1)).
  const std::size_t m = 12;
  DenseMatrix t(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    t(i, i) = 2.0;
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = -1.0;
  }
  const auto sv = singular_values(t);
  for (std::size_t k = 1; k <= m; ++k) {
    CHECK(sv[m - k] == doctest::Approx(2.0 - 2.0 * std::cos(k * M_PI / (m + 1))).epsilon(1e-12));
  }

  CHECK_THROWS_AS(singular_values(DenseMatrix(5, 5), 4), Error);
}

TEST_CASE("shifted self-adjoint truncations keep sigma_min >= |nu|") {
  const auto f = build_example({});
  for (double nu : {0.5, 1.0, 2.0}) {
    const auto a = assemble_truncation(f, minus_k, 30, Boundary::dirichlet, Complex(0.0, -nu));
    const double floor = smallest(singular_values(a.to_weighted_dense()));
    CHECK(floor >= nu * (1.0 - 1e-12));
    const auto r = assemble_truncation(f, minus_k, 30, Boundary::interior_rows, Complex(0.0, -nu));
    CHECK(smallest(singular_values(r.to_weighted_dense())) >= nu * (1.0 - 1e-12));
  }
  // Doubling a large shift roughly doubles the floor.
  const auto small = assemble_truncation(f, zero_w, 20, Boundary::dirichlet, Complex(0.0, -50.0));
  const auto large = assemble_truncation(f, zero_w, 20, Boundary::dirichlet, Complex(0.0, -100.0));
  const double ratio = smallest(singular_values(large.to_dense())) / smallest(singular_values(small.to_dense()));
  CHECK(ratio == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("Matrix Market export") {
  const auto a = assemble_truncation(build_example({}), zero_w, 4, Boundary::interior_rows);
  std::ostringstream out;
  write_matrix_market(out, a, "test");
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "%%MatrixMarket matrix coordinate complex general");
  std::getline(in, line);
  CHECK(line == "% test");
  std::size_t rows, cols, nnz;
  in >> rows >> cols >> nnz;
  CHECK(rows == 3);
  CHECK(cols == 5);
  CHECK(nnz == a.entries.size());
  std::size_t i, j;
  double re, im;
  in >> i >> j >> re >> im;
  CHECK(i == 1);
  CHECK(j == 1);
  CHECK(re == 2.0);
  CHECK(im == 0.0);
  const auto side = matrix_sidecar(a);
  CHECK(side["rows"].size() == 3);
  CHECK(side["columns"][4] == "4");
  CHECK(side["index_base"] == 1);
}
