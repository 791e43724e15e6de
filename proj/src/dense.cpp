#include <algorithm>
#include <cmath>
#include <limits>

#include "magbilap/dense.hpp"
#include "magbilap/errors.hpp"

namespace magbilap {

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

std::vector<std::complex<double>> DenseMatrix::multiply(const std::vector<std::complex<double>>& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::input, "size_mismatch", "matrix-vector size mismatch");
  std::vector<std::complex<double>> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::complex<double> acc{};
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> singular_values(const DenseMatrix& a, std::size_t column_cap) {
  if (a.cols() > column_cap) {
    throw Error(ErrorKind::capacity, "svd_cap_exceeded",
                "dense SVD limited to " + std::to_string(column_cap) + " columns, got " +
                    std::to_string(a.cols()) + "; use a smaller horizon");
  }
  // Work on columns of the tall orientation, stored column-major.
  const bool wide = a.cols() > a.rows();
  const std::size_t m = wide ? a.cols() : a.rows();
  const std::size_t n = wide ? a.rows() : a.cols();
  if (n == 0) return {};
  std::vector<std::vector<std::complex<double>>> col(n, std::vector<std::complex<double>>(m));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (wide) {
        col[i][j] = std::conj(a(i, j));
      } else {
        col[j][i] = a(i, j);
      }
    }
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 80;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        std::complex<double> gamma{};
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(col[p][k]);
          beta += std::norm(col[q][k]);
          gamma += std::conj(col[p][k]) * col[q][k];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate column q by the phase of gamma so the 2x2 Gram block is real.
        const std::complex<double> unphase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const std::complex<double> xp = col[p][k];
          const std::complex<double> xq = col[q][k] * unphase;
          col[p][k] = c * xp - s * xq;
          col[q][k] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (const auto& v : col[j]) acc += std::norm(v);
    sigma[j] = std::sqrt(acc);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace magbilap
