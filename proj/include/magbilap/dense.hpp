#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace magbilap {

// Row-major dense complex matrix, sized for desk-scale diagnostics.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::complex<double>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix adjoint() const;
  std::vector<std::complex<double>> multiply(const std::vector<std::complex<double>>& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::complex<double>> data_;
};

inline constexpr std::size_t kDefaultSvdColumnCap = 4000;

// All min(rows, cols) singular values in descending order, by one-sided
// (Hestenes) Jacobi rotations on the taller orientation of the matrix.
// Throws ErrorKind::capacity when the short side exceeds column_cap.
std::vector<double> singular_values(const DenseMatrix& a, std::size_t column_cap = kDefaultSvdColumnCap);

}  // namespace magbilap
