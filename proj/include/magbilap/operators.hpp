#pragma once

#include <span>
#include <vector>

#include "magbilap/family.hpp"
#include "magbilap/graph.hpp"

namespace magbilap {

// Complex function on the vertices of a finite host graph. Stored densely over
// the host, so it is finitely supported by construction; the support is the
// set of exactly non-zero entries.
class Amplitudes {
 public:
  Amplitudes() = default;
  explicit Amplitudes(std::size_t size) : values_(size) {}
  explicit Amplitudes(std::vector<Complex> values) : values_(std::move(values)) {}

  static Amplitudes delta(std::size_t size, VertexIndex x, Complex value = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  Complex& operator[](VertexIndex x) { return values_[x]; }
  const Complex& operator[](VertexIndex x) const { return values_[x]; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::vector<VertexIndex> support() const;

  Amplitudes& operator+=(const Amplitudes& other);
  Amplitudes& operator-=(const Amplitudes& other);
  Amplitudes& operator*=(Complex scale);

 private:
  std::vector<Complex> values_;
};

Amplitudes operator+(Amplitudes a, const Amplitudes& b);
Amplitudes operator-(Amplitudes a, const Amplitudes& b);
Amplitudes operator*(Complex scale, Amplitudes a);

// Real function on the vertices of a host graph (cut-offs, test functions).
using RealField = std::vector<double>;

// Real potential W on the vertices of a host graph.
struct Potential {
  std::vector<double> values;

  static Potential zero(const MagneticGraph& g) { return {std::vector<double>(g.vertex_count(), 0.0)}; }
  static Potential radial(const MagneticGraph& g, const RadialFunction& w);
};

// Pointwise product psi * u.
Amplitudes multiply(std::span<const double> psi, const Amplitudes& u);
Amplitudes multiply(std::span<const double> psi, std::span<const double> phi, const Amplitudes& u);

// Evaluation rule shared by all operators: an input may be non-zero only on
// complete vertices, otherwise the weighted degree it needs is unknown and a
// margin violation is raised. Under that rule every output value is exact.

// (Delta_theta u)(x) = (1/mu(x)) sum_y b(x,y) (u(x) - e^{i theta(x,y)} u(y)).
Amplitudes apply_laplacian(const MagneticGraph& g, const Amplitudes& u);
// The same sum with theta ignored.
Amplitudes apply_free_laplacian(const MagneticGraph& g, const Amplitudes& u);
// Free Laplacian of a real field.
RealField laplacian_of(const MagneticGraph& g, std::span<const double> psi);
Amplitudes apply_bilaplacian(const MagneticGraph& g, const Amplitudes& u);
// H u = Delta_theta^2 u + W u.
Amplitudes apply_H(const MagneticGraph& g, const Potential& w, const Amplitudes& u);
// (P_psi[u])(x) = (1/mu(x)) sum_y b(x,y) (psi(x) - psi(y)) (u(x) - e^{i theta(x,y)} u(y)).
Amplitudes apply_P(const MagneticGraph& g, std::span<const double> psi, const Amplitudes& u);

// (u, v) = sum_x mu(x) u(x) conj(v(x)).
Complex inner(const MagneticGraph& g, const Amplitudes& u, const Amplitudes& v);
double norm_squared(const MagneticGraph& g, const Amplitudes& u);
double norm(const MagneticGraph& g, const Amplitudes& u);

}  // namespace magbilap
