#include "magbilap/operators.hpp"

#include <cmath>

namespace magbilap {

Amplitudes Amplitudes::delta(std::size_t size, VertexIndex x, Complex value) {
  if (x >= size) throw Error(ErrorKind::input, "unknown_vertex", "delta outside the host graph");
  Amplitudes a(size);
  a[x] = value;
  return a;
}

std::vector<VertexIndex> Amplitudes::support() const {
  std::vector<VertexIndex> s;
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (values_[x] != Complex{}) s.push_back(static_cast<VertexIndex>(x));
  }
  return s;
}

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::input, "size_mismatch", "amplitudes live on different hosts");
}

void require_host(const MagneticGraph& g, std::size_t size) {
  if (size != g.vertex_count()) {
    throw Error(ErrorKind::input, "size_mismatch",
                "amplitudes of size " + std::to_string(size) + " on a graph with " +
                    std::to_string(g.vertex_count()) + " vertices");
  }
}

template <typename Value>
void require_margin(const MagneticGraph& g, std::span<const Value> u, const char* what) {
  for (VertexIndex x = 0; x < u.size(); ++x) {
    if (u[x] != Value{} && !g.is_complete(x)) {
      throw Error(ErrorKind::margin_violation, "margin_violation",
                  std::string(what) + " is non-zero at vertex '" + g.id(x) +
                      "' whose neighbourhood is cut off by the horizon; enlarge the horizon");
    }
  }
}

template <bool Magnetic>
Amplitudes laplacian(const MagneticGraph& g, const Amplitudes& u) {
  require_host(g, u.size());
  require_margin(g, u.values(), "input");
  Amplitudes out(u.size());
  for (VertexIndex x = 0; x < u.size(); ++x) {
    Complex acc{};
    for (const auto& nb : g.neighbors(x)) {
      const Complex uy = u[nb.vertex];
      if constexpr (Magnetic) {
        acc += nb.weight * (u[x] - nb.phase * uy);
      } else {
        acc += nb.weight * (u[x] - uy);
      }
    }
    out[x] = acc / g.measure(x);
  }
  return out;
}

}  // namespace

Amplitudes& Amplitudes::operator+=(const Amplitudes& other) {
  require_same_size(size(), other.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Amplitudes& Amplitudes::operator-=(const Amplitudes& other) {
  require_same_size(size(), other.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Amplitudes& Amplitudes::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

Amplitudes operator+(Amplitudes a, const Amplitudes& b) { return a += b; }
Amplitudes operator-(Amplitudes a, const Amplitudes& b) { return a -= b; }
Amplitudes operator*(Complex scale, Amplitudes a) { return a *= scale; }

Potential Potential::radial(const MagneticGraph& g, const RadialFunction& w) {
  Potential p{std::vector<double>(g.vertex_count())};
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) p.values[x] = w.at(g.radius(x));
  return p;
}

Amplitudes multiply(std::span<const double> psi, const Amplitudes& u) {
  require_same_size(psi.size(), u.size());
  Amplitudes out(u.size());
  for (VertexIndex x = 0; x < u.size(); ++x) out[x] = psi[x] * u[x];
  return out;
}

Amplitudes multiply(std::span<const double> psi, std::span<const double> phi, const Amplitudes& u) {
  require_same_size(psi.size(), u.size());
  require_same_size(phi.size(), u.size());
  Amplitudes out(u.size());
  for (VertexIndex x = 0; x < u.size(); ++x) out[x] = psi[x] * phi[x] * u[x];
  return out;
}

Amplitudes apply_laplacian(const MagneticGraph& g, const Amplitudes& u) { return laplacian<true>(g, u); }

Amplitudes apply_free_laplacian(const MagneticGraph& g, const Amplitudes& u) {
  return laplacian<false>(g, u);
}

RealField laplacian_of(const MagneticGraph& g, std::span<const double> psi) {
  require_host(g, psi.size());
  require_margin(g, psi, "real field");
  RealField out(psi.size());
  for (VertexIndex x = 0; x < psi.size(); ++x) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) acc += nb.weight * (psi[x] - psi[nb.vertex]);
    out[x] = acc / g.measure(x);
  }
  return out;
}

Amplitudes apply_bilaplacian(const MagneticGraph& g, const Amplitudes& u) {
  return apply_laplacian(g, apply_laplacian(g, u));
}

Amplitudes apply_H(const MagneticGraph& g, const Potential& w, const Amplitudes& u) {
  require_host(g, w.values.size());
  Amplitudes out = apply_bilaplacian(g, u);
  for (VertexIndex x = 0; x < u.size(); ++x) out[x] += w.values[x] * u[x];
  return out;
}

Amplitudes apply_P(const MagneticGraph& g, std::span<const double> psi, const Amplitudes& u) {
  require_host(g, u.size());
  require_host(g, psi.size());
  require_margin(g, u.values(), "input");
  Amplitudes out(u.size());
  for (VertexIndex x = 0; x < u.size(); ++x) {
    Complex acc{};
    for (const auto& nb : g.neighbors(x)) {
      acc += nb.weight * (psi[x] - psi[nb.vertex]) * (u[x] - nb.phase * u[nb.vertex]);
    }
    out[x] = acc / g.measure(x);
  }
  return out;
}

Complex inner(const MagneticGraph& g, const Amplitudes& u, const Amplitudes& v) {
  require_host(g, u.size());
  require_host(g, v.size());
  Complex acc{};
  for (VertexIndex x = 0; x < u.size(); ++x) acc += g.measure(x) * u[x] * std::conj(v[x]);
  return acc;
}

double norm_squared(const MagneticGraph& g, const Amplitudes& u) {
  require_host(g, u.size());
  double acc = 0.0;
  for (VertexIndex x = 0; x < u.size(); ++x) acc += g.measure(x) * std::norm(u[x]);
  return acc;
}

double norm(const MagneticGraph& g, const Amplitudes& u) { return std::sqrt(norm_squared(g, u)); }

}  // namespace magbilap
