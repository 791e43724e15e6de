#include "magbilap/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "magbilap/operators.hpp"
#include "magbilap/truncation.hpp"

namespace magbilap {

const char* const kProbeCaveat =
    "Heuristic evidence only: finite horizons and floating-point arithmetic can neither prove nor "
    "disprove a deficiency, and ill-conditioning can produce pseudo-defects.";

const char* to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::divergent: return "divergent";
    case GrowthClass::undetermined: return "undetermined";
    case GrowthClass::square_summable_candidate: return "square_summable_candidate";
  }
  return "unknown";
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::consistent_with_delta_zero: return "consistent_with_delta_zero";
    case Conclusion::defect_suspected: return "defect_suspected";
    case Conclusion::inconclusive: return "inconclusive";
  }
  return "unknown";
}

ScaledComplex ScaledComplex::from(Complex z) {
  const double a = std::abs(z);
  if (a == 0.0 || !std::isfinite(a)) return {z, 0.0};
  const double e = std::floor(std::log10(a));
  return {z * std::pow(10.0, -e), e};
}

double ScaledComplex::log10_abs() const {
  const double a = std::abs(mantissa);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log10(a) + exponent;
}

Complex ScaledComplex::value() const { return mantissa * std::pow(10.0, exponent); }

namespace {

// sum_i c_i * z_i evaluated at the largest exponent among the non-zero terms.
struct ScaledSum {
  std::vector<std::pair<Complex, ScaledComplex>> terms;

  double common_exponent() const {
    double e = -std::numeric_limits<double>::infinity();
    for (const auto& [c, z] : terms) {
      if (c != Complex{} && z.mantissa != Complex{}) e = std::max(e, z.exponent);
    }
    return e;
  }

  // Returns the sum and the sum of magnitudes, both at exponent e.
  std::pair<Complex, double> at(double e) const {
    Complex s{};
    double magnitude = 0.0;
    for (const auto& [c, z] : terms) {
      if (c == Complex{} || z.mantissa == Complex{}) continue;
      const Complex t = c * z.mantissa * std::pow(10.0, z.exponent - e);
      s += t;
      magnitude += std::abs(t);
    }
    return {s, magnitude};
  }
};

ScaledComplex rescale(Complex mantissa, double exponent) {
  ScaledComplex z = ScaledComplex::from(mantissa);
  z.exponent += exponent;
  return z;
}

double log10_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log10(1.0 + std::pow(10.0, lo - hi));
}

struct PathSystem {
  MagneticGraph graph;
  std::vector<double> measure;
  // stencils[k] holds (j, c_j) with (H u)(k) = sum_j c_j u(j).
  std::vector<std::vector<std::pair<int, Complex>>> stencils;
  Complex shift;  // sign * i * nu
};

PathSystem path_system(const GraphFamily& f, const RadialFunction& w, double nu, int sign, int horizon) {
  if (!f.is_path()) {
    throw Error(ErrorKind::structural, "not_a_path", f.name() + " is not a path family; shooting needs k +- 1 adjacency");
  }
  if (!(nu != 0.0) || !std::isfinite(nu)) throw Error(ErrorKind::input, "bad_nu", "nu must be a non-zero real");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::input, "bad_sign", "sign must be +1 or -1");
  if (horizon < 10) throw Error(ErrorKind::input, "horizon_too_small", "shooting needs horizon >= 10");
  PathSystem sys{f.generate(horizon + 3), {}, {}, Complex(0.0, sign * nu)};
  const Potential pot = Potential::radial(sys.graph, w);
  for (VertexIndex k = 0; k <= static_cast<VertexIndex>(horizon); ++k) sys.measure.push_back(sys.graph.measure(k));
  const auto all = [](VertexIndex) { return true; };
  for (int k = 0; k + 2 <= horizon; ++k) {
    std::vector<std::pair<int, Complex>> row;
    for (const auto& [j, c] : row_stencil(sys.graph, pot, static_cast<VertexIndex>(k), all)) {
      row.emplace_back(static_cast<int>(j), c);
    }
    const bool leading = std::any_of(row.begin(), row.end(),
                                     [&](const auto& e) { return e.first == k + 2 && e.second != Complex{}; });
    if (!leading) {
      throw Error(ErrorKind::structural, "zero_leading_coefficient",
                  "equation at k = " + std::to_string(k) + " does not involve u(k + 2)");
    }
    sys.stencils.push_back(std::move(row));
  }
  return sys;
}

// Fixes u(k + 2) from the equation at k.
ScaledComplex step(const PathSystem& sys, const std::vector<ScaledComplex>& u, int k) {
  ScaledSum rest;
  Complex leading{};
  for (const auto& [j, c] : sys.stencils[k]) {
    if (j == k + 2) {
      leading = c;
    } else {
      rest.terms.emplace_back(j == k ? c - sys.shift : c, u[j]);
    }
  }
  const double e = rest.common_exponent();
  if (!std::isfinite(e)) return {};
  return rescale(-rest.at(e).first / leading, e);
}

double residual(const PathSystem& sys, const std::vector<ScaledComplex>& u) {
  double worst = 0.0;
  for (int k = 0; k < static_cast<int>(sys.stencils.size()); ++k) {
    ScaledSum sum;
    for (const auto& [j, c] : sys.stencils[k]) sum.terms.emplace_back(j == k ? c - sys.shift : c, u[j]);
    const double e = sum.common_exponent();
    if (!std::isfinite(e)) continue;
    const auto [s, magnitude] = sum.at(e);
    if (magnitude > 0.0) worst = std::max(worst, std::abs(s) / magnitude);
  }
  return worst;
}

GrowthClass classify(const std::vector<double>& log_partial, const std::vector<ScaledComplex>& u,
                     const std::vector<double>& measure, const ProbeOptions& options) {
  const int horizon = static_cast<int>(u.size()) - 1;
  const int quarter = std::max(2, horizon / 4);
  const int start = horizon - quarter;
  if (log_partial[horizon] - log_partial[start] >= std::log10(options.divergence_factor)) {
    return GrowthClass::divergent;
  }
  // Compare the increment mass of the two halves of the tail.
  const int half = quarter / 2;
  double first = -std::numeric_limits<double>::infinity();
  double second = first;
  for (int k = start + 1; k <= start + half; ++k) first = log10_add(first, std::log10(measure[k]) + 2 * u[k].log10_abs());
  for (int k = start + half + 1; k <= start + 2 * half; ++k) {
    second = log10_add(second, std::log10(measure[k]) + 2 * u[k].log10_abs());
  }
  if (!std::isfinite(first)) return GrowthClass::undetermined;
  if (second == -std::numeric_limits<double>::infinity()) return GrowthClass::square_summable_candidate;
  const double per_step = (second - first) / half;
  return per_step <= std::log10(options.decay_ratio) ? GrowthClass::square_summable_candidate
                                                      : GrowthClass::undetermined;
}

ShootingSolution finish(const PathSystem& sys, std::string basis, std::vector<ScaledComplex> values,
                        const ProbeOptions& options) {
  ShootingSolution s;
  s.basis = std::move(basis);
  s.u0 = values[0];
  s.u1 = values[1];
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc = log10_add(acc, std::log10(sys.measure[k]) + 2 * values[k].log10_abs());
    s.log10_partial_norms.push_back(acc);
  }
  s.max_residual = residual(sys, values);
  s.growth_class = classify(s.log10_partial_norms, values, sys.measure, options);
  s.values = std::move(values);
  return s;
}

std::vector<ScaledComplex> start(int horizon, Complex u0, Complex u1) {
  std::vector<ScaledComplex> u(horizon + 1);
  u[0] = ScaledComplex::from(u0);
  u[1] = ScaledComplex::from(u1);
  return u;
}

// v <- v - gamma * u over the whole history, gamma = <u, v> / <u, u> on the
// window k - 3..k, so the result is again an exact solution.
void orthogonalize(std::vector<ScaledComplex>& v, const std::vector<ScaledComplex>& u, int k) {
  double eu = -std::numeric_limits<double>::infinity(), ev = eu;
  for (int j = std::max(0, k - 3); j <= k; ++j) {
    if (u[j].mantissa != Complex{}) eu = std::max(eu, u[j].exponent);
    if (v[j].mantissa != Complex{}) ev = std::max(ev, v[j].exponent);
  }
  if (!std::isfinite(eu) || !std::isfinite(ev)) return;
  Complex uv{};
  double uu = 0.0;
  for (int j = std::max(0, k - 3); j <= k; ++j) {
    const Complex a = u[j].mantissa * std::pow(10.0, u[j].exponent - eu);
    const Complex b = v[j].mantissa * std::pow(10.0, v[j].exponent - ev);
    uv += std::conj(a) * b;
    uu += std::norm(a);
  }
  const ScaledComplex gamma = rescale(uv / uu, ev - eu);
  if (gamma.mantissa == Complex{}) return;
  for (int j = 0; j <= k; ++j) {
    ScaledSum s;
    s.terms = {{1.0, v[j]}, {-gamma.mantissa, {u[j].mantissa, u[j].exponent + gamma.exponent}}};
    const double e = s.common_exponent();
    v[j] = std::isfinite(e) ? rescale(s.at(e).first, e) : ScaledComplex{};
  }
}

}  // namespace

ShootingSolution shoot_from(const GraphFamily& f, const RadialFunction& w, double nu, int sign, int horizon,
                            Complex u0, Complex u1, const ProbeOptions& options) {
  const PathSystem sys = path_system(f, w, nu, sign, horizon);
  auto u = start(horizon, u0, u1);
  for (int k = 0; k + 2 <= horizon; ++k) u[k + 2] = step(sys, u, k);
  return finish(sys, "custom", std::move(u), options);
}

ShootingReport shoot(const GraphFamily& f, const RadialFunction& w, double nu, int sign, int horizon,
                     const ProbeOptions& options) {
  const PathSystem sys = path_system(f, w, nu, sign, horizon);
  auto e1 = start(horizon, 1.0, 0.0);
  auto e2 = start(horizon, 0.0, 1.0);
  auto minimal = e2;
  const int every = std::max(1, options.reorthogonalize_every);
  for (int k = 0; k + 2 <= horizon; ++k) {
    e1[k + 2] = step(sys, e1, k);
    e2[k + 2] = step(sys, e2, k);
    minimal[k + 2] = step(sys, minimal, k);
    if (k + 2 >= 3 && (k + 1) % every == 0) orthogonalize(minimal, e1, k + 2);
  }
  ShootingReport report;
  report.nu = nu;
  report.sign = sign;
  report.horizon = horizon;
  report.solutions.push_back(finish(sys, "e1", std::move(e1), options));
  report.solutions.push_back(finish(sys, "e2", std::move(e2), options));
  report.solutions.push_back(finish(sys, "minimal", std::move(minimal), options));
  const bool candidate = std::any_of(report.solutions.begin(), report.solutions.end(), [](const auto& s) {
    return s.growth_class == GrowthClass::square_summable_candidate;
  });
  const bool divergent = std::all_of(report.solutions.begin(), report.solutions.end(),
                                     [](const auto& s) { return s.growth_class == GrowthClass::divergent; });
  report.conclusion = candidate   ? Conclusion::defect_suspected
                      : divergent ? Conclusion::consistent_with_delta_zero
                                  : Conclusion::inconclusive;
  return report;
}

namespace {

nlohmann::json scaled_json(const ScaledComplex& z) {
  return {{"re", z.mantissa.real()}, {"im", z.mantissa.imag()}, {"log10_scale", z.exponent}};
}

double finite_or_floor(double v) { return std::isfinite(v) ? v : -999.0; }

}  // namespace

nlohmann::json ShootingReport::to_json() const {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : solutions) {
    std::vector<double> log_abs;
    std::vector<double> log_p;
    for (const auto& v : s.values) log_abs.push_back(finite_or_floor(v.log10_abs()));
    for (double p : s.log10_partial_norms) log_p.push_back(finite_or_floor(p));
    sols.push_back({{"basis", s.basis},
                    {"initial_data", {scaled_json(s.u0), scaled_json(s.u1)}},
                    {"growth_class", to_string(s.growth_class)},
                    {"max_residual", s.max_residual},
                    {"log10_abs_u", std::move(log_abs)},
                    {"log10_partial_norms", std::move(log_p)}});
  }
  return {{"method", "shooting"},
          {"nu", nu},
          {"sign", sign},
          {"horizon", horizon},
          {"solutions", std::move(sols)},
          {"conclusion", to_string(conclusion)},
          {"caveat", kProbeCaveat}};
}

void ShootingReport::write_csv(std::ostream& out, bool header) const {
  if (header) out << "nu,basis,k,log10_abs_u,log10_partial_norm\n";
  char line[160];
  for (const auto& s : solutions) {
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      std::snprintf(line, sizeof line, "%.17g,%s,%zu,%.17g,%.17g\n", nu, s.basis.c_str(), k,
                    finite_or_floor(s.values[k].log10_abs()), finite_or_floor(s.log10_partial_norms[k]));
      out << line;
    }
  }
}

ResidualReport rectangular_residual(const GraphFamily& f, const RadialFunction& w, double nu, int sign,
                                    const std::vector<int>& horizons, const ProbeOptions& options) {
  if (!(nu != 0.0) || !std::isfinite(nu)) throw Error(ErrorKind::input, "bad_nu", "nu must be a non-zero real");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::input, "bad_sign", "sign must be +1 or -1");
  if (horizons.empty()) throw Error(ErrorKind::input, "bad_horizons", "no horizons given");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 6) throw Error(ErrorKind::input, "horizon_too_small", "rectangular horizons must be >= 6");
    if (i > 0 && horizons[i] <= horizons[i - 1]) {
      throw Error(ErrorKind::input, "bad_horizons", "horizons must be strictly increasing");
    }
  }
  ResidualReport report;
  report.nu = nu;
  report.sign = sign;
  for (int n : horizons) {
    const SparseOperator a = assemble_truncation(f, w, n, Boundary::interior_rows, Complex(0.0, -sign * nu));
    if (std::min(a.rows, a.cols) > options.svd_column_cap) {
      throw Error(ErrorKind::capacity, "svd_cap_exceeded",
                  "horizon " + std::to_string(n) + " gives a " + std::to_string(a.rows) + " x " +
                      std::to_string(a.cols) + " matrix; use a smaller horizon");
    }
    const auto s = singular_values(a.to_weighted_dense(), options.svd_column_cap);
    report.points.push_back({n, a.rows, a.cols, s.back()});
  }

  int run = 1;
  bool decreasing = false;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    run = report.points[i].s_min <= options.decrease_factor * report.points[i - 1].s_min ? run + 1 : 1;
    if (run >= options.decreasing_run) decreasing = true;
  }
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (const auto& p : report.points) {
    hi = std::max(hi, p.s_min);
    lo = std::min(lo, p.s_min);
  }
  report.conclusion = decreasing           ? Conclusion::defect_suspected
                      : lo > 1e-12 * hi    ? Conclusion::consistent_with_delta_zero
                                           : Conclusion::inconclusive;
  return report;
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    pts.push_back({{"horizon", p.horizon}, {"rows", p.rows}, {"cols", p.cols}, {"s_min", p.s_min}});
    floor = std::min(floor, p.s_min);
  }
  return {{"method", "rectangular_residual"},
          {"nu", nu},
          {"sign", sign},
          {"points", std::move(pts)},
          {"observed_floor", points.empty() ? 0.0 : floor},
          {"conclusion", to_string(conclusion)},
          {"caveat", kProbeCaveat}};
}

ConsistencyReport probe_consistency(const GraphFamily& f, const RadialFunction& w, const std::vector<double>& nus,
                                    int sign, int shooting_horizon, const std::vector<int>& horizons,
                                    const ProbeOptions& options) {
  if (nus.empty()) throw Error(ErrorKind::input, "bad_nu", "no nu values given");
  ConsistencyReport report;
  report.sign = sign;
  std::vector<Conclusion> seen;
  for (double nu : nus) {
    ProbeRun run;
    run.nu = nu;
    if (shooting_horizon > 0) {
      run.shooting = shoot(f, w, nu, sign, shooting_horizon, options);
      seen.push_back(run.shooting->conclusion);
    }
    if (!horizons.empty()) {
      run.residual = rectangular_residual(f, w, nu, sign, horizons, options);
      seen.push_back(run.residual->conclusion);
    }
    report.runs.push_back(std::move(run));
  }
  report.agreed = !seen.empty() && std::all_of(seen.begin(), seen.end(), [&](auto c) { return c == seen.front(); });
  report.conclusion = report.agreed ? seen.front() : Conclusion::inconclusive;
  return report;
}

nlohmann::json ConsistencyReport::to_json() const {
  nlohmann::json runs_json = nlohmann::json::array();
  for (const auto& r : runs) {
    nlohmann::json j = {{"nu", r.nu}};
    if (r.shooting) j["shooting"] = r.shooting->to_json();
    if (r.residual) j["rectangular_residual"] = r.residual->to_json();
    runs_json.push_back(std::move(j));
  }
  return {{"sign", sign},
          {"runs", std::move(runs_json)},
          {"agreed", agreed},
          {"conclusion", to_string(conclusion)},
          {"caveat", kProbeCaveat}};
}

}  // namespace magbilap
