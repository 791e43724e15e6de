#include "magbilap/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <unordered_map>

#include "magbilap/cutoff.hpp"
#include "magbilap/graph_io.hpp"

namespace magbilap {

std::vector<QCase> default_q_cases() {
  return {
      {"s+1", derive_certificate(QFunction::power(1.0, 1.0, 1.0), 1.0)},
      {"sqrt(s)+1", derive_certificate(QFunction::power(1.0, 0.5, 1.0), 0.5)},
      {"1", derive_certificate(QFunction::constant(1.0), 0.0)},
  };
}

nlohmann::json TrialConfig::to_json() const {
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : families) fams.push_back(save_family_spec(f));
  nlohmann::json qs = nlohmann::json::array();
  for (const auto& q : q_cases) {
    qs.push_back({{"label", q.label},
                  {"q", q.certificate.q.to_json()},
                  {"alpha", q.certificate.alpha},
                  {"c_q", q.certificate.c_q},
                  {"s0", q.certificate.s0}});
  }
  return {{"trials", trials},
          {"n_range", n_range},
          {"seed", seed},
          {"tolerance", tolerance},
          {"positivity_slack", positivity_slack},
          {"support_margin", support_margin},
          {"sector_width", sector_width},
          {"random_phase", random_phase},
          {"families", std::move(fams)},
          {"eps_grid", eps_grid},
          {"q_cases", std::move(qs)}};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  return splitmix64(splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b) ^ c);
}

// std::uniform_real_distribution is not pinned down across standard
// libraries; 53 raw bits are, which keeps reports byte-identical everywhere.
double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t size) {
  return static_cast<std::size_t>(rng() % size);
}

// Neighbourhoods of a family computed from its closed form rather than from a
// generated ball, so a thin sector can reach radii whose full ball is huge.
class LocalOracle {
 public:
  explicit LocalOracle(const GraphFamily& f) : spec_(f.spec()) {}

  static constexpr int kLevelShift = 56;
  static constexpr std::uint64_t kIndexMask = (std::uint64_t{1} << kLevelShift) - 1;

  int radius(std::uint64_t label) const {
    return spec_.kind == FamilyKind::radial_tree ? static_cast<int>(label >> kLevelShift)
                                                 : static_cast<int>(label);
  }

  std::string id(std::uint64_t label) const {
    if (spec_.kind != FamilyKind::radial_tree) return std::to_string(label);
    return std::to_string(label >> kLevelShift) + "." + std::to_string(label & kIndexMask);
  }

  std::vector<std::pair<std::uint64_t, double>> neighbours(std::uint64_t label) const {
    std::vector<std::pair<std::uint64_t, double>> out;
    switch (spec_.kind) {
      case FamilyKind::half_line_unit:
        if (label > 0) out.emplace_back(label - 1, 1.0);
        out.emplace_back(label + 1, 1.0);
        break;
      case FamilyKind::half_line_sqrt:
        if (label > 0) out.emplace_back(label - 1, std::sqrt(static_cast<double>(label)));
        out.emplace_back(label + 1, std::sqrt(static_cast<double>(label) + 1.0));
        break;
      case FamilyKind::radial_tree: {
        const int m = radius(label);
        const std::uint64_t j = label & kIndexMask;
        if (m > 0) {
          const auto up = static_cast<std::uint64_t>(floor_power(m - 1, spec_.kappa) + 1);
          out.emplace_back((static_cast<std::uint64_t>(m - 1) << kLevelShift) | (j / up), 1.0);
        }
        const auto children = static_cast<std::uint64_t>(floor_power(m, spec_.kappa) + 1);
        if (m + 1 >= 255 || j > (kIndexMask - children) / children) {
          throw Error(ErrorKind::capacity, "label_overflow", "tree sector is too deep to label");
        }
        for (std::uint64_t c = 0; c < children; ++c) {
          out.emplace_back((static_cast<std::uint64_t>(m + 1) << kLevelShift) | (j * children + c), 1.0);
        }
        break;
      }
    }
    return out;
  }

 private:
  FamilySpec spec_;
};

double family_beta(const GraphFamily& f, int n) {
  const auto& model = f.growth_model();
  if (model) return model->degree(2 * n) * model->max_weight(2 * n) / (f.mu_floor() * n);
  return GrowthTable(f.generate(2 * n + 1)).beta(n);
}

}  // namespace

LabHost build_lab_host(const GraphFamily& f, int n, int support_radius, std::size_t sector_width,
                       bool random_phase, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::input, "bad_n", "cut-off index must be >= 1");
  if (support_radius < 0) throw Error(ErrorKind::input, "bad_radius", "support radius must be >= 0");
  if (sector_width < 1) throw Error(ErrorKind::input, "bad_width", "sector width must be >= 1");
  const LocalOracle oracle(f);
  std::mt19937_64 rng(seed);

  // Ancestor-closed support: each sphere keeps at most sector_width children
  // of the previous one.
  std::vector<std::uint64_t> support{0};
  std::vector<std::uint64_t> level{0};
  for (int r = 1; r <= support_radius; ++r) {
    std::vector<std::uint64_t> next;
    for (auto x : level) {
      for (const auto& [y, w] : oracle.neighbours(x)) {
        if (oracle.radius(y) == r) next.push_back(y);
      }
    }
    if (next.size() > sector_width) {
      for (std::size_t i = next.size() - 1; i > 0; --i) std::swap(next[i], next[uniform_index(rng, i + 1)]);
      next.resize(sector_width);
      std::sort(next.begin(), next.end());
    }
    support.insert(support.end(), next.begin(), next.end());
    level = std::move(next);
  }

  std::unordered_map<std::uint64_t, int> dist;
  std::vector<std::uint64_t> frontier = support;
  for (auto x : support) dist.emplace(x, 0);
  for (int d = 1; d <= 3; ++d) {
    std::vector<std::uint64_t> next;
    for (auto x : frontier) {
      for (const auto& [y, w] : oracle.neighbours(x)) {
        if (dist.emplace(y, d).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }

  std::vector<std::uint64_t> labels;
  labels.reserve(dist.size());
  for (const auto& [x, d] : dist) labels.push_back(x);
  std::sort(labels.begin(), labels.end(), [&](auto a, auto b) {
    return std::pair(oracle.radius(a), a) < std::pair(oracle.radius(b), b);
  });
  std::unordered_map<std::uint64_t, VertexIndex> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], static_cast<VertexIndex>(i));

  MagneticGraph::Builder builder(f.mu_floor());
  std::vector<std::vector<std::pair<std::uint64_t, double>>> nbrs(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    nbrs[i] = oracle.neighbours(labels[i]);
    const bool complete = std::all_of(nbrs[i].begin(), nbrs[i].end(),
                                      [&](const auto& e) { return index.count(e.first) != 0; });
    builder.add_vertex(oracle.id(labels[i]), 1.0, complete);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& [y, w] : nbrs[i]) {
      auto it = index.find(y);
      if (it == index.end() || it->second <= i) continue;
      const double angle = random_phase ? std::numbers::pi * uniform_pm1(rng) : 0.0;
      builder.add_edge(static_cast<VertexIndex>(i), it->second, w, angle);
    }
  }
  builder.set_root(index.at(0));

  LabHost host{std::move(builder).build(), f.name(), n, support_radius, {}, {}, {}, {}, {}, family_beta(f, n)};
  const auto& g = host.graph;
  host.distance_to_support.resize(g.vertex_count());
  host.chi.assign(g.vertex_count(), 0.0);
  host.chi_sq.assign(g.vertex_count(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto x = static_cast<VertexIndex>(i);
    const int d = dist.at(labels[i]);
    host.distance_to_support[x] = d;
    if (g.radius(x) != oracle.radius(labels[i])) {
      throw Error(ErrorKind::structural, "radius_mismatch", "lab host does not preserve distances");
    }
    if (d == 0) {
      host.support.push_back(x);
      if (g.radius(x) > n && g.radius(x) < 2 * n) host.ramp.push_back(x);
    }
    if (d <= 2) {
      host.chi[x] = cutoff_value(n, g.radius(x));
      host.chi_sq[x] = host.chi[x] * host.chi[x];
    }
  }
  return host;
}

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::identity: return "identity";
    case CheckKind::inequality: return "inequality";
    case CheckKind::lower_bound: return "lower_bound";
  }
  return "unknown";
}

bool LabReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

nlohmann::json LabReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"statement", c.statement},
                    {"kind", to_string(c.kind)},
                    {"trials", c.trials},
                    {c.kind == CheckKind::identity     ? "max_residual"
                     : c.kind == CheckKind::inequality ? "max_ratio"
                                                       : "min_value",
                     c.worst},
                    {"passed", c.passed},
                    {"witness", c.witness}});
  }
  return {{"all_passed", all_passed()}, {"checks", std::move(list)}};
}

std::string LabReport::to_table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %-11s %8s %14s  %s\n", "check", "kind", "trials", "worst", "result");
  out += line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-44s %-11s %8ld %14.6e  %s\n", c.name.c_str(), to_string(c.kind), c.trials,
                  c.worst, c.passed ? "pass" : "FAIL");
    out += line;
  }
  return out;
}

const std::vector<std::string>& lab_suites() {
  static const std::vector<std::string> suites = {
      "product_rule",  "expansion_identity", "commutator_bounds", "localized_gradient_bound",
      "squared_cutoff_bounds", "q_bound", "scalar_inequalities", "green_identities"};
  return suites;
}

namespace {

enum class Generator { uniform, ramp_uniform, ramp_alternating, ramp_delta };

const char* to_string(Generator g) {
  switch (g) {
    case Generator::uniform: return "uniform";
    case Generator::ramp_uniform: return "ramp_uniform";
    case Generator::ramp_alternating: return "ramp_alternating";
    case Generator::ramp_delta: return "ramp_delta";
  }
  return "unknown";
}

Complex random_complex(std::mt19937_64& rng) {
  const double re = uniform_pm1(rng);
  return {re, uniform_pm1(rng)};
}

// Random u on S. The ramp generators concentrate on n < r < 2n, where the
// cut-off estimates have the least slack; "alternating" picks phases so that
// every edge difference u(x) - e^{i theta} u(y) is as large as possible.
Amplitudes make_u(const LabHost& host, Generator kind, std::mt19937_64& rng) {
  const auto& g = host.graph;
  Amplitudes u(g.vertex_count());
  const auto& zone = host.ramp.empty() || kind == Generator::uniform ? host.support : host.ramp;
  switch (kind) {
    case Generator::uniform:
    case Generator::ramp_uniform:
      for (auto x : zone) u[x] = random_complex(rng);
      break;
    case Generator::ramp_delta:
      u[zone[uniform_index(rng, zone.size())]] = random_complex(rng);
      break;
    case Generator::ramp_alternating: {
      // S is ancestor-closed and sorted by radius, so parents come first.
      std::vector<Complex> sign(g.vertex_count(), Complex{});
      sign[host.support.front()] = std::polar(1.0, std::numbers::pi * uniform_pm1(rng));
      for (auto x : host.support) {
        for (const auto& nb : g.neighbors(x)) {
          if (host.distance_to_support[nb.vertex] == 0 && g.radius(nb.vertex) == g.radius(x) + 1) {
            sign[nb.vertex] = -std::conj(nb.phase) * sign[x];
          }
        }
      }
      for (auto x : zone) u[x] = (0.5 + 0.5 * std::abs(uniform_pm1(rng))) * sign[x];
      break;
    }
  }
  return u;
}

RealField random_field(const LabHost& host, std::mt19937_64& rng) {
  RealField psi(host.graph.vertex_count(), 0.0);
  for (VertexIndex x = 0; x < psi.size(); ++x) {
    if (host.distance_to_support[x] <= 2) psi[x] = uniform_pm1(rng);
  }
  return psi;
}

nlohmann::json amplitudes_json(const MagneticGraph& g, const Amplitudes& u) {
  nlohmann::json out = nlohmann::json::object();
  for (auto x : u.support()) out[g.id(x)] = {u[x].real(), u[x].imag()};
  return out;
}

double ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double relative(double residual, std::initializer_list<double> scales) {
  double s = 0.0;
  for (double v : scales) s = std::max(s, std::abs(v));
  return s > 0.0 ? residual / s : residual;
}

class Tracker {
 public:
  Tracker(std::string name, std::string statement, CheckKind kind) {
    result_.name = std::move(name);
    result_.statement = std::move(statement);
    result_.kind = kind;
    result_.worst = kind == CheckKind::lower_bound ? std::numeric_limits<double>::infinity() : 0.0;
    result_.witness = nullptr;
  }

  void observe(double value, const std::function<nlohmann::json()>& witness) {
    ++result_.trials;
    if (std::isnan(value)) value = result_.kind == CheckKind::lower_bound ? -INFINITY : INFINITY;
    const bool worse = result_.kind == CheckKind::lower_bound ? value < result_.worst : value > result_.worst;
    if (worse || result_.witness.is_null()) {
      result_.worst = value;
      result_.witness = witness();
    }
  }

  CheckResult finish(const TrialConfig& cfg) {
    switch (result_.kind) {
      case CheckKind::identity: result_.passed = result_.worst <= cfg.tolerance; break;
      case CheckKind::inequality: result_.passed = result_.worst <= 1.0 + cfg.tolerance; break;
      case CheckKind::lower_bound: result_.passed = result_.worst >= -cfg.positivity_slack; break;
    }
    if (result_.trials == 0) result_.worst = 0.0;
    return std::move(result_);
  }

 private:
  CheckResult result_;
};

struct Trial {
  const LabHost& host;
  int family_index;
  long index;
  Generator generator;
  std::uint64_t seed;
  std::mt19937_64 rng;
};

class Lab {
 public:
  explicit Lab(const TrialConfig& cfg) : cfg_(cfg) {
    if (cfg.trials < 0) throw Error(ErrorKind::input, "bad_trials", "trials must be >= 0");
    if (cfg.n_range.empty()) throw Error(ErrorKind::input, "bad_n_range", "n_range is empty");
    for (int n : cfg.n_range) {
      if (n < 1) throw Error(ErrorKind::input, "bad_n_range", "cut-off indices must be >= 1");
    }
    for (double e : cfg.eps_grid) {
      if (!(e > 0.0 && e < 1.0)) throw Error(ErrorKind::input, "bad_eps", "eps must lie in (0, 1)");
    }
  }

  // Runs body(trial) for every family and trial index; n cycles through n_range
  // and the generator through the four kinds.
  void for_each_trial(std::uint64_t check_id, const std::function<void(Trial&)>& body) {
    for (std::size_t fi = 0; fi < cfg_.families.size(); ++fi) {
      for (long t = 0; t < cfg_.trials; ++t) {
        const std::size_t ni = static_cast<std::size_t>(t) % cfg_.n_range.size();
        const auto generator = static_cast<Generator>((t / cfg_.n_range.size()) % 4);
        const std::uint64_t seed = mix(cfg_.seed, check_id, fi, static_cast<std::uint64_t>(t));
        Trial trial{host(fi, ni), static_cast<int>(fi), t, generator, seed, std::mt19937_64(seed)};
        body(trial);
      }
    }
  }

  nlohmann::json witness(const Trial& t, const Amplitudes& u, nlohmann::json extra = nlohmann::json::object()) {
    extra["family"] = t.host.family;
    extra["n"] = t.host.n;
    extra["trial"] = t.index;
    extra["trial_seed"] = t.seed;
    extra["generator"] = to_string(t.generator);
    extra["u"] = amplitudes_json(t.host.graph, u);
    return extra;
  }

  const TrialConfig& cfg() const { return cfg_; }

 private:
  const LabHost& host(std::size_t fi, std::size_t ni) {
    const auto key = std::pair(fi, ni);
    auto it = hosts_.find(key);
    if (it == hosts_.end()) {
      const GraphFamily f = build_example(cfg_.families[fi]);
      const int n = cfg_.n_range[ni];
      it = hosts_
               .emplace(key, build_lab_host(f, n, 2 * n + cfg_.support_margin, cfg_.sector_width,
                                            cfg_.random_phase, mix(cfg_.seed, 0xC0FFEE, fi, n)))
               .first;
    }
    return it->second;
  }

  const TrialConfig& cfg_;
  std::map<std::pair<std::size_t, std::size_t>, LabHost> hosts_;
};

void product_rule(Lab& lab, std::vector<CheckResult>& out) {
  Tracker tr("product_rule", "Delta_theta(psi u) = psi Delta_theta u - P_psi[u] + u Delta psi",
             CheckKind::identity);
  lab.for_each_trial(1, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const bool use_chi = t.index % 2 == 0;
    const RealField psi = use_chi ? t.host.chi : random_field(t.host, t.rng);
    const Amplitudes lhs = apply_laplacian(g, multiply(psi, u));
    const Amplitudes a = multiply(psi, apply_laplacian(g, u));
    const Amplitudes p = apply_P(g, psi, u);
    const Amplitudes c = multiply(laplacian_of(g, psi), u);
    const double r = relative(norm(g, lhs - (a - p + c)), {norm(g, lhs), norm(g, a), norm(g, p), norm(g, c)});
    tr.observe(r, [&] { return lab.witness(t, u, {{"psi", use_chi ? "chi_n" : "random"}}); });
  });
  out.push_back(tr.finish(lab.cfg()));
}

struct ExpansionTerms {
  Amplitudes chi_du, d_chi_u, p, u_dchi;
};

ExpansionTerms expansion_terms(const LabHost& host, const Amplitudes& u) {
  const auto& g = host.graph;
  return {multiply(host.chi, apply_laplacian(g, u)), apply_laplacian(g, multiply(host.chi, u)),
          apply_P(g, host.chi, u), multiply(laplacian_of(g, host.chi), u)};
}

void expansion_identity(Lab& lab, std::vector<CheckResult>& out) {
  Tracker tr("expansion_identity",
             "|chi du|^2 = |d(chi u)|^2 + 2Re(chi du, P) - 2Re(chi du, u Dchi) + 2Re(P, u Dchi) - |P|^2 - "
             "|u Dchi|^2",
             CheckKind::identity);
  lab.for_each_trial(2, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const auto e = expansion_terms(t.host, u);
    const double lhs = norm_squared(g, e.chi_du);
    const double t1 = norm_squared(g, e.d_chi_u);
    const double t2 = 2.0 * inner(g, e.chi_du, e.p).real();
    const double t3 = -2.0 * inner(g, e.chi_du, e.u_dchi).real();
    const double t4 = 2.0 * inner(g, e.p, e.u_dchi).real();
    const double t5 = -norm_squared(g, e.p);
    const double t6 = -norm_squared(g, e.u_dchi);
    const double r = relative(std::abs(lhs - (t1 + t2 + t3 + t4 + t5 + t6)), {lhs, t1, t2, t3, t4, t5, t6});
    tr.observe(r, [&] { return lab.witness(t, u); });
  });
  out.push_back(tr.finish(lab.cfg()));
}

void commutator_bounds(Lab& lab, std::vector<CheckResult>& out) {
  Tracker p_bound("cutoff_commutator_bound", "|P_chi[u]| <= 2 beta_n |u|", CheckKind::inequality);
  Tracker l_bound("cutoff_laplacian_bound", "|u Delta chi| <= beta_n |u|", CheckKind::inequality);
  lab.for_each_trial(3, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const double nu = norm(g, u);
    const double beta = t.host.beta;
    const nlohmann::json extra = {{"beta_n", beta}};
    p_bound.observe(ratio(norm(g, apply_P(g, t.host.chi, u)), 2.0 * beta * nu),
                    [&] { return lab.witness(t, u, extra); });
    l_bound.observe(ratio(norm(g, multiply(laplacian_of(g, t.host.chi), u)), beta * nu),
                    [&] { return lab.witness(t, u, extra); });
  });
  out.push_back(p_bound.finish(lab.cfg()));
  out.push_back(l_bound.finish(lab.cfg()));
}

std::string format_eps(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", e);
  return buf;
}

void localized_gradient_bound(Lab& lab, std::vector<CheckResult>& out) {
  std::vector<Tracker> trackers;
  for (double e : lab.cfg().eps_grid) {
    trackers.emplace_back("localized_gradient_bound[eps=" + format_eps(e) + "]",
                          "|chi du|^2 <= (1-eps)^-1 |d(chi u)|^2 + (9+4eps)/((1-eps)eps) beta_n^2 |u|^2",
                          CheckKind::inequality);
  }
  Tracker literal("localized_gradient_bound[2,44]", "|chi du|^2 <= 2 |d(chi u)|^2 + 44 beta_n^2 |u|^2",
                  CheckKind::inequality);
  lab.for_each_trial(4, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const double lhs = norm_squared(g, multiply(t.host.chi, apply_laplacian(g, u)));
    const double a = norm_squared(g, apply_laplacian(g, multiply(t.host.chi, u)));
    const double b = t.host.beta * t.host.beta * norm_squared(g, u);
    for (std::size_t i = 0; i < trackers.size(); ++i) {
      const double e = lab.cfg().eps_grid[i];
      const double rhs = a / (1.0 - e) + (9.0 + 4.0 * e) / ((1.0 - e) * e) * b;
      trackers[i].observe(ratio(lhs, rhs), [&] { return lab.witness(t, u); });
    }
    literal.observe(ratio(lhs, 2.0 * a + 44.0 * b), [&] { return lab.witness(t, u); });
  });
  for (auto& tr : trackers) out.push_back(tr.finish(lab.cfg()));
  out.push_back(literal.finish(lab.cfg()));
}

void squared_cutoff_bounds(Lab& lab, std::vector<CheckResult>& out) {
  Tracker p_bound("squared_cutoff_commutator_bound", "|(du, P_{chi^2}[u])| <= 6 beta_n |chi du| |u|",
                  CheckKind::inequality);
  Tracker l_bound("squared_cutoff_laplacian_bound", "|(du, u Delta chi^2)| <= 3 beta_n |chi du| |u|",
                  CheckKind::inequality);
  lab.for_each_trial(5, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const Amplitudes du = apply_laplacian(g, u);
    const double rhs = t.host.beta * norm(g, multiply(t.host.chi, du)) * norm(g, u);
    p_bound.observe(ratio(std::abs(inner(g, du, apply_P(g, t.host.chi_sq, u))), 6.0 * rhs),
                    [&] { return lab.witness(t, u); });
    l_bound.observe(ratio(std::abs(inner(g, du, multiply(laplacian_of(g, t.host.chi_sq), u))), 3.0 * rhs),
                    [&] { return lab.witness(t, u); });
  });
  out.push_back(p_bound.finish(lab.cfg()));
  out.push_back(l_bound.finish(lab.cfg()));
}

void q_bound(Lab& lab, std::vector<CheckResult>& out) {
  std::vector<Tracker> first, second;
  for (const auto& q : lab.cfg().q_cases) {
    first.emplace_back("q_bound[" + q.label + "]", "|((q o r) chi u, chi u)| <= q(2n) |u|^2",
                       CheckKind::inequality);
    second.emplace_back("q_bound_certificate[" + q.label + "]",
                        "q(2n) <= c_q 2^alpha n^alpha for n >= s0/2", CheckKind::inequality);
  }
  lab.for_each_trial(6, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const Amplitudes chi_u = multiply(t.host.chi, u);
    const double nu2 = norm_squared(g, u);
    const int n = t.host.n;
    for (std::size_t i = 0; i < first.size(); ++i) {
      const auto& qc = lab.cfg().q_cases[i].certificate;
      Complex lhs{};
      for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        if (chi_u[x] == Complex{}) continue;
        lhs += g.measure(x) * qc.q(g.radius(x)) * chi_u[x] * std::conj(chi_u[x]);
      }
      const double q2n = qc.q(2.0 * n);
      first[i].observe(ratio(std::abs(lhs), q2n * nu2), [&] { return lab.witness(t, u); });
      if (2.0 * n >= qc.s0) {
        const double k3 = qc.c_q * std::pow(2.0, qc.alpha);
        second[i].observe(ratio(q2n, k3 * std::pow(static_cast<double>(n), qc.alpha)),
                          [&] { return nlohmann::json{{"n", n}, {"q(2n)", q2n}, {"K3", k3}}; });
      }
    }
  });
  for (std::size_t i = 0; i < first.size(); ++i) {
    out.push_back(first[i].finish(lab.cfg()));
    out.push_back(second[i].finish(lab.cfg()));
  }
}

void scalar_inequalities(Lab& lab, std::vector<CheckResult>& out) {
  Tracker sum("sum_square_bound", "(a_1 + ... + a_N)^2 <= N (a_1^2 + ... + a_N^2)", CheckKind::inequality);
  Tracker amgm("weighted_am_gm", "ab <= eps a^2 + b^2 / (4 eps)", CheckKind::inequality);
  const auto& cfg = lab.cfg();
  const long trials = static_cast<long>(cfg.trials) * static_cast<long>(std::max<std::size_t>(1, cfg.families.size()));
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix(cfg.seed, 7, static_cast<std::uint64_t>(t)));
    const int count = 1 + static_cast<int>(uniform_index(rng, 20));
    std::vector<double> a(count);
    // Trial 0 of each inequality is its equality case.
    const double common = uniform_pm1(rng);
    for (auto& v : a) v = t == 0 ? common : uniform_pm1(rng);
    double s = 0.0, s2 = 0.0;
    for (double v : a) {
      s += v;
      s2 += v * v;
    }
    sum.observe(ratio(s * s, count * s2), [&] { return nlohmann::json{{"trial", t}, {"a", a}}; });

    const double eps = 0.5 * (uniform_pm1(rng) + 1.0) * (1.0 - 2e-3) + 1e-3;
    const double x = uniform_pm1(rng);
    const double y = t == 0 ? 2.0 * eps * x : uniform_pm1(rng);
    amgm.observe(ratio(x * y, eps * x * x + y * y / (4.0 * eps)),
                 [&] { return nlohmann::json{{"trial", t}, {"a", x}, {"b", y}, {"eps", eps}}; });
  }
  out.push_back(sum.finish(cfg));
  out.push_back(amgm.finish(cfg));
}

void green_identities(Lab& lab, std::vector<CheckResult>& out) {
  Tracker first("green_identity_laplacian", "(Delta_theta u, v) = (u, Delta_theta v)", CheckKind::identity);
  Tracker second("green_identity_bilaplacian", "(Delta^2 u, v) = (Delta u, Delta v) = (u, Delta^2 v)",
                 CheckKind::identity);
  Tracker positive("quadratic_form_positivity", "(Delta_theta u, u) / |u|^2 >= 0", CheckKind::lower_bound);
  lab.for_each_trial(8, [&](Trial& t) {
    const auto& g = t.host.graph;
    const Amplitudes u = make_u(t.host, t.generator, t.rng);
    const Amplitudes v = make_u(t.host, Generator::uniform, t.rng);
    const Amplitudes du = apply_laplacian(g, u);
    const Amplitudes dv = apply_laplacian(g, v);
    const Complex a = inner(g, du, v);
    const Complex b = inner(g, u, dv);
    first.observe(relative(std::abs(a - b), {std::abs(a), std::abs(b)}),
                  [&] { return lab.witness(t, u, {{"v", amplitudes_json(g, v)}}); });
    const Complex c = inner(g, apply_laplacian(g, du), v);
    const Complex d = inner(g, du, dv);
    const Complex e = inner(g, u, apply_laplacian(g, dv));
    second.observe(relative(std::max({std::abs(c - d), std::abs(d - e), std::abs(c - e)}),
                            {std::abs(c), std::abs(d), std::abs(e)}),
                   [&] { return lab.witness(t, u, {{"v", amplitudes_json(g, v)}}); });
    const double nu2 = norm_squared(g, u);
    positive.observe(nu2 > 0.0 ? inner(g, du, u).real() / nu2 : 0.0, [&] { return lab.witness(t, u); });
  });
  out.push_back(first.finish(lab.cfg()));
  out.push_back(second.finish(lab.cfg()));
  out.push_back(positive.finish(lab.cfg()));
}

}  // namespace

LabReport run_lab(const TrialConfig& cfg, const std::vector<std::string>& suites) {
  std::vector<std::string> selected;
  for (const auto& s : suites) {
    if (s == "all") {
      selected = lab_suites();
      break;
    }
    if (std::find(lab_suites().begin(), lab_suites().end(), s) == lab_suites().end()) {
      throw Error(ErrorKind::input, "unknown_suite", "unknown lab suite '" + s + "'");
    }
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) selected.push_back(s);
  }
  static const std::map<std::string, void (*)(Lab&, std::vector<CheckResult>&)> runners = {
      {"product_rule", product_rule},
      {"expansion_identity", expansion_identity},
      {"commutator_bounds", commutator_bounds},
      {"localized_gradient_bound", localized_gradient_bound},
      {"squared_cutoff_bounds", squared_cutoff_bounds},
      {"q_bound", q_bound},
      {"scalar_inequalities", scalar_inequalities},
      {"green_identities", green_identities},
  };
  Lab lab(cfg);
  LabReport report;
  // Canonical order, independent of how the suites were listed.
  for (const auto& name : lab_suites()) {
    if (std::find(selected.begin(), selected.end(), name) != selected.end()) runners.at(name)(lab, report.checks);
  }
  return report;
}

}  // namespace magbilap
