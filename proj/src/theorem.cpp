#include "magbilap/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "magbilap/graph_io.hpp"

namespace magbilap {

QFunction QFunction::power(double scale, double exponent, double offset) {
  if (!std::isfinite(scale) || !std::isfinite(exponent) || !std::isfinite(offset) || exponent < 0.0) {
    throw Error(ErrorKind::input, "bad_q", "q(s) = scale * s^exponent + offset needs finite values, exponent >= 0");
  }
  QFunction q;
  q.scale_ = scale;
  q.exponent_ = exponent;
  q.offset_ = offset;
  return q;
}

QFunction QFunction::tabulated(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::input, "bad_q", "tabulated q needs at least one value");
  QFunction q;
  q.table_ = std::move(values);
  return q;
}

double QFunction::operator()(double s) const {
  if (s < 0.0) throw Error(ErrorKind::input, "bad_q", "q is defined on [0, inf)");
  if (table_.empty()) {
    const double power = exponent_ == 0.0 ? 1.0 : std::pow(s, exponent_);
    return scale_ * power + offset_;
  }
  const auto last = static_cast<double>(table_.size() - 1);
  if (s > last) {
    throw Error(ErrorKind::input, "q_undefined",
                "tabulated q ends at s = " + std::to_string(table_.size() - 1) + ", asked for " +
                    std::to_string(s));
  }
  const auto k = static_cast<std::size_t>(std::floor(s));
  if (static_cast<double>(k) == s) return table_[k];
  const double t = s - static_cast<double>(k);
  return (1.0 - t) * table_[k] + t * table_[k + 1];
}

nlohmann::json QFunction::to_json() const {
  if (table_.empty()) {
    return {{"kind", "power"}, {"scale", scale_}, {"exponent", exponent_}, {"offset", offset_}};
  }
  return {{"kind", "tabulated"}, {"values", table_}};
}

QCertificate derive_certificate(const QFunction& q, double alpha) {
  if (!q.is_power()) {
    throw Error(ErrorKind::input, "certificate_required", "tabulated q needs an explicit certificate");
  }
  if (q.scale() < 0.0 || q.offset() < 0.0) {
    throw Error(ErrorKind::input, "certificate_required",
                "closed-form certificates need non-negative scale and offset");
  }
  QCertificate c;
  c.q = q;
  c.alpha = alpha;
  if (alpha == 0.0) {
    if (q.scale() != 0.0 && q.exponent() != 0.0) {
      throw Error(ErrorKind::input, "certificate_unavailable", "q grows, so q(s) = O(1) fails");
    }
    c.c_q = q.scale() + q.offset();
    c.s0 = 0.0;
    return c;
  }
  if (q.scale() != 0.0 && q.exponent() > alpha) {
    throw Error(ErrorKind::input, "certificate_unavailable", "q grows faster than s^alpha");
  }
  // For s >= 1: scale * s^p <= scale * s^alpha and offset <= offset * s^alpha.
  c.c_q = q.scale() + q.offset();
  c.s0 = 1.0;
  return c;
}

RadialFunction radial_power(double scale, double exponent) {
  return {"W(r) = " + std::to_string(scale) + " * r^" + std::to_string(exponent),
          [scale, exponent](int r) {
            return scale * (exponent == 0.0 ? 1.0 : std::pow(static_cast<double>(r), exponent));
          }};
}

RadialFunction radial_table(std::vector<double> values) {
  const auto size = values.size();
  return {"W tabulated on r = 0.." + std::to_string(size == 0 ? 0 : size - 1),
          [values = std::move(values)](int r) {
            if (r < 0 || static_cast<std::size_t>(r) >= values.size()) {
              throw Error(ErrorKind::input, "potential_undefined",
                          "potential is undefined at radius " + std::to_string(r));
            }
            return values[static_cast<std::size_t>(r)];
          }};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::not_satisfied: return "not_satisfied";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(AlphaCase c) { return c == AlphaCase::zero ? "zero" : "positive"; }

const char* to_string(Basis b) {
  return b == Basis::from_growth_model ? "from_growth_model" : "empirical_to_horizon";
}

MinorantResult check_minorant(const MagneticGraph& g, const Potential& w, const QCertificate& qc,
                              int horizon) {
  if (w.values.size() != g.vertex_count()) {
    throw Error(ErrorKind::input, "potential_undefined", "potential does not cover the ball");
  }
  if (g.max_radius() < horizon) {
    throw Error(ErrorKind::insufficient_horizon, "insufficient_horizon",
                "ball reaches radius " + std::to_string(g.max_radius()) + " < " + std::to_string(horizon));
  }
  MinorantResult result;
  result.checked_to = horizon;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const int r = g.radius(x);
    if (r > horizon) continue;
    const double bound = -qc.q(static_cast<double>(r));
    if (w.values[x] < bound) {
      result.passed = false;
      result.witness = g.id(x);
      result.witness_w = w.values[x];
      result.witness_bound = bound;
      break;
    }
  }
  return result;
}

MinorantResult check_minorant(const GraphFamily& f, const RadialFunction& w, const QCertificate& qc,
                              int horizon, std::uint64_t vertex_cap) {
  const MagneticGraph g = f.generate(horizon, vertex_cap);
  return check_minorant(g, Potential::radial(g, w), qc, horizon);
}

namespace {

constexpr double kExponentTolerance = 1e-12;

bool model_matches(const GrowthModel& model, const GrowthTable& table, int horizon, std::string& why) {
  for (int n = 1; n <= horizon; ++n) {
    if (model.degree(n) != table.d(n)) {
      why = "closed-form d_n disagrees with the generated ball at n = " + std::to_string(n);
      return false;
    }
    const double p = table.p(n);
    if (std::abs(model.max_weight(n) - p) > 1e-12 * std::max(1.0, p)) {
      why = "closed-form p_n disagrees with the generated ball at n = " + std::to_string(n);
      return false;
    }
  }
  return true;
}

GrowthCheck growth_from_table(const GraphFamily& f, const GrowthTable& table, const QCertificate& qc,
                              int horizon, bool use_growth_model) {
  const double alpha = qc.alpha;
  const double mu0 = f.mu_floor();
  GrowthCheck out;
  out.alpha_case = alpha == 0.0 ? AlphaCase::zero : AlphaCase::positive;

  for (int n = 1; n <= horizon; ++n) {
    GrowthRow row{n, table.d(n), table.p(n), 0.0};
    const double dp = row.d_n * row.p_n;
    row.scaled = alpha == 0.0 ? dp / n : std::pow(static_cast<double>(n), alpha - 1.0) * dp;
    out.rows.push_back(row);
  }

  // The tail starts at a fixed n rather than a fraction of the horizon: an
  // increase, once seen, stays in every longer prefix, so a longer horizon can
  // only weaken an empirical verdict.
  out.tail_non_increasing = true;
  for (int n = std::min(kTailStart, horizon); n < horizon; ++n) {
    const double a = out.rows[n - 1].scaled;
    const double b = out.rows[n].scaled;
    if (b > a * (1.0 + 1e-12)) out.tail_non_increasing = false;
  }

  // Suffix maxima of d_n p_n / n give the smallest admissible K for each N.
  std::vector<double> suffix(horizon + 2, 0.0);
  for (int n = horizon; n >= 1; --n) {
    suffix[n] = std::max(suffix[n + 1], out.rows[n - 1].d_n * out.rows[n - 1].p_n / n);
  }
  for (int n = 1; n <= horizon; ++n) {
    if (suffix[n] < mu0 / 2.0 - kGrowthTolerance) {
      out.K = suffix[n];
      out.N = n;
      break;
    }
  }
  const int half = horizon / 2;
  std::vector<double> beta_suffix(half + 2, 0.0);
  for (int n = half; n >= 1; --n) beta_suffix[n] = std::max(beta_suffix[n + 1], table.beta(n));
  for (int n = 1; n <= half; ++n) {
    if (beta_suffix[n] < 1.0) {
      out.C1 = beta_suffix[n];
      out.N1 = n;
      break;
    }
  }
  if (out.C1) out.notes.push_back("C1 and N1 are empirical to n = " + std::to_string(half));

  const auto& model = f.growth_model();
  if (use_growth_model && model) {
    std::string why;
    if (!model_matches(*model, table, horizon, why)) {
      out.basis = Basis::empirical_to_horizon;
      out.verdict = Verdict::inconclusive;
      out.notes.push_back(why);
      return out;
    }
    out.basis = Basis::from_growth_model;
    const double e = model->exponent;
    if (alpha > 0.0) {
      const bool bounded = alpha - 1.0 + e <= kExponentTolerance;
      out.verdict = bounded ? Verdict::satisfied : Verdict::not_satisfied;
      out.notes.push_back("n^(alpha-1) d_n p_n ~ n^" + std::to_string(alpha - 1.0 + e) +
                          (bounded ? " is bounded" : " is unbounded"));
    } else if (e < 1.0 - kExponentTolerance) {
      out.verdict = Verdict::satisfied;
      out.notes.push_back("d_n p_n / n -> 0, so some K < mu0/2 works eventually");
    } else if (e <= 1.0 + kExponentTolerance) {
      const bool ok = model->coefficient < mu0 / 2.0 - kGrowthTolerance;
      out.verdict = ok ? Verdict::satisfied : Verdict::not_satisfied;
      out.notes.push_back("d_n p_n / n -> " + std::to_string(model->coefficient) +
                          (ok ? " < mu0/2" : " >= mu0/2"));
    } else {
      out.verdict = Verdict::not_satisfied;
      out.notes.push_back("d_n p_n / n grows like n^" + std::to_string(e - 1.0));
    }
    if (out.verdict == Verdict::satisfied && out.alpha_case == AlphaCase::zero && !out.N) {
      out.notes.push_back("no N <= horizon reaches K < mu0/2 yet; the model guarantees one exists");
    }
    return out;
  }

  out.basis = Basis::empirical_to_horizon;
  if (alpha > 0.0) {
    out.verdict = out.tail_non_increasing ? Verdict::satisfied : Verdict::inconclusive;
  } else {
    out.verdict = out.K && out.tail_non_increasing ? Verdict::satisfied : Verdict::inconclusive;
  }
  if (!out.tail_non_increasing) out.notes.push_back("sequence increases somewhere between n = 3 and the horizon");
  return out;
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::input, "bad_alpha", "alpha must lie in [0, 1]");
  }
}

void require_horizon(int horizon) {
  if (horizon < 1) throw Error(ErrorKind::input, "bad_horizon", "horizon must be >= 1");
}

}  // namespace

GrowthCheck check_growth(const GraphFamily& f, const QCertificate& qc, int horizon, bool use_growth_model,
                         std::uint64_t vertex_cap) {
  require_alpha(qc.alpha);
  require_horizon(horizon);
  const GrowthTable table(f.generate(horizon + 1, vertex_cap));
  return growth_from_table(f, table, qc, horizon, use_growth_model);
}

HypothesisReport check_theorem(const TheoremInstance& instance, std::uint64_t vertex_cap) {
  const QCertificate& qc = instance.certificate;
  require_alpha(qc.alpha);
  require_horizon(instance.horizon);
  const int horizon = instance.horizon;
  const GraphFamily f = build_example(instance.family);
  const MagneticGraph g = f.generate(horizon + 1, vertex_cap);

  HypothesisReport report;
  report.alpha = qc.alpha;
  report.alpha_case = qc.alpha == 0.0 ? AlphaCase::zero : AlphaCase::positive;
  report.horizon = horizon;
  report.mu_floor_used = f.mu_floor();

  const auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok ? Verdict::satisfied : Verdict::not_satisfied, std::move(detail)});
  };

  double mu_min = std::numeric_limits<double>::infinity();
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) mu_min = std::min(mu_min, g.measure(x));
  add("mu_floor", mu_min >= f.mu_floor(), "min mu on the ball = " + std::to_string(mu_min));

  // q is only ever evaluated at integer radii and at 2n, so the grid 0..2H suffices.
  const int grid_end = 2 * horizon;
  bool nonnegative = true, monotone = true, certified = true;
  std::string q_detail, cert_detail;
  double previous = qc.q(0.0);
  for (int s = 0; s <= grid_end; ++s) {
    const double v = qc.q(static_cast<double>(s));
    if (v < 0.0 && nonnegative) {
      nonnegative = false;
      q_detail = "q(" + std::to_string(s) + ") < 0";
    }
    if (v < previous && monotone) {
      monotone = false;
      q_detail = "q decreases at s = " + std::to_string(s);
    }
    previous = v;
    if (s >= qc.s0) {
      const double bound = qc.c_q * (qc.alpha == 0.0 ? 1.0 : std::pow(static_cast<double>(s), qc.alpha));
      if (v > bound * (1.0 + 1e-12) && certified) {
        certified = false;
        cert_detail = "q(" + std::to_string(s) + ") = " + std::to_string(v) + " exceeds c_q s^alpha";
      }
    }
  }
  add("q_nonnegative", nonnegative, nonnegative ? "q >= 0 on 0.." + std::to_string(grid_end) : q_detail);
  add("q_monotone", monotone, monotone ? "q non-decreasing on 0.." + std::to_string(grid_end) : q_detail);
  add("q_certificate", certified,
      certified ? "q(s) <= " + std::to_string(qc.c_q) + " s^alpha for s0 <= s <= " + std::to_string(grid_end)
                : cert_detail);

  report.minorant = check_minorant(g, Potential::radial(g, instance.potential), qc, horizon);
  report.w_minorant_checked_to = horizon;
  add("w_minorant", report.minorant.passed,
      report.minorant.passed ? "W(x) >= -q(r(x)) for r(x) <= " + std::to_string(horizon)
                             : "violated at vertex " + *report.minorant.witness);

  report.growth = growth_from_table(f, GrowthTable(g), qc, horizon, instance.use_growth_model);
  report.checks.push_back({"growth", report.growth.verdict, to_string(report.growth.basis)});

  report.verdict = Verdict::satisfied;
  for (const auto& c : report.checks) {
    if (c.verdict == Verdict::not_satisfied) {
      report.verdict = Verdict::not_satisfied;
      break;
    }
    if (c.verdict == Verdict::inconclusive) report.verdict = Verdict::inconclusive;
  }
  return report;
}

nlohmann::json HypothesisReport::to_json() const {
  using nlohmann::json;
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  }
  json rows = json::array();
  for (const auto& r : growth.rows) {
    rows.push_back({{"n", r.n}, {"d_n", r.d_n}, {"p_n", r.p_n}, {"scaled", r.scaled}});
  }
  const auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json minorant_json = {{"passed", minorant.passed}, {"checked_to", minorant.checked_to}};
  if (minorant.witness) {
    minorant_json["witness"] = *minorant.witness;
    minorant_json["witness_w"] = minorant.witness_w;
    minorant_json["witness_bound"] = minorant.witness_bound;
  }
  return {{"verdict", to_string(verdict)},
          {"alpha_case", to_string(alpha_case)},
          {"alpha", alpha},
          {"horizon", horizon},
          {"mu_floor_used", mu_floor_used},
          {"w_minorant_checked_to", w_minorant_checked_to},
          {"checks", std::move(checks_json)},
          {"minorant", std::move(minorant_json)},
          {"growth",
           {{"verdict", to_string(growth.verdict)},
            {"basis", to_string(growth.basis)},
            {"scaled_sequence", alpha_case == AlphaCase::zero ? "d_n p_n / n" : "n^(alpha-1) d_n p_n"},
            {"tail_non_increasing", growth.tail_non_increasing},
            {"K", opt(growth.K)},
            {"N", opt(growth.N)},
            {"C1", opt(growth.C1)},
            {"N1", opt(growth.N1)},
            {"notes", growth.notes},
            {"evidence", std::move(rows)}}}};
}

TheoremInstance load_instance(const nlohmann::json& document) {
  TheoremInstance instance;
  instance.family = load_family_spec(require_field(document, "family", "instance"));
  const GraphFamily f = build_example(instance.family);

  if (auto it = document.find("potential"); it == document.end()) {
    instance.potential = *f.potential_model();
  } else {
    const std::string kind = require_field(*it, "kind", "instance.potential").get<std::string>();
    if (kind == "family_default") {
      instance.potential = *f.potential_model();
    } else if (kind == "power") {
      instance.potential = radial_power(require_number(*it, "scale", "instance.potential"),
                                        require_number(*it, "exponent", "instance.potential"));
    } else if (kind == "tabulated") {
      const auto& values = require_field(*it, "values", "instance.potential");
      if (!values.is_array()) throw Error(ErrorKind::input, "schema", "instance.potential.values must be an array");
      instance.potential = radial_table(values.get<std::vector<double>>());
    } else {
      throw Error(ErrorKind::input, "schema", "unknown potential kind '" + kind + "'");
    }
  }

  const auto& q_doc = require_field(document, "q", "instance");
  const std::string q_kind = require_field(q_doc, "kind", "instance.q").get<std::string>();
  QFunction q = QFunction::constant(1.0);
  if (q_kind == "power") {
    q = QFunction::power(require_number(q_doc, "scale", "instance.q"), require_number(q_doc, "exponent", "instance.q"),
                         require_number(q_doc, "offset", "instance.q"));
  } else if (q_kind == "constant") {
    q = QFunction::constant(require_number(q_doc, "value", "instance.q"));
  } else if (q_kind == "tabulated") {
    const auto& values = require_field(q_doc, "values", "instance.q");
    if (!values.is_array()) throw Error(ErrorKind::input, "schema", "instance.q.values must be an array");
    q = QFunction::tabulated(values.get<std::vector<double>>());
  } else {
    throw Error(ErrorKind::input, "schema", "unknown q kind '" + q_kind + "'");
  }
  const double alpha = require_number(document, "alpha", "instance");
  require_alpha(alpha);
  if (auto it = document.find("certificate"); it != document.end()) {
    instance.certificate.q = q;
    instance.certificate.alpha = alpha;
    instance.certificate.c_q = require_number(*it, "c_q", "instance.certificate");
    instance.certificate.s0 = require_number(*it, "s0", "instance.certificate");
  } else {
    instance.certificate = derive_certificate(q, alpha);
  }
  if (auto it = document.find("horizon"); it != document.end()) {
    if (!it->is_number_integer()) throw Error(ErrorKind::input, "schema", "instance.horizon must be an integer");
    instance.horizon = it->get<int>();
  }
  if (auto it = document.find("use_growth_model"); it != document.end()) {
    if (!it->is_boolean()) throw Error(ErrorKind::input, "schema", "instance.use_growth_model must be a boolean");
    instance.use_growth_model = it->get<bool>();
  }
  return instance;
}

}  // namespace magbilap
