#include "magbilap/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "magbilap/graph_io.hpp"
#include "magbilap/lab.hpp"
#include "magbilap/probe.hpp"
#include "magbilap/theorem.hpp"
#include "magbilap/truncation.hpp"

namespace magbilap {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json digests = nlohmann::json::array();
  for (const auto& d : inputs) digests.push_back({{"path", d.path}, {"sha256", d.sha256}});
  nlohmann::json j = {{"tool", "magbilap"},
                      {"version", kToolVersion},
                      {"command", command},
                      {"config", config},
                      {"inputs", std::move(digests)}};
  if (has_seed) j["seed"] = seed;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::input, "json_parse", what + " is not valid JSON: " + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Relative output paths land under $MAGBILAP_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("MAGBILAP_OUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const auto p = resolve_output(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw FileError("cannot write '" + p.string() + "'");
  file << text;
}

void emit(const Json& doc, const std::string& path, std::ostream& out) { write_text(path, doc.dump(2) + "\n", out); }

struct Common {
  std::string out;
  bool timestamp = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write the result to this file (relative paths honour MAGBILAP_OUT_DIR)");
  cmd->add_flag("--timestamp", c.timestamp, "Record the wall-clock time in the manifest");
}

RunManifest manifest(const std::string& command, Json config, const Common& c) {
  RunManifest m;
  m.command = command;
  m.config = std::move(config);
  if (c.timestamp) m.timestamp = utc_timestamp();
  return m;
}

struct FamilyOptions {
  std::string builder;
  std::optional<double> kappa;
  std::optional<double> potential_exponent;

  FamilySpec spec() const {
    Json j = {{"builder", builder}};
    if (kappa) j["kappa"] = *kappa;
    if (potential_exponent) j["potential_exponent"] = *potential_exponent;
    return load_family_spec(j);
  }
};

void add_family(CLI::App* cmd, FamilyOptions& f, bool required = true) {
  auto* opt = cmd->add_option("--builder", f.builder, "half_line_unit | half_line_sqrt | radial_tree");
  if (required) opt->required();
  cmd->add_option("--kappa", f.kappa, "Branching exponent of radial_tree");
  cmd->add_option("--potential-exponent", f.potential_exponent, "radial_tree potential W = -r^a");
}

// ---- stats -----------------------------------------------------------------

struct StatsOptions {
  Common common;
  FamilyOptions family;
  int n_max = 10;
  std::string format = "json";
  std::uint64_t vertex_cap = kDefaultVertexCap;
};

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  if (o.n_max < 1) throw Error(ErrorKind::input, "bad_n_max", "--n-max must be >= 1");
  const FamilySpec spec = o.family.spec();
  const GraphFamily f = build_example(spec);
  const int reachable = f.max_horizon(o.vertex_cap);
  if (reachable < o.n_max + 1) {
    throw Error(ErrorKind::capacity, "vertex_cap_exceeded",
                "d_n and p_n up to n = " + std::to_string(o.n_max) + " need radius " + std::to_string(o.n_max + 1) +
                    ", but only radius " + std::to_string(reachable) + " fits under the vertex cap");
  }
  const GrowthTable table(f.generate(std::min(2 * o.n_max + 1, reachable), o.vertex_cap));
  Json rows = Json::array();
  std::string csv = "n,d_n,p_n,beta_n,d_n_p_n_over_n\n";
  char line[160];
  for (int n = 1; n <= o.n_max; ++n) {
    const int d = table.d(n);
    const double p = table.p(n);
    const double ratio = d * p / n;
    Json row = {{"n", n}, {"d_n", d}, {"p_n", p}, {"beta_n", nullptr}, {"d_n_p_n_over_n", ratio}};
    std::string beta_text;
    if (2 * n <= table.max_n()) {
      row["beta_n"] = table.beta(n);
      std::snprintf(line, sizeof line, "%.17g", table.beta(n));
      beta_text = line;
    }
    rows.push_back(std::move(row));
    std::snprintf(line, sizeof line, "%d,%d,%.17g,%s,%.17g\n", n, d, p, beta_text.c_str(), ratio);
    csv += line;
  }
  if (o.format == "csv") {
    write_text(o.common.out, csv, out);
  } else {
    Json config = {{"family", save_family_spec(spec)}, {"n_max", o.n_max}, {"vertex_cap", o.vertex_cap}};
    Json doc = {{"manifest", manifest("stats", config, o.common).to_json()},
                {"family", f.name()},
                {"growth_model", f.growth_model() ? Json{{"d_n", f.growth_model()->degree_formula},
                                                          {"p_n", f.growth_model()->weight_formula}}
                                                    : Json(nullptr)},
                {"rows", std::move(rows)}};
    emit(doc, o.common.out, out);
  }
  return kExitOk;
}

// ---- check -----------------------------------------------------------------

struct CheckOptions {
  Common common;
  std::string instance;
  std::optional<int> horizon;
  bool empirical = false;
  std::uint64_t vertex_cap = kDefaultVertexCap;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const std::string text = read_file(o.instance);
  Json doc = parse_json(text, o.instance);
  if (o.horizon) doc["horizon"] = *o.horizon;
  if (o.empirical) doc["use_growth_model"] = false;
  const TheoremInstance instance = load_instance(doc);
  const HypothesisReport report = check_theorem(instance, o.vertex_cap);
  RunManifest m = manifest("check", doc, o.common);
  m.inputs.push_back({o.instance, sha256_hex(text)});
  emit({{"manifest", m.to_json()}, {"report", report.to_json()}}, o.common.out, out);
  return report.verdict == Verdict::satisfied ? kExitOk : kExitNotSatisfied;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  Common common;
  std::vector<std::string> suites{"all"};
  std::optional<std::uint64_t> seed;
  bool ci = false;
  int trials = 500;
  int n_min = 1;
  int n_max = 10;
  double tolerance = 1e-10;
  double positivity_slack = 1e-12;
  std::size_t sector_width = 4;
  int support_margin = 1;
  bool no_random_phase = false;
  std::vector<std::string> families;
  std::vector<double> eps_grid;
  std::string format = "json";
};

FamilySpec parse_family_token(const std::string& token) {
  const auto colon = token.find(':');
  Json j = {{"builder", token.substr(0, colon)}};
  if (colon != std::string::npos) {
    try {
      j["kappa"] = std::stod(token.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::input, "bad_family", "cannot read kappa in '" + token + "'");
    }
  }
  return load_family_spec(j);
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.ci && !o.seed) throw Error(ErrorKind::input, "seed_required", "--ci requires an explicit --seed");
  if (o.n_min < 1 || o.n_max < o.n_min) throw Error(ErrorKind::input, "bad_n_range", "need 1 <= --n-min <= --n-max");
  TrialConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = o.seed.value_or(1);
  cfg.tolerance = o.tolerance;
  cfg.positivity_slack = o.positivity_slack;
  cfg.sector_width = o.sector_width;
  cfg.support_margin = o.support_margin;
  cfg.random_phase = !o.no_random_phase;
  cfg.n_range.clear();
  for (int n = o.n_min; n <= o.n_max; ++n) cfg.n_range.push_back(n);
  if (!o.families.empty()) {
    cfg.families.clear();
    for (const auto& token : o.families) cfg.families.push_back(parse_family_token(token));
  }
  if (!o.eps_grid.empty()) cfg.eps_grid = o.eps_grid;
  const LabReport report = run_lab(cfg, o.suites);
  if (o.format == "table") {
    write_text(o.common.out, report.to_table(), out);
  } else {
    Json config = cfg.to_json();
    config["suites"] = o.suites;
    RunManifest m = manifest("verify", config, o.common);
    m.seed = cfg.seed;
    m.has_seed = true;
    emit({{"manifest", m.to_json()}, {"report", report.to_json()}}, o.common.out, out);
  }
  return report.all_passed() ? kExitOk : kExitChecksFailed;
}

// ---- probe -----------------------------------------------------------------

struct ProbeCliOptions {
  Common common;
  FamilyOptions family;
  std::vector<double> nus;
  bool consistency = false;
  int sign = 1;
  std::string method = "both";
  int shoot_horizon = 200;
  std::vector<int> horizons{20, 40, 60, 80};
  std::string csv;
  ProbeOptions thresholds;
};

int cmd_probe(const ProbeCliOptions& o, std::ostream& out) {
  const FamilySpec spec = o.family.spec();
  const GraphFamily f = build_example(spec);
  std::vector<double> nus = o.nus;
  if (o.consistency) nus = {0.5, 1.0, 2.0};
  if (nus.empty()) nus = {1.0};
  if (o.method != "both" && o.method != "shooting" && o.method != "rectangular") {
    throw Error(ErrorKind::input, "bad_method", "--method must be shooting, rectangular or both");
  }
  const bool shooting = o.method != "rectangular" && (o.method == "shooting" || f.is_path());
  const bool rectangular = o.method != "shooting";
  const ConsistencyReport report =
      probe_consistency(f, *f.potential_model(), nus, o.sign, shooting ? o.shoot_horizon : 0,
                        rectangular ? o.horizons : std::vector<int>{}, o.thresholds);
  if (!o.csv.empty()) {
    std::ostringstream csv;
    bool header = true;
    for (const auto& run : report.runs) {
      if (!run.shooting) continue;
      run.shooting->write_csv(csv, header);
      header = false;
    }
    write_text(o.csv, csv.str(), out);
  }
  Json config = {{"family", save_family_spec(spec)},
                 {"potential", f.potential_model()->description},
                 {"nu", nus},
                 {"sign", o.sign},
                 {"method", o.method},
                 {"shooting_horizon", shooting ? o.shoot_horizon : 0},
                 {"horizons", rectangular ? o.horizons : std::vector<int>{}},
                 {"divergence_factor", o.thresholds.divergence_factor},
                 {"decay_ratio", o.thresholds.decay_ratio},
                 {"reorthogonalize_every", o.thresholds.reorthogonalize_every},
                 {"decrease_factor", o.thresholds.decrease_factor},
                 {"decreasing_run", o.thresholds.decreasing_run}};
  emit({{"manifest", manifest("probe", config, o.common).to_json()}, {"report", report.to_json()}}, o.common.out,
       out);
  return kExitOk;
}

// ---- apply -----------------------------------------------------------------

struct ApplyOptions {
  Common common;
  std::string graph;
  FamilyOptions family;
  std::optional<int> horizon;
  std::string op;
  std::string amplitudes;
  std::string potential;
  std::string psi;
};

const Json& unwrap(const Json& doc, const char* key) {
  if (doc.is_object() && doc.contains(key) && doc[key].is_object()) return doc[key];
  return doc;
}

Amplitudes read_amplitudes(const MagneticGraph& g, const Json& doc) {
  const Json& map = unwrap(doc, "amplitudes");
  if (!map.is_object()) throw Error(ErrorKind::input, "schema", "amplitudes must be an object id -> [re, im]");
  Amplitudes u(g.vertex_count());
  for (const auto& [id, value] : map.items()) {
    const VertexIndex x = g.index_of(id);
    if (value.is_number()) {
      u[x] = value.get<double>();
    } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
      u[x] = Complex(value[0].get<double>(), value[1].get<double>());
    } else {
      throw Error(ErrorKind::input, "schema", "amplitude of '" + id + "' must be [re, im] or a number");
    }
  }
  return u;
}

RealField read_field(const MagneticGraph& g, const Json& doc, const char* what) {
  const Json& map = unwrap(doc, what);
  if (!map.is_object()) throw Error(ErrorKind::input, "schema", std::string(what) + " must be an object id -> number");
  RealField psi(g.vertex_count(), 0.0);
  for (const auto& [id, value] : map.items()) {
    if (!value.is_number()) throw Error(ErrorKind::input, "schema", std::string(what) + " of '" + id + "' must be a number");
    psi[g.index_of(id)] = value.get<double>();
  }
  return psi;
}

int cmd_apply(const ApplyOptions& o, std::ostream& out) {
  RunManifest m;
  Json config = {{"op", o.op}};
  std::optional<MagneticGraph> graph;
  std::optional<GraphFamily> family;
  std::vector<InputDigest> inputs;
  if (!o.graph.empty()) {
    if (!o.family.builder.empty()) throw Error(ErrorKind::input, "ambiguous_graph", "give --graph or --builder, not both");
    const std::string text = read_file(o.graph);
    graph.emplace(load_graph(parse_json(text, o.graph)));
    inputs.push_back({o.graph, sha256_hex(text)});
    config["graph"] = o.graph;
  } else {
    if (o.family.builder.empty() || !o.horizon) {
      throw Error(ErrorKind::input, "missing_graph", "give --graph FILE or --builder NAME --horizon N");
    }
    family.emplace(build_example(o.family.spec()));
    graph.emplace(family->generate(*o.horizon));
    config["family"] = save_family_spec(family->spec());
    config["horizon"] = *o.horizon;
  }
  const MagneticGraph& g = *graph;
  const std::string amp_text = read_file(o.amplitudes);
  const Amplitudes u = read_amplitudes(g, parse_json(amp_text, o.amplitudes));
  inputs.push_back({o.amplitudes, sha256_hex(amp_text)});
  config["amplitudes"] = o.amplitudes;

  Amplitudes result;
  if (o.op == "laplacian") {
    result = apply_laplacian(g, u);
  } else if (o.op == "free_laplacian") {
    result = apply_free_laplacian(g, u);
  } else if (o.op == "bilaplacian") {
    result = apply_bilaplacian(g, u);
  } else if (o.op == "H") {
    Potential w = Potential::zero(g);
    if (!o.potential.empty()) {
      const std::string text = read_file(o.potential);
      w.values = read_field(g, parse_json(text, o.potential), "potential");
      inputs.push_back({o.potential, sha256_hex(text)});
      config["potential"] = o.potential;
    } else if (family) {
      w = Potential::radial(g, *family->potential_model());
      config["potential"] = family->potential_model()->description;
    } else {
      config["potential"] = "zero";
    }
    result = apply_H(g, w, u);
  } else if (o.op == "P") {
    if (o.psi.empty()) throw Error(ErrorKind::input, "missing_psi", "--op P needs --psi FILE");
    const std::string text = read_file(o.psi);
    const RealField psi = read_field(g, parse_json(text, o.psi), "psi");
    inputs.push_back({o.psi, sha256_hex(text)});
    config["psi"] = o.psi;
    result = apply_P(g, psi, u);
  } else {
    throw Error(ErrorKind::input, "bad_op", "--op must be laplacian, free_laplacian, bilaplacian, H or P");
  }
  Json amps = Json::object();
  for (auto x : result.support()) amps[g.id(x)] = {result[x].real(), result[x].imag()};
  m = manifest("apply", config, o.common);
  m.inputs = std::move(inputs);
  emit({{"manifest", m.to_json()}, {"amplitudes", std::move(amps)}}, o.common.out, out);
  return kExitOk;
}

// ---- export ----------------------------------------------------------------

struct ExportOptions {
  Common common;
  FamilyOptions family;
  int n = 10;
  std::string boundary = "dirichlet";
  double shift_re = 0.0;
  double shift_im = 0.0;
  std::string sidecar;
  std::uint64_t vertex_cap = kDefaultVertexCap;
};

int cmd_export(const ExportOptions& o, std::ostream& out) {
  const FamilySpec spec = o.family.spec();
  const GraphFamily f = build_example(spec);
  const Boundary boundary = boundary_from_string(o.boundary);
  const SparseOperator a =
      assemble_truncation(f, *f.potential_model(), o.n, boundary, Complex(o.shift_re, o.shift_im), o.vertex_cap);
  Json config = {{"family", save_family_spec(spec)},
                 {"potential", f.potential_model()->description},
                 {"n", o.n},
                 {"boundary", o.boundary},
                 {"shift", {o.shift_re, o.shift_im}}};
  std::ostringstream mm;
  write_matrix_market(mm, a, "magbilap export " + f.name() + " N=" + std::to_string(o.n) + " boundary=" + o.boundary);
  write_text(o.common.out, mm.str(), out);
  std::string sidecar = o.sidecar;
  if (sidecar.empty() && !o.common.out.empty()) sidecar = o.common.out + ".json";
  if (!sidecar.empty()) {
    Json doc = matrix_sidecar(a);
    doc["manifest"] = manifest("export", config, o.common).to_json();
    write_text(sidecar, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::input: return kExitUsage;
    case ErrorKind::validation: return kExitData;
    case ErrorKind::margin_violation:
    case ErrorKind::insufficient_horizon:
    case ErrorKind::capacity: return kExitUnavailable;
    case ErrorKind::structural: return kExitSoftware;
  }
  return kExitSoftware;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnetic bi-Laplacian toolkit for weighted graphs", "magbilap"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kToolVersion);

  StatsOptions stats;
  auto* s = app.add_subcommand("stats", "Tabulate d_n, p_n, beta_n and d_n p_n / n for a family");
  add_common(s, stats.common);
  add_family(s, stats.family);
  s->add_option("--n-max", stats.n_max, "Largest n")->capture_default_str();
  s->add_option("--format", stats.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  s->add_option("--vertex-cap", stats.vertex_cap, "Largest generated ball")->capture_default_str();

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Check the self-adjointness theorem's hypotheses for an instance file");
  add_common(c, check.common);
  c->add_option("instance", check.instance, "Instance JSON file")->required();
  c->add_option("--horizon", check.horizon, "Override the instance horizon");
  c->add_flag("--empirical", check.empirical, "Ignore closed-form growth models");
  c->add_option("--vertex-cap", check.vertex_cap, "Largest generated ball")->capture_default_str();

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run the randomized identity and inequality lab");
  add_common(v, verify.common);
  v->add_option("--suite", verify.suites, "Suite name or 'all' (repeatable)")->delimiter(',');
  v->add_option("--seed", verify.seed, "PRNG seed (default 1)");
  v->add_flag("--ci", verify.ci, "Require an explicit seed");
  v->add_option("--trials", verify.trials, "Trials per family and check")->capture_default_str();
  v->add_option("--n-min", verify.n_min, "Smallest cut-off index")->capture_default_str();
  v->add_option("--n-max", verify.n_max, "Largest cut-off index")->capture_default_str();
  v->add_option("--tolerance", verify.tolerance, "Relative tolerance")->capture_default_str();
  v->add_option("--positivity-slack", verify.positivity_slack, "Slack for the quadratic form")->capture_default_str();
  v->add_option("--sector-width", verify.sector_width, "Support vertices per sphere on trees")->capture_default_str();
  v->add_option("--support-margin", verify.support_margin, "u lives on B(2n + margin)")->capture_default_str();
  v->add_flag("--no-random-phase", verify.no_random_phase, "Keep theta = 0 on lab hosts");
  v->add_option("--families", verify.families, "e.g. half_line_unit,radial_tree:0.5")->delimiter(',');
  v->add_option("--eps", verify.eps_grid, "eps grid for the localized gradient bound")->delimiter(',');
  v->add_option("--format", verify.format, "json | table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

  ProbeCliOptions probe;
  auto* p = app.add_subcommand("probe", "Probe deficiency indices by shooting and rectangular residuals");
  add_common(p, probe.common);
  add_family(p, probe.family);
  p->add_option("--nu", probe.nus, "Spectral parameter(s); default 1")->delimiter(',');
  p->add_flag("--consistency", probe.consistency, "Run at nu = 0.5, 1, 2 and require agreement");
  p->add_option("--sign", probe.sign, "+1 or -1")->check(CLI::IsMember({1, -1}))->capture_default_str();
  p->add_option("--method", probe.method, "shooting | rectangular | both")->capture_default_str();
  p->add_option("--shoot-horizon", probe.shoot_horizon, "Shooting horizon")->capture_default_str();
  p->add_option("--horizons", probe.horizons, "Rectangular horizons")->delimiter(',');
  p->add_option("--csv", probe.csv, "Write shooting profiles as CSV");
  p->add_option("--divergence-factor", probe.thresholds.divergence_factor)->capture_default_str();
  p->add_option("--decay-ratio", probe.thresholds.decay_ratio)->capture_default_str();
  p->add_option("--reorthogonalize-every", probe.thresholds.reorthogonalize_every)->capture_default_str();
  p->add_option("--decrease-factor", probe.thresholds.decrease_factor)->capture_default_str();
  p->add_option("--decreasing-run", probe.thresholds.decreasing_run)->capture_default_str();
  p->add_option("--svd-cap", probe.thresholds.svd_column_cap)->capture_default_str();

  ApplyOptions apply;
  auto* a = app.add_subcommand("apply", "Apply an operator to amplitudes");
  add_common(a, apply.common);
  a->add_option("--graph", apply.graph, "Graph JSON file");
  add_family(a, apply.family, false);
  a->add_option("--horizon", apply.horizon, "Radius of the generated ball (with --builder)");
  a->add_option("--op", apply.op, "laplacian | free_laplacian | bilaplacian | H | P")->required();
  a->add_option("--amplitudes", apply.amplitudes, "JSON map id -> [re, im]")->required();
  a->add_option("--potential", apply.potential, "JSON map id -> W (H only)");
  a->add_option("--psi", apply.psi, "JSON map id -> psi (P only)");

  ExportOptions exp;
  auto* e = app.add_subcommand("export", "Export a truncation of H as Matrix Market");
  add_common(e, exp.common);
  add_family(e, exp.family);
  e->add_option("--n", exp.n, "Horizon N")->capture_default_str();
  e->add_option("--boundary", exp.boundary, "dirichlet | interior_rows")->capture_default_str();
  e->add_option("--shift-re", exp.shift_re, "Real part of a diagonal shift");
  e->add_option("--shift-im", exp.shift_im, "Imaginary part of a diagonal shift");
  e->add_option("--sidecar", exp.sidecar, "Sidecar JSON (default: <out>.json)");
  e->add_option("--vertex-cap", exp.vertex_cap, "Largest generated ball")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_stats(stats, out);
    if (c->parsed()) return cmd_check(check, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (p->parsed()) return cmd_probe(probe, out);
    if (a->parsed()) return cmd_apply(apply, out);
    if (e->parsed()) return cmd_export(exp, out);
  } catch (const Error& error) {
    err << "magbilap: " << to_string(error.kind()) << " error [" << error.code() << "]: " << error.what() << "\n";
    return exit_code(error);
  } catch (const FileError& error) {
    err << "magbilap: " << error.what() << "\n";
    return kExitNoInput;
  } catch (const std::exception& error) {
    err << "magbilap: internal error: " << error.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("magbilap");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace magbilap
