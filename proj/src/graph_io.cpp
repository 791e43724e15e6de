#include "magbilap/graph_io.hpp"

namespace magbilap {

namespace {

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorKind::input, "schema", message);
}

const std::string& require_string(const Json& object, const std::string& key, const std::string& where) {
  const Json& value = require_field(object, key, where);
  if (!value.is_string()) schema_error(where + "." + key + " must be a string");
  return value.get_ref<const std::string&>();
}

}  // namespace

const Json& require_field(const Json& object, const std::string& key, const std::string& where) {
  if (!object.is_object()) schema_error(where + " must be an object");
  auto it = object.find(key);
  if (it == object.end()) schema_error(where + " is missing required field '" + key + "'");
  return *it;
}

double require_number(const Json& object, const std::string& key, const std::string& where) {
  const Json& value = require_field(object, key, where);
  if (!value.is_number()) schema_error(where + "." + key + " must be a number");
  return value.get<double>();
}

MagneticGraph load_graph(const Json& document) {
  const std::string root = require_string(document, "root", "graph");
  const double mu_floor = require_number(document, "mu_floor", "graph");
  const Json& vertices = require_field(document, "vertices", "graph");
  const Json& edges = require_field(document, "edges", "graph");
  if (!vertices.is_array()) schema_error("graph.vertices must be an array");
  if (!edges.is_array()) schema_error("graph.edges must be an array");

  MagneticGraph::Builder builder(mu_floor);
  std::unordered_map<std::string, VertexIndex> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "graph.vertices[" + std::to_string(i) + "]";
    const std::string id = require_string(vertices[i], "id", where);
    const double mu = require_number(vertices[i], "mu", where);
    bool complete = true;
    if (auto it = vertices[i].find("complete"); it != vertices[i].end()) {
      if (!it->is_boolean()) schema_error(where + ".complete must be a boolean");
      complete = it->get<bool>();
    }
    index[id] = builder.add_vertex(id, mu, complete);
  }
  const auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw Error(ErrorKind::validation, "unknown_vertex", "edge refers to undeclared vertex '" + id + "'");
    }
    return it->second;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "graph.edges[" + std::to_string(i) + "]";
    const VertexIndex u = lookup(require_string(edges[i], "u", where));
    const VertexIndex v = lookup(require_string(edges[i], "v", where));
    const double b = require_number(edges[i], "b", where);
    const double theta = require_number(edges[i], "theta", where);
    builder.add_edge(u, v, b, theta);
  }
  auto root_it = index.find(root);
  if (root_it == index.end()) {
    throw Error(ErrorKind::validation, "unknown_root", "root '" + root + "' is not a declared vertex");
  }
  builder.set_root(root_it->second);
  return std::move(builder).build();
}

MagneticGraph load_graph_text(const std::string& text) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema_error(std::string("graph document is not valid JSON: ") + e.what());
  }
  return load_graph(document);
}

Json save_graph(const MagneticGraph& g) {
  Json vertices = Json::array();
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    Json v = {{"id", g.id(x)}, {"mu", g.measure(x)}};
    if (!g.is_complete(x)) v["complete"] = false;
    vertices.push_back(std::move(v));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"b", e.weight}, {"theta", e.angle}});
  }
  return {{"root", g.id(g.root())},
          {"mu_floor", g.mu_floor()},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}};
}

FamilySpec load_family_spec(const Json& document) {
  FamilySpec spec;
  spec.kind = family_kind_from_string(require_string(document, "builder", "family"));
  if (spec.kind == FamilyKind::radial_tree) {
    spec.kappa = require_number(document, "kappa", "family");
  } else if (document.contains("kappa")) {
    schema_error("family.kappa only applies to radial_tree");
  }
  if (document.contains("potential_exponent")) {
    spec.potential_exponent = require_number(document, "potential_exponent", "family");
  }
  return spec;
}

Json save_family_spec(const FamilySpec& spec) {
  Json j = {{"builder", to_string(spec.kind)}};
  if (spec.kind == FamilyKind::radial_tree) j["kappa"] = spec.kappa;
  if (spec.potential_exponent) j["potential_exponent"] = *spec.potential_exponent;
  return j;
}

}  // namespace magbilap
