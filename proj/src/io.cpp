#include "dglakit/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dglakit/fixtures.hpp"

namespace dglakit {

std::string_view kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Dgla: return "dgla";
    case FixtureKind::Quiver: return "quiver";
    case FixtureKind::PathAlgebraComplex: return "path-algebra-complex";
  }
  return "dgla";
}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::SchemaViolation, path + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(child(path, key), "missing required field");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

void allow_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema(child(path, it.key()), "unknown field");
  }
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

long long get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long long>();
}

std::size_t get_size(const Json& j, const std::string& path) {
  const long long v = get_int(j, path);
  if (v < 0) schema(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

Scalar get_scalar(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "rationals are encoded as strings \"p/q\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const Error& e) {
    schema(path, e.message());
  }
}

int get_degree_key(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (...) {
    schema(child(path, key), "degree keys must be integers");
  }
  if (used != key.size() || std::to_string(v) != key) schema(child(path, key), "degree keys must be integers");
  return v;
}

Matrix get_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of rows");
  if (j.size() != rows) {
    schema(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string rp = child(path, r);
    if (!row.is_array()) schema(rp, "expected an array");
    if (row.size() != cols) schema(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = get_scalar(row[c], child(rp, c));
  }
  return m;
}

Vector get_vector(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) schema(path, "expected an array of " + std::to_string(n) + " rationals");
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(get_scalar(j[i], child(path, i)));
  return v;
}

// Runs `fn`, prefixing any domain error message with the field path.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

// ---------------------------------------------------------------- dgla

std::map<int, Matrix> get_degree_matrices(const Json& j, const GradedVectorSpace& space, const std::string& path,
                                          bool differential) {
  std::map<int, Matrix> out;
  if (!j.is_object()) schema(path, "expected an object keyed by degree");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const int n = get_degree_key(it.key(), path);
    const std::size_t rows = differential ? space.dim(n + 1) : space.dim(n);
    out.emplace(n, get_matrix(it.value(), rows, space.dim(n), child(path, it.key())));
  }
  return out;
}

DglaFixture parse_dgla(const Json& j, const ParseOptions& options) {
  allow_keys(j, {"kind", "name", "description", "degrees", "labels", "differential", "bracket", "action", "pairings",
                 "involution"},
             "$");
  std::map<int, std::size_t> dims;
  const Json& degrees = field(j, "degrees", "$");
  if (!degrees.is_object()) schema("$.degrees", "expected an object keyed by degree");
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    dims[get_degree_key(it.key(), "$.degrees")] = get_size(it.value(), child("$.degrees", it.key()));
  }
  std::map<int, std::vector<std::string>> labels;
  if (const Json* l = optional_field(j, "labels")) {
    if (!l->is_object()) schema("$.labels", "expected an object keyed by degree");
    for (auto it = l->begin(); it != l->end(); ++it) {
      const int n = get_degree_key(it.key(), "$.labels");
      const std::string p = child("$.labels", it.key());
      if (!it.value().is_array() || it.value().size() != dims[n]) {
        schema(p, "expected " + std::to_string(dims[n]) + " labels");
      }
      for (std::size_t i = 0; i < it.value().size(); ++i) labels[n].push_back(get_string(it.value()[i], child(p, i)));
    }
  }
  GradedVectorSpace space = at_path("$.labels", [&] { return GradedVectorSpace(dims, labels); });
  std::map<int, Matrix> d;
  if (const Json* dj = optional_field(j, "differential")) d = get_degree_matrices(*dj, space, "$.differential", true);
  BracketTable bracket;
  if (const Json* bj = optional_field(j, "bracket")) {
    if (!bj->is_array()) schema("$.bracket", "expected an array of [p, q, i, j, k, \"value\"]");
    for (std::size_t e = 0; e < bj->size(); ++e) {
      const Json& entry = (*bj)[e];
      const std::string p = child("$.bracket", e);
      if (!entry.is_array() || entry.size() != 6) schema(p, "expected [p, q, i, j, k, \"value\"]");
      const int dp = static_cast<int>(get_int(entry[0], child(p, 0)));
      const int dq = static_cast<int>(get_int(entry[1], child(p, 1)));
      bracket[{dp, dq}].push_back({get_size(entry[2], child(p, 2)), get_size(entry[3], child(p, 3)),
                                   get_size(entry[4], child(p, 4)), get_scalar(entry[5], child(p, 5))});
    }
  }
  DglaFixture out;
  out.algebra = at_path("$", [&] { return DgLieAlgebra(space, d, bracket); });
  if (options.check_axioms) {
    const AxiomReport report = check_dgla_axioms(out.algebra);
    for (const auto& c : report.checks) {
      if (!c.passed) throw Error(ErrorKind::InvariantViolation, "axiom " + c.axiom + " fails: " + c.detail);
    }
  }
  if (const Json* a = optional_field(j, "action")) {
    allow_keys(*a, {"order", "generators", "relations"}, "$.action");
    GroupAction action;
    action.group_order = get_size(field(*a, "order", "$.action"), "$.action.order");
    const Json& gens = field(*a, "generators", "$.action");
    if (!gens.is_array()) schema("$.action.generators", "expected an array");
    for (std::size_t g = 0; g < gens.size(); ++g) {
      action.generators.push_back(get_degree_matrices(gens[g], space, child("$.action.generators", g), false));
    }
    if (const Json* rels = optional_field(*a, "relations")) {
      if (!rels->is_array()) schema("$.action.relations", "expected an array of words");
      for (std::size_t r = 0; r < rels->size(); ++r) {
        const std::string p = child("$.action.relations", r);
        if (!(*rels)[r].is_array()) schema(p, "expected an array of generator indices");
        std::vector<std::size_t> word;
        for (std::size_t k = 0; k < (*rels)[r].size(); ++k) {
          const std::size_t g = get_size((*rels)[r][k], child(p, k));
          if (g >= action.generators.size()) schema(child(p, k), "no such generator");
          word.push_back(g);
        }
        action.relations.push_back(std::move(word));
      }
    }
    at_path("$.action", [&] {
      enumerate_group(action);
      try {
        require_automorphisms(out.algebra, complete_action(out.algebra, action));
      } catch (const Error& e) {
        throw Error(ErrorKind::InvariantViolation, e.message());
      }
      return 0;
    });
    out.action = std::move(action);
  }
  if (const Json* ps = optional_field(j, "pairings")) {
    if (!ps->is_object()) schema("$.pairings", "expected an object keyed by pairing name");
    for (auto it = ps->begin(); it != ps->end(); ++it) {
      const std::string p = child("$.pairings", it.key());
      allow_keys(it.value(), {"degree", "blocks"}, p);
      CyclicPairing pairing;
      pairing.degree = static_cast<int>(get_int(field(it.value(), "degree", p), child(p, "degree")));
      const Json& blocks = field(it.value(), "blocks", p);
      if (!blocks.is_array()) schema(child(p, "blocks"), "expected an array");
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::string bp = child(child(p, "blocks"), b);
        allow_keys(blocks[b], {"p", "q", "matrix"}, bp);
        const int dp = static_cast<int>(get_int(field(blocks[b], "p", bp), child(bp, "p")));
        const int dq = static_cast<int>(get_int(field(blocks[b], "q", bp), child(bp, "q")));
        if (pairing.blocks.count({dp, dq})) schema(bp, "duplicate block");
        pairing.blocks.emplace(DegreePair{dp, dq},
                               get_matrix(field(blocks[b], "matrix", bp), space.dim(dp), space.dim(dq), child(bp, "matrix")));
      }
      at_path(p, [&] {
        try {
          validate_pairing(out.algebra, pairing);
        } catch (const Error& e) {
          throw Error(ErrorKind::SchemaViolation, e.message());
        }
        return 0;
      });
      out.pairings.emplace(it.key(), std::move(pairing));
    }
  }
  if (const Json* inv = optional_field(j, "involution")) {
    out.involution = Involution{get_degree_matrices(*inv, space, "$.involution", false)};
  }
  return out;
}

Json degree_dims_json(const GradedVectorSpace& space) {
  Json out = Json::object();
  for (int n : space.degrees()) out[std::to_string(n)] = space.dim(n);
  return out;
}

Json degree_matrices_json(const std::map<int, Matrix>& ms) {
  Json out = Json::object();
  for (const auto& [n, m] : ms) out[std::to_string(n)] = matrix_to_json(m);
  return out;
}

Json serialize_dgla(const DglaFixture& f) {
  Json out = Json::object();
  const auto& l = f.algebra;
  out["degrees"] = degree_dims_json(l.space());
  Json labels = Json::object();
  for (int n : l.degrees()) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < l.dim(n); ++i) arr.push_back(l.space().label(n, i));
    labels[std::to_string(n)] = arr;
  }
  out["labels"] = labels;
  out["differential"] = degree_matrices_json(l.differentials());
  Json bracket = Json::array();
  for (const auto& [pq, entries] : l.bracket_table())
    for (const auto& e : entries) bracket.push_back(Json::array({pq.first, pq.second, e.i, e.j, e.k, to_string(e.value)}));
  out["bracket"] = bracket;
  if (f.action) {
    Json a = Json::object();
    a["order"] = f.action->group_order;
    Json gens = Json::array();
    for (const auto& g : f.action->generators) gens.push_back(degree_matrices_json(g));
    a["generators"] = gens;
    Json rels = Json::array();
    for (const auto& r : f.action->relations) rels.push_back(r);
    a["relations"] = rels;
    out["action"] = a;
  }
  if (!f.pairings.empty()) {
    Json ps = Json::object();
    for (const auto& [name, p] : f.pairings) {
      Json blocks = Json::array();
      for (const auto& [pq, m] : p.blocks) blocks.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"matrix", matrix_to_json(m)}});
      ps[name] = Json{{"degree", p.degree}, {"blocks", blocks}};
    }
    out["pairings"] = ps;
  }
  if (f.involution) out["involution"] = degree_matrices_json(f.involution->matrices);
  return out;
}

// ---------------------------------------------------------------- quiver

QuiverFixture parse_quiver(const Json& j) {
  allow_keys(j, {"kind", "name", "description", "summands", "multiplicities", "ext", "allow_asymmetric", "local_model"},
             "$");
  QuiverFixture out;
  const Json& summands = field(j, "summands", "$");
  if (!summands.is_array()) schema("$.summands", "expected an array of names");
  for (std::size_t i = 0; i < summands.size(); ++i) out.data.summands.push_back(get_string(summands[i], child("$.summands", i)));
  const std::size_t s = out.data.summands.size();
  const Json& mult = field(j, "multiplicities", "$");
  if (!mult.is_array() || mult.size() != s) schema("$.multiplicities", "expected one multiplicity per summand");
  for (std::size_t i = 0; i < s; ++i) out.data.multiplicities.push_back(get_size(mult[i], child("$.multiplicities", i)));
  const Json& ext = field(j, "ext", "$");
  if (!ext.is_array() || ext.size() != s) schema("$.ext", "expected a square matrix of non-negative integers");
  for (std::size_t r = 0; r < s; ++r) {
    const std::string rp = child("$.ext", r);
    if (!ext[r].is_array() || ext[r].size() != s) schema(rp, "expected " + std::to_string(s) + " entries");
    std::vector<unsigned> row;
    for (std::size_t c = 0; c < s; ++c) row.push_back(static_cast<unsigned>(get_size(ext[r][c], child(rp, c))));
    out.data.ext.push_back(std::move(row));
  }
  if (const Json* a = optional_field(j, "allow_asymmetric")) out.data.allow_asymmetric = get_bool(*a, "$.allow_asymmetric");
  const QuiverModel q = at_path("$", [&] { return build_quiver(out.data); });
  if (const Json* lm = optional_field(j, "local_model")) {
    allow_keys(*lm, {"dgla", "h1_identification", "h2_identification"}, "$.local_model");
    LocalModelSpec model;
    model.dgla = get_string(field(*lm, "dgla", "$.local_model"), "$.local_model.dgla");
    model.h1_identification = get_matrix(field(*lm, "h1_identification", "$.local_model"), q.rep_dim(), q.rep_dim(),
                                        "$.local_model.h1_identification");
    model.h2_identification = get_matrix(field(*lm, "h2_identification", "$.local_model"), q.gauge_dim(), q.gauge_dim(),
                                        "$.local_model.h2_identification");
    out.local_model = std::move(model);
  }
  return out;
}

Json serialize_quiver(const QuiverFixture& f) {
  Json out = Json::object();
  out["summands"] = f.data.summands;
  out["multiplicities"] = f.data.multiplicities;
  out["ext"] = f.data.ext;
  out["allow_asymmetric"] = f.data.allow_asymmetric;
  if (f.local_model) {
    out["local_model"] = Json{{"dgla", f.local_model->dgla},
                              {"h1_identification", matrix_to_json(f.local_model->h1_identification)},
                              {"h2_identification", matrix_to_json(f.local_model->h2_identification)}};
  }
  return out;
}

// ---------------------------------------------------------------- complexes

AlgebraModule parse_module(const PathAlgebra& a, const Json& j, const std::string& path) {
  allow_keys(j, {"dims", "arrows"}, path);
  AlgebraModule m;
  const Json& dims = field(j, "dims", path);
  if (!dims.is_array() || dims.size() != a.vertex_count()) schema(child(path, "dims"), "expected one dimension per vertex");
  for (std::size_t v = 0; v < dims.size(); ++v) m.dims.push_back(get_size(dims[v], child(child(path, "dims"), v)));
  const Json* arrows = optional_field(j, "arrows");
  if (arrows && !arrows->is_object()) schema(child(path, "arrows"), "expected an object keyed by arrow name");
  for (const auto& arrow : a.arrows()) {
    const std::size_t rows = m.dims[arrow.target], cols = m.dims[arrow.source];
    const std::string p = child(child(path, "arrows"), arrow.name);
    if (arrows && arrows->contains(arrow.name)) {
      m.arrows.push_back(get_matrix(arrows->at(arrow.name), rows, cols, p));
    } else if (rows == 0 || cols == 0) {
      m.arrows.emplace_back(rows, cols);
    } else {
      schema(p, "missing map for arrow");
    }
  }
  if (arrows) {
    for (auto it = arrows->begin(); it != arrows->end(); ++it) {
      bool known = false;
      for (const auto& arrow : a.arrows()) known = known || arrow.name == it.key();
      if (!known) schema(child(child(path, "arrows"), it.key()), "unknown arrow");
    }
  }
  at_path(path, [&] {
    validate_module(a, m);
    return 0;
  });
  return m;
}

Json module_to_json(const PathAlgebra& a, const AlgebraModule& m) {
  Json arrows = Json::object();
  for (std::size_t k = 0; k < a.arrows().size(); ++k) arrows[a.arrows()[k].name] = matrix_to_json(m.arrows[k]);
  return Json{{"dims", m.dims}, {"arrows", arrows}};
}

ModuleMap parse_module_map(const Json& j, const AlgebraModule& from, const AlgebraModule& to, const std::string& path) {
  if (!j.is_array() || j.size() != from.dims.size()) schema(path, "expected one matrix per vertex");
  ModuleMap f;
  for (std::size_t v = 0; v < from.dims.size(); ++v) f.blocks.push_back(get_matrix(j[v], to.dims[v], from.dims[v], child(path, v)));
  return f;
}

Json module_map_to_json(const ModuleMap& f) {
  Json out = Json::array();
  for (const auto& b : f.blocks) out.push_back(matrix_to_json(b));
  return out;
}

ComplexFixtureFile parse_complex(const Json& j) {
  allow_keys(j, {"kind", "name", "description", "algebra", "complex", "automorphisms", "frobenius"}, "$");
  const Json& aj = field(j, "algebra", "$");
  allow_keys(aj, {"vertices", "arrows", "relations"}, "$.algebra");
  std::vector<std::string> vertices;
  const Json& vj = field(aj, "vertices", "$.algebra");
  if (!vj.is_array()) schema("$.algebra.vertices", "expected an array of names");
  for (std::size_t v = 0; v < vj.size(); ++v) vertices.push_back(get_string(vj[v], child("$.algebra.vertices", v)));
  auto vertex_index = [&](const Json& x, const std::string& p) {
    const std::string name = get_string(x, p);
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) schema(p, "unknown vertex '" + name + "'");
    return static_cast<std::size_t>(it - vertices.begin());
  };
  std::vector<Arrow> arrows;
  if (const Json* arj = optional_field(aj, "arrows")) {
    if (!arj->is_array()) schema("$.algebra.arrows", "expected an array");
    for (std::size_t k = 0; k < arj->size(); ++k) {
      const std::string p = child("$.algebra.arrows", k);
      allow_keys((*arj)[k], {"name", "source", "target"}, p);
      arrows.push_back({get_string(field((*arj)[k], "name", p), child(p, "name")),
                        vertex_index(field((*arj)[k], "source", p), child(p, "source")),
                        vertex_index(field((*arj)[k], "target", p), child(p, "target"))});
    }
  }
  std::vector<Relation> relations;
  if (const Json* rj = optional_field(aj, "relations")) {
    if (!rj->is_array()) schema("$.algebra.relations", "expected an array");
    for (std::size_t r = 0; r < rj->size(); ++r) {
      const std::string p = child("$.algebra.relations", r);
      if (!(*rj)[r].is_array()) schema(p, "expected an array of {path, coefficient} terms");
      Relation rel;
      for (std::size_t t = 0; t < (*rj)[r].size(); ++t) {
        const std::string tp = child(p, t);
        const Json& term = (*rj)[r][t];
        allow_keys(term, {"path", "coefficient"}, tp);
        const Json& pj = field(term, "path", tp);
        if (!pj.is_array()) schema(child(tp, "path"), "expected an array of arrow names");
        Path path;
        for (std::size_t s = 0; s < pj.size(); ++s) {
          const std::string name = get_string(pj[s], child(child(tp, "path"), s));
          auto it = std::find_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.name == name; });
          if (it == arrows.end()) schema(child(child(tp, "path"), s), "unknown arrow '" + name + "'");
          path.push_back(static_cast<std::size_t>(it - arrows.begin()));
        }
        rel.terms.emplace_back(std::move(path), get_scalar(field(term, "coefficient", tp), child(tp, "coefficient")));
      }
      relations.push_back(std::move(rel));
    }
  }
  ComplexFixtureFile out;
  out.algebra = at_path("$.algebra", [&] { return PathAlgebra(vertices, arrows, relations); });
  const PathAlgebra& a = out.algebra;

  const Json& cj = field(j, "complex", "$");
  allow_keys(cj, {"terms", "differentials"}, "$.complex");
  const Json& tj = field(cj, "terms", "$.complex");
  if (!tj.is_object()) schema("$.complex.terms", "expected an object keyed by degree");
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    const int i = get_degree_key(it.key(), "$.complex.terms");
    out.complex.terms[i] = parse_module(a, it.value(), child("$.complex.terms", it.key()));
  }
  if (const Json* dj = optional_field(cj, "differentials")) {
    if (!dj->is_object()) schema("$.complex.differentials", "expected an object keyed by degree");
    for (auto it = dj->begin(); it != dj->end(); ++it) {
      const int i = get_degree_key(it.key(), "$.complex.differentials");
      out.complex.differentials[i] = parse_module_map(it.value(), term(a, out.complex, i), term(a, out.complex, i + 1),
                                                      child("$.complex.differentials", it.key()));
    }
  }
  at_path("$.complex", [&] {
    validate_complex(a, out.complex);
    return 0;
  });
  if (const Json* auts = optional_field(j, "automorphisms")) {
    if (!auts->is_array()) schema("$.automorphisms", "expected an array");
    for (std::size_t g = 0; g < auts->size(); ++g) {
      const std::string p = child("$.automorphisms", g);
      if (!(*auts)[g].is_object()) schema(p, "expected an object keyed by degree");
      ChainMap f;
      for (auto it = (*auts)[g].begin(); it != (*auts)[g].end(); ++it) {
        const int i = get_degree_key(it.key(), p);
        const AlgebraModule m = term(a, out.complex, i);
        f.maps[i] = parse_module_map(it.value(), m, m, child(p, it.key()));
      }
      if (!is_chain_map(a, out.complex, out.complex, f)) throw Error(ErrorKind::InvariantViolation, p + ": not a chain map");
      out.automorphisms.push_back(std::move(f));
    }
  }
  if (const Json* fr = optional_field(j, "frobenius")) {
    if (!fr->is_object()) schema("$.frobenius", "expected an object keyed by basis label");
    Vector lambda(a.dim(), Scalar(0));
    for (auto it = fr->begin(); it != fr->end(); ++it) {
      bool found = false;
      for (std::size_t b = 0; b < a.dim(); ++b) {
        if (a.basis_label(b) != it.key()) continue;
        lambda[b] = get_scalar(it.value(), child("$.frobenius", it.key()));
        found = true;
      }
      if (!found) schema(child("$.frobenius", it.key()), "not a basis element of the algebra");
    }
    out.frobenius = std::move(lambda);
  }
  return out;
}

Json serialize_complex(const ComplexFixtureFile& f) {
  const PathAlgebra& a = f.algebra;
  Json arrows = Json::array();
  for (const auto& arrow : a.arrows())
    arrows.push_back(Json{{"name", arrow.name}, {"source", a.vertices()[arrow.source]}, {"target", a.vertices()[arrow.target]}});
  Json relations = Json::array();
  for (const auto& r : a.relations()) {
    Json terms = Json::array();
    for (const auto& [p, c] : r.terms) {
      Json names = Json::array();
      for (auto k : p) names.push_back(a.arrows()[k].name);
      terms.push_back(Json{{"path", names}, {"coefficient", to_string(c)}});
    }
    relations.push_back(terms);
  }
  Json out = Json::object();
  out["algebra"] = Json{{"vertices", a.vertices()}, {"arrows", arrows}, {"relations", relations}};
  Json terms = Json::object();
  for (const auto& [i, m] : f.complex.terms) terms[std::to_string(i)] = module_to_json(a, m);
  Json diffs = Json::object();
  for (const auto& [i, d] : f.complex.differentials) diffs[std::to_string(i)] = module_map_to_json(d);
  out["complex"] = Json{{"terms", terms}, {"differentials", diffs}};
  if (!f.automorphisms.empty()) {
    Json auts = Json::array();
    for (const auto& g : f.automorphisms) {
      Json m = Json::object();
      for (const auto& [i, map] : g.maps) m[std::to_string(i)] = module_map_to_json(map);
      auts.push_back(m);
    }
    out["automorphisms"] = auts;
  }
  if (f.frobenius) {
    Json fr = Json::object();
    for (std::size_t b = 0; b < a.dim(); ++b)
      if (sgn((*f.frobenius)[b]) != 0) fr[a.basis_label(b)] = to_string((*f.frobenius)[b]);
    out["frobenius"] = fr;
  }
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json vector_to_json(std::span<const Scalar> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

FixtureFile parse_fixture_json(const Json& j, const ParseOptions& options) {
  if (!j.is_object()) schema("$", "expected an object");
  FixtureFile out;
  const std::string kind = get_string(field(j, "kind", "$"), "$.kind");
  if (const Json* n = optional_field(j, "name")) out.name = get_string(*n, "$.name");
  if (const Json* d = optional_field(j, "description")) out.description = get_string(*d, "$.description");
  if (kind == "dgla") {
    out.payload = parse_dgla(j, options);
  } else if (kind == "quiver") {
    out.payload = parse_quiver(j);
  } else if (kind == "path-algebra-complex") {
    out.payload = parse_complex(j);
  } else {
    schema("$.kind", "expected one of dgla, quiver, path-algebra-complex");
  }
  return out;
}

FixtureFile parse_fixture_text(const std::string& text, const ParseOptions& options) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " +
                                           e.what());
  }
  return parse_fixture_json(j, options);
}

FixtureFile parse_fixture(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  FixtureFile f = parse_fixture_text(buf.str(), options);
  if (f.name.empty()) f.name = std::filesystem::path(path).stem().string();
  return f;
}

Json serialize_fixture(const FixtureFile& f) {
  Json out = Json::object();
  out["kind"] = std::string(kind_name(f.kind()));
  out["name"] = f.name;
  if (!f.description.empty()) out["description"] = f.description;
  Json body;
  switch (f.kind()) {
    case FixtureKind::Dgla: body = serialize_dgla(std::get<DglaFixture>(f.payload)); break;
    case FixtureKind::Quiver: body = serialize_quiver(std::get<QuiverFixture>(f.payload)); break;
    case FixtureKind::PathAlgebraComplex: body = serialize_complex(std::get<ComplexFixtureFile>(f.payload)); break;
  }
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

namespace {

void pretty(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      pretty(it.value(), depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() &&
             std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured() && !e.empty(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty_json(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

std::string dump_fixture(const FixtureFile& f) { return pretty_json(serialize_fixture(f)); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------- library

std::vector<std::string> builtin_fixture_names() {
  return {"abelian",    "heisenberg", "nonformal-control", "commuting-n2", "two-vertex-dgla", "point-model",
          "loop-n2",    "two-vertex", "a2-simple",         "a2-swap-equivariant", "q-three-term"};
}

FixtureFile builtin_fixture(const std::string& requested) {
  std::string name = requested;
  if (name.size() > 5 && name.ends_with(".json")) name.resize(name.size() - 5);
  if (name == "commuting") name = "commuting-n2";
  if (name == "nonformal") name = "nonformal-control";

  FixtureFile f;
  f.name = name;
  if (name == "abelian") {
    f.description = "abelian DGLA with d s = r; formal, unobstructed";
    f.payload = DglaFixture{fixtures::abelian(), std::nullopt, {}, std::nullopt};
  } else if (name == "heisenberg") {
    f.description = "L^1 = <a, b>, L^2 = <c>, [a, b] = c; swap symmetry and involution";
    f.payload = DglaFixture{fixtures::heisenberg(), fixtures::heisenberg_swap(), {}, fixtures::heisenberg_involution()};
  } else if (name == "nonformal-control") {
    f.description = "non-formal control: kappa = -x1^2 x2, with a candidate pairing";
    f.payload = DglaFixture{fixtures::nonformal_control(), std::nullopt,
                            {{"candidate", fixtures::nonformal_candidate_pairing()}}, std::nullopt};
  } else if (name == "commuting-n2") {
    f.description = "gl_2 tensor the cohomology of a torus, with the trace pairing and a Z/2 stabilizer";
    f.payload = DglaFixture{fixtures::commuting_n2(), fixtures::commuting_swap(),
                            {{"trace", fixtures::commuting_trace_pairing()}}, std::nullopt};
  } else if (name == "two-vertex-dgla") {
    f.description = "local model for the two-vertex quiver";
    f.payload = DglaFixture{fixtures::two_vertex_dgla(), std::nullopt, {}, std::nullopt};
  } else if (name == "point-model" || name == "loop-n2" || name == "two-vertex") {
    const PolystableData data = name == "point-model" ? fixtures::point_model()
                                : name == "loop-n2"   ? fixtures::loop_n2()
                                                      : fixtures::two_vertex();
    f.description = name == "point-model" ? "one loop, n = 1"
                    : name == "loop-n2"   ? "one loop, n = 2: commuting pairs of 2x2 matrices"
                                          : "two vertices joined by one edge each way, n = (1, 1)";
    const auto model = fixtures::local_model(name);
    f.payload = QuiverFixture{data, LocalModelSpec{model.dgla, model.ident_h1, model.ident_h2}};
  } else if (name == "a2-simple" || name == "a2-swap-equivariant") {
    auto fx = name == "a2-simple" ? fixtures::a2_simple() : fixtures::a2_swap_equivariant();
    f.description = name == "a2-simple" ? "simple S_1 over the path algebra of 1 -> 2"
                                        : "S_1 + S_1 over the path algebra of 1 -> 2 with the swap";
    f.payload = ComplexFixtureFile{fx.algebra, fx.complex, fx.automorphisms, fx.frobenius};
  } else if (name == "q-three-term") {
    f.description = "Q in degrees 0, 1, 2 with zero differentials over A = Q, lambda = 1";
    ComplexFixtureFile c{PathAlgebra({"o"}, {}, {}), {}, {}, Vector{1}};
    for (int i = 0; i <= 2; ++i) c.complex.terms[i] = AlgebraModule{{1}, {}};
    f.payload = std::move(c);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown fixture '" + requested + "'");
  }
  return f;
}

FixtureFile resolve_fixture(const std::string& ref, const ParseOptions& options) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(ref)) return parse_fixture(ref, options);
  if (const char* dir = std::getenv("DGLAKIT_FIXTURE_DIR")) {
    for (const std::string& candidate : {ref, ref + ".json"}) {
      const fs::path p = fs::path(dir) / candidate;
      if (fs::is_regular_file(p)) return parse_fixture(p.string(), options);
    }
  }
  const std::string base = fs::path(ref).filename().string();
  try {
    return builtin_fixture(base);
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidArgument, "no fixture file or builtin named '" + ref + "'");
  }
}

}  // namespace dglakit
