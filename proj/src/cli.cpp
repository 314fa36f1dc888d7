#include "dglakit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dglakit/kuranishi.hpp"

namespace dglakit {

namespace {

struct Options {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string fixture;
  std::string pairing;
  unsigned order = 3;
  unsigned arity = 3;
  std::size_t samples = 0;
  bool equivariant = false;
  bool strict = false;
};

// Portable sampling: raw engine output only, no distribution objects.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Scalar rational(long bound = 5) {
    Scalar v(integer(-bound, bound), integer(1, 3));
    v.canonicalize();
    return v;
  }
  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational();
    return m;
  }
  Matrix invertible(std::size_t n) {
    for (;;) {
      Matrix m = matrix(n, n);
      if (n == 0 || sgn(determinant(m)) != 0) return m;
    }
  }

 private:
  std::mt19937_64 rng_;
};

Json vec_json(const Vector& v) { return vector_to_json(v); }

std::string basis_name(const BasisElement& b) { return "L" + std::to_string(b.degree) + "[" + std::to_string(b.index) + "]"; }

Json witness_json(const std::vector<BasisElement>& w) {
  Json out = Json::array();
  for (const auto& b : w) out.push_back(basis_name(b));
  return out;
}

Json dims_json(const std::map<int, std::size_t>& dims) {
  Json out = Json::object();
  for (const auto& [n, d] : dims) out[std::to_string(n)] = d;
  return out;
}

std::string poly_string(const Polynomial& p, const std::vector<std::string>& names) { return p.to_string(names); }

struct Context {
  Options opt;
  FixtureFile fixture;
  std::filesystem::path fixture_dir;
};

Context load(const Options& opt, bool check_axioms = true) {
  Context c{opt, resolve_fixture(opt.fixture, ParseOptions{check_axioms}), {}};
  if (std::filesystem::is_regular_file(opt.fixture)) c.fixture_dir = std::filesystem::path(opt.fixture).parent_path();
  return c;
}

const DglaFixture& need_dgla(const FixtureFile& f) {
  if (f.kind() != FixtureKind::Dgla)
    throw Error(ErrorKind::InvalidArgument, "fixture '" + f.name + "' is a " + std::string(kind_name(f.kind())) + " fixture, not a dgla");
  return std::get<DglaFixture>(f.payload);
}

const QuiverFixture& need_quiver(const FixtureFile& f) {
  if (f.kind() != FixtureKind::Quiver)
    throw Error(ErrorKind::InvalidArgument, "fixture '" + f.name + "' is a " + std::string(kind_name(f.kind())) + " fixture, not a quiver");
  return std::get<QuiverFixture>(f.payload);
}

const ComplexFixtureFile& need_complex(const FixtureFile& f) {
  if (f.kind() != FixtureKind::PathAlgebraComplex)
    throw Error(ErrorKind::InvalidArgument,
                "fixture '" + f.name + "' is a " + std::string(kind_name(f.kind())) + " fixture, not a path-algebra-complex");
  return std::get<ComplexFixtureFile>(f.payload);
}

const CyclicPairing& choose_pairing(const DglaFixture& d, const std::string& name) {
  if (name.empty()) {
    if (d.pairings.size() == 1) return d.pairings.begin()->second;
    throw Error(ErrorKind::InvalidArgument, d.pairings.empty() ? "fixture declares no pairing"
                                                               : "several pairings declared; choose one with --pairing");
  }
  auto it = d.pairings.find(name);
  if (it == d.pairings.end()) throw Error(ErrorKind::InvalidArgument, "no pairing named '" + name + "'");
  return it->second;
}

Splitting splitting_for(const DglaFixture& d) {
  if (!d.action) return build_splitting(d.algebra);
  const GroupAction action = complete_action(d.algebra, *d.action);
  return build_splitting(d.algebra, &action);
}

Json pairing_checks_json(const PairingReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"axiom", c.axiom}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.witness.empty()) e["witness"] = witness_json(c.witness);
    checks.push_back(e);
  }
  return Json{{"convention", std::string(symmetry_name(r.convention))},
              {"graded_symmetric", r.graded_symmetric},
              {"strictly_symmetric", r.strictly_symmetric},
              {"checks", checks}};
}

Json criterion_json(const std::vector<CriterionCheck>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json e{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- dgla

int cmd_dgla_check(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  const AxiomReport report = check_dgla_axioms(d.algebra);
  Json checks = Json::array();
  for (const auto& a : report.checks) {
    Json e{{"axiom", a.axiom}, {"passed", a.passed}};
    if (!a.detail.empty()) e["detail"] = a.detail;
    if (!a.witness.empty()) e["witness"] = witness_json(a.witness);
    checks.push_back(e);
  }
  r["checks"] = checks;
  r["verdict"] = report.all_passed() ? "pass" : "fail";
  return report.all_passed() ? 0 : 1;
}

int cmd_dgla_cohomology(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  const CohomologyReport h = cohomology(d.algebra);
  r["dims"] = dims_json(h.dims);
  Json reps = Json::object();
  for (const auto& [n, vs] : h.representatives) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(vec_json(v));
    reps[std::to_string(n)] = arr;
  }
  r["representatives"] = reps;
  return 0;
}

int cmd_dgla_split(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  if (c.opt.equivariant && !d.action) throw Error(ErrorKind::NoAction, "--equivariant needs a fixture with a group action");
  std::optional<GroupAction> action;
  if (c.opt.equivariant) action = complete_action(d.algebra, *d.action);
  const Splitting s = build_splitting(d.algebra, action ? &*action : nullptr);
  Json degrees = Json::object();
  bool invariant = true;
  for (const auto& [n, ds] : s.degrees()) {
    Json e{{"cycles", ds.cycles.dim()}, {"boundaries", ds.boundaries.dim()}, {"harmonic", ds.harmonic.dim()},
           {"complement", ds.complement.dim()}};
    Json basis = Json::array();
    for (const auto& v : ds.harmonic.basis()) basis.push_back(vec_json(v));
    e["harmonic_basis"] = basis;
    degrees[std::to_string(n)] = e;
    if (action) {
      for (const auto& g : action->generators) {
        auto it = g.find(n);
        if (it == g.end()) continue;
        for (const Subspace* sub : {&ds.harmonic, &ds.complement})
          for (const auto& v : sub->basis()) invariant = invariant && sub->contains(it->second * v);
      }
    }
  }
  r["degrees"] = degrees;
  if (action) {
    r["group_order"] = action->group_order;
    r["invariant"] = invariant;
  }
  return invariant ? 0 : 1;
}

// ---------------------------------------------------------------- kuranishi

int cmd_kuranishi(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  const unsigned order = c.opt.order;
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "--order must be at least 2");
  const Splitting s = splitting_for(d);
  const QuadraticityReport q = check_quadraticity(d.algebra, s, order);
  const auto& names = q.kuranishi.ring.variables;
  r["order"] = order;
  r["variables"] = names;
  r["h2_basis"] = q.kuranishi.target_labels;
  Json series = Json::object();
  Json generators = Json::array();
  for (std::size_t i = 0; i < q.kuranishi.components.size(); ++i) {
    const auto& p = q.kuranishi.components[i];
    series[q.kuranishi.target_labels[i]] = poly_string(p, names);
    if (!p.is_zero()) generators.push_back(poly_string(monic(p), names));
  }
  Json quadratic = Json::object();
  for (std::size_t i = 0; i < q.quadratic.components.size(); ++i)
    quadratic[q.quadratic.target_labels[i]] = poly_string(q.quadratic.components[i], names);
  r["kappa"] = series;
  r["kappa2"] = quadratic;
  r["ideal_generators"] = generators;
  r["ideal_dim"] = q.kuranishi_ideal_dim;
  r["quadratic_ideal_dim"] = q.quadratic_ideal_dim;
  r["quadraticity"] = (q.equal() ? "EqualAtOrder(" : "NotEqualAtOrder(") + std::to_string(order) + ")";
  if (q.witness) {
    r["witness"] = poly_string(*q.witness, names);
    r["witness_side"] = q.witness_side;
  }

  // Gauge spot check: random gauge elements over Q[t]/t^{N+1} move MC elements to MC elements.
  Sampler sampler(c.opt.seed);
  const std::size_t trials = c.opt.samples ? c.opt.samples : 5;
  const TruncatedRing t = make_ring(1, order, "t");
  bool gauge_ok = true;
  for (std::size_t k = 0; k < trials; ++k) {
    GaugeElement g{t, {}};
    for (std::size_t i = 0; i < d.algebra.dim(0); ++i) {
      Polynomial p(1);
      for (unsigned e = 1; e <= order; ++e) p.add_term(Monomial(std::vector<unsigned>{e}), sampler.rational());
      g.coefficients.push_back(p);
    }
    MCElement zero{t, PolyVector(d.algebra.dim(1), Polynomial(1))};
    gauge_ok = gauge_ok && verify_mc(d.algebra, gauge_act(d.algebra, g, zero));
  }
  r["gauge_spot_check"] = Json{{"samples", trials}, {"passed", gauge_ok}};
  return gauge_ok ? 0 : 1;
}

// ---------------------------------------------------------------- formality

int cmd_formality_bmm(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  const CyclicPairing& p = choose_pairing(d, c.opt.pairing);
  const Splitting s = splitting_for(d);
  const auto convention = c.opt.strict ? PairingSymmetry::Strict : PairingSymmetry::Graded;
  const FormalityCertificate cert = check_bmm_criterion(d.algebra, p, s, convention);
  r["pairing"] = c.opt.pairing.empty() ? d.pairings.begin()->first : c.opt.pairing;
  r["pairing_report"] = pairing_checks_json(cert.pairing);
  if (cert.pairing.nondegeneracy_unsatisfiable) r["pairing_report"]["nondegeneracy_unsatisfiable"] = true;
  r["conditions"] = criterion_json(cert.conditions);
  r["verdict"] = cert.certified() ? "Certified" : "NotApplicable";
  r["reasons"] = cert.reasons;
  return cert.certified() ? 0 : 1;
}

int cmd_formality_transfer(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  const Splitting s = splitting_for(d);
  const TransferredStructure t = transfer_brackets(d.algebra, s, c.opt.arity);
  auto label = [&](std::size_t i) {
    return "H" + std::to_string(t.basis[i].degree) + "[" + std::to_string(t.basis[i].index) + "]";
  };
  Json basis = Json::array();
  for (std::size_t i = 0; i < t.basis.size(); ++i) basis.push_back(label(i));
  r["arity"] = c.opt.arity;
  r["harmonic_basis"] = basis;
  Json brackets = Json::object();
  for (unsigned k = 2; k <= t.arity_bound; ++k) {
    Json entries = Json::array();
    auto it = t.brackets.find(k);
    if (it != t.brackets.end()) {
      for (const auto& [args, value] : it->second) {
        Json in = Json::array();
        for (auto a : args) in.push_back(label(a));
        entries.push_back(Json{{"inputs", in}, {"degree", value.degree}, {"value", vec_json(value.v)}});
      }
    }
    brackets["l" + std::to_string(k)] = Json{{"vanishes", t.vanishes(k)}, {"nonzero", entries}};
  }
  r["brackets"] = brackets;
  return 0;
}

int cmd_formality_involution(Context& c, Json& r) {
  const auto& d = need_dgla(c.fixture);
  if (!d.involution) throw Error(ErrorKind::InvalidArgument, "fixture declares no involution");
  std::optional<FormalityCertificate> cert;
  if (!c.opt.pairing.empty() || d.pairings.size() == 1) {
    cert = check_bmm_criterion(d.algebra, choose_pairing(d, c.opt.pairing), splitting_for(d));
  }
  const EigenSplit split = eigensplit_involution(d.algebra, *d.involution);
  Json plus = Json::object(), minus = Json::object();
  for (int n : d.algebra.degrees()) {
    plus[std::to_string(n)] = split.plus.dim(n);
    minus[std::to_string(n)] = split.minus_dim(n);
  }
  const TransferReport t = check_transfer_hypotheses(d.algebra, *d.involution, cert ? &*cert : nullptr);
  r["plus_dims"] = plus;
  r["minus_dims"] = minus;
  r["checks"] = criterion_json(t.checks);
  r["applicable"] = t.applicable;
  r["plus_formal"] = t.plus_formal;
  r["summary"] = t.summary;
  return t.applicable ? 0 : 1;
}

// ---------------------------------------------------------------- quiver

int cmd_quiver_build(Context& c, Json& r) {
  const auto& f = need_quiver(c.fixture);
  const QuiverModel q = build_quiver(f.data);
  Json edges = Json::array();
  for (const auto& e : q.doubled)
    edges.push_back(Json{{"name", e.name}, {"source", q.vertices[e.source]}, {"target", q.vertices[e.target]}});
  r["vertices"] = q.vertices;
  r["dims"] = q.dims;
  r["edges"] = q.edges.size();
  r["doubled_edges"] = edges;
  r["rep_dim"] = q.rep_dim();
  r["gauge_dim"] = q.gauge_dim();
  return 0;
}

int cmd_quiver_moment(Context& c, Json& r) {
  const auto& f = need_quiver(c.fixture);
  const QuiverModel q = build_quiver(f.data);
  const std::size_t samples = c.opt.samples ? c.opt.samples : 20;
  Sampler sampler(c.opt.seed);
  const MomentEquations eqs = moment_equations(q);
  // symbolic trace: sum of the diagonal components of every vertex block
  Polynomial trace(eqs.map.ring.nvars());
  std::size_t offset = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    for (std::size_t i = 0; i < q.dims[v]; ++i) trace = trace + eqs.map.components[offset + i * q.dims[v] + i];
    offset += q.dims[v] * q.dims[v];
  }
  std::size_t trace_ok = 0, equivariant_ok = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    Vector coords;
    for (std::size_t i = 0; i < q.rep_dim(); ++i) coords.push_back(sampler.rational());
    const RepPoint p = point_from_coordinates(q, coords);
    if (sgn(moment_map(q, p).trace_sum()) == 0) ++trace_ok;
    std::vector<Matrix> g;
    for (std::size_t n : q.dims) g.push_back(sampler.invertible(n));
    if (equivariance_check(q, p, g)) ++equivariant_ok;
  }
  r["samples"] = samples;
  r["symbolic_trace_zero"] = trace.is_zero();
  r["trace_zero"] = trace_ok;
  r["equivariant"] = equivariant_ok;
  const bool ok = trace.is_zero() && trace_ok == samples && equivariant_ok == samples;
  r["verdict"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

int cmd_quiver_equations(Context& c, Json& r) {
  const auto& f = need_quiver(c.fixture);
  const QuiverModel q = build_quiver(f.data);
  const MomentEquations eqs = moment_equations(q);
  Json list = Json::object();
  for (std::size_t i = 0; i < eqs.map.components.size(); ++i)
    list[eqs.map.target_labels[i]] = poly_string(eqs.map.components[i], eqs.map.ring.variables);
  r["variables"] = eqs.map.ring.variables;
  r["equations"] = list;
  r["span_dim"] = eqs.span_dim;
  return 0;
}

FixtureFile load_companion(const Context& c, const std::string& ref) {
  if (!c.fixture_dir.empty()) {
    for (const std::string& name : {ref, ref + ".json"}) {
      const auto p = c.fixture_dir / name;
      if (std::filesystem::is_regular_file(p)) return parse_fixture(p.string());
    }
  }
  return resolve_fixture(ref);
}

int cmd_quiver_compare(Context& c, Json& r) {
  const auto& f = need_quiver(c.fixture);
  if (!f.local_model) throw Error(ErrorKind::InvalidArgument, "fixture declares no local model");
  const QuiverModel q = build_quiver(f.data);
  const FixtureFile companion = load_companion(c, f.local_model->dgla);
  const auto& d = need_dgla(companion);
  const Splitting s = splitting_for(d);
  const LocalModelComparison cmp =
      compare_local_models(d.algebra, s, q, f.local_model->h1_identification, f.local_model->h2_identification);
  r["dgla"] = f.local_model->dgla;
  r["dgla_digest"] = fnv1a_hex(dump_fixture(companion));
  r["span_equal"] = cmp.span_equal;
  r["quadratic_span_dim"] = cmp.quadratic_span_dim;
  r["moment_span_dim"] = cmp.moment_span_dim;
  if (cmp.proportionality) r["proportionality"] = to_string(*cmp.proportionality);
  return cmp.span_equal ? 0 : 1;
}

// ---------------------------------------------------------------- homalg

Json complex_json(const PathAlgebra& a, const BoundedComplex& p) {
  Json terms = Json::object();
  for (const auto& [i, m] : p.terms) {
    if (m.is_zero()) continue;
    Json e{{"dims", m.dims}, {"dim", m.dim()}};
    if (auto dec = projective_decomposition(a, m)) {
      Json summands = Json::array();
      for (auto v : dec->summands) summands.push_back("P" + a.vertices()[v]);
      e["projective_summands"] = summands;
    }
    terms[std::to_string(i)] = e;
  }
  return terms;
}

int cmd_homalg_resolve(Context& c, Json& r) {
  const auto& f = need_complex(c.fixture);
  const PathAlgebra& a = f.algebra;
  const Replacement rep = projective_replacement(a, f.complex, f.automorphisms);
  const auto [lo, hi] = amplitude(rep.complex);
  bool all_projective = true;
  for (const auto& [i, m] : rep.complex.terms) all_projective = all_projective && is_projective(a, m);
  const bool quasi = is_quasi_isomorphism(a, rep.complex, f.complex, rep.comparison);
  bool lifts_ok = true;
  for (std::size_t k = 0; k < rep.automorphisms.size(); ++k) {
    const ChainMap& g = rep.automorphisms[k];
    lifts_ok = lifts_ok && is_chain_map(a, rep.complex, rep.complex, g);
    for (int i = lo; i <= hi; ++i) {
      const ModuleMap left = compose(chain_component(a, rep.complex, f.complex, rep.comparison, i),
                                     chain_component(a, rep.complex, rep.complex, g, i));
      const ModuleMap right = compose(chain_component(a, f.complex, f.complex, f.automorphisms[k], i),
                                      chain_component(a, rep.complex, f.complex, rep.comparison, i));
      lifts_ok = lifts_ok && left == right;
    }
  }
  r["global_dimension"] = rep.global_dimension;
  r["terms"] = complex_json(a, rep.complex);
  r["term_count"] = hi >= lo ? hi - lo + 1 : 0;
  r["input_cohomology"] = dims_json(cohomology_dims(a, f.complex));
  r["replacement_cohomology"] = dims_json(cohomology_dims(a, rep.complex));
  r["projective"] = all_projective;
  r["quasi_isomorphism"] = quasi;
  r["lifted_automorphisms"] = rep.automorphisms.size();
  r["lifts_commute"] = lifts_ok;
  const bool ok = all_projective && quasi && lifts_ok;
  r["verdict"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

int cmd_homalg_endo(Context& c, Json& r) {
  const auto& f = need_complex(c.fixture);
  const Replacement rep = projective_replacement(f.algebra, f.complex, f.automorphisms);
  const HomComplex h = hom_complex(f.algebra, rep.complex);
  Json dims = Json::object();
  for (int n : h.dgla.degrees()) dims[std::to_string(n)] = h.dgla.dim(n);
  const AxiomReport axioms = check_dgla_axioms(h.dgla);
  r["dims"] = dims;
  r["cohomology"] = dims_json(cohomology(h.dgla).dims);
  r["axioms"] = axioms.all_passed() ? "pass" : "fail";
  return axioms.all_passed() ? 0 : 1;
}

int cmd_homalg_pairing(Context& c, Json& r) {
  const auto& f = need_complex(c.fixture);
  if (!f.frobenius) throw Error(ErrorKind::InvalidArgument, "fixture declares no Frobenius form");
  check_frobenius_form(f.algebra, *f.frobenius);
  const Replacement rep = projective_replacement(f.algebra, f.complex, f.automorphisms);
  const HomComplex h = hom_complex(f.algebra, rep.complex);
  const CyclicPairing p = trace_pairing(f.algebra, rep.complex, *f.frobenius);
  const PairingReport report = check_quasi_cyclic(h.dgla, p);
  r["degree"] = p.degree;
  r["pairing_report"] = pairing_checks_json(report);
  r["verdict"] = report.all_passed() ? "pass" : "fail";
  return report.all_passed() ? 0 : 1;
}

// ---------------------------------------------------------------- fixtures

int cmd_fixtures_list(Context&, Json& r) {
  Json list = Json::array();
  for (const auto& name : builtin_fixture_names()) {
    const FixtureFile f = builtin_fixture(name);
    list.push_back(Json{{"name", name}, {"kind", std::string(kind_name(f.kind()))}, {"description", f.description}});
  }
  r["fixtures"] = list;
  return 0;
}

using Handler = std::function<int(Context&, Json&)>;

std::string render_scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(prefix, "{}");
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + render_scalar(j[i]);
      out.emplace_back(prefix, j.empty() ? "-" : s);
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.emplace_back(prefix, render_scalar(j));
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

CommandOutput run_command(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"exact deformation-theory toolkit", "dglakit"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "print the JSON report");
  app.add_flag("--timing", opt.timing, "include wall-clock timing in the report");
  app.add_option("--seed", opt.seed, "seed for random sampling");
  app.add_option("--out", opt.out, "also write the report (or emitted fixture) to this file");

  std::string command;
  Handler handler;
  bool lenient = false;
  bool emit = false;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h, bool needs_fixture = true) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    if (needs_fixture) sub->add_option("fixture", opt.fixture, "fixture path or builtin name")->required();
    sub->callback([&, parent, sub, h] {
      command = (parent == &app ? "" : parent->get_name() + " ") + sub->get_name();
      handler = h;
    });
    return sub;
  };

  CLI::App* dgla = app.add_subcommand("dgla", "DGLA checks")->require_subcommand(1)->fallthrough();
  leaf(dgla, "check", "check d^2 = 0, antisymmetry, Leibniz and Jacobi", cmd_dgla_check)->callback([&] {
    command = "dgla check";
    handler = cmd_dgla_check;
    lenient = true;
  });
  leaf(dgla, "cohomology", "cohomology dimensions and representatives", cmd_dgla_cohomology);
  leaf(dgla, "split", "splitting L = K + H + B", cmd_dgla_split)
      ->add_flag("--equivariant", opt.equivariant, "average over the fixture's group action");

  CLI::App* kur = leaf(&app, "kuranishi", "Kuranishi series, quadraticity and a gauge spot check", cmd_kuranishi);
  kur->add_option("--order", opt.order, "truncation order N");
  kur->add_option("--samples", opt.samples, "gauge samples");

  CLI::App* form = app.add_subcommand("formality", "formality tools")->require_subcommand(1)->fallthrough();
  auto* bmm = leaf(form, "bmm", "quasi-cyclic formality criterion", cmd_formality_bmm);
  bmm->add_option("--pairing", opt.pairing, "pairing name");
  bmm->add_flag("--strict-symmetry", opt.strict, "require (f, g) = (g, f) without Koszul sign");
  leaf(form, "transfer", "transferred brackets l_2 .. l_K", cmd_formality_transfer)
      ->add_option("--arity", opt.arity, "largest arity K (2..4)");
  leaf(form, "involution", "eigenspace splitting of the fixture's involution", cmd_formality_involution)
      ->add_option("--pairing", opt.pairing, "pairing used for the certificate");

  CLI::App* quiv = app.add_subcommand("quiver", "Ext-quiver local models")->require_subcommand(1)->fallthrough();
  leaf(quiv, "build", "Ext-quiver and its double", cmd_quiver_build);
  leaf(quiv, "moment", "trace and equivariance of the moment map at random points", cmd_quiver_moment)
      ->add_option("--samples", opt.samples, "number of random points");
  leaf(quiv, "equations", "moment map components as quadrics", cmd_quiver_equations);
  leaf(quiv, "compare", "compare kappa_2 with the moment map", cmd_quiver_compare);

  CLI::App* hom = app.add_subcommand("homalg", "path-algebra complexes")->require_subcommand(1)->fallthrough();
  leaf(hom, "resolve", "projective replacement", cmd_homalg_resolve);
  leaf(hom, "endo-dgla", "endomorphism DGLA of the replacement", cmd_homalg_endo);
  leaf(hom, "pairing", "trace pairing on the endomorphism DGLA", cmd_homalg_pairing);

  CLI::App* fx = app.add_subcommand("fixtures", "builtin fixture library")->require_subcommand(1)->fallthrough();
  leaf(fx, "list", "list builtin fixtures", cmd_fixtures_list, false);
  leaf(fx, "emit", "print a builtin fixture as JSON", nullptr, true)->callback([&] {
    command = "fixtures emit";
    emit = true;
  });

  CommandOutput out;
  out.report = Json::object();
  auto fail = [&](const std::string& kind, const std::string& message) {
    out.exit_code = 2;
    out.report = Json::object();
    if (!command.empty()) out.report["command"] = command;
    out.report["error"] = Json{{"kind", kind}, {"message", message}};
    out.text = opt.json ? pretty_json(out.report) : "error: " + kind + ": " + message + "\n";
    return out;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.text = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    return fail(std::string(error_kind_name(ErrorKind::UnknownCommand)), e.what());
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (emit) {
      const FixtureFile f = resolve_fixture(opt.fixture);
      out.report = serialize_fixture(f);
      out.text = dump_fixture(f);
      if (!opt.out.empty()) std::ofstream(opt.out) << out.text;
      return out;
    }
    Json& r = out.report;
    r["command"] = command;
    Context ctx;
    ctx.opt = opt;
    if (!opt.fixture.empty()) {
      ctx = load(opt, !lenient);
      r["input"] = ctx.fixture.name;
      r["input_digest"] = fnv1a_hex(dump_fixture(ctx.fixture));
    }
    r["seed"] = opt.seed;
    out.exit_code = handler(ctx, r);
    if (opt.timing) {
      r["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    }
  } catch (const Error& e) {
    return fail(std::string(error_kind_name(e.kind())), e.message());
  } catch (const std::exception& e) {
    return fail(std::string(error_kind_name(ErrorKind::InvalidArgument)), e.what());
  }
  out.text = opt.json ? pretty_json(out.report) : render_text(out.report);
  if (!opt.out.empty()) std::ofstream(opt.out) << pretty_json(out.report);
  return out;
}

}  // namespace dglakit
