#include "dglakit/dgla.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace dglakit {

namespace {

bool odd(long long n) { return (n % 2) != 0; }

std::string degree_text(int n) { return std::to_string(n); }

}  // namespace

int antisymmetry_sign(int p, int q) { return odd(static_cast<long long>(p) * q) ? 1 : -1; }

// ---------------------------------------------------------------------------
// GradedVectorSpace

GradedVectorSpace::GradedVectorSpace(std::map<int, std::size_t> dims, std::map<int, std::vector<std::string>> labels)
    : labels_(std::move(labels)) {
  for (const auto& [deg, d] : dims)
    if (d > 0) dims_.emplace(deg, d);
  for (auto it = labels_.begin(); it != labels_.end();) {
    if (it->second.empty() && dim(it->first) == 0) {
      it = labels_.erase(it);
      continue;
    }
    if (it->second.size() != dim(it->first)) {
      throw Error(ErrorKind::SchemaViolation,
                  "labels for degree " + degree_text(it->first) + " do not match its dimension");
    }
    ++it;
  }
  for (const auto& [deg, d] : dims_) {
    if (labels_.count(deg) == 0) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < d; ++i) names.push_back("L" + degree_text(deg) + "_" + std::to_string(i));
      labels_.emplace(deg, std::move(names));
    }
  }
}

std::size_t GradedVectorSpace::dim(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

std::vector<int> GradedVectorSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [deg, d] : dims_) out.push_back(deg);
  return out;
}

std::size_t GradedVectorSpace::total_dim() const {
  std::size_t total = 0;
  for (const auto& [deg, d] : dims_) total += d;
  return total;
}

const std::string& GradedVectorSpace::label(int degree, std::size_t index) const {
  return labels_.at(degree).at(index);
}

// ---------------------------------------------------------------------------
// DgLieAlgebra

DgLieAlgebra::DgLieAlgebra(GradedVectorSpace space, std::map<int, Matrix> differential, BracketTable bracket)
    : space_(std::move(space)) {
  for (auto& [n, m] : differential) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n)) {
      std::ostringstream msg;
      msg << "differential from degree " << n << " must be " << dim(n + 1) << "x" << dim(n) << ", got " << m.rows()
          << "x" << m.cols();
      throw Error(ErrorKind::SchemaViolation, msg.str());
    }
    if (!m.empty() && !m.is_zero()) differential_.emplace(n, std::move(m));
  }

  std::map<DegreePair, std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar>> canonical;
  for (const auto& [pair, entries] : bracket) {
    auto [p, q] = pair;
    for (const auto& e : entries) {
      if (e.i >= dim(p) || e.j >= dim(q) || e.k >= dim(p + q)) {
        std::ostringstream msg;
        msg << "bracket entry [" << p << "," << q << "," << e.i << "," << e.j << "," << e.k << "] out of range";
        throw Error(ErrorKind::SchemaViolation, msg.str());
      }
      DegreePair key{p, q};
      auto idx = std::make_tuple(e.i, e.j, e.k);
      Scalar value = e.value;
      if (p > q) {
        key = {q, p};
        idx = std::make_tuple(e.j, e.i, e.k);
        value *= antisymmetry_sign(p, q);
      }
      auto [it, inserted] = canonical[key].emplace(idx, value);
      if (!inserted) {
        std::ostringstream msg;
        msg << "duplicate bracket entry for [" << key.first << "," << key.second << "," << std::get<0>(idx) << ","
            << std::get<1>(idx) << "," << std::get<2>(idx) << "]";
        throw Error(ErrorKind::SchemaViolation, msg.str());
      }
    }
  }
  for (const auto& [key, entries] : canonical) {
    std::vector<StructureConstant> list;
    for (const auto& [idx, value] : entries) {
      if (sgn(value) == 0) continue;
      list.push_back({std::get<0>(idx), std::get<1>(idx), std::get<2>(idx), value});
    }
    if (!list.empty()) bracket_.emplace(key, std::move(list));
  }
  build_caches();
}

void DgLieAlgebra::build_caches() {
  const auto degs = degrees();
  for (int p : degs) {
    for (int q : degs) {
      if (dim(p + q) == 0) continue;
      std::vector<StructureConstant> list;
      if (p <= q) {
        auto it = bracket_.find({p, q});
        if (it != bracket_.end()) list = it->second;
      } else {
        auto it = bracket_.find({q, p});
        if (it != bracket_.end()) {
          const int sign = antisymmetry_sign(q, p);
          for (const auto& e : it->second) list.push_back({e.j, e.i, e.k, e.value * sign});
          std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
          });
        }
      }
      std::vector<Matrix> ads(dim(p), Matrix(dim(p + q), dim(q)));
      for (const auto& e : list) ads[e.i](e.k, e.j) += e.value;
      ordered_.emplace(DegreePair{p, q}, std::move(list));
      ad_.emplace(DegreePair{p, q}, std::move(ads));
    }
  }
}

Matrix DgLieAlgebra::differential(int n) const {
  auto it = differential_.find(n);
  return it == differential_.end() ? Matrix(dim(n + 1), dim(n)) : it->second;
}

const std::vector<StructureConstant>& DgLieAlgebra::structure(int p, int q) const {
  static const std::vector<StructureConstant> kEmpty;
  auto it = ordered_.find({p, q});
  return it == ordered_.end() ? kEmpty : it->second;
}

const Matrix& DgLieAlgebra::ad(int p, std::size_t i, int q) const {
  auto it = ad_.find({p, q});
  if (it == ad_.end()) {
    static thread_local std::map<std::tuple<std::size_t, std::size_t>, Matrix> zeros;
    auto key = std::make_tuple(dim(p + q), dim(q));
    auto z = zeros.find(key);
    if (z == zeros.end()) z = zeros.emplace(key, Matrix(dim(p + q), dim(q))).first;
    return z->second;
  }
  return it->second.at(i);
}

Vector DgLieAlgebra::apply_d(int n, std::span<const Scalar> x) const {
  if (x.size() != dim(n)) throw Error(ErrorKind::ShapeMismatch, "apply_d: vector length does not match degree");
  auto it = differential_.find(n);
  if (it == differential_.end()) return Vector(dim(n + 1));
  return it->second * x;
}

Vector DgLieAlgebra::bracket(int p, int q, std::span<const Scalar> x, std::span<const Scalar> y) const {
  if (x.size() != dim(p) || y.size() != dim(q)) throw Error(ErrorKind::ShapeMismatch, "bracket: argument length mismatch");
  Vector out(dim(p + q));
  for (const auto& e : structure(p, q)) {
    if (sgn(x[e.i]) == 0 || sgn(y[e.j]) == 0) continue;
    out[e.k] += e.value * x[e.i] * y[e.j];
  }
  return out;
}

PolyVector DgLieAlgebra::apply_d(int n, std::span<const Polynomial> x) const {
  if (x.size() != dim(n)) throw Error(ErrorKind::ShapeMismatch, "apply_d: vector length does not match degree");
  const std::size_t nvars = x.empty() ? 0 : x.front().nvars();
  auto it = differential_.find(n);
  if (it == differential_.end()) return PolyVector(dim(n + 1), Polynomial(nvars));
  return dglakit::apply(it->second, x);
}

PolyVector DgLieAlgebra::bracket(int p, int q, std::span<const Polynomial> x, std::span<const Polynomial> y,
                                 unsigned order) const {
  if (x.size() != dim(p) || y.size() != dim(q)) throw Error(ErrorKind::ShapeMismatch, "bracket: argument length mismatch");
  std::size_t nvars = 0;
  if (!x.empty()) nvars = x.front().nvars();
  else if (!y.empty()) nvars = y.front().nvars();
  PolyVector out(dim(p + q), Polynomial(nvars));
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> products;
  for (const auto& e : structure(p, q)) {
    if (x[e.i].is_zero() || y[e.j].is_zero()) continue;
    auto key = std::make_pair(e.i, e.j);
    auto it = products.find(key);
    if (it == products.end()) it = products.emplace(key, x[e.i].multiply(y[e.j], order)).first;
    if (!it->second.is_zero()) out[e.k] += it->second * e.value;
  }
  return out;
}

Vector DgLieAlgebra::basis_vector(int degree, std::size_t index) const {
  Vector v(dim(degree));
  v.at(index) = 1;
  return v;
}

// ---------------------------------------------------------------------------
// Axioms

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::check(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return c;
  throw Error(ErrorKind::InvalidArgument, "no axiom named " + axiom);
}

namespace {

std::string describe(const DgLieAlgebra& l, std::initializer_list<BasisElement> elems) {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : elems) {
    out << (first ? "" : ", ") << l.space().label(e.degree, e.index) << " (deg " << e.degree << ")";
    first = false;
  }
  return out.str();
}

AxiomCheck check_d_squared(const DgLieAlgebra& l) {
  AxiomCheck result{"d_squared", true, {}, ""};
  for (int n : l.degrees()) {
    if (l.dim(n + 1) == 0 || l.dim(n + 2) == 0) continue;
    const Matrix dd = l.differential(n + 1) * l.differential(n);
    for (std::size_t j = 0; j < dd.cols(); ++j) {
      if (!is_zero(dd.column(j))) {
        result.passed = false;
        result.witness = {{n, j}};
        result.detail = "d(d(" + describe(l, {{n, j}}) + ")) != 0 in degree " + std::to_string(n + 2);
        return result;
      }
    }
  }
  return result;
}

AxiomCheck check_antisymmetry(const DgLieAlgebra& l) {
  AxiomCheck result{"antisymmetry", true, {}, ""};
  // Blocks with p != q are antisymmetric by construction; only the diagonal
  // blocks carry independent data.
  for (int p : l.degrees()) {
    if (l.dim(2 * p) == 0) continue;
    const int sign = antisymmetry_sign(p, p);
    for (std::size_t i = 0; i < l.dim(p); ++i) {
      for (std::size_t j = i; j < l.dim(p); ++j) {
        const Vector fg = l.ad(p, i, p).column(j);
        const Vector gf = l.ad(p, j, p).column(i);
        bool ok = true;
        for (std::size_t k = 0; k < fg.size() && ok; ++k) ok = fg[k] == gf[k] * sign;
        if (!ok) {
          result.passed = false;
          result.witness = {{p, i}, {p, j}};
          result.detail = "[f,g] != (-1)^{|f||g|+1}[g,f] for " + describe(l, {{p, i}, {p, j}});
          return result;
        }
      }
    }
  }
  return result;
}

AxiomCheck check_leibniz(const DgLieAlgebra& l) {
  AxiomCheck result{"leibniz", true, {}, ""};
  for (int p : l.degrees()) {
    for (int q : l.degrees()) {
      const int n = p + q;
      if (l.dim(n + 1) == 0) continue;
      const Matrix dp = l.differential(p);
      const Matrix dq = l.differential(q);
      const Matrix dn = l.differential(n);
      const int sign = odd(p) ? -1 : 1;
      for (std::size_t i = 0; i < l.dim(p); ++i) {
        const Vector f = l.basis_vector(p, i);
        const Vector df = dp * f;
        for (std::size_t j = 0; j < l.dim(q); ++j) {
          const Vector g = l.basis_vector(q, j);
          Vector lhs = l.dim(n) > 0 ? dn * l.bracket(p, q, f, g) : Vector(l.dim(n + 1));
          Vector rhs(l.dim(n + 1));
          if (l.dim(p + 1) > 0) rhs = l.bracket(p + 1, q, df, g);
          if (l.dim(q + 1) > 0) {
            const Vector term = l.bracket(p, q + 1, f, dq * g);
            for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += term[k] * sign;
          }
          if (lhs != rhs) {
            result.passed = false;
            result.witness = {{p, i}, {q, j}};
            result.detail = "d[f,g] != [df,g] + (-1)^{|f|}[f,dg] for " + describe(l, {{p, i}, {q, j}});
            return result;
          }
        }
      }
    }
  }
  return result;
}

AxiomCheck check_jacobi(const DgLieAlgebra& l) {
  AxiomCheck result{"jacobi", true, {}, ""};
  const auto degs = l.degrees();
  for (int p : degs) {
    for (int q : degs) {
      for (int r : degs) {
        const int n = p + q + r;
        if (l.dim(n) == 0) continue;
        // (-1)^{|f||h|}[f,[g,h]] + (-1)^{|g||f|}[g,[h,f]] + (-1)^{|h||g|}[h,[f,g]] = 0
        const int s1 = odd(static_cast<long long>(p) * r) ? -1 : 1;
        const int s2 = odd(static_cast<long long>(q) * p) ? -1 : 1;
        const int s3 = odd(static_cast<long long>(r) * q) ? -1 : 1;
        const bool gh = l.dim(q + r) > 0, hf = l.dim(r + p) > 0, fg = l.dim(p + q) > 0;
        if (!gh && !hf && !fg) continue;
        for (std::size_t i = 0; i < l.dim(p); ++i) {
          for (std::size_t j = 0; j < l.dim(q); ++j) {
            for (std::size_t k = 0; k < l.dim(r); ++k) {
              Vector total(l.dim(n));
              if (gh) {
                const Vector inner = l.ad(q, j, r).column(k);
                const Vector outer = l.ad(p, i, q + r) * inner;
                for (std::size_t t = 0; t < total.size(); ++t) total[t] += outer[t] * s1;
              }
              if (hf) {
                const Vector inner = l.ad(r, k, p).column(i);
                const Vector outer = l.ad(q, j, r + p) * inner;
                for (std::size_t t = 0; t < total.size(); ++t) total[t] += outer[t] * s2;
              }
              if (fg) {
                const Vector inner = l.ad(p, i, q).column(j);
                const Vector outer = l.ad(r, k, p + q) * inner;
                for (std::size_t t = 0; t < total.size(); ++t) total[t] += outer[t] * s3;
              }
              if (!is_zero(total)) {
                result.passed = false;
                result.witness = {{p, i}, {q, j}, {r, k}};
                result.detail = "graded Jacobi fails for " + describe(l, {{p, i}, {q, j}, {r, k}});
                return result;
              }
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace

AxiomReport check_dgla_axioms(const DgLieAlgebra& l) {
  return {{check_d_squared(l), check_antisymmetry(l), check_leibniz(l), check_jacobi(l)}};
}

// ---------------------------------------------------------------------------
// Cohomology

std::size_t CohomologyReport::dim(int degree) const {
  auto it = dims.find(degree);
  return it == dims.end() ? 0 : it->second;
}

CohomologyReport cohomology(const DgLieAlgebra& l) {
  const auto d2 = check_d_squared(l);
  if (!d2.passed) throw Error(ErrorKind::AxiomViolation, d2.detail);
  const Splitting s = build_splitting(l);
  CohomologyReport report;
  for (int n : l.degrees()) {
    const auto& part = s.at(n);
    report.dims[n] = part.harmonic.dim();
    report.representatives[n] = part.harmonic.basis();
  }
  return report;
}

// ---------------------------------------------------------------------------
// Group actions

namespace {

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  GroupElement out;
  for (const auto& [deg, m] : a) out.emplace(deg, m * b.at(deg));
  return out;
}

GroupElement identity_like(const GroupElement& g) {
  GroupElement out;
  for (const auto& [deg, m] : g) out.emplace(deg, Matrix::identity(m.rows()));
  return out;
}

constexpr std::size_t kMaxGroupOrder = 100000;

}  // namespace

std::vector<GroupElement> enumerate_group(const GroupAction& action) {
  if (action.generators.empty()) {
    if (action.group_order != 1) throw Error(ErrorKind::InvariantViolation, "a group without generators has order 1");
    return {GroupElement{}};
  }
  const auto& first = action.generators.front();
  for (const auto& g : action.generators) {
    if (g.size() != first.size()) throw Error(ErrorKind::InvariantViolation, "generators act on different degrees");
    for (const auto& [deg, m] : g) {
      auto it = first.find(deg);
      if (it == first.end() || it->second.rows() != m.rows() || m.rows() != m.cols()) {
        throw Error(ErrorKind::InvariantViolation, "generator blocks have inconsistent shapes");
      }
      if (m.rows() > 0 && sgn(determinant(m)) == 0) {
        throw Error(ErrorKind::InvariantViolation, "generator is not invertible in degree " + std::to_string(deg));
      }
    }
  }
  const GroupElement id = identity_like(first);
  for (const auto& word : action.relations) {
    GroupElement value = id;
    for (auto index : word) {
      if (index >= action.generators.size()) throw Error(ErrorKind::InvariantViolation, "relation names an unknown generator");
      value = multiply(value, action.generators[index]);
    }
    if (value != id) throw Error(ErrorKind::InvariantViolation, "a declared relation does not hold");
  }
  std::vector<GroupElement> elements{id};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : action.generators) {
      GroupElement next = multiply(elements[head], g);
      if (std::find(elements.begin(), elements.end(), next) == elements.end()) {
        elements.push_back(std::move(next));
        if (elements.size() > std::max(action.group_order, kMaxGroupOrder)) {
          throw Error(ErrorKind::InvariantViolation, "generated group exceeds its declared order");
        }
      }
    }
  }
  if (elements.size() != action.group_order) {
    throw Error(ErrorKind::InvariantViolation, "generated group has " + std::to_string(elements.size()) +
                                                   " elements, declared order is " + std::to_string(action.group_order));
  }
  return elements;
}

GroupAction complete_action(const DgLieAlgebra& l, GroupAction action) {
  for (auto& g : action.generators) {
    for (int n : l.degrees()) {
      if (g.count(n) == 0) g.emplace(n, Matrix::identity(l.dim(n)));
    }
    for (const auto& [deg, m] : g) {
      if (m.rows() != l.dim(deg) || m.cols() != l.dim(deg)) {
        throw Error(ErrorKind::SchemaViolation, "group generator block in degree " + std::to_string(deg) +
                                                    " does not match the dimension");
      }
    }
  }
  return action;
}

bool is_automorphism(const DgLieAlgebra& l, const GroupElement& g) {
  auto block = [&](int n) { return g.count(n) ? g.at(n) : Matrix::identity(l.dim(n)); };
  for (int n : l.degrees()) {
    if (l.dim(n + 1) == 0) continue;
    if (!(block(n + 1) * l.differential(n) == l.differential(n) * block(n))) return false;
  }
  for (int p : l.degrees()) {
    for (int q : l.degrees()) {
      if (l.dim(p + q) == 0) continue;
      const Matrix gp = block(p), gq = block(q), gn = block(p + q);
      for (std::size_t i = 0; i < l.dim(p); ++i) {
        const Vector gx = gp.column(i);
        for (std::size_t j = 0; j < l.dim(q); ++j) {
          const Vector lhs = gn * l.ad(p, i, q).column(j);
          const Vector rhs = l.bracket(p, q, gx, gq.column(j));
          if (lhs != rhs) return false;
        }
      }
    }
  }
  return true;
}

void require_automorphisms(const DgLieAlgebra& l, const GroupAction& action) {
  for (std::size_t i = 0; i < action.generators.size(); ++i) {
    if (!is_automorphism(l, action.generators[i])) {
      throw Error(ErrorKind::NotAnAutomorphism, "group generator " + std::to_string(i) +
                                                    " does not commute with the differential or the bracket");
    }
  }
}

Matrix reynolds_project(const GroupAction& action, int degree) {
  const auto elements = enumerate_group(action);
  if (action.generators.empty()) throw Error(ErrorKind::InvalidArgument, "trivial group has no degree data");
  auto it = action.generators.front().find(degree);
  if (it == action.generators.front().end()) {
    throw Error(ErrorKind::InvalidArgument, "group action has no block in degree " + std::to_string(degree));
  }
  std::vector<Matrix> blocks;
  for (const auto& g : elements) blocks.push_back(g.at(degree));
  return Averager(std::move(blocks)).reynolds();
}

// ---------------------------------------------------------------------------
// Splittings

Splitting::Splitting(const DgLieAlgebra& l, std::map<int, DegreeSplitting> degrees) : degrees_(std::move(degrees)) {
  for (int n : l.degrees()) dims_[n] = l.dim(n);
  for (const auto& [n, part] : degrees_) {
    if (l.dim(n) == 0) throw Error(ErrorKind::InvalidSplitting, "splitting given for the zero degree " + std::to_string(n));
  }
  auto fail = [](int n, const std::string& what) {
    throw Error(ErrorKind::InvalidSplitting, "degree " + std::to_string(n) + ": " + what);
  };
  for (int n : l.degrees()) {
    auto it = degrees_.find(n);
    if (it == degrees_.end()) fail(n, "missing");
    const auto& part = it->second;
    const std::size_t dn = l.dim(n);
    if (part.cycles.ambient_dim() != dn || part.boundaries.ambient_dim() != dn || part.harmonic.ambient_dim() != dn ||
        part.complement.ambient_dim() != dn) {
      fail(n, "subspace ambient dimension mismatch");
    }
    if (!subspace_equal(part.cycles, kernel(l.differential(n)))) fail(n, "Z is not the kernel of d");
    if (!subspace_equal(part.boundaries, image(l.differential(n - 1)))) fail(n, "B is not the image of d");
    if (part.boundaries.dim() + part.harmonic.dim() != part.cycles.dim() ||
        !subspace_equal(subspace_sum(part.boundaries, part.harmonic), part.cycles)) {
      fail(n, "B + H is not a direct decomposition of Z");
    }
    if (part.cycles.dim() + part.complement.dim() != dn ||
        subspace_sum(part.cycles, part.complement).dim() != dn) {
      fail(n, "Z + K is not a direct decomposition of L");
    }
  }
  for (int n : l.degrees()) {
    const auto& k = degrees_.at(n).complement;
    const Matrix dk = l.differential(n) * k.basis_matrix();
    if (rank(dk) != k.dim()) fail(n, "d is not injective on K");
    const std::size_t next_b = l.dim(n + 1) > 0 ? degrees_.at(n + 1).boundaries.dim() : 0;
    if (k.dim() != next_b) fail(n, "d(K) does not fill the boundaries of the next degree");
  }

  for (const auto& [n, part] : degrees_) {
    harmonic_coords_[n] = projection_coordinates(part.harmonic, subspace_sum(part.boundaries, part.complement));
  }
  // delta: L^{n+1} -> B^{n+1} -> K^n.
  for (int m : l.degrees()) {
    const int n = m - 1;
    const auto& target = degrees_.at(m);
    const Matrix b_coords =
        projection_coordinates(target.boundaries, subspace_sum(target.harmonic, target.complement));
    if (l.dim(n) == 0) {
      delta_[n] = Matrix(0, l.dim(m));
      continue;
    }
    const auto& k = degrees_.at(n).complement;
    const Matrix k_basis = k.basis_matrix();
    const Matrix dk = l.differential(n) * k_basis;
    Matrix inv_on_b(l.dim(n), target.boundaries.dim());
    const auto b_vectors = target.boundaries.basis();
    for (std::size_t r = 0; r < b_vectors.size(); ++r) {
      auto c = solve(dk, b_vectors[r]);
      if (!c) fail(n, "boundary not hit by d(K)");
      const Vector pre = k_basis * *c;
      for (std::size_t t = 0; t < pre.size(); ++t) inv_on_b(t, r) = pre[t];
    }
    delta_[n] = inv_on_b * b_coords;
  }
}

const DegreeSplitting& Splitting::at(int degree) const {
  auto it = degrees_.find(degree);
  return it == degrees_.end() ? empty_ : it->second;
}

std::size_t Splitting::dim(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

Matrix Splitting::harmonic_coordinates(int degree) const {
  auto it = harmonic_coords_.find(degree);
  return it == harmonic_coords_.end() ? Matrix(0, dim(degree)) : it->second;
}

Matrix Splitting::harmonic_basis(int degree) const {
  auto it = degrees_.find(degree);
  return it == degrees_.end() ? Matrix(dim(degree), 0) : it->second.harmonic.basis_matrix();
}

Matrix Splitting::delta(int n) const {
  auto it = delta_.find(n);
  return it == delta_.end() ? Matrix(dim(n), dim(n + 1)) : it->second;
}

Matrix Splitting::harmonic_projector(int degree) const {
  return harmonic_basis(degree) * harmonic_coordinates(degree);
}

Splitting build_splitting(const DgLieAlgebra& l, const GroupAction* action) {
  std::map<int, Averager> averagers;
  if (action != nullptr) {
    const GroupAction full = complete_action(l, *action);
    require_automorphisms(l, full);
    const auto elements = enumerate_group(full);
    for (int n : l.degrees()) {
      std::vector<Matrix> blocks;
      for (const auto& g : elements) blocks.push_back(g.at(n));
      averagers.emplace(n, Averager(std::move(blocks)));
    }
  }
  std::map<int, DegreeSplitting> parts;
  for (int n : l.degrees()) {
    DegreeSplitting part;
    part.cycles = kernel(l.differential(n));
    part.boundaries = image(l.differential(n - 1));
    const Averager* avg = averagers.count(n) ? &averagers.at(n) : nullptr;
    part.harmonic = complement(part.boundaries, part.cycles, avg);
    part.complement = complement(part.cycles, Subspace::full(l.dim(n)), avg);
    parts.emplace(n, std::move(part));
  }
  return Splitting(l, std::move(parts));
}

void require_splitting_of(const DgLieAlgebra& l, const Splitting& s) {
  for (int n : l.degrees()) {
    if (s.dim(n) != l.dim(n)) throw Error(ErrorKind::InvalidSplitting, "splitting does not match the algebra dimensions");
  }
  for (const auto& [n, part] : s.degrees()) {
    if (l.dim(n) != part.cycles.ambient_dim()) {
      throw Error(ErrorKind::InvalidSplitting, "splitting does not match the algebra dimensions");
    }
  }
  // Re-validation throws InvalidSplitting with the failing condition.
  Splitting check(l, s.degrees());
}

}  // namespace dglakit
