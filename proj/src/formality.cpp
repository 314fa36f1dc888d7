#include "dglakit/formality.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dglakit {

namespace {

bool odd(long long n) { return n % 2 != 0; }

int koszul(int p, int q) { return odd(static_cast<long long>(p) * q) ? -1 : 1; }

std::string label_of(const DgLieAlgebra& l, BasisElement e) { return l.space().label(e.degree, e.index); }

}  // namespace

std::string_view symmetry_name(PairingSymmetry s) { return s == PairingSymmetry::Graded ? "graded" : "strict"; }

// ---------------------------------------------------------------------------
// Pairings

Matrix CyclicPairing::block(const DgLieAlgebra& l, int p, int q) const {
  auto it = blocks.find({p, q});
  if (it == blocks.end()) return Matrix(l.dim(p), l.dim(q));
  return it->second;
}

Scalar CyclicPairing::evaluate(const DgLieAlgebra& l, int p, std::span<const Scalar> f, int q,
                               std::span<const Scalar> g) const {
  if (p + q != degree) return 0;
  const Vector bg = block(l, p, q) * g;
  Scalar total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i] * bg[i];
  return total;
}

void validate_pairing(const DgLieAlgebra& l, const CyclicPairing& pairing) {
  for (const auto& [pq, m] : pairing.blocks) {
    auto [p, q] = pq;
    if (p + q != pairing.degree) {
      if (!m.is_zero()) {
        throw Error(ErrorKind::ShapeMismatch, "pairing block (" + std::to_string(p) + "," + std::to_string(q) +
                                                  ") lies off degree " + std::to_string(pairing.degree));
      }
      continue;
    }
    if (m.rows() != l.dim(p) || m.cols() != l.dim(q)) {
      throw Error(ErrorKind::ShapeMismatch,
                  "pairing block (" + std::to_string(p) + "," + std::to_string(q) + ") has the wrong shape");
    }
  }
}

CyclicPairing complete_pairing(const DgLieAlgebra& l, CyclicPairing pairing, PairingSymmetry symmetry) {
  validate_pairing(l, pairing);
  std::map<DegreePair, Matrix> extra;
  for (const auto& [pq, m] : pairing.blocks) {
    auto [p, q] = pq;
    if (pairing.blocks.count({q, p}) || extra.count({q, p})) continue;
    const int sign = symmetry == PairingSymmetry::Graded ? koszul(p, q) : 1;
    extra.emplace(DegreePair{q, p}, m.transpose() * Scalar(sign));
  }
  pairing.blocks.insert(extra.begin(), extra.end());
  return pairing;
}

bool PairingReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PairingCheck& c) { return c.passed; });
}

const PairingCheck& PairingReport::check(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return c;
  throw Error(ErrorKind::InvalidArgument, "no pairing axiom named " + axiom);
}

namespace {

PairingCheck symmetry_check(const DgLieAlgebra& l, const CyclicPairing& pr, PairingSymmetry convention, bool& graded,
                            bool& strict) {
  graded = strict = true;
  PairingCheck out{"symmetry", true, {}, ""};
  for (int p : l.degrees()) {
    const int q = pr.degree - p;
    if (l.dim(q) == 0) continue;
    const Matrix a = pr.block(l, p, q);
    const Matrix bt = pr.block(l, q, p).transpose();
    if (!(a == bt)) strict = false;
    if (!(a == bt * Scalar(koszul(p, q)))) graded = false;
  }
  out.passed = convention == PairingSymmetry::Graded ? graded : strict;
  if (!out.passed) out.detail = "pairing is not " + std::string(symmetry_name(convention)) + "-symmetric";
  return out;
}

PairingCheck d_invariance_check(const DgLieAlgebra& l, const CyclicPairing& pr) {
  PairingCheck out{"d_invariance", true, {}, ""};
  for (int p : l.degrees()) {
    const int q = pr.degree - 1 - p;
    if (l.dim(q) == 0) continue;
    // (d e_i, e_j) + (-1)^p (e_i, d e_j)
    Matrix total(l.dim(p), l.dim(q));
    if (l.dim(p + 1) > 0) total = l.differential(p).transpose() * pr.block(l, p + 1, q);
    if (l.dim(q + 1) > 0) {
      const Matrix second = pr.block(l, p, q + 1) * l.differential(q);
      total = odd(p) ? total - second : total + second;
    }
    for (std::size_t i = 0; i < total.rows(); ++i)
      for (std::size_t j = 0; j < total.cols(); ++j)
        if (sgn(total(i, j)) != 0) {
          out.passed = false;
          out.witness = {{p, i}, {q, j}};
          out.detail = "(df, g) + (-1)^{|f|}(f, dg) != 0 for f = " + label_of(l, {p, i}) + ", g = " + label_of(l, {q, j});
          return out;
        }
  }
  return out;
}

PairingCheck cyclicity_check(const DgLieAlgebra& l, const CyclicPairing& pr) {
  PairingCheck out{"cyclicity", true, {}, ""};
  const auto degs = l.degrees();
  for (int p : degs) {
    for (int q : degs) {
      const int r = pr.degree - p - q;
      if (l.dim(r) == 0) continue;
      const bool left = l.dim(p + q) > 0, right = l.dim(q + r) > 0;
      if (!left && !right) continue;
      const Matrix bl = pr.block(l, p + q, r);
      const Matrix br = pr.block(l, p, q + r);
      for (std::size_t i = 0; i < l.dim(p); ++i) {
        for (std::size_t j = 0; j < l.dim(q); ++j) {
          // row vectors over k
          Vector lhs(l.dim(r)), rhs(l.dim(r));
          if (left) {
            const Vector fg = l.ad(p, i, q).column(j);
            for (std::size_t k = 0; k < lhs.size(); ++k)
              for (std::size_t t = 0; t < fg.size(); ++t)
                if (sgn(fg[t]) != 0) lhs[k] += fg[t] * bl(t, k);
          }
          if (right) {
            const Matrix row = Matrix(1, l.dim(q + r), br.row(i)) * l.ad(q, j, r);
            rhs = row.row(0);
          }
          for (std::size_t k = 0; k < lhs.size(); ++k) {
            if (lhs[k] != rhs[k]) {
              out.passed = false;
              out.witness = {{p, i}, {q, j}, {r, k}};
              out.detail = "([f, g], h) != (f, [g, h]) for f = " + label_of(l, {p, i}) + ", g = " +
                           label_of(l, {q, j}) + ", h = " + label_of(l, {r, k});
              return out;
            }
          }
        }
      }
    }
  }
  return out;
}

PairingCheck nondegeneracy_check(const DgLieAlgebra& l, const CyclicPairing& pr, bool& unsatisfiable) {
  PairingCheck out{"nondegeneracy", true, {}, ""};
  unsatisfiable = false;
  const Splitting s = build_splitting(l);
  std::vector<int> degs = l.degrees();
  for (int p : l.degrees()) degs.push_back(pr.degree - p);
  std::sort(degs.begin(), degs.end());
  degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
  for (int p : degs) {
    const std::size_t hp = l.dim(p) ? s.at(p).harmonic.dim() : 0;
    const int q = pr.degree - p;
    const std::size_t hq = l.dim(q) ? s.at(q).harmonic.dim() : 0;
    if (hp != hq) {
      unsatisfiable = true;
      out.passed = false;
      out.detail = std::string(kUnsatisfiableReason) + ": dim H^" + std::to_string(p) + " = " + std::to_string(hp) +
                   " but dim H^" + std::to_string(q) + " = " + std::to_string(hq);
      return out;
    }
  }
  for (int p : degs) {
    const int q = pr.degree - p;
    if (l.dim(p) == 0 || l.dim(q) == 0) continue;
    const std::size_t hp = s.at(p).harmonic.dim();
    if (hp == 0) continue;
    const Matrix induced = s.harmonic_basis(p).transpose() * pr.block(l, p, q) * s.harmonic_basis(q);
    if (rank(induced) != hp) {
      out.passed = false;
      out.detail = "induced pairing H^" + std::to_string(p) + " x H^" + std::to_string(q) + " is degenerate";
      return out;
    }
  }
  return out;
}

}  // namespace

PairingReport check_quasi_cyclic(const DgLieAlgebra& l, const CyclicPairing& p, PairingSymmetry convention) {
  validate_pairing(l, p);
  PairingReport report;
  report.convention = convention;
  report.checks.push_back(symmetry_check(l, p, convention, report.graded_symmetric, report.strictly_symmetric));
  report.checks.push_back(d_invariance_check(l, p));
  report.checks.push_back(cyclicity_check(l, p));
  report.checks.push_back(nondegeneracy_check(l, p, report.nondegeneracy_unsatisfiable));
  return report;
}

// ---------------------------------------------------------------------------
// BMM criterion

FormalityCertificate check_bmm_criterion(const DgLieAlgebra& l, const CyclicPairing& p, const Splitting& s,
                                         PairingSymmetry convention) {
  require_splitting_of(l, s);
  FormalityCertificate cert;
  cert.pairing = check_quasi_cyclic(l, p, convention);

  CriterionCheck bound{"degree_bound", p.degree <= 2, ""};
  if (!bound.passed) bound.detail = "pairing degree " + std::to_string(p.degree) + " exceeds 2";
  cert.conditions.push_back(bound);

  CriterionCheck negative{"negative_cohomology", true, ""};
  for (int n : l.degrees()) {
    if (n < 0 && s.at(n).harmonic.dim() > 0) {
      negative.passed = false;
      negative.detail = "H^" + std::to_string(n) + " is nonzero";
      break;
    }
  }
  cert.conditions.push_back(negative);

  // [H^0, target] inside target, with target a subspace of L^i
  auto closed = [&](int i, const Subspace& target, std::string& detail, const std::string& what) {
    if (l.dim(0) == 0) return true;
    for (const auto& a : s.at(0).harmonic.basis()) {
      for (const auto& b : target.basis()) {
        if (!target.contains(l.bracket(0, i, a, b))) {
          detail = "[H^0, " + what + "] is not contained in " + what;
          return false;
        }
      }
    }
    return true;
  };

  CriterionCheck sub{"h0_subalgebra", true, ""};
  if (l.dim(0) > 0) sub.passed = closed(0, s.at(0).harmonic, sub.detail, "H^0");
  cert.conditions.push_back(sub);

  CriterionCheck module{"h0_module", true, ""};
  for (int i : l.degrees()) {
    if (i <= 0 || !module.passed) continue;
    module.passed = closed(i, s.at(i).harmonic, module.detail, "H^" + std::to_string(i)) &&
                    closed(i, s.at(i).complement, module.detail, "K^" + std::to_string(i));
  }
  cert.conditions.push_back(module);

  for (const auto& c : cert.pairing.checks) {
    if (c.passed) continue;
    if (c.axiom == "nondegeneracy" && cert.pairing.nondegeneracy_unsatisfiable) {
      cert.reasons.push_back(kUnsatisfiableReason);
    } else {
      cert.reasons.push_back("pairing " + c.axiom + " fails: " + c.detail);
    }
  }
  for (const auto& c : cert.conditions)
    if (!c.passed) cert.reasons.push_back(c.name + ": " + c.detail);
  cert.verdict = cert.reasons.empty() ? FormalityVerdict::Certified : FormalityVerdict::NotApplicable;
  return cert;
}

// ---------------------------------------------------------------------------
// Transfer

namespace {

struct Context {
  const DgLieAlgebra& l;
  const Splitting& s;

  GradedVector bracket(const GradedVector& x, const GradedVector& y) const {
    const int n = x.degree + y.degree;
    if (l.dim(n) == 0 || x.v.empty() || y.v.empty()) return {n, Vector(l.dim(n))};
    return {n, l.bracket(x.degree, y.degree, x.v, y.v)};
  }
  // h = -delta, degree -1
  GradedVector h(const GradedVector& x) const {
    const int n = x.degree - 1;
    if (l.dim(n) == 0 || x.v.empty()) return {n, Vector(l.dim(n))};
    Vector out = s.delta(n) * x.v;
    for (auto& c : out) c = -c;
    return {n, out};
  }
};

void accumulate(GradedVector& acc, const GradedVector& term, const Scalar& c) {
  if (acc.v.empty()) acc = {term.degree, Vector(term.v.size())};
  for (std::size_t i = 0; i < term.v.size(); ++i) acc.v[i] += c * term.v[i];
}

// sgn(sigma) times the Koszul sign of moving args into the order given by perm.
int chi(const std::vector<std::size_t>& perm, const std::vector<GradedVector>& args) {
  int sign = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) sign *= -koszul(args[perm[a]].degree, args[perm[b]].degree);
  return sign;
}

bool any_zero(const std::vector<GradedVector>& xs) {
  return std::any_of(xs.begin(), xs.end(), [](const GradedVector& x) { return is_zero(x.v); });
}

}  // namespace

GradedVector transfer_bracket(const DgLieAlgebra& l, const Splitting& s, const std::vector<GradedVector>& args) {
  const std::size_t k = args.size();
  if (k < 2 || k > 4) throw Error(ErrorKind::UnsupportedArity, "transferred brackets are available for arity 2..4");
  for (const auto& a : args)
    if (a.v.size() != l.dim(a.degree)) throw Error(ErrorKind::ShapeMismatch, "transfer_bracket: argument shape");
  int total = 2 - static_cast<int>(k);
  for (const auto& a : args) total += a.degree;
  GradedVector out{total, Vector(l.dim(total))};
  if (l.dim(total) == 0 || any_zero(args)) return out;

  Context c{l, s};
  if (k == 2) {
    out = c.bracket(args[0], args[1]);
  } else {
    bool any_delta = false;
    for (int n : l.degrees()) any_delta = any_delta || !s.delta(n - 1).is_zero();
    if (!any_delta) return out;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    GradedVector acc;
    do {
      const int sign = chi(perm, args);
      const auto& x1 = args[perm[0]];
      const auto& x2 = args[perm[1]];
      const auto& x3 = args[perm[2]];
      if (k == 3) {
        accumulate(acc, c.bracket(c.h(c.bracket(x1, x2)), x3), Scalar(sign, 2));
      } else {
        const auto& x4 = args[perm[3]];
        accumulate(acc, c.bracket(c.h(c.bracket(c.h(c.bracket(x1, x2)), x3)), x4), Scalar(sign, 2));
        accumulate(acc, c.bracket(c.h(c.bracket(x1, x2)), c.h(c.bracket(x3, x4))), Scalar(sign, 8));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out = acc;
  }
  out.v = s.harmonic_projector(total) * out.v;
  return out;
}

bool TransferredStructure::vanishes(unsigned k) const {
  auto it = brackets.find(k);
  return it == brackets.end() || it->second.empty();
}

TransferredStructure transfer_brackets(const DgLieAlgebra& l, const Splitting& s, unsigned arity) {
  if (arity < 2 || arity > 4) throw Error(ErrorKind::UnsupportedArity, "arity must be 2, 3 or 4");
  require_splitting_of(l, s);
  TransferredStructure out;
  out.arity_bound = arity;
  std::vector<GradedVector> reps;
  for (int n : l.degrees()) {
    const auto basis = s.at(n).harmonic.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      out.basis.push_back({n, i});
      reps.push_back({n, basis[i]});
    }
  }
  bool any_delta = false;
  for (int n : l.degrees()) any_delta = any_delta || !s.delta(n - 1).is_zero();

  const std::size_t m = reps.size();
  for (unsigned k = 2; k <= arity; ++k) {
    auto& table = out.brackets[k];
    if (k >= 3 && !any_delta) continue;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      int total = 2 - static_cast<int>(k);
      for (auto i : idx) total += reps[i].degree;
      if (l.dim(total) > 0 && s.at(total).harmonic.dim() > 0) {
        std::vector<GradedVector> args;
        for (auto i : idx) args.push_back(reps[i]);
        GradedVector value = transfer_bracket(l, s, args);
        if (!is_zero(value.v)) {
          table.emplace(idx, GradedVector{value.degree, s.at(value.degree).harmonic.coordinates(value.v)});
        }
      }
      // next non-decreasing tuple
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] + 1 == m) --pos;
      if (pos == 0 || m == 0) break;
      ++idx[pos - 1];
      for (std::size_t t = pos; t < k; ++t) idx[t] = idx[pos - 1];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Involutions

std::size_t EigenSplit::minus_dim(int degree) const {
  auto it = minus_basis.find(degree);
  return it == minus_basis.end() ? 0 : it->second.cols();
}

namespace {

std::map<int, Matrix> complete_involution(const DgLieAlgebra& l, const Involution& sigma) {
  std::map<int, Matrix> out;
  for (const auto& [n, m] : sigma.matrices) {
    if (l.dim(n) == 0 && m.rows() == 0) continue;
    if (m.rows() != l.dim(n) || m.cols() != l.dim(n)) {
      throw Error(ErrorKind::ShapeMismatch, "involution block in degree " + std::to_string(n) + " has the wrong shape");
    }
  }
  for (int n : l.degrees()) {
    auto it = sigma.matrices.find(n);
    out.emplace(n, it == sigma.matrices.end() ? Matrix::identity(l.dim(n)) : it->second);
  }
  for (const auto& [n, m] : out) {
    if (!(m * m == Matrix::identity(m.rows()))) {
      throw Error(ErrorKind::NotAnInvolution, "sigma^2 != 1 in degree " + std::to_string(n));
    }
  }
  if (!is_automorphism(l, out)) {
    throw Error(ErrorKind::NotAnAutomorphism, "sigma does not commute with the differential or the bracket");
  }
  return out;
}

std::string combination_label(const DgLieAlgebra& l, int degree, const Vector& v) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    const bool neg = sgn(v[i]) < 0;
    const Scalar mag = abs(v[i]);
    if (first) out << (neg ? "-" : "");
    else out << (neg ? "-" : "+");
    first = false;
    if (mag != 1) out << to_string(mag) << "*";
    out << l.space().label(degree, i);
  }
  return first ? "0" : out.str();
}

Matrix coordinates_of(const Subspace& s, const Matrix& columns) {
  Matrix out(s.dim(), columns.cols());
  for (std::size_t j = 0; j < columns.cols(); ++j) {
    const Vector c = s.coordinates(columns.column(j));
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

}  // namespace

EigenSplit eigensplit_involution(const DgLieAlgebra& l, const Involution& sigma) {
  const auto sig = complete_involution(l, sigma);
  EigenSplit out;
  std::map<int, Subspace> plus, minus;
  std::map<int, std::size_t> plus_dims;
  std::map<int, std::vector<std::string>> labels;
  for (int n : l.degrees()) {
    const Matrix id = Matrix::identity(l.dim(n));
    plus[n] = kernel(sig.at(n) - id);
    minus[n] = kernel(sig.at(n) + id);
    out.plus_basis[n] = plus[n].basis_matrix();
    out.minus_basis[n] = minus[n].basis_matrix();
    plus_dims[n] = plus[n].dim();
    for (const auto& v : plus[n].basis()) labels[n].push_back(combination_label(l, n, v));
  }
  for (auto it = labels.begin(); it != labels.end();)
    it = it->second.empty() ? labels.erase(it) : std::next(it);

  std::map<int, Matrix> d_plus;
  for (int n : l.degrees()) {
    if (plus_dims[n] == 0 || l.dim(n + 1) == 0 || plus[n + 1].dim() == 0) continue;
    d_plus.emplace(n, coordinates_of(plus[n + 1], l.differential(n) * out.plus_basis[n]));
    if (minus[n].dim() > 0 && minus[n + 1].dim() > 0) {
      out.minus_differential.emplace(n, coordinates_of(minus[n + 1], l.differential(n) * out.minus_basis[n]));
    }
  }
  for (int n : l.degrees()) {
    if (minus[n].dim() > 0 && l.dim(n + 1) > 0 && minus[n + 1].dim() > 0 && !out.minus_differential.count(n)) {
      out.minus_differential.emplace(n, coordinates_of(minus[n + 1], l.differential(n) * out.minus_basis[n]));
    }
  }

  BracketTable table;
  for (int p : l.degrees()) {
    for (int q : l.degrees()) {
      const int r = p + q;
      if (l.dim(r) == 0) continue;
      const auto pb = plus[p].basis();
      if (p <= q && plus[r].dim() > 0) {
        const auto qb = plus[q].basis();
        for (std::size_t i = 0; i < pb.size(); ++i)
          for (std::size_t j = 0; j < qb.size(); ++j) {
            const Vector c = plus[r].coordinates(l.bracket(p, q, pb[i], qb[j]));
            for (std::size_t k = 0; k < c.size(); ++k)
              if (sgn(c[k]) != 0) table[{p, q}].push_back({i, j, k, c[k]});
          }
      }
      if (!pb.empty() && minus[q].dim() > 0 && minus[r].dim() > 0) {
        std::vector<Matrix> acts;
        for (const auto& a : pb) {
          Matrix img(l.dim(r), minus[q].dim());
          const auto mb = minus[q].basis();
          for (std::size_t j = 0; j < mb.size(); ++j) {
            const Vector v = l.bracket(p, q, a, mb[j]);
            for (std::size_t t = 0; t < v.size(); ++t) img(t, j) = v[t];
          }
          acts.push_back(coordinates_of(minus[r], img));
        }
        out.action.emplace(DegreePair{p, q}, std::move(acts));
      }
    }
  }
  out.plus = DgLieAlgebra(GradedVectorSpace(plus_dims, labels), d_plus, table);
  return out;
}

TransferReport check_transfer_hypotheses(const DgLieAlgebra& l, const Involution& sigma,
                                         const FormalityCertificate* certificate) {
  const auto sig = complete_involution(l, sigma);
  TransferReport report;
  std::map<int, Subspace> plus, minus;
  std::map<int, Matrix> proj;
  for (int n : l.degrees()) {
    const Matrix id = Matrix::identity(l.dim(n));
    plus[n] = kernel(sig.at(n) - id);
    minus[n] = kernel(sig.at(n) + id);
    proj[n] = (id + sig.at(n)) * Scalar(1, 2);
  }
  auto sub = [&](int n) { return l.dim(n) ? plus.at(n) : Subspace::zero(0); };
  auto msub = [&](int n) { return l.dim(n) ? minus.at(n) : Subspace::zero(0); };

  CriterionCheck subalgebra{"plus_subalgebra", true, ""};
  CriterionCheck module{"minus_module", true, ""};
  CriterionCheck split{"equivariant_retraction", true, ""};
  CriterionCheck compat{"cycles_boundaries_stable", true, ""};

  for (int n : l.degrees()) {
    if (l.dim(n + 1) == 0) continue;
    for (const auto& v : plus[n].basis())
      if (!sub(n + 1).contains(l.apply_d(n, v))) {
        subalgebra.passed = false;
        subalgebra.detail = "d(L+) not contained in L+ in degree " + std::to_string(n);
      }
    for (const auto& v : minus[n].basis())
      if (!msub(n + 1).contains(l.apply_d(n, v))) {
        module.passed = false;
        module.detail = "d(L-) not contained in L- in degree " + std::to_string(n);
      }
    if (!(proj[n + 1] * l.differential(n) == l.differential(n) * proj[n])) {
      split.passed = false;
      split.detail = "the projection onto L+ does not commute with d in degree " + std::to_string(n);
    }
  }
  for (int p : l.degrees()) {
    for (int q : l.degrees()) {
      const int r = p + q;
      if (l.dim(r) == 0) continue;
      for (const auto& a : plus[p].basis()) {
        for (const auto& b : plus[q].basis())
          if (!plus[r].contains(l.bracket(p, q, a, b))) {
            subalgebra.passed = false;
            subalgebra.detail = "[L+, L+] not contained in L+";
          }
        for (const auto& b : minus[q].basis())
          if (!minus[r].contains(l.bracket(p, q, a, b))) {
            module.passed = false;
            module.detail = "[L+, L-] not contained in L-";
          }
        for (std::size_t j = 0; j < l.dim(q); ++j) {
          const Vector x = l.basis_vector(q, j);
          if (proj[r] * l.bracket(p, q, a, x) != l.bracket(p, q, a, proj[q] * x)) {
            split.passed = false;
            split.detail = "the projection onto L+ is not L+-linear";
          }
        }
      }
    }
  }
  for (int n : l.degrees()) {
    const Subspace z = kernel(l.differential(n));
    const Subspace b = image(l.differential(n - 1));
    if (!(apply(sig.at(n), z) == z) || !(apply(sig.at(n), b) == b)) {
      compat.passed = false;
      compat.detail = "sigma does not preserve cycles and boundaries in degree " + std::to_string(n);
    }
  }
  report.checks = {subalgebra, module, split, compat};
  report.applicable = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  if (!report.applicable) {
    report.summary = "transfer hypotheses fail";
  } else if (certificate != nullptr && certificate->certified()) {
    report.plus_formal = true;
    report.summary = "transfer applicable; L+ is formal by transfer from the supplied certificate";
  } else {
    report.summary = "transfer applicable";
  }
  return report;
}

}  // namespace dglakit
