#include "dglakit/kuranishi.hpp"

#include <algorithm>

namespace dglakit {

namespace {

SparseEchelon<Monomial>::Row as_row(const Polynomial& p) {
  return SparseEchelon<Monomial>::Row(p.terms().begin(), p.terms().end());
}

std::vector<std::string> harmonic_labels(const Splitting& s, int degree, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.at(degree).harmonic.dim(); ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

PolyVector half_delta_bracket(const DgLieAlgebra& l, const Matrix& delta, const PolyVector& y, unsigned order) {
  PolyVector sq = l.bracket(1, 1, y, y, order);
  PolyVector out = dglakit::apply(delta, sq);
  for (auto& p : out) p *= Scalar(1, 2);
  return out;
}

}  // namespace

TruncatedRing make_ring(std::size_t nvars, unsigned order, const std::string& prefix) {
  TruncatedRing r;
  for (std::size_t i = 0; i < nvars; ++i) r.variables.push_back(prefix + std::to_string(i + 1));
  r.order = order;
  return r;
}

TruncatedPolynomialMap TruncatedPolynomialMap::truncated(unsigned order) const {
  TruncatedPolynomialMap out = *this;
  for (auto& c : out.components) c = c.truncated(order);
  return out;
}

std::map<int, Matrix> delta_operator(const DgLieAlgebra& l, const Splitting& s) {
  require_splitting_of(l, s);
  std::map<int, Matrix> out;
  for (int n : l.degrees()) {
    if (out.count(n - 1) == 0) out.emplace(n - 1, s.delta(n - 1));
    if (out.count(n) == 0) out.emplace(n, s.delta(n));
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.rows() == 0 && it->second.cols() == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

TruncatedRing kuranishi_ring(const Splitting& s, unsigned order) {
  TruncatedRing r;
  r.variables = harmonic_labels(s, 1, "x");
  r.order = order;
  return r;
}

PolyVector generic_harmonic_point(const Splitting& s, const TruncatedRing& ring) {
  const Matrix h = s.harmonic_basis(1);
  if (h.cols() != ring.nvars()) throw Error(ErrorKind::DimensionMismatch, "ring variables do not match dim H^1");
  PolyVector vars;
  for (std::size_t i = 0; i < ring.nvars(); ++i) vars.push_back(ring.variable(i));
  if (vars.empty()) return PolyVector(h.rows(), ring.zero());
  return dglakit::apply(h, vars);
}

PolyVector phi_inverse(const DgLieAlgebra& l, const Splitting& s, const PolyVector& x, unsigned order) {
  if (x.size() != l.dim(1)) throw Error(ErrorKind::ShapeMismatch, "phi_inverse: x must lie in L^1");
  const Matrix delta = s.delta(1);
  PolyVector y = truncated(x, order);
  if (delta.is_zero()) return y;
  // Each pass fixes one more order, so N passes suffice.
  for (unsigned iter = 0; iter < order; ++iter) {
    PolyVector correction = half_delta_bracket(l, delta, y, order);
    PolyVector next = y;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = x[i].truncated(order) - correction[i];
    if (next == y) break;
    y = std::move(next);
  }
  return y;
}

TruncatedPolynomialMap kuranishi_series(const DgLieAlgebra& l, const Splitting& s, unsigned order) {
  require_splitting_of(l, s);
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "kuranishi_series needs order >= 2");
  TruncatedPolynomialMap out;
  out.ring = kuranishi_ring(s, order);
  out.target_dim = s.at(2).harmonic.dim();
  out.target_labels = harmonic_labels(s, 2, "h");
  if (out.target_dim == 0) return out;
  const PolyVector x = generic_harmonic_point(s, out.ring);
  const PolyVector y = phi_inverse(l, s, x, order);
  out.components = dglakit::apply(s.harmonic_coordinates(2), l.bracket(1, 1, y, y, order));
  return out;
}

TruncatedPolynomialMap quadratic_part(const DgLieAlgebra& l, const Splitting& s) {
  require_splitting_of(l, s);
  TruncatedPolynomialMap out;
  out.ring = kuranishi_ring(s, 2);
  out.target_dim = s.at(2).harmonic.dim();
  out.target_labels = harmonic_labels(s, 2, "h");
  if (out.target_dim == 0) return out;
  const PolyVector x = generic_harmonic_point(s, out.ring);
  out.components = dglakit::apply(s.harmonic_coordinates(2), l.bracket(1, 1, x, x, 2));
  return out;
}

SparseEchelon<Monomial> ideal_span(const std::vector<Polynomial>& gens, std::size_t nvars, unsigned order) {
  SparseEchelon<Monomial> span;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const unsigned val = g.valuation();
    if (val > order) continue;
    for (unsigned d = 0; d + val <= order; ++d) {
      for (const auto& m : monomials_of_degree(nvars, d)) {
        const Polynomial prod = g.multiply(Polynomial::monomial(m), order);
        if (!prod.is_zero()) span.insert(as_row(prod));
      }
    }
  }
  return span;
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (1 / p.terms().begin()->second);
}

namespace {

// First generator-times-monomial of `gens` outside `other`, reduced against it.
std::optional<Polynomial> first_outside(const std::vector<Polynomial>& gens, const SparseEchelon<Monomial>& other,
                                        std::size_t nvars, unsigned order) {
  for (const auto& g : gens) {
    const Polynomial gt = g.truncated(order);
    if (gt.is_zero()) continue;
    if (!other.contains(as_row(gt))) return monic(gt);
  }
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (unsigned d = 1; d + g.valuation() <= order; ++d) {
      for (const auto& m : monomials_of_degree(nvars, d)) {
        const Polynomial prod = g.multiply(Polynomial::monomial(m), order);
        if (!prod.is_zero() && !other.contains(as_row(prod))) return monic(prod);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

QuadraticityReport check_quadraticity(const DgLieAlgebra& l, const Splitting& s, unsigned order) {
  if (order < 3) throw Error(ErrorKind::InvalidArgument, "check_quadraticity needs order >= 3");
  QuadraticityReport report;
  report.order = order;
  report.kuranishi = kuranishi_series(l, s, order);
  report.quadratic = quadratic_part(l, s);
  const std::size_t nvars = report.kuranishi.ring.nvars();
  const auto ik = ideal_span(report.kuranishi.components, nvars, order);
  const auto iq = ideal_span(report.quadratic.components, nvars, order);
  report.kuranishi_ideal_dim = ik.rank();
  report.quadratic_ideal_dim = iq.rank();
  if (auto w = first_outside(report.kuranishi.components, iq, nvars, order)) {
    report.verdict = QuadraticityVerdict::NotEqualAtOrder;
    report.witness = *w;
    report.witness_side = "kuranishi";
  } else if (auto w2 = first_outside(report.quadratic.components, ik, nvars, order)) {
    report.verdict = QuadraticityVerdict::NotEqualAtOrder;
    report.witness = *w2;
    report.witness_side = "quadratic";
  }
  return report;
}

PolyVector mc_residue(const DgLieAlgebra& l, const MCElement& x) {
  if (x.coefficients.size() != l.dim(1)) throw Error(ErrorKind::ShapeMismatch, "MC element must lie in L^1");
  const unsigned order = x.ring.order;
  PolyVector out = l.apply_d(1, x.coefficients);
  if (out.empty()) return out;
  PolyVector sq = l.bracket(1, 1, x.coefficients, x.coefficients, order);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + sq[i] * Scalar(1, 2)).truncated(order);
  return out;
}

bool verify_mc(const DgLieAlgebra& l, const MCElement& x) { return is_zero(mc_residue(l, x)); }

MCElement gauge_act(const DgLieAlgebra& l, const GaugeElement& g, const MCElement& x) {
  if (g.coefficients.size() != l.dim(0)) throw Error(ErrorKind::ShapeMismatch, "gauge element must lie in L^0");
  if (x.coefficients.size() != l.dim(1)) throw Error(ErrorKind::ShapeMismatch, "MC element must lie in L^1");
  for (const auto& c : g.coefficients) {
    if (!c.is_zero() && c.valuation() == 0) throw Error(ErrorKind::InvalidArgument, "gauge element is not nilpotent");
  }
  const unsigned order = x.ring.order;
  MCElement out = x;
  for (auto& c : out.coefficients) c = c.truncated(order);
  if (l.dim(0) == 0 || l.dim(1) == 0) return out;
  PolyVector term = l.bracket(0, 1, g.coefficients, x.coefficients, order);
  const PolyVector dg = l.apply_d(0, g.coefficients);
  for (std::size_t i = 0; i < term.size(); ++i) term[i] = (term[i] - dg[i]).truncated(order);
  Scalar factorial = 1;
  for (unsigned n = 0; !is_zero(term); ++n) {
    factorial *= (n + 1);
    for (std::size_t i = 0; i < term.size(); ++i) out.coefficients[i] += term[i] * (1 / factorial);
    term = l.bracket(0, 1, g.coefficients, term, order);
  }
  return out;
}

std::size_t InvariantTruncation::dim(unsigned degree) const {
  auto it = by_degree.find(degree);
  return it == by_degree.end() ? 0 : it->second.size();
}

std::size_t InvariantTruncation::total_dim() const {
  std::size_t total = 0;
  for (const auto& [d, list] : by_degree) total += list.size();
  return total;
}

InvariantTruncation invariant_truncation(const TruncatedRing& ring, const TruncatedPolynomialMap& ideal_gens) {
  if (!ring.action) throw Error(ErrorKind::NoAction, "invariant_truncation needs a group action on the ring");
  const std::size_t nvars = ring.nvars();
  const unsigned order = ring.order;
  if (ideal_gens.ring.nvars() != nvars && !ideal_gens.components.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "ideal generators live in a different ring");
  }

  std::vector<PolyVector> substitutions;
  for (const auto& g : enumerate_group(*ring.action)) {
    auto it = g.find(1);
    if (it == g.end() || it->second.rows() != nvars || it->second.cols() != nvars) {
      throw Error(ErrorKind::DimensionMismatch, "group action must have a degree-1 block of size nvars");
    }
    PolyVector images;
    for (std::size_t i = 0; i < nvars; ++i) {
      Polynomial p(nvars);
      for (std::size_t j = 0; j < nvars; ++j) p.add_term(Monomial::variable(nvars, j), it->second(i, j));
      images.push_back(std::move(p));
    }
    substitutions.push_back(std::move(images));
  }
  const Scalar inv_order = Scalar(1, static_cast<unsigned long>(substitutions.size()));
  auto reynolds = [&](const Polynomial& f) {
    Polynomial avg(nvars);
    for (const auto& images : substitutions) avg += f.substitute(images, order);
    return avg * inv_order;
  };

  SparseEchelon<Monomial> span = ideal_span(ideal_gens.components, nvars, order);
  for (const auto& g : ideal_gens.components) {
    for (const auto& images : substitutions) {
      if (!span.contains(as_row(g.substitute(images, order)))) {
        throw Error(ErrorKind::InvariantViolation, "the ideal is not stable under the group action");
      }
    }
  }

  InvariantTruncation out;
  for (unsigned d = 0; d <= order; ++d) {
    for (const auto& m : monomials_of_degree(nvars, d)) {
      const Polynomial avg = reynolds(Polynomial::monomial(m));
      if (avg.is_zero()) continue;
      if (span.insert(as_row(avg))) out.by_degree[d].push_back(monic(avg));
    }
  }
  return out;
}

}  // namespace dglakit
