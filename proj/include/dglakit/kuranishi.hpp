#ifndef DGLAKIT_KURANISHI_HPP
#define DGLAKIT_KURANISHI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglakit/dgla.hpp"
#include "dglakit/polynomial.hpp"

namespace dglakit {

/// Q[x_1..x_m] / m^{N+1}. The optional action acts on the span of the
/// variables through its degree-1 block: x_i -> sum_j g(i, j) x_j.
struct TruncatedRing {
  std::vector<std::string> variables;
  unsigned order = 1;
  std::optional<GroupAction> action;

  std::size_t nvars() const noexcept { return variables.size(); }
  Polynomial variable(std::size_t i) const { return Polynomial::variable(nvars(), i); }
  Polynomial zero() const { return Polynomial(nvars()); }
};

TruncatedRing make_ring(std::size_t nvars, unsigned order, const std::string& prefix = "x");

struct TruncatedPolynomialMap {
  TruncatedRing ring;
  std::size_t target_dim = 0;
  std::vector<Polynomial> components;
  std::vector<std::string> target_labels;

  bool is_zero() const { return dglakit::is_zero(components); }
  /// Each component truncated at `order`.
  TruncatedPolynomialMap truncated(unsigned order) const;
};

/// A degree-1 element with coefficients in the maximal ideal.
struct MCElement {
  TruncatedRing ring;
  PolyVector coefficients;
};

/// A degree-0 element with coefficients in the maximal ideal.
struct GaugeElement {
  TruncatedRing ring;
  PolyVector coefficients;
};

/// delta: L^{n+1} -> L^n for every n with L^n or L^{n+1} nonzero.
std::map<int, Matrix> delta_operator(const DgLieAlgebra& l, const Splitting& s);

/// The ring with one variable per harmonic basis vector of H^1.
TruncatedRing kuranishi_ring(const Splitting& s, unsigned order);
/// x = sum_i x_i h_i, with h_i the harmonic basis of H^1.
PolyVector generic_harmonic_point(const Splitting& s, const TruncatedRing& ring);

/// Solves phi(y) = y + 1/2 delta[y, y] = x modulo m^{N+1} by iterating
/// y <- x - 1/2 delta[y, y].
PolyVector phi_inverse(const DgLieAlgebra& l, const Splitting& s, const PolyVector& x, unsigned order);

/// kappa(x) = H([y, y]) with y = phi^{-1}(x), in coordinates of the H^2 basis.
TruncatedPolynomialMap kuranishi_series(const DgLieAlgebra& l, const Splitting& s, unsigned order);
/// kappa_2(x) = H([x, x]) on harmonic representatives.
TruncatedPolynomialMap quadratic_part(const DgLieAlgebra& l, const Splitting& s);

/// Basis of the ideal generated by `gens` inside R / m^{N+1}, as sparse
/// echelon rows keyed by monomial.
SparseEchelon<Monomial> ideal_span(const std::vector<Polynomial>& gens, std::size_t nvars, unsigned order);

enum class QuadraticityVerdict { EqualAtOrder, NotEqualAtOrder };

struct QuadraticityReport {
  QuadraticityVerdict verdict = QuadraticityVerdict::EqualAtOrder;
  unsigned order = 0;
  TruncatedPolynomialMap kuranishi;
  TruncatedPolynomialMap quadratic;
  std::size_t kuranishi_ideal_dim = 0;
  std::size_t quadratic_ideal_dim = 0;
  /// A monic element of one ideal that is not in the other.
  std::optional<Polynomial> witness;
  /// "kuranishi" if the witness lies in the Kuranishi ideal only, else "quadratic".
  std::string witness_side;

  bool equal() const noexcept { return verdict == QuadraticityVerdict::EqualAtOrder; }
};

/// Compares (kappa) and (kappa_2) inside R / m^{N+1}. This only decides
/// equality at order N and says nothing about the analytic germ.
QuadraticityReport check_quadraticity(const DgLieAlgebra& l, const Splitting& s, unsigned order);

/// dx + 1/2 [x, x] modulo m^{N+1}.
PolyVector mc_residue(const DgLieAlgebra& l, const MCElement& x);
bool verify_mc(const DgLieAlgebra& l, const MCElement& x);

/// e^g * x = x + sum_n ad_g^n([g, x] - dg) / (n+1)!.
MCElement gauge_act(const DgLieAlgebra& l, const GaugeElement& g, const MCElement& x);

struct InvariantTruncation {
  /// Invariants indexed by the degree of the monomial they were averaged from.
  std::map<unsigned, std::vector<Polynomial>> by_degree;

  std::size_t dim(unsigned degree) const;
  std::size_t total_dim() const;
};

/// A basis of (R / (a + m^{N+1}))^G, built degree by degree from Reynolds
/// averages of monomials that are independent modulo the ideal. Throws
/// NoAction without a group action and InvariantViolation if the ideal is not
/// stable under the group.
InvariantTruncation invariant_truncation(const TruncatedRing& ring, const TruncatedPolynomialMap& ideal_gens);

/// Scales so the first term (lowest monomial) has coefficient 1.
Polynomial monic(const Polynomial& p);

}  // namespace dglakit

#endif  // DGLAKIT_KURANISHI_HPP
