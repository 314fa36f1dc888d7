#ifndef DGLAKIT_DGLA_HPP
#define DGLAKIT_DGLA_HPP

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dglakit/exact.hpp"
#include "dglakit/polynomial.hpp"

namespace dglakit {

class GradedVectorSpace {
 public:
  GradedVectorSpace() = default;
  GradedVectorSpace(std::map<int, std::size_t> dims, std::map<int, std::vector<std::string>> labels = {});
  GradedVectorSpace(std::initializer_list<std::pair<const int, std::size_t>> dims)
      : GradedVectorSpace(std::map<int, std::size_t>(dims)) {}

  std::size_t dim(int degree) const;
  /// Degrees with nonzero dimension, ascending.
  std::vector<int> degrees() const;
  std::size_t total_dim() const;
  const std::string& label(int degree, std::size_t index) const;
  const std::map<int, std::vector<std::string>>& labels() const noexcept { return labels_; }

  bool operator==(const GradedVectorSpace& other) const = default;

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, std::vector<std::string>> labels_;
};

/// [e_i, e_j] contains `value` times e_k.
struct StructureConstant {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Scalar value;

  bool operator==(const StructureConstant& other) const = default;
};

using DegreePair = std::pair<int, int>;
using BracketTable = std::map<DegreePair, std::vector<StructureConstant>>;

/// A finite-dimensional DG-Lie algebra over Q. The differential is stored per
/// source degree n as a dim(n+1) x dim(n) matrix. Bracket structure constants
/// are stored once per unordered degree pair (p <= q); the (q, p) block follows
/// from graded antisymmetry. Degrees that are not stored are zero.
class DgLieAlgebra {
 public:
  DgLieAlgebra() = default;
  /// Entries given under a pair with p > q are moved to (q, p) with the
  /// antisymmetry sign. Throws SchemaViolation on bad shapes, out-of-range
  /// indices or duplicate entries.
  DgLieAlgebra(GradedVectorSpace space, std::map<int, Matrix> differential, BracketTable bracket);

  const GradedVectorSpace& space() const noexcept { return space_; }
  std::size_t dim(int degree) const { return space_.dim(degree); }
  std::vector<int> degrees() const { return space_.degrees(); }

  /// d: L^n -> L^{n+1}; a zero matrix of the right shape when not stored.
  Matrix differential(int n) const;
  const std::map<int, Matrix>& differentials() const noexcept { return differential_; }
  /// Canonical storage (p <= q), sorted by (i, j, k), zeros removed.
  const BracketTable& bracket_table() const noexcept { return bracket_; }

  /// Structure constants of the ordered pair (p, q), derived by sign when p > q.
  const std::vector<StructureConstant>& structure(int p, int q) const;
  /// Matrix of [e_i, -]: L^q -> L^{p+q} for the i-th basis vector of L^p.
  const Matrix& ad(int p, std::size_t i, int q) const;

  Vector apply_d(int n, std::span<const Scalar> x) const;
  Vector bracket(int p, int q, std::span<const Scalar> x, std::span<const Scalar> y) const;
  PolyVector apply_d(int n, std::span<const Polynomial> x) const;
  PolyVector bracket(int p, int q, std::span<const Polynomial> x, std::span<const Polynomial> y,
                     unsigned order = kNoTruncation) const;

  Vector basis_vector(int degree, std::size_t index) const;

  bool operator==(const DgLieAlgebra& other) const {
    return space_ == other.space_ && differential_ == other.differential_ && bracket_ == other.bracket_;
  }

 private:
  void build_caches();

  GradedVectorSpace space_;
  std::map<int, Matrix> differential_;
  BracketTable bracket_;
  std::map<DegreePair, std::vector<StructureConstant>> ordered_;
  std::map<DegreePair, std::vector<Matrix>> ad_;
};

/// (-1)^{pq+1}: [f, g] = sign * [g, f] for |f| = p, |g| = q.
int antisymmetry_sign(int p, int q);

struct BasisElement {
  int degree = 0;
  std::size_t index = 0;
};

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::vector<BasisElement> witness;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;  // d_squared, antisymmetry, leibniz, jacobi

  bool all_passed() const;
  const AxiomCheck& check(const std::string& axiom) const;
};

/// Checks d^2 = 0, graded antisymmetry, graded Leibniz and graded Jacobi on
/// all basis tuples. Multilinearity makes the basis check complete.
AxiomReport check_dgla_axioms(const DgLieAlgebra& l);

struct CohomologyReport {
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<Vector>> representatives;

  std::size_t dim(int degree) const;
};

/// Throws AxiomViolation if d^2 != 0.
CohomologyReport cohomology(const DgLieAlgebra& l);

/// Finite group acting degreewise. Each generator maps degree -> matrix;
/// relations are words in generator indices that must evaluate to the identity.
struct GroupAction {
  std::size_t group_order = 1;
  std::vector<std::map<int, Matrix>> generators;
  std::vector<std::vector<std::size_t>> relations;

  bool operator==(const GroupAction& other) const = default;
};

using GroupElement = std::map<int, Matrix>;

/// Closure of the generators. Throws InvariantViolation if the generated group
/// does not have `group_order` elements, a relation fails, or a generator is
/// not invertible.
std::vector<GroupElement> enumerate_group(const GroupAction& action);
/// Adds identity blocks for degrees of `l` the generators leave out.
GroupAction complete_action(const DgLieAlgebra& l, GroupAction action);
/// True iff g commutes with d and with the bracket on all basis pairs.
bool is_automorphism(const DgLieAlgebra& l, const GroupElement& g);
/// Throws NotAnAutomorphism naming the first offending generator.
void require_automorphisms(const DgLieAlgebra& l, const GroupAction& action);
Matrix reynolds_project(const GroupAction& action, int degree);

struct DegreeSplitting {
  Subspace cycles;
  Subspace boundaries;
  Subspace harmonic;
  Subspace complement;  // K: a complement of the cycles
};

/// L^n = K^n + H^n + B^n in every degree, with d: K^n -> B^{n+1} an isomorphism.
class Splitting {
 public:
  Splitting() = default;
  /// Validates against `l`; throws InvalidSplitting.
  Splitting(const DgLieAlgebra& l, std::map<int, DegreeSplitting> degrees);

  const DegreeSplitting& at(int degree) const;
  const std::map<int, DegreeSplitting>& degrees() const noexcept { return degrees_; }

  std::size_t dim(int degree) const;

  /// L^n -> coordinates in the canonical basis of H^n, with kernel B + K.
  Matrix harmonic_coordinates(int degree) const;
  /// Basis of H^n as columns (dim L^n x dim H^n).
  Matrix harmonic_basis(int degree) const;
  /// delta: L^{n+1} -> L^n, the partial inverse of d.
  Matrix delta(int n) const;
  /// Projection L^n -> L^n onto H^n along B + K.
  Matrix harmonic_projector(int degree) const;

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, DegreeSplitting> degrees_;
  std::map<int, Matrix> harmonic_coords_;
  std::map<int, Matrix> delta_;
  DegreeSplitting empty_;
};

/// Computes Z and B, then complements B in Z (harmonic part) and Z in L
/// (K), averaging over the group when an action is given.
Splitting build_splitting(const DgLieAlgebra& l, const GroupAction* action = nullptr);

/// Throws InvalidSplitting unless `s` is a valid splitting of `l`.
void require_splitting_of(const DgLieAlgebra& l, const Splitting& s);

}  // namespace dglakit

#endif  // DGLAKIT_DGLA_HPP
