#ifndef DGLAKIT_FORMALITY_HPP
#define DGLAKIT_FORMALITY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglakit/dgla.hpp"

namespace dglakit {

enum class PairingSymmetry { Graded, Strict };

std::string_view symmetry_name(PairingSymmetry s);

/// Degree-n bilinear form: (f, g) = f^T B_{pq} g for |f| = p, |g| = q, p + q = n.
struct CyclicPairing {
  int degree = 0;
  std::map<DegreePair, Matrix> blocks;

  Matrix block(const DgLieAlgebra& l, int p, int q) const;
  Scalar evaluate(const DgLieAlgebra& l, int p, std::span<const Scalar> f, int q, std::span<const Scalar> g) const;

  bool operator==(const CyclicPairing& other) const = default;
};

/// Fills each missing (q, p) block from (p, q) by the chosen symmetry.
CyclicPairing complete_pairing(const DgLieAlgebra& l, CyclicPairing pairing, PairingSymmetry symmetry);
/// Throws ShapeMismatch for blocks of the wrong size or off the line p + q = n.
void validate_pairing(const DgLieAlgebra& l, const CyclicPairing& pairing);

struct PairingCheck {
  std::string axiom;  // symmetry, d_invariance, cyclicity, nondegeneracy
  bool passed = true;
  std::vector<BasisElement> witness;
  std::string detail;
};

struct PairingReport {
  PairingSymmetry convention = PairingSymmetry::Graded;
  bool graded_symmetric = false;
  bool strictly_symmetric = false;
  std::vector<PairingCheck> checks;
  /// Set when dim H^p != dim H^{n-p} for some p, so (iii) cannot hold for any pairing.
  bool nondegeneracy_unsatisfiable = false;

  bool all_passed() const;
  const PairingCheck& check(const std::string& axiom) const;
};

inline constexpr const char* kUnsatisfiableReason = "pairing axiom (iii) unsatisfiable";

/// (i) (df, g) + (-1)^{|f|}(f, dg) = 0, (ii) ([f, g], h) = (f, [g, h]) on all
/// basis tuples, (iii) full rank of every induced block H^p x H^{n-p}.
PairingReport check_quasi_cyclic(const DgLieAlgebra& l, const CyclicPairing& p,
                                 PairingSymmetry convention = PairingSymmetry::Graded);

enum class FormalityVerdict { Certified, NotApplicable };

struct CriterionCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct FormalityCertificate {
  PairingReport pairing;
  std::vector<CriterionCheck> conditions;  // degree_bound, negative_cohomology, h0_subalgebra, h0_module
  FormalityVerdict verdict = FormalityVerdict::NotApplicable;
  std::vector<std::string> reasons;

  bool certified() const noexcept { return verdict == FormalityVerdict::Certified; }
};

/// Sufficient criterion only: the verdict is Certified or NotApplicable.
FormalityCertificate check_bmm_criterion(const DgLieAlgebra& l, const CyclicPairing& p, const Splitting& s,
                                         PairingSymmetry convention = PairingSymmetry::Graded);

/// A homogeneous element of L.
struct GradedVector {
  int degree = 0;
  Vector v;
};

/// Brackets l_k transferred to H along h = -delta. Convention (antisymmetric,
/// chi = sign times Koszul sign):
///   l_2(x, y)       = H[x, y]
///   l_3(x, y, z)    = 1/2 sum_{S_3} chi [h[x1, x2], x3]
///   l_4(x, y, z, w) = 1/2 sum_{S_4} chi [h[h[x1, x2], x3], x4] + 1/8 sum_{S_4} chi [h[x1, x2], h[x3, x4]]
/// With this normalization kappa = sum_k 2 l_k(x, ..., x) / k!.
struct TransferredStructure {
  unsigned arity_bound = 2;
  /// Harmonic basis: (degree, index) pairs in ascending order.
  std::vector<BasisElement> basis;
  /// brackets[k][sorted index tuple into `basis`] = value in H coordinates.
  /// Zero values are omitted.
  std::map<unsigned, std::map<std::vector<std::size_t>, GradedVector>> brackets;

  bool vanishes(unsigned k) const;
};

/// l_k on representatives, returning an element of L (already projected to H
/// and re-embedded). Throws UnsupportedArity outside 2..4.
GradedVector transfer_bracket(const DgLieAlgebra& l, const Splitting& s, const std::vector<GradedVector>& args);
/// Throws UnsupportedArity unless 2 <= arity <= 4.
TransferredStructure transfer_brackets(const DgLieAlgebra& l, const Splitting& s, unsigned arity);

struct Involution {
  std::map<int, Matrix> matrices;

  bool operator==(const Involution& other) const = default;
};

struct EigenSplit {
  DgLieAlgebra plus;
  std::map<int, Matrix> plus_basis;   // columns span L^+ inside L
  std::map<int, Matrix> minus_basis;  // columns span L^- inside L
  std::map<int, Matrix> minus_differential;
  /// action[(p, q)][i] : L^-_q -> L^-_{p+q} for the i-th basis vector of L^+_p.
  std::map<DegreePair, std::vector<Matrix>> action;

  std::size_t minus_dim(int degree) const;
};

/// Throws NotAnInvolution if sigma^2 != 1 and NotAnAutomorphism if sigma does
/// not commute with d and the bracket.
EigenSplit eigensplit_involution(const DgLieAlgebra& l, const Involution& sigma);

struct TransferReport {
  std::vector<CriterionCheck> checks;
  bool applicable = false;
  /// Only set when a Certified certificate for L was supplied.
  bool plus_formal = false;
  std::string summary;
};

TransferReport check_transfer_hypotheses(const DgLieAlgebra& l, const Involution& sigma,
                                         const FormalityCertificate* certificate = nullptr);

}  // namespace dglakit

#endif  // DGLAKIT_FORMALITY_HPP
