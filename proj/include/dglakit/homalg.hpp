#ifndef DGLAKIT_HOMALG_HPP
#define DGLAKIT_HOMALG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglakit/dgla.hpp"
#include "dglakit/formality.hpp"

namespace dglakit {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;

  bool operator==(const Arrow& other) const = default;
};

/// Arrow indices, first traversed first.
using Path = std::vector<std::size_t>;

/// Homogeneous linear combination of parallel paths of length >= 2.
struct Relation {
  std::vector<std::pair<Path, Scalar>> terms;

  bool operator==(const Relation& other) const = default;
};

/// A basis element of A: a path from `source` to `target` (length 0 is the
/// idempotent of `source`).
struct BasisPath {
  std::size_t source = 0;
  std::size_t target = 0;
  Path path;
};

/// kQ / I for homogeneous I. The basis consists of the paths that are not
/// leading (pivot) paths of I in each length, source and target.
class PathAlgebra {
 public:
  PathAlgebra() = default;
  /// Throws InvalidArgument if the quotient is not finite-dimensional or a
  /// relation is not homogeneous and parallel.
  PathAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::vector<Relation> relations);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisPath>& basis() const noexcept { return basis_; }
  std::string basis_label(std::size_t b) const;
  /// Basis indices of paths from `source` to `target`.
  const std::vector<std::size_t>& paths_between(std::size_t source, std::size_t target) const;
  std::size_t idempotent(std::size_t vertex) const { return idempotent_.at(vertex); }

  /// Normal form of a path starting at `source`, in A-basis coordinates.
  Vector reduce(std::size_t source, const Path& p) const;
  /// a * b, i.e. b followed by a.
  Vector multiply(std::size_t a, std::size_t b) const;
  /// Left multiplication by basis element b as a dim x dim matrix.
  const Matrix& left_multiplication(std::size_t b) const { return left_mult_.at(b); }

  bool operator==(const PathAlgebra& other) const {
    return vertices_ == other.vertices_ && arrows_ == other.arrows_ && relations_ == other.relations_;
  }

 private:
  struct Block {
    std::vector<Path> paths;
    std::map<Path, std::size_t> index;
    EchelonForm ideal;
    std::vector<std::size_t> free_columns;
    std::vector<std::size_t> basis_ids;  // global id for each free column
  };

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;
  std::vector<BasisPath> basis_;
  std::vector<std::size_t> idempotent_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Block> blocks_;  // (length, source, target)
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> between_;
  std::vector<Matrix> left_mult_;
};

/// A left module as a representation: a space per vertex and a map per arrow
/// (dims[target] x dims[source]).
struct AlgebraModule {
  std::vector<std::size_t> dims;
  std::vector<Matrix> arrows;

  std::size_t dim() const;
  std::size_t offset(std::size_t vertex) const;
  bool is_zero() const { return dim() == 0; }
  bool operator==(const AlgebraModule& other) const = default;
};

AlgebraModule zero_module(const PathAlgebra& a);
/// Throws ShapeMismatch, or InvariantViolation if a relation acts nontrivially.
void validate_module(const PathAlgebra& a, const AlgebraModule& m);
/// The linear map M_source -> M_target of a path.
Matrix path_action(const PathAlgebra& a, const AlgebraModule& m, std::size_t source, const Path& p);
/// The action of basis element b on the whole module.
Matrix basis_action(const PathAlgebra& a, const AlgebraModule& m, std::size_t b);

/// Per-vertex blocks, blocks[v] : M_v -> N_v.
struct ModuleMap {
  std::vector<Matrix> blocks;

  bool operator==(const ModuleMap& other) const = default;
};

ModuleMap zero_map(const AlgebraModule& from, const AlgebraModule& to);
ModuleMap identity_map(const AlgebraModule& m);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(const ModuleMap& f, const Scalar& s);
bool is_module_map(const PathAlgebra& a, const AlgebraModule& from, const AlgebraModule& to, const ModuleMap& f);
/// Block diagonal over vertices, on the concatenated coordinates.
Matrix global_matrix(const AlgebraModule& from, const AlgebraModule& to, const ModuleMap& f);
ModuleMap from_global(const AlgebraModule& from, const AlgebraModule& to, const Matrix& m);

/// P_v: paths starting at v, modulo the relations.
AlgebraModule indecomposable_projective(const PathAlgebra& a, std::size_t vertex);
/// One-dimensional at `vertex`, arrows zero.
AlgebraModule simple_module(const PathAlgebra& a, std::size_t vertex);
AlgebraModule direct_sum(const AlgebraModule& m, const AlgebraModule& n);

/// A submodule given by a basis (columns) at each vertex, with its inclusion.
struct Submodule {
  AlgebraModule module;
  ModuleMap inclusion;
};

/// Throws InvalidArgument if the spaces are not stable under the arrows.
Submodule submodule(const PathAlgebra& a, const AlgebraModule& m, const std::vector<Matrix>& bases);
Submodule module_kernel(const PathAlgebra& a, const AlgebraModule& from, const AlgebraModule& to, const ModuleMap& f);
/// Restriction of an endomorphism-like map f : M -> N to submodules S -> T with f(S) inside T.
ModuleMap restrict_map(const Submodule& s, const Submodule& t, const ModuleMap& f);

/// The functorial free cover A (x) M = sum_v P_v (x) M_v with its surjection.
struct FreeCover {
  AlgebraModule module;
  ModuleMap projection;
  /// (vertex, index in M_v) for each copy of P_v, in order.
  std::vector<std::pair<std::size_t, std::size_t>> copies;
};

FreeCover free_cover(const PathAlgebra& a, const AlgebraModule& m);
/// A (x) f between free covers.
ModuleMap free_cover_map(const PathAlgebra& a, const FreeCover& from, const FreeCover& to, const ModuleMap& f);

/// M = sum_k P_{v_k} via an explicit isomorphism.
struct ProjectiveDecomposition {
  std::vector<std::size_t> summands;  // vertex of each P_v summand
  AlgebraModule sum;                  // sum_k P_{v_k}
  Matrix iso;                         // global, sum -> M
};

/// Top of M = M / (sum of arrow images); the minimal cover is projective
/// exactly when M is. Returns nullopt if M is not projective.
std::optional<ProjectiveDecomposition> projective_decomposition(const PathAlgebra& a, const AlgebraModule& m);
bool is_projective(const PathAlgebra& a, const AlgebraModule& m);

/// Minimal projective dimension of each simple; throws InfiniteGlobalDimension
/// once a resolution exceeds `bound` steps.
std::vector<std::size_t> simple_projective_dimensions(const PathAlgebra& a, std::size_t bound);
std::size_t global_dimension(const PathAlgebra& a);
/// Default bound for the global dimension search.
std::size_t global_dimension_bound(const PathAlgebra& a);

/// Terms and differentials d^i : terms[i] -> terms[i+1]; missing entries are zero.
struct BoundedComplex {
  std::map<int, AlgebraModule> terms;
  std::map<int, ModuleMap> differentials;

  bool operator==(const BoundedComplex& other) const = default;
};

struct ChainMap {
  std::map<int, ModuleMap> maps;

  bool operator==(const ChainMap& other) const = default;
};

/// Smallest and largest degree with a nonzero term; (0, -1) for the zero complex.
std::pair<int, int> amplitude(const BoundedComplex& c);
AlgebraModule term(const PathAlgebra& a, const BoundedComplex& c, int degree);
ModuleMap differential(const PathAlgebra& a, const BoundedComplex& c, int degree);
ModuleMap chain_component(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to,
                          const ChainMap& f, int degree);
/// Throws ShapeMismatch or InvariantViolation (not module maps, d^2 != 0).
void validate_complex(const PathAlgebra& a, const BoundedComplex& c);
bool is_chain_map(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to, const ChainMap& f);
/// dim H^i of the underlying complex of vector spaces.
std::map<int, std::size_t> cohomology_dims(const PathAlgebra& a, const BoundedComplex& c);
/// True iff the mapping cone is acyclic (rank count in every degree).
bool is_quasi_isomorphism(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to,
                          const ChainMap& f);

struct Replacement {
  BoundedComplex complex;
  ChainMap comparison;  // complex -> original
  /// One lift per supplied automorphism, commuting with `comparison`.
  std::vector<ChainMap> automorphisms;
  std::size_t global_dimension = 0;
};

/// Built from the top degree down: P^i covers W^i = {(p, x) in P^{i+1} + F^i :
/// d p = 0, eps(p) = d x}, using W^i itself when it is projective. Throws
/// InfiniteGlobalDimension or NotAnAutomorphism.
Replacement projective_replacement(const PathAlgebra& a, const BoundedComplex& f,
                                   const std::vector<ChainMap>& automorphisms = {});

/// L^k = sum_{s - r = k} Hom_A(P^r, P^s) with basis elements stored as global
/// matrices on sum_r P^r.
struct HomComplex {
  DgLieAlgebra dgla;
  std::map<int, std::vector<Matrix>> basis;
  /// Coordinates of a total-space matrix of pure degree k in the basis of L^k.
  Vector coordinates(int degree, const Matrix& m) const;

  std::vector<int> term_degrees;
  std::vector<std::size_t> term_offsets;
  std::map<DegreePair, Subspace> hom_spaces;  // (r, s) -> Hom(P^r, P^s) in flattened coordinates
  std::map<DegreePair, std::vector<Matrix>> hom_basis;
  std::size_t total_dim = 0;
  std::vector<std::size_t> term_dims;
  std::vector<AlgebraModule> term_modules;
};

/// d f = d_P f - (-1)^{|f|} f d_P, bracket = graded commutator.
HomComplex hom_complex(const PathAlgebra& a, const BoundedComplex& p);
DgLieAlgebra hom_complex_dgla(const PathAlgebra& a, const BoundedComplex& p);

/// Basis of Hom_A(M, N) as global matrices.
std::vector<Matrix> hom_basis(const PathAlgebra& a, const AlgebraModule& m, const AlgebraModule& n);

/// lambda(Hattori-Stallings trace of an endomorphism of a projective module).
Scalar hattori_stallings_trace(const PathAlgebra& a, const ProjectiveDecomposition& d, const Matrix& endo,
                               std::span<const Scalar> frobenius);

/// Throws NotSymmetric (with a witness pair) or DegenerateForm.
void check_frobenius_form(const PathAlgebra& a, std::span<const Scalar> frobenius);

/// Degree-0 pairing (f, g) = sum_r (-1)^r lambda(HS((f g)|P^r)) on the Hom DGLA.
/// Throws NotProjective if a term is not projective.
CyclicPairing trace_pairing(const PathAlgebra& a, const BoundedComplex& p, std::span<const Scalar> frobenius);

}  // namespace dglakit

#endif  // DGLAKIT_HOMALG_HPP
