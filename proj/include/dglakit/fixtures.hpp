#ifndef DGLAKIT_FIXTURES_HPP
#define DGLAKIT_FIXTURES_HPP

// Built-in example objects. Each one is also shipped as JSON under fixtures/.

#include "dglakit/dgla.hpp"
#include "dglakit/formality.hpp"
#include "dglakit/homalg.hpp"
#include "dglakit/quiver.hpp"

namespace dglakit::fixtures {

/// L^0 = <s>, L^1 = <p, q, r>, L^2 = <w>, d s = r, zero bracket.
DgLieAlgebra abelian();
/// L^1 = <a, b>, L^2 = <c>, d = 0, [a, b] = [b, a] = c.
DgLieAlgebra heisenberg();
/// Z/2 exchanging a and b.
GroupAction heisenberg_swap();
/// L^1 = <a, b, xi>, L^2 = <u, v>, d xi = u, [a, a] = u, [xi, b] = v.
DgLieAlgebra nonformal_control();
/// gl_2 tensor the cohomology of a torus: L^0 = gl_2, L^1 = pairs (X, Y),
/// L^2 = gl_2, d = 0. Coordinates are row-major matrix entries, X before Y.
DgLieAlgebra commuting_n2();
/// Z/2 acting on every matrix by conjugation with the permutation matrix.
GroupAction commuting_swap();
/// tr(AC) on L^0 x L^2 and tr(XY') - tr(YX') on L^1 x L^1, degree 2.
CyclicPairing commuting_trace_pairing();
/// A degree-2 candidate on the nonformal control: (a, b) = 1 = -(b, a).
CyclicPairing nonformal_candidate_pairing();
/// a <-> b, c fixed.
Involution heisenberg_involution();

/// One summand with a 2-dimensional self-extension: a single loop, n = 1.
PolystableData point_model();
/// The same quiver with multiplicity 2.
PolystableData loop_n2();
/// Two summands of multiplicity 1 with one extension each way, no loops.
PolystableData two_vertex();
/// L^0 = <t1, t2>, L^1 = <x, y>, L^2 = <m1, m2>, d = 0, [t1, x] = -x,
/// [t2, x] = x, [t1, y] = y, [t2, y] = -y, [x, y] = m2 - m1.
DgLieAlgebra two_vertex_dgla();

/// A DGLA together with identifications H^1 = Rep and H^2 = sum gl(n_i).
struct LocalModel {
  std::string dgla;
  DgLieAlgebra algebra;
  Matrix ident_h1;
  Matrix ident_h2;
};

/// Local models for point-model, loop-n2 and two-vertex.
LocalModel local_model(const std::string& quiver);

/// The path algebra of 1 -> 2 (arrow "alpha").
PathAlgebra a2_algebra();

struct ComplexFixture {
  PathAlgebra algebra;
  BoundedComplex complex;
  std::vector<ChainMap> automorphisms;
  /// Values of a Frobenius form on the algebra basis, when one is attached.
  std::optional<Vector> frobenius;
};

/// The simple S_1 in degree 0.
ComplexFixture a2_simple();
/// S_1 + S_1 in degree 0 with the swap automorphism.
ComplexFixture a2_swap_equivariant();

}  // namespace dglakit::fixtures

#endif  // DGLAKIT_FIXTURES_HPP
