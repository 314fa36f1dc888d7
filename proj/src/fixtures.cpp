#include "dglakit/fixtures.hpp"

namespace dglakit::fixtures {

namespace {

// Index of entry (r, c) of a 2x2 matrix.
std::size_t at(std::size_t r, std::size_t c) { return 2 * r + c; }

Matrix permutation_conjugation() {
  // A -> P A P^{-1} with P the 2x2 swap: entry (r, c) goes to (1-r, 1-c).
  Matrix m(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(at(1 - r, 1 - c), at(r, c)) = 1;
  return m;
}

// Structure constants of the matrix commutator [E_ij, E_kl] = d_jk E_il - d_li E_kj,
// with offsets for where the left, right and result coordinates live.
void add_commutator(std::vector<StructureConstant>& out, std::size_t left_offset, std::size_t right_offset,
                    std::size_t result_offset) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          const std::size_t a = left_offset + at(i, j), b = right_offset + at(k, l);
          if (j == k) acc[{a, b, result_offset + at(i, l)}] += 1;
          if (l == i) acc[{a, b, result_offset + at(k, j)}] -= 1;
        }
  for (const auto& [key, value] : acc)
    if (sgn(value) != 0) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
}

}  // namespace

DgLieAlgebra abelian() {
  GradedVectorSpace space({{0, 1}, {1, 3}, {2, 1}}, {{0, {"s"}}, {1, {"p", "q", "r"}}, {2, {"w"}}});
  std::map<int, Matrix> d;
  d.emplace(0, Matrix(3, 1, {0, 0, 1}));
  return DgLieAlgebra(std::move(space), std::move(d), {});
}

DgLieAlgebra heisenberg() {
  GradedVectorSpace space({{1, 2}, {2, 1}}, {{1, {"a", "b"}}, {2, {"c"}}});
  BracketTable b;
  b[{1, 1}] = {{0, 1, 0, 1}, {1, 0, 0, 1}};
  return DgLieAlgebra(std::move(space), {}, std::move(b));
}

GroupAction heisenberg_swap() {
  GroupAction g;
  g.group_order = 2;
  g.generators.push_back({{1, Matrix(2, 2, {0, 1, 1, 0})}, {2, Matrix::identity(1)}});
  g.relations = {{0, 0}};
  return g;
}

DgLieAlgebra nonformal_control() {
  GradedVectorSpace space({{1, 3}, {2, 2}}, {{1, {"a", "b", "xi"}}, {2, {"u", "v"}}});
  std::map<int, Matrix> d;
  d.emplace(1, Matrix(2, 3, {0, 0, 1, 0, 0, 0}));
  BracketTable b;
  b[{1, 1}] = {{0, 0, 0, 1}, {2, 1, 1, 1}, {1, 2, 1, 1}};
  return DgLieAlgebra(std::move(space), std::move(d), std::move(b));
}

DgLieAlgebra commuting_n2() {
  const std::vector<std::string> entries{"11", "12", "21", "22"};
  std::vector<std::string> l0, l1, l2;
  for (const auto& e : entries) l0.push_back("A" + e);
  for (const auto& e : entries) l1.push_back("X" + e);
  for (const auto& e : entries) l1.push_back("Y" + e);
  for (const auto& e : entries) l2.push_back("C" + e);
  GradedVectorSpace space({{0, 4}, {1, 8}, {2, 4}}, {{0, l0}, {1, l1}, {2, l2}});
  BracketTable b;
  add_commutator(b[{0, 0}], 0, 0, 0);
  add_commutator(b[{0, 1}], 0, 0, 0);
  add_commutator(b[{0, 1}], 0, 4, 4);
  add_commutator(b[{0, 2}], 0, 0, 0);
  // [(X, Y), (X', Y')] = [X, Y'] + [X', Y]
  add_commutator(b[{1, 1}], 0, 4, 0);
  // [(0, Y), (X', 0)] = [X', Y]
  std::vector<StructureConstant> mirrored;
  add_commutator(mirrored, 0, 4, 0);
  for (const auto& e : mirrored) b[{1, 1}].push_back({e.j, e.i, e.k, e.value});
  return DgLieAlgebra(std::move(space), {}, std::move(b));
}

GroupAction commuting_swap() {
  const Matrix c = permutation_conjugation();
  GroupAction g;
  g.group_order = 2;
  g.generators.push_back({{0, c}, {1, block_diagonal(std::vector<Matrix>{c, c})}, {2, c}});
  g.relations = {{0, 0}};
  return g;
}

CyclicPairing commuting_trace_pairing() {
  CyclicPairing p;
  p.degree = 2;
  // tr(E_ij E_kl) = 1 iff j = k and i = l
  Matrix trace(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) trace(at(i, j), at(j, i)) = 1;
  p.blocks.emplace(DegreePair{0, 2}, trace);
  p.blocks.emplace(DegreePair{2, 0}, trace.transpose());
  Matrix odd(8, 8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      odd(r, 4 + c) = trace(r, c);
      odd(4 + r, c) = -trace(r, c);
    }
  p.blocks.emplace(DegreePair{1, 1}, odd);
  return p;
}

CyclicPairing nonformal_candidate_pairing() {
  CyclicPairing p;
  p.degree = 2;
  Matrix m(3, 3);
  m(0, 1) = 1;
  m(1, 0) = -1;
  p.blocks.emplace(DegreePair{1, 1}, m);
  return p;
}

Involution heisenberg_involution() {
  Involution s;
  s.matrices.emplace(1, Matrix(2, 2, {0, 1, 1, 0}));
  s.matrices.emplace(2, Matrix::identity(1));
  return s;
}

PolystableData point_model() { return {{"F"}, {1}, {{2}}, false}; }

PolystableData loop_n2() { return {{"F"}, {2}, {{2}}, false}; }

PolystableData two_vertex() { return {{"F1", "F2"}, {1, 1}, {{0, 1}, {1, 0}}, false}; }

DgLieAlgebra two_vertex_dgla() {
  GradedVectorSpace space({{0, 2}, {1, 2}, {2, 2}}, {{0, {"t1", "t2"}}, {1, {"x", "y"}}, {2, {"m1", "m2"}}});
  BracketTable b;
  b[{0, 1}] = {{0, 0, 0, -1}, {1, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 1, -1}};
  b[{1, 1}] = {{0, 1, 0, -1}, {0, 1, 1, 1}, {1, 0, 0, -1}, {1, 0, 1, 1}};
  return DgLieAlgebra(std::move(space), {}, std::move(b));
}

LocalModel local_model(const std::string& quiver) {
  if (quiver == "point-model") return {"abelian", abelian(), Matrix::identity(2), Matrix::identity(1)};
  if (quiver == "loop-n2") return {"commuting-n2", commuting_n2(), Matrix::identity(8), Matrix::identity(4)};
  if (quiver == "two-vertex") return {"two-vertex-dgla", two_vertex_dgla(), Matrix::identity(2), Matrix::identity(2)};
  throw Error(ErrorKind::InvalidArgument, "no local model for quiver '" + quiver + "'");
}

PathAlgebra a2_algebra() { return PathAlgebra({"1", "2"}, {{"alpha", 0, 1}}, {}); }

ComplexFixture a2_simple() {
  ComplexFixture f{a2_algebra(), {}, {}, std::nullopt};
  f.complex.terms[0] = simple_module(f.algebra, 0);
  return f;
}

ComplexFixture a2_swap_equivariant() {
  ComplexFixture f{a2_algebra(), {}, {}, std::nullopt};
  const AlgebraModule s1 = simple_module(f.algebra, 0);
  f.complex.terms[0] = direct_sum(s1, s1);
  ChainMap swap;
  swap.maps[0] = ModuleMap{{Matrix(2, 2, {0, 1, 1, 0}), Matrix(0, 0)}};
  f.automorphisms.push_back(std::move(swap));
  return f;
}

}  // namespace dglakit::fixtures
