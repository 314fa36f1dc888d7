#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dglakit/fixtures.hpp"
#include "dglakit/formality.hpp"
#include "dglakit/kuranishi.hpp"

using namespace dglakit;

namespace {

using M2 = std::array<Scalar, 4>;

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
M2 sub(const M2& a, const M2& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
M2 add(const M2& a, const M2& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
M2 comm(const M2& a, const M2& b) { return sub(mul(a, b), mul(b, a)); }
Scalar tr(const M2& a) { return a[0] + a[3]; }

M2 random_m2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  M2 m;
  for (auto& x : m) x = Scalar(d(rng), 1 + std::abs(d(rng)));
  for (auto& x : m) x.canonicalize();
  return m;
}

Vector flat(std::initializer_list<M2> ms) {
  Vector v;
  for (const auto& m : ms) v.insert(v.end(), m.begin(), m.end());
  return v;
}

// L^1 = <a, xi, eta>, L^2 = <u, w, v>: d xi = u, d eta = w, [a, a] = u,
// [a, xi] = w, [a, eta] = v. Here kappa(x1 a) = x1^4 v.
DgLieAlgebra quartic() {
  std::map<int, Matrix> d;
  d.emplace(1, Matrix(3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0}));
  BracketTable b;
  b[{1, 1}] = {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}};
  return DgLieAlgebra(GradedVectorSpace({{1, 3}, {2, 3}}, {{1, {"a", "xi", "eta"}}, {2, {"u", "w", "v"}}}), d, b);
}

}  // namespace

TEST_CASE("trace pairing on the commuting model is quasi-cyclic") {
  auto l = fixtures::commuting_n2();
  auto p = fixtures::commuting_trace_pairing();
  auto report = check_quasi_cyclic(l, p);
  CHECK(report.all_passed());
  CHECK(report.graded_symmetric);
  CHECK_FALSE(report.strictly_symmetric);
  CHECK_FALSE(check_quasi_cyclic(l, p, PairingSymmetry::Strict).all_passed());

  // independent evaluation with explicit 2x2 matrices
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const M2 A = random_m2(rng), X = random_m2(rng), Y = random_m2(rng), X2 = random_m2(rng), Y2 = random_m2(rng);
    const M2 C = random_m2(rng);
    // ([A, (X, Y)], (X', Y')) = (A, [(X, Y), (X', Y')])
    const M2 ax = comm(A, X), ay = comm(A, Y);
    const Scalar lhs = tr(mul(ax, Y2)) - tr(mul(ay, X2));
    const Scalar rhs = tr(mul(A, add(comm(X, Y2), comm(X2, Y))));
    CHECK(lhs == rhs);
    CHECK(p.evaluate(l, 1, flat({ax, ay}), 1, flat({X2, Y2})) == lhs);
    CHECK(p.evaluate(l, 0, flat({A}), 2, l.bracket(1, 1, flat({X, Y}), flat({X2, Y2}))) == rhs);
    CHECK(p.evaluate(l, 0, flat({A}), 2, flat({C})) == tr(mul(A, C)));
  }
}

TEST_CASE("nondegeneracy is unsatisfiable on the nonformal control") {
  auto l = fixtures::nonformal_control();
  auto report = check_quasi_cyclic(l, fixtures::nonformal_candidate_pairing());
  CHECK_FALSE(report.check("nondegeneracy").passed);
  CHECK(report.nondegeneracy_unsatisfiable);
  CyclicPairing zero{2, {}};
  CHECK(check_quasi_cyclic(l, zero).nondegeneracy_unsatisfiable);
}

TEST_CASE("zero pairing fails nondegeneracy") {
  auto l = fixtures::commuting_n2();
  CyclicPairing zero{2, {}};
  auto r = check_quasi_cyclic(l, zero);
  CHECK_FALSE(r.check("nondegeneracy").passed);
  CHECK_FALSE(r.nondegeneracy_unsatisfiable);
  CHECK(r.check("cyclicity").passed);
}

TEST_CASE("cyclicity and d-invariance failures") {
  auto l = fixtures::commuting_n2();
  auto p = fixtures::commuting_trace_pairing();
  p.blocks[{0, 2}](0, 0) += 1;
  p.blocks[{2, 0}](0, 0) += 1;
  CHECK_FALSE(check_quasi_cyclic(l, p).check("cyclicity").passed);

  // d: L^0 -> L^1 identity, pairing L^0 x L^1 of degree 1 with (e, f) = 1
  std::map<int, Matrix> d;
  d.emplace(0, Matrix::identity(1));
  DgLieAlgebra m(GradedVectorSpace({{0, 1}, {1, 1}}), d, {});
  CyclicPairing q{1, {{{0, 1}, Matrix(1, 1, {1})}, {{1, 0}, Matrix(1, 1, {1})}}};
  CHECK(check_quasi_cyclic(m, q).check("d_invariance").passed == false);
}

TEST_CASE("BMM criterion") {
  auto l = fixtures::commuting_n2();
  auto cert = check_bmm_criterion(l, fixtures::commuting_trace_pairing(), build_splitting(l));
  CHECK(cert.certified());
  CHECK(cert.reasons.empty());

  auto n = fixtures::nonformal_control();
  auto nc = check_bmm_criterion(n, fixtures::nonformal_candidate_pairing(), build_splitting(n));
  CHECK_FALSE(nc.certified());
  REQUIRE_FALSE(nc.reasons.empty());
  CHECK(nc.reasons.front() == "pairing axiom (iii) unsatisfiable");

  CyclicPairing deg4 = fixtures::commuting_trace_pairing();
  deg4.degree = 4;
  deg4.blocks.clear();
  auto c4 = check_bmm_criterion(l, deg4, build_splitting(l));
  CHECK_FALSE(c4.certified());
}

TEST_CASE("transferred brackets") {
  auto l = fixtures::commuting_n2();
  auto t = transfer_brackets(l, build_splitting(l), 4);
  CHECK(t.vanishes(3));
  CHECK(t.vanishes(4));
  CHECK_FALSE(t.vanishes(2));

  auto a = fixtures::abelian();
  auto ta = transfer_brackets(a, build_splitting(a), 4);
  for (unsigned k = 2; k <= 4; ++k) CHECK(ta.vanishes(k));

  auto n = fixtures::nonformal_control();
  auto sn = build_splitting(n);
  const GradedVector va{1, {1, 0, 0}}, vb{1, {0, 1, 0}};
  auto l3 = transfer_bracket(n, sn, {va, va, vb});
  CHECK(l3.degree == 2);
  CHECK(l3.v == Vector{0, -1});
  // graded antisymmetry for odd arguments is symmetry
  CHECK(transfer_bracket(n, sn, {va, vb, va}).v == l3.v);
  auto tn = transfer_brackets(n, sn, 3);
  CHECK_FALSE(tn.vanishes(3));

  CHECK_THROWS_AS(transfer_brackets(n, sn, 5), Error);
  CHECK_THROWS_AS(transfer_bracket(n, sn, {va}), Error);
}

TEST_CASE("transferred brackets agree with the Kuranishi series") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-5, 5);
  auto n = fixtures::nonformal_control();
  auto sn = build_splitting(n);
  auto kn = kuranishi_series(n, sn, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const Scalar alpha = d(rng), beta = d(rng);
    const GradedVector x{1, {alpha, beta, 0}};
    const std::vector<Polynomial> pt{Polynomial::constant(1, alpha), Polynomial::constant(1, beta)};
    const Scalar k3 = kn.components[0].homogeneous_part(3).substitute(pt).coefficient(Monomial(1));
    const auto l3 = transfer_bracket(n, sn, {x, x, x});
    CHECK(sn.at(2).harmonic.coordinates(l3.v)[0] / 3 == k3);
  }

  auto q = quartic();
  REQUIRE(check_dgla_axioms(q).all_passed());
  auto sq = build_splitting(q);
  auto kq = kuranishi_series(q, sq, 5);
  REQUIRE(kq.components.size() == 1);
  CHECK(kq.components[0] == Polynomial::monomial(Monomial(std::vector<unsigned>{4})));
  const GradedVector xa{1, {1, 0, 0}};
  auto l4 = transfer_bracket(q, sq, {xa, xa, xa, xa});
  CHECK(l4.v == Vector{0, 0, 12});
  CHECK(transfer_bracket(q, sq, {xa, xa, xa}).v == Vector{0, 0, 0});
}

TEST_CASE("l3 class does not depend on the K complement") {
  auto n = fixtures::nonformal_control();
  auto s1 = build_splitting(n);
  auto parts = s1.degrees();
  parts[1].complement = Subspace::span(3, std::vector<Vector>{Vector{1, 0, 1}});
  Splitting s2(n, parts);
  const GradedVector va{1, {1, 0, 0}}, vb{1, {0, 1, 0}};
  CHECK(transfer_bracket(n, s1, {va, va, vb}).v == transfer_bracket(n, s2, {va, va, vb}).v);
}

TEST_CASE("certified fixtures have vanishing l3") {
  auto l = fixtures::commuting_n2();
  auto s = build_splitting(l);
  if (check_bmm_criterion(l, fixtures::commuting_trace_pairing(), s).certified())
    CHECK(transfer_brackets(l, s, 3).vanishes(3));
}

TEST_CASE("involution eigensplitting") {
  auto h = fixtures::heisenberg();
  auto split = eigensplit_involution(h, fixtures::heisenberg_involution());
  CHECK(split.plus.dim(1) == 1);
  CHECK(split.plus.dim(2) == 1);
  CHECK(split.plus.space().label(1, 0) == "a+b");
  CHECK(split.plus.structure(1, 1).size() == 1);
  CHECK(split.plus.structure(1, 1)[0].value == 2);
  CHECK(split.minus_dim(1) == 1);
  CHECK(split.minus_dim(2) == 0);
  CHECK(check_dgla_axioms(split.plus).all_passed());

  auto id = eigensplit_involution(h, Involution{});
  CHECK(id.plus == h);
  CHECK(id.minus_dim(1) == 0);

  Involution sign;
  sign.matrices.emplace(1, Matrix(2, 2, {-1, 0, 0, 1}));
  try {
    eigensplit_involution(h, sign);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnAutomorphism);
  }
  Involution not_inv;
  not_inv.matrices.emplace(1, Matrix(2, 2, {0, 2, 1, 0}));
  try {
    eigensplit_involution(h, not_inv);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnInvolution);
  }
}

TEST_CASE("transfer hypotheses") {
  auto h = fixtures::heisenberg();
  auto r = check_transfer_hypotheses(h, fixtures::heisenberg_involution());
  CHECK(r.applicable);
  CHECK_FALSE(r.plus_formal);
  CHECK(check_transfer_hypotheses(h, Involution{}).applicable);

  auto c = fixtures::commuting_n2();
  auto swap = fixtures::commuting_swap();
  Involution sigma{swap.generators[0]};
  auto cert = check_bmm_criterion(c, fixtures::commuting_trace_pairing(), build_splitting(c));
  auto rc = check_transfer_hypotheses(c, sigma, &cert);
  CHECK(rc.applicable);
  CHECK(rc.plus_formal);
  auto split = eigensplit_involution(c, sigma);
  CHECK(check_dgla_axioms(split.plus).all_passed());
}
