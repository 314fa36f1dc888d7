#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dglakit/fixtures.hpp"
#include "dglakit/quiver.hpp"

using namespace dglakit;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> dist(-4, 4);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      Scalar v(dist(rng), 1 + (dist(rng) + 4) % 3);
      v.canonicalize();
      m(i, j) = v;
    }
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (sgn(determinant(m)) != 0) return m;
  }
}

RepPoint random_point(std::mt19937_64& rng, const QuiverModel& q) {
  RepPoint p;
  for (const auto& e : q.doubled) p.matrices.push_back(random_matrix(rng, q.dims[e.target], q.dims[e.source]));
  return p;
}

std::vector<Matrix> random_group(std::mt19937_64& rng, const QuiverModel& q) {
  std::vector<Matrix> g;
  for (auto n : q.dims) g.push_back(random_invertible(rng, n));
  return g;
}

// g_s on the left and g_t^{-1} on the right
RepPoint transposed_act(const QuiverModel& q, const RepPoint& p, const std::vector<Matrix>& g) {
  RepPoint out;
  for (std::size_t k = 0; k < q.doubled.size(); ++k) {
    const auto& e = q.doubled[k];
    out.matrices.push_back(g[e.source] * p.matrices[k] * inverse(g[e.target]));
  }
  return out;
}

Scalar evaluate(const Polynomial& p, const std::vector<Scalar>& at) {
  std::vector<Polynomial> images;
  for (const auto& a : at) images.push_back(Polynomial::constant(p.nvars(), a));
  auto value = p.substitute(images);
  return value.is_zero() ? Scalar(0) : value.terms().begin()->second;
}

}  // namespace

TEST_CASE("quiver construction") {
  auto point = build_quiver(fixtures::point_model());
  CHECK(point.edge_count() == 1);
  CHECK(point.rep_dim() == 2);
  CHECK(point.gauge_dim() == 1);

  auto loop = build_quiver(fixtures::loop_n2());
  CHECK(loop.edge_count() == 1);
  CHECK(loop.rep_dim() == 8);
  CHECK(loop.gauge_dim() == 4);

  auto two = build_quiver(fixtures::two_vertex());
  REQUIRE(two.edge_count() == 1);
  CHECK(two.edges[0].source == 0);
  CHECK(two.edges[0].target == 1);
  CHECK(two.doubled[1].source == 1);
  CHECK(two.opposite(1) == 0);

  PolystableData many{{"A", "B"}, {1, 3}, {{4, 2}, {2, 6}}, false};
  auto q = build_quiver(many);
  CHECK(q.edge_count() == 2 + 2 + 3);
  CHECK(q.rep_dim() == 2 * (2 * 1 + 2 * 3 + 3 * 9));
}

TEST_CASE("quiver construction errors") {
  PolystableData odd{{"F"}, {1}, {{3}}, false};
  try {
    build_quiver(odd);
    FAIL("expected OddDiagonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddDiagonal);
  }
  PolystableData asym{{"A", "B"}, {1, 1}, {{0, 2}, {1, 0}}, false};
  CHECK_THROWS_AS(build_quiver(asym), Error);
  asym.allow_asymmetric = true;
  CHECK(build_quiver(asym).edge_count() == 2);
  PolystableData ragged{{"A", "B"}, {1}, {{0, 0}, {0, 0}}, false};
  CHECK_THROWS_AS(build_quiver(ragged), Error);
}

TEST_CASE("moment map values") {
  auto two = build_quiver(fixtures::two_vertex());
  RepPoint p{{Matrix(1, 1, {2}), Matrix(1, 1, {3})}};
  auto mu = moment_map(two, p);
  CHECK(mu.blocks[0](0, 0) == -6);
  CHECK(mu.blocks[1](0, 0) == 6);

  // on a loop the moment map is the commutator
  std::mt19937_64 rng(3);
  auto loop = build_quiver(fixtures::loop_n2());
  for (int t = 0; t < 10; ++t) {
    auto r = random_point(rng, loop);
    const Matrix& x = r.matrices[0];
    const Matrix& y = r.matrices[1];
    CHECK(moment_map(loop, r).blocks[0] == x * y - y * x);
  }

  RepPoint bad{{Matrix(2, 1), Matrix(1, 1)}};
  CHECK_THROWS_AS(moment_map(two, bad), Error);
}

TEST_CASE("moment map has total trace zero") {
  std::mt19937_64 rng(17);
  PolystableData data{{"A", "B", "C"}, {2, 1, 3}, {{2, 1, 0}, {1, 0, 2}, {0, 2, 4}}, false};
  auto q = build_quiver(data);
  for (int t = 0; t < 10; ++t) CHECK(moment_map(q, random_point(rng, q)).trace_sum() == 0);
}

TEST_CASE("equivariance") {
  std::mt19937_64 rng(23);
  for (auto data : {fixtures::point_model(), fixtures::loop_n2(), fixtures::two_vertex()}) {
    auto q = build_quiver(data);
    for (int t = 0; t < 5; ++t) CHECK(equivariance_check(q, random_point(rng, q), random_group(rng, q)));
  }

  // the transposed action breaks equivariance once source and target differ
  PolystableData square{{"A", "B"}, {2, 2}, {{0, 1}, {1, 0}}, false};
  auto q = build_quiver(square);
  auto p = random_point(rng, q);
  auto g = random_group(rng, q);
  auto lhs = moment_map(q, transposed_act(q, p, g));
  auto mu = moment_map(q, p);
  bool all_equal = true;
  for (std::size_t i = 0; i < 2; ++i) all_equal = all_equal && lhs.blocks[i] == g[i] * mu.blocks[i] * inverse(g[i]);
  CHECK_FALSE(all_equal);
}

TEST_CASE("swapping orientation negates the moment map") {
  std::mt19937_64 rng(29);
  PolystableData data{{"A", "B"}, {2, 1}, {{2, 1}, {1, 0}}, false};
  auto q = build_quiver(data);
  auto op = opposite_quiver(q);
  for (int t = 0; t < 5; ++t) {
    auto p = random_point(rng, q);
    auto mu = moment_map(q, p);
    auto nu = moment_map(op, swap_orientation(q, p));
    for (std::size_t i = 0; i < 2; ++i) CHECK(nu.blocks[i] == Matrix(mu.blocks[i].rows(), mu.blocks[i].cols()) - mu.blocks[i]);
  }
}

TEST_CASE("symbolic moment equations") {
  auto loop = build_quiver(fixtures::loop_n2());
  auto eq = moment_equations(loop);
  CHECK(eq.map.ring.nvars() == 8);
  CHECK(eq.map.components.size() == 4);
  CHECK(eq.span_dim == 3);

  CHECK(moment_equations(build_quiver(fixtures::point_model())).span_dim == 0);
  CHECK(moment_equations(build_quiver(fixtures::two_vertex())).span_dim == 1);

  std::mt19937_64 rng(31);
  PolystableData data{{"A", "B"}, {2, 1}, {{2, 1}, {1, 2}}, false};
  auto q = build_quiver(data);
  auto sym = moment_equations(q);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int t = 0; t < 5; ++t) {
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < q.rep_dim(); ++i) coords.push_back(dist(rng));
    auto mu = moment_map(q, point_from_coordinates(q, coords));
    std::size_t pos = 0;
    for (const auto& b : mu.blocks)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) CHECK(evaluate(sym.map.components[pos++], coords) == b(r, c));
  }
}

TEST_CASE("local model comparison on shipped quivers") {
  for (std::string name : {"point-model", "loop-n2", "two-vertex"}) {
    CAPTURE(name);
    PolystableData data = name == "point-model" ? fixtures::point_model()
                          : name == "loop-n2"   ? fixtures::loop_n2()
                                                : fixtures::two_vertex();
    auto q = build_quiver(data);
    auto model = fixtures::local_model(name);
    CHECK(check_dgla_axioms(model.algebra).all_passed());
    auto s = build_splitting(model.algebra);
    auto cmp = compare_local_models(model.algebra, s, q, model.ident_h1, model.ident_h2);
    CHECK(cmp.span_equal);
    CHECK(cmp.quadratic_span_dim == cmp.moment_span_dim);
    if (name != "point-model") {
      REQUIRE(cmp.proportionality.has_value());
      CHECK(*cmp.proportionality == 2);
    } else {
      CHECK_FALSE(cmp.proportionality.has_value());
    }
  }
}

TEST_CASE("local model comparison is independent of the H^2 identification") {
  std::mt19937_64 rng(37);
  auto q = build_quiver(fixtures::loop_n2());
  auto model = fixtures::local_model("loop-n2");
  auto s = build_splitting(model.algebra);
  for (int t = 0; t < 3; ++t) {
    auto cmp = compare_local_models(model.algebra, s, q, model.ident_h1, random_invertible(rng, 4));
    CHECK(cmp.span_equal);
  }
  // a generic change of H^1 coordinates moves the quadrics
  Matrix shear = Matrix::identity(8);
  shear(0, 4) = 1;
  shear(1, 6) = 3;
  CHECK_FALSE(compare_local_models(model.algebra, s, q, shear, model.ident_h2).span_equal);
}

TEST_CASE("local model comparison errors") {
  auto loop = build_quiver(fixtures::loop_n2());
  auto l = fixtures::heisenberg();
  auto s = build_splitting(l);
  try {
    compare_local_models(l, s, loop, Matrix::identity(2), Matrix::identity(1));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
  auto model = fixtures::local_model("two-vertex");
  auto two = build_quiver(fixtures::two_vertex());
  auto ms = build_splitting(model.algebra);
  try {
    compare_local_models(model.algebra, ms, two, Matrix(2, 2, {1, 1, 1, 1}), model.ident_h2);
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvertible);
  }
  CHECK_THROWS_AS(compare_local_models(model.algebra, ms, two, Matrix::identity(3), model.ident_h2), Error);
}
