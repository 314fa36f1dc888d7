#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dglakit/exact.hpp"

using namespace dglakit;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(num(rng), den(rng));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j).canonicalize();
  return m;
}

// Rank as the largest size of a nonzero minor, by cofactor expansion.
Scalar minor_det(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  Scalar total = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != k) sub_cols.push_back(cols[t]);
    const Scalar term = m(rows[0], cols[k]) * minor_det(m, sub_rows, sub_cols);
    total += (k % 2 == 0) ? term : Scalar(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::size_t minor_rank(const Matrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (sgn(minor_det(m, r, c)) != 0) return k;
  }
  return 0;
}

}  // namespace

TEST_CASE("scalar parsing") {
  CHECK(parse_scalar("6/4") == Scalar(3, 2));
  CHECK(to_string(parse_scalar("-10/5")) == "-2");
  CHECK(to_string(parse_scalar("3/9")) == "1/3");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
  CHECK_THROWS_AS(parse_scalar("1.5"), Error);
}

TEST_CASE("kernel and image of identity and zero") {
  auto [k, im] = kernel_image(Matrix::identity(3));
  CHECK(k.dim() == 0);
  CHECK(im == Subspace::full(3));
  auto [k0, im0] = kernel_image(Matrix(2, 2));
  CHECK(k0 == Subspace::full(2));
  CHECK(im0.dim() == 0);
}

TEST_CASE("kernel_image against a minor-rank oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_matrix(rng, 3, 5);
    if (trial % 3 == 0) {
      // force a dependent row
      for (std::size_t j = 0; j < 5; ++j) m(2, j) = m(0, j) * 2 - m(1, j);
    }
    auto [k, im] = kernel_image(m);
    const std::size_t r = minor_rank(m);
    CHECK(im.dim() == r);
    CHECK(k.dim() == 5 - r);
    for (const auto& v : k.basis()) CHECK(is_zero(m * v));
  }
}

TEST_CASE("complement") {
  const Vector e1{1, 0};
  auto w = Subspace::span(2, std::vector<Vector>{e1});
  auto c = complement(w, Subspace::full(2));
  CHECK(c == Subspace::span(2, std::vector<Vector>{Vector{0, 1}}));
  CHECK(complement(Subspace::zero(2), Subspace::full(2)) == Subspace::full(2));
  CHECK_THROWS_AS(complement(Subspace::full(2), w), Error);
}

TEST_CASE("equivariant complement under the swap") {
  const Matrix swap(2, 2, {0, 1, 1, 0});
  Averager avg({Matrix::identity(2), swap});
  auto diag = Subspace::span(2, std::vector<Vector>{Vector{1, 1}});
  auto c = complement(diag, Subspace::full(2), &avg);
  CHECK(c.dim() == 1);
  CHECK(apply(swap, c) == c);
  CHECK(subspace_sum(c, diag) == Subspace::full(2));
  CHECK(c == Subspace::span(2, std::vector<Vector>{Vector{1, -1}}));
}

TEST_CASE("non-idempotent averaging data is rejected") {
  // The "group" {1, 2} is not closed; its average is not a projector.
  Averager bad({Matrix::identity(1), Matrix(1, 1, {2})});
  CHECK_THROWS_AS(complement(Subspace::zero(1), Subspace::full(1), &bad), Error);
}

TEST_CASE("subspace equality") {
  auto a = Subspace::span(2, std::vector<Vector>{Vector{1, 0}, Vector{0, 1}});
  auto b = Subspace::span(2, std::vector<Vector>{Vector{1, 1}, Vector{1, -1}});
  CHECK(subspace_equal(a, b));
  CHECK_FALSE(subspace_equal(Subspace::span(2, std::vector<Vector>{Vector{1, 0}}),
                             Subspace::span(2, std::vector<Vector>{Vector{0, 1}})));
  CHECK_THROWS_AS(subspace_equal(Subspace::zero(2), Subspace::zero(3)), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix gens = random_matrix(rng, 4, 2);
    Matrix change = random_matrix(rng, 2, 2);
    if (sgn(determinant(change)) == 0) continue;
    auto s1 = Subspace::column_space(gens);
    auto s2 = Subspace::column_space(gens * change);
    CHECK(subspace_equal(s1, s2));
    // oracle: joint rank does not grow
    CHECK(minor_rank(hstack(gens, gens * change)) == minor_rank(gens));
  }
}

TEST_CASE("inverse, solve and projection") {
  Matrix m(2, 2, {1, 2, 3, 4});
  CHECK(m * inverse(m) == Matrix::identity(2));
  CHECK(determinant(m) == -2);
  CHECK_THROWS_AS(inverse(Matrix(2, 2, {1, 2, 2, 4})), Error);
  auto x = solve(m, Vector{5, 11});
  REQUIRE(x);
  CHECK(*x == Vector{1, 2});
  CHECK_FALSE(solve(Matrix(2, 1, {1, 1}), Vector{1, 2}));

  auto t = Subspace::span(2, std::vector<Vector>{Vector{1, 1}});
  auto along = Subspace::span(2, std::vector<Vector>{Vector{1, 0}});
  Matrix p = projection_coordinates(t, along);
  CHECK(p * Vector{1, 1} == Vector{1});
  CHECK(p * Vector{1, 0} == Vector{0});
}
