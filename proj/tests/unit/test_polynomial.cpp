#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dglakit/polynomial.hpp"

using namespace dglakit;

TEST_CASE("monomial order and enumeration") {
  auto deg2 = monomials_of_degree(2, 2);
  REQUIRE(deg2.size() == 3);
  CHECK(deg2[0] == Monomial(std::vector<unsigned>{2, 0}));
  CHECK(deg2[1] == Monomial(std::vector<unsigned>{1, 1}));
  CHECK(deg2[2] == Monomial(std::vector<unsigned>{0, 2}));
  CHECK(deg2[0] < deg2[1]);
  CHECK(deg2[1] < deg2[2]);
  CHECK(Monomial::variable(2, 1) < deg2[0]);
  CHECK(monomials_of_degree(3, 3).size() == 10);
}

TEST_CASE("truncated arithmetic") {
  const auto x = Polynomial::variable(2, 0);
  const auto y = Polynomial::variable(2, 1);
  auto s = x + y;
  auto sq = s.multiply(s);
  CHECK(sq.coefficient(Monomial(std::vector<unsigned>{1, 1})) == 2);
  CHECK(s.multiply(sq, 2).is_zero());
  CHECK(s.multiply(sq, 3) == s.multiply(s).multiply(s));
  const std::vector<std::string> names{"x1", "x2"};
  CHECK((x.multiply(x).multiply(y) * -1).to_string(names) == "-x1^2*x2");
  CHECK((x.multiply(y) * 2).to_string(names) == "2*x1*x2");
  CHECK(Polynomial(2).to_string(names) == "0");
}

TEST_CASE("substitution") {
  const auto x = Polynomial::variable(2, 0);
  const auto y = Polynomial::variable(2, 1);
  auto f = x.multiply(y);
  // x -> x + y, y -> x - y gives x^2 - y^2
  std::vector<Polynomial> images{x + y, x - y};
  CHECK(f.substitute(images) == x.multiply(x) - y.multiply(y));
  CHECK(f.substitute(images, 1).is_zero());
}

TEST_CASE("sparse echelon membership") {
  SparseEchelon<int> e;
  CHECK(e.insert({{0, 1}, {1, 2}}));
  CHECK(e.insert({{1, 1}}));
  CHECK_FALSE(e.insert({{0, 3}}));
  CHECK(e.contains({{0, 5}, {1, -1}}));
  CHECK_FALSE(e.contains({{2, 1}}));
  CHECK(e.rank() == 2);
}
