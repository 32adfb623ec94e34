#include <doctest.h>

#include "test_support.hpp"
#include "torushom/char_lambda.hpp"

using namespace torushom;

namespace {

std::vector<IntVector> to_rows(const std::vector<std::vector<int>>& r) {
  std::vector<IntVector> out;
  for (auto& row : r) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST_CASE("star condition") {
  SimplicialPoset ex1(testdata::ex1());
  CharacteristicMatrix lam(ex1, to_rows(testdata::ex1_lambda()));
  CHECK(check_star(ex1, lam, Coefficients::integers()).ok);

  // The seven edge minors are all units.
  for (auto e : ex1.of_rank(2)) {
    BigInt d = lambda_minor(ex1, lam, e, {0, 1});
    CHECK((d == 1 || d == -1));
  }

  auto bad = testdata::ex1_lambda();
  bad[6] = {-3, -6};
  CharacteristicMatrix lb(ex1, to_rows(bad));
  auto r = check_star(ex1, lb, Coefficients::integers());
  CHECK_FALSE(r.ok);
  CHECK(r.witness_element == 13);  // edge {6,7}
  CHECK(r.witness_det == 0);

  PosetData one;
  one.elements = {{0, {}}, {1, {1}}};
  SimplicialPoset pt(one);
  CHECK(check_star(pt, CharacteristicMatrix(pt, {{1}}), Coefficients::integers()).ok);

  // A determinant of 2 is a unit over Q and F_3 but not over Z or F_2.
  SimplicialPoset ex0(testdata::ex0());
  CharacteristicMatrix two(ex0, to_rows({{1, 0}, {0, 2}, {1, 0}, {0, 1}}));
  CHECK_FALSE(check_star(ex0, two, Coefficients::integers()).ok);
  CHECK(check_star(ex0, two, Coefficients::rationals()).ok);
  CHECK(check_star(ex0, two, Coefficients::prime(3)).ok);
  CHECK_FALSE(check_star(ex0, two, Coefficients::prime(2)).ok);

  CHECK_THROWS_AS(CharacteristicMatrix(ex1, to_rows({{1, 0}})), TorusError);
  CHECK_THROWS_AS(CharacteristicMatrix(ex0, to_rows({{1}, {0}, {1}, {0}})), TorusError);
}

TEST_CASE("C coefficients") {
  SimplicialPoset ex1(testdata::ex1());
  CharacteristicMatrix lam(ex1, to_rows(testdata::ex1_lambda()));
  const Subset a1 = 1, a2 = 2;
  CHECK(c_coefficient(ex1, lam, ex1.index_of(4), a2) == 3);
  CHECK(boost::multiprecision::abs(c_coefficient(ex1, lam, ex1.index_of(8), 0)) == 1);
  CHECK(c_coefficient(ex1, lam, ex1.bottom(), 3) == 1);
  CHECK_THROWS_AS(c_coefficient(ex1, lam, ex1.index_of(4), 3), TorusError);

  // Hand values: C_{{i},{2}} = +lambda_{i,1}, C_{{i},{1}} = -lambda_{i,2}.
  auto rows = testdata::ex1_lambda();
  for (int v = 1; v <= 7; ++v) {
    CHECK(c_coefficient(ex1, lam, ex1.index_of(v), a2) == rows[static_cast<std::size_t>(v - 1)][0]);
    CHECK(c_coefficient(ex1, lam, ex1.index_of(v), a1) == -rows[static_cast<std::size_t>(v - 1)][1]);
  }

  // Repeated rows give zero.
  SimplicialPoset ex0(testdata::ex0());
  CharacteristicMatrix rep(ex0, to_rows({{1, 1}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK(c_coefficient(ex0, rep, ex0.index_of(5), 0) == 0);

  // Flipping the orientation of I flips every C_{I,A}.
  std::vector<int> o(ex1.size(), 1);
  o[ex1.index_of(4)] = -1;
  SimplicialPoset flipped = ex1.reoriented(o);
  CharacteristicMatrix lf(flipped, to_rows(testdata::ex1_lambda()));
  CHECK(c_coefficient(flipped, lf, flipped.index_of(4), a2) == -3);
  CHECK(c_coefficient(flipped, lf, flipped.index_of(5), a2) == 2);
}

TEST_CASE("theta") {
  SimplicialPoset ex1(testdata::ex1());
  CharacteristicMatrix lam(ex1, to_rows(testdata::ex1_lambda()));
  auto th = theta(ex1, lam);
  REQUIRE(th.size() == 2);
  CHECK(th[0] == IntVector{1, 0, 1, 3, 2, 1, -3});
  CHECK(th[1] == IntVector{0, 1, 0, 1, 3, 2, -5});

  SimplicialPoset ex0(testdata::ex0());
  auto t0 = theta(ex0, CharacteristicMatrix(ex0, to_rows(testdata::ex0_lambda())));
  CHECK(t0[0] == IntVector{1, 0, 1, 0});
  CHECK(t0[1] == IntVector{0, 1, 0, 1});

  PosetData empty;
  empty.elements = {{0, {}}};
  SimplicialPoset nothing(empty);
  CHECK(theta(nothing, CharacteristicMatrix(nothing, {})).empty());
}

TEST_CASE("subsets") {
  CHECK(subsets_of_size(3, 2) == std::vector<Subset>{3, 5, 6});
  CHECK(subset_name(5) == "{1,3}");
  CHECK(subset_name(0) == "{}");
  CHECK(subsets_of_size(2, 3).empty());
}
