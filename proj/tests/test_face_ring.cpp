#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "torushom/face_ring.hpp"

using namespace torushom;

namespace {

std::vector<IntVector> to_rows(const std::vector<std::vector<int>>& r) {
  std::vector<IntVector> out;
  for (auto& row : r) out.emplace_back(row.begin(), row.end());
  return out;
}

struct Fixture {
  SimplicialPoset s;
  CharacteristicMatrix lam;
  Fixture(PosetData d, const std::vector<std::vector<int>>& rows) : s(std::move(d)), lam(s, to_rows(rows)) {}
};

FaceRingElement mono(const SimplicialPoset& s, std::vector<int> ids) {
  Monomial m;
  for (int id : ids) m.push_back(s.index_of(id));
  return {{m, Rational(1)}};
}

// Element of k[S] represented by a generator vector of the presentation.
FaceRingElement as_element(const GradedPresentation& p, const FieldVector& gens) {
  FaceRingElement out;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g] != 0) out[p.degree == 0 ? Monomial{} : Monomial{p.generators[g]}] = gens[g];
  return out;
}

// Multichain counts by brute force over all weakly increasing index tuples.
std::size_t count_multichains(const SimplicialPoset& s, int degree) {
  std::size_t count = 0;
  std::function<void(SimplicialPoset::Index, int)> rec = [&](SimplicialPoset::Index prev, int left) {
    if (left == 0) {
      ++count;
      return;
    }
    for (SimplicialPoset::Index j = 0; j < s.size(); ++j)
      if (j != s.bottom() && s.rank(j) <= left && s.leq(prev, j) && (prev == s.bottom() || j >= prev || s.rank(j) > s.rank(prev)))
        rec(j, left - s.rank(j));
  };
  rec(s.bottom(), degree);
  return count;
}

}  // namespace

TEST_CASE("straightening products") {
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  FaceRing r(ex1.s, Field::rationals());
  CHECK(r.monomial({ex1.s.index_of(1), ex1.s.index_of(2)}) == mono(ex1.s, {8}));
  CHECK(r.monomial({ex1.s.index_of(1), ex1.s.index_of(5)}).empty());
  CHECK(r.monomial({ex1.s.index_of(1), ex1.s.index_of(1)}) == mono(ex1.s, {1, 1}));
  CHECK(r.monomial({ex1.s.index_of(8), ex1.s.index_of(1)}) == mono(ex1.s, {1, 8}));
  CHECK(r.render(r.monomial({ex1.s.index_of(4), ex1.s.index_of(1)})) == "v11");

  Fixture dg(testdata::digon(), testdata::digon_lambda());
  FaceRing rd(dg.s, Field::rationals());
  auto ab = rd.monomial({dg.s.index_of(1), dg.s.index_of(2)});
  CHECK(ab == rd.add(mono(dg.s, {3}), mono(dg.s, {4})));
  CHECK(rd.render(ab) == "v3 + v4");
  // v3 v4 = v1 v2 (v_1 v_2 is the meet times the empty join set) -> 0.
  CHECK(rd.monomial({dg.s.index_of(3), dg.s.index_of(4)}).empty());
  CHECK(rd.monomial({dg.s.index_of(3), dg.s.index_of(2)}) == mono(dg.s, {2, 3}));

  FaceRing f2(dg.s, Field::prime(2));
  auto sq = f2.multiply(ab, ab);  // (v3 + v4)^2 = v3^2 + v4^2 in characteristic 2
  CHECK(sq == f2.add(mono(dg.s, {3, 3}), mono(dg.s, {4, 4})));
}

TEST_CASE("face ring is commutative and associative") {
  for (auto data : {testdata::ex1(), testdata::digon(), testdata::simplex3_boundary()}) {
    SimplicialPoset s(data);
    FaceRing r(s, Field::rationals());
    std::vector<FaceRingElement> gens;
    for (SimplicialPoset::Index i = 0; i < s.size(); ++i) gens.push_back(r.generator(i));
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b) {
        auto ab = r.multiply(gens[a], gens[b]);
        CHECK(ab == r.multiply(gens[b], gens[a]));
        for (const auto& [m, c] : ab) CHECK(r.is_multichain(m));
        if (s.rank(a) + s.rank(b) > 2) continue;
        for (std::size_t c = 0; c < gens.size(); ++c) {
          if (s.rank(a) + s.rank(b) + s.rank(c) > 3) continue;
          CHECK(r.multiply(ab, gens[c]) == r.multiply(gens[a], r.multiply(gens[b], gens[c])));
        }
      }
  }
}

TEST_CASE("hilbert series") {
  SimplicialPoset ex1(testdata::ex1());
  auto h = hilbert_series(ex1, 4);
  CHECK(h == std::vector<std::int64_t>{1, 0, 7, 0, 14});
  SimplicialPoset dg(testdata::digon());
  CHECK(hilbert_series(dg, 4)[4] == 4);
  for (auto data : {testdata::ex1(), testdata::ex0(), testdata::digon(), testdata::simplex3_boundary()}) {
    SimplicialPoset s(data);
    FaceRing r(s, Field::rationals());
    auto series = hilbert_series(s, 8);
    for (int j = 0; j <= 4; ++j) {
      CHECK(static_cast<std::int64_t>(count_multichains(s, j)) == series[static_cast<std::size_t>(2 * j)]);
      CHECK(r.multichains(j).size() == count_multichains(s, j));
    }
  }
}

TEST_CASE("quotient presentation dimensions") {
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  for (auto coeffs : {Coefficients::rationals(), Coefficients::integers(), Coefficients::prime(2), Coefficients::prime(3),
                      Coefficients::prime(5)}) {
    QuotientRing q(ex1.s, ex1.lam, coeffs);
    CHECK(q.presentation(0).dimension() == 1);
    CHECK(q.presentation(1).generators.size() == 7);
    CHECK(q.presentation(1).rank() == 2);
    CHECK(q.presentation(1).dimension() == 5);
    CHECK(q.presentation(2).dimension() == 2);
    CHECK(q.presentation(3).dimension() == 0);
    for (int k = 0; k <= 3; ++k) CHECK(q.presentation(k).dimension() == q.theta_quotient_dimension(k));
  }
  CHECK_THROWS_AS(QuotientRing(ex1.s, ex1.lam, Coefficients::rationals()).presentation(4), TorusError);

  for (auto [data, rows] : {std::pair{testdata::ex0(), testdata::ex0_lambda()},
                            std::pair{testdata::digon(), testdata::digon_lambda()},
                            std::pair{testdata::simplex3_boundary(), testdata::simplex3_lambda()}}) {
    Fixture f(data, rows);
    QuotientRing q(f.s, f.lam, Coefficients::rationals());
    for (int k = 0; k <= f.s.dim() + 1; ++k) CHECK(q.presentation(k).dimension() == q.theta_quotient_dimension(k));
    // Cohen-Macaulay inputs: the quotient is h.
    auto fh = fh_vectors(f.s);
    for (int k = 0; k <= f.s.dim(); ++k)
      CHECK(static_cast<std::int64_t>(q.presentation(k).dimension()) == fh.h[static_cast<std::size_t>(k)]);
  }

  auto bad = testdata::ex1_lambda();
  bad[6] = {-3, -6};
  CharacteristicMatrix lb(ex1.s, to_rows(bad));
  CHECK_THROWS_AS(quotient_presentation(ex1.s, lb, 1, Coefficients::rationals()), TorusError);
}

TEST_CASE("vertex action") {
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  QuotientRing q(ex1.s, ex1.lam, Coefficients::rationals());
  auto v = [&](int id) { return ex1.s.index_of(id); };
  CHECK(q.vertex_action(v(4), q.reduce(mono(ex1.s, {1}), 1), 1) == q.presentation(2).coordinates_of(v(11)));
  CHECK(is_zero(q.vertex_action(v(5), q.reduce(mono(ex1.s, {1}), 1), 1)));

  // Every product v_u [v_I] differs from v_u v_I by an element of the Theta ideal.
  for (auto [data, rows] : {std::pair{testdata::ex1(), testdata::ex1_lambda()},
                            std::pair{testdata::digon(), testdata::digon_lambda()},
                            std::pair{testdata::simplex3_boundary(), testdata::simplex3_lambda()}}) {
    Fixture f(data, rows);
    for (auto coeffs : {Coefficients::rationals(), Coefficients::prime(3)}) {
      QuotientRing qr(f.s, f.lam, coeffs);
      for (int k = 1; k < f.s.dim(); ++k)
        for (auto i : f.s.of_rank(k))
          for (auto u : f.s.vertex_list()) {
            FieldVector prod = qr.vertex_times_generator(u, i);
            auto diff = qr.ring().add(qr.ring().monomial({u, i}), as_element(qr.presentation(k + 1), prod), -1);
            CHECK(qr.in_theta_ideal(diff, k + 1));
          }
    }
  }
}

TEST_CASE("vertex action is well defined") {
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  QuotientRing q(ex1.s, ex1.lam, Coefficients::rationals());
  // Relation rows map to zero.
  const auto& p1 = q.presentation(1);
  for (const auto& row : p1.relations)
    for (auto u : ex1.s.vertex_list()) {
      FieldVector acc(q.presentation(2).generators.size(), Rational(0));
      for (std::size_t g = 0; g < row.size(); ++g) {
        if (row[g] == 0) continue;
        auto prod = q.vertex_times_generator(u, p1.generators[g]);
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += Rational(row[g]) * prod[t];
      }
      CHECK(is_zero(q.presentation(2).coordinates(acc)));
    }

  // A random choice of maximal simplex gives the same action.
  std::mt19937 rng(7);
  MaximalChoice random_choice = [&](SimplicialPoset::Index, const std::vector<SimplicialPoset::Index>& c) {
    return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
  };
  for (int trial = 0; trial < 5; ++trial) {
    QuotientRing qr(ex1.s, ex1.lam, Coefficients::rationals(), random_choice);
    for (auto u : ex1.s.vertex_list()) CHECK(qr.action_matrix(u, 1) == q.action_matrix(u, 1));
  }
}

TEST_CASE("socle") {
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  QuotientRing q(ex1.s, ex1.lam, Coefficients::rationals());
  CHECK(q.socle_basis(2).size() == q.presentation(2).dimension());
  CHECK(q.socle_basis(0).empty());
  auto s1 = q.socle_basis(1);
  for (const auto& b : s1) CHECK(q.in_socle(b, 1));
  CHECK(s1.size() >= 2);

  Fixture s3(testdata::simplex3_boundary(), testdata::simplex3_lambda());
  QuotientRing qs(s3.s, s3.lam, Coefficients::rationals());
  CHECK(qs.socle_basis(3).size() == 1);
  CHECK(qs.socle_basis(1).empty());
  CHECK(qs.socle_basis(2).empty());
}

TEST_CASE("reducer") {
  for (auto [data, rows] : {std::pair{testdata::ex1(), testdata::ex1_lambda()},
                            std::pair{testdata::digon(), testdata::digon_lambda()},
                            std::pair{testdata::simplex3_boundary(), testdata::simplex3_lambda()}}) {
    Fixture f(data, rows);
    for (auto coeffs : {Coefficients::rationals(), Coefficients::prime(2)}) {
      QuotientRing q(f.s, f.lam, coeffs);
      for (int k = 0; k <= f.s.dim(); ++k) {
        for (const auto& m : q.multichain_basis(k)) {
          FaceRingElement x{{m, Rational(1)}};
          auto red = q.reduce(x, k);
          auto diff = q.ring().add(x, as_element(q.presentation(k), q.presentation(k).lift(red)), -1);
          CHECK(q.in_theta_ideal(diff, k));
        }
        if (k == 0) continue;
        for (int j = 0; j < f.s.dim(); ++j)
          for (const auto& m : q.multichain_basis(k - 1))
            CHECK(is_zero(q.reduce(q.ring().multiply(q.theta_element(j), {{m, Rational(1)}}), k)));
      }
    }
  }
  Fixture ex1(testdata::ex1(), testdata::ex1_lambda());
  QuotientRing q(ex1.s, ex1.lam, Coefficients::rationals());
  CHECK_THROWS_AS(q.reduce(mono(ex1.s, {1}), 2), TorusError);
  CHECK(q.reduce(mono(ex1.s, {1, 1, 1}), 3).empty());
}
