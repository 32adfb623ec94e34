#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "torushom/cycles.hpp"

using namespace torushom;

namespace {

constexpr Subset E1 = 1, E2 = 2, E12 = 3;

std::vector<IntVector> to_rows(const std::vector<std::vector<int>>& r) {
  std::vector<IntVector> out;
  for (auto& row : r) out.emplace_back(row.begin(), row.end());
  return out;
}

struct Input {
  SimplicialPoset s;
  CharacteristicMatrix lam;
  CornerComplex k;
  Input(PosetData d, const std::vector<std::vector<int>>& rows, std::vector<InteriorCell> cells)
      : s(std::move(d)), lam(s, to_rows(rows)), k(s, std::move(cells)) {}
};

Input ex1() { return Input(testdata::ex1(), testdata::ex1_lambda(), testdata::ex1_cells()); }

// Arc L from the outer square to the hole, pushed off along e1 (to L') and
// along e2 (to L''); L1 is a further push-off given as a chain.
Geometry ex1_geometry(bool with_chain = true) {
  Geometry g;
  g.spines = {{"eta", 1}};
  g.diaphragms = {{"L", 1, std::nullopt, {{"e*", 1}}},
                  {"L'", 1, std::vector<int>{4, 7}, {}},
                  {"L''", 1, std::vector<int>{1, 5}, {}}};
  g.spine_diaphragm = {{"eta", "L", {{"pt", 1}}}};
  g.disjoint = {{"L'", "L''"}};
  g.bordisms = {{"L", "L'", false, E1, {{4, 1}, {7, -5}}}, {"L", "L''", false, E2, {{1, -1}, {5, -2}}}};
  if (with_chain) {
    g.diaphragms.push_back({"L1", 1, std::vector<int>{2}, {}});
    g.bordisms.push_back({"L", "L1", true, std::nullopt, {{4, 1}, {6, 1}, {7, 1}}});
  }
  return g;
}

FacePart faces(const SimplicialPoset& s, std::initializer_list<std::pair<int, int>> terms) {
  FacePart p;
  for (auto [id, c] : terms) p[s.index_of(id)] = c;
  return p;
}

}  // namespace

TEST_CASE("torus intersections") {
  auto e = [](Subset a) { return TorusClass::basis(2, a); };
  CHECK(torus_intersect(e(E1), e(E2)) == TorusClass::basis(2, 0));
  TorusClass minus = TorusClass::basis(2, 0);
  minus.terms[0] = -1;
  CHECK(torus_intersect(e(E2), e(E1)) == minus);
  CHECK(torus_intersect(e(E1), e(E1)).is_zero());
  for (Subset a = 0; a < 4; ++a) {
    CHECK(torus_intersect(e(E12), e(a)) == e(a));
    CHECK(torus_intersect(e(a), e(E12)) == e(a));
  }
  // Graded commutativity on T^4: x.y = (-1)^{(4-|a|)(4-|b|)} y.x.
  for (Subset a = 0; a < 16; ++a)
    for (Subset b = 0; b < 16; ++b) {
      auto x = TorusClass::basis(4, a), y = TorusClass::basis(4, b);
      TorusClass yx = torus_intersect(y, x);
      if (((4 - subset_size(a)) * (4 - subset_size(b))) % 2)
        for (auto& [k, c] : yx.terms) c = -c;
      CHECK(torus_intersect(x, y) == yx);
    }
  CHECK(torus_name(0) == "e0");
  CHECK(torus_name(E12) == "e12");
}

TEST_CASE("face classes multiply through the face ring") {
  Input in = ex1();
  CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), Coefficients::rationals());
  auto x = [&](int id) { return FacePart{{in.s.index_of(id), Rational(1)}}; };
  CHECK(cc.face_intersect(x(4), x(1)) == x(11));
  CHECK(cc.face_intersect(x(4), x(5)).empty());
  CHECK(cc.face_intersect(x(7), x(5)) == x(14));
  CHECK(cc.face_intersect(x(0), x(6)) == x(6));
  CHECK_THROWS_AS(cc.face_intersect(x(11), x(1)), TorusError);
  try {
    cc.face_intersect(x(11), x(1));
  } catch (const TorusError& err) {
    CHECK(err.code() == ErrorCode::DegreeOverflow);
  }
  CHECK(cc.render_face(in.s.index_of(11)) == "[X_{1,4}]");
  CHECK(cc.render_face(in.s.index_of(4)) == "[X_4]");
  CHECK(cc.render_face(in.s.bottom()) == "[X]");
}

TEST_CASE("face products respect the theta relations") {
  // A first-kind row times any face class dies in the face-ring quotient.
  Input in = ex1();
  CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), Coefficients::rationals());
  const int n = in.s.dim();
  std::size_t checked = 0;
  for (int q = 0; q < n; ++q)
    for (const auto& row : relation_rows(in.s, in.lam, in.k, q, RelationKind::First, Coefficients::integers())) {
      const auto& gens = in.s.of_rank(n - q);
      FacePart r;
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (row.coefficients[g] != 0) r[gens[g]] = Rational(row.coefficients[g]);
      for (int rk = 0; rk <= q; ++rk)
        for (auto j : in.s.of_rank(rk)) {
          FacePart prod = cc.face_intersect(r, {{j, Rational(1)}});
          const int deg = n - q + rk;
          const auto& pres = cc.ring().presentation(deg);
          FieldVector v(pres.generators.size(), Rational(0));
          for (const auto& [i, c] : prod) v[*pres.position(i)] += c;
          CHECK(pres.in_span(v));
          ++checked;
        }
    }
  CHECK(checked > 0);
}

TEST_CASE("bordism rewrites") {
  Input in = ex1();
  CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), Coefficients::rationals());
  const auto& bd = cc.geometry().bordisms;
  auto r1 = cc.bordism_rewrite("L", E1, bd[0]);
  CHECK(r1.faces == faces(in.s, {{4, 1}, {7, -5}}));
  CHECK(r1.diaphragms.count({"L'", E1}) == 1);
  auto r2 = cc.bordism_rewrite("L", E2, bd[1]);
  CHECK(r2.faces == faces(in.s, {{1, -1}, {5, -2}}));
  // Backwards: dia_{L'} = dia_L - rows.
  auto back = cc.bordism_rewrite("L'", E1, bd[0]);
  CHECK(back.faces == faces(in.s, {{4, -1}, {7, 5}}));
  CHECK_THROWS_AS(cc.bordism_rewrite("L", E2, bd[0]), TorusError);

  // Chain datum: A = {1} reproduces the coordinate row; A = {2} agrees up to a global sign.
  auto c1 = cc.bordism_rewrite("L", E1, bd[2]);
  CHECK(c1.faces == faces(in.s, {{4, 1}, {6, 2}, {7, -5}}));
  auto c2 = cc.bordism_rewrite("L", E2, bd[2]);
  const FacePart row2 = faces(in.s, {{4, 3}, {6, 1}, {7, -3}});
  FacePart neg2 = faces(in.s, {{4, -3}, {6, -1}, {7, 3}});
  CHECK((c2.faces == row2 || c2.faces == neg2));
  // Top torus class: the push-off is free.
  CHECK(cc.bordism_rewrite("L", E12, bd[2]).faces.empty());
}

TEST_CASE("zero chain datum rewrites to the target alone") {
  Input in = ex1();
  Geometry g = ex1_geometry(false);
  g.diaphragms.push_back({"L2", 1, std::nullopt, {}});
  g.bordisms.push_back({"L", "L2", true, std::nullopt, {}});
  CycleCalculus cc(in.s, in.lam, in.k, g, Coefficients::rationals());
  auto r = cc.bordism_rewrite("L", E1, g.bordisms.back());
  CHECK(r.faces.empty());
  CHECK(r.diaphragms.count({"L2", E1}) == 1);
}

TEST_CASE("intersection numbers on the square with a hole") {
  Input in = ex1();
  for (auto coeffs : {Coefficients::rationals(), Coefficients::integers()}) {
    CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), coeffs);
    auto lr = cc.intersect(cc.diaphragm("L", E1), cc.diaphragm("L", E2));
    CHECK(lr.faces == faces(in.s, {{11, -1}, {14, 10}}));
    CHECK(cc.point_coefficient(lr) == 9);
    CHECK(cc.render_reduced(lr) == "-[X_{1,4}] + 10·[X_{5,7}] = 9·[pt]");
    auto swapped = cc.intersect(cc.diaphragm("L", E2), cc.diaphragm("L", E1));
    CHECK(abs(cc.point_coefficient(swapped)) == 9);

    auto eta = cc.intersect(cc.spine("eta", 0), cc.diaphragm("L", E12));
    CHECK(cc.point_coefficient(eta) == 1);
    auto eta_rev = cc.intersect(cc.diaphragm("L", E12), cc.spine("eta", 0));
    CHECK(abs(cc.point_coefficient(eta_rev)) == 1);

    CHECK(cc.intersect(cc.spine("eta", E1), cc.face(in.s.index_of(3))).empty());
    // [X] is the unit.
    auto unit = cc.intersect(cc.face(in.s.bottom()), cc.diaphragm("L", E1));
    CHECK(unit.diaphragms.count({"L", E1}) == 1);
  }
}

TEST_CASE("diaphragm times face uses a rewrite avoiding the face") {
  Input in = ex1();
  CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), Coefficients::rationals());
  // L' misses face 1: (X4 - 5 X7).X1 = X_{1,4}.
  auto r = cc.intersect(cc.diaphragm("L", E1), cc.face(in.s.index_of(1)));
  CHECK(r.faces == faces(in.s, {{11, 1}}));
  // L' meets face 4, so L1 is used: (X4 + 2 X6 - 5 X7).X4 = v4^2 = 0 modulo theta.
  CHECK(cc.intersect(cc.diaphragm("L", E1), cc.face(in.s.index_of(4))).empty());
}

TEST_CASE("unresolvable and inconsistent data") {
  Input in = ex1();
  Geometry bare;
  bare.diaphragms = {{"L", 1, std::nullopt, {}}};
  CycleCalculus cc(in.s, in.lam, in.k, bare, Coefficients::rationals());
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const TorusError& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of([&] { cc.intersect(cc.diaphragm("L", E1), cc.face(in.s.index_of(1))); }) == ErrorCode::Unresolvable);
  CHECK(code_of([&] { cc.intersect(cc.diaphragm("L", E1), cc.diaphragm("L", E2)); }) == ErrorCode::Unresolvable);
  CHECK(code_of([&] { cc.diaphragm("L", 0); }) == ErrorCode::MismatchedDatum);

  // Two different rows for the same push-off.
  Geometry loop = ex1_geometry(false);
  loop.bordisms.push_back({"L", "L'", false, E1, {{4, 1}}});
  CHECK(code_of([&] { CycleCalculus(in.s, in.lam, in.k, loop, Coefficients::rationals()); }) ==
        ErrorCode::MismatchedDatum);
  // Rows with the wrong face rank.
  Geometry wrong = ex1_geometry(false);
  wrong.bordisms[0].faces = {{11, 1}};
  CHECK(code_of([&] { CycleCalculus(in.s, in.lam, in.k, wrong, Coefficients::rationals()); }) ==
        ErrorCode::MismatchedDatum);
  // A relative chain that is not a cycle: the 2-cell is not 1-dimensional.
  Geometry chain = ex1_geometry(false);
  chain.diaphragms[0].chain = {{"c", 1}};
  CHECK(code_of([&] { CycleCalculus(in.s, in.lam, in.k, chain, Coefficients::rationals()); }) ==
        ErrorCode::MismatchedDatum);
  Geometry spines = ex1_geometry(false);
  spines.spines.push_back({"eta2", 1});
  CHECK(code_of([&] { CycleCalculus(in.s, in.lam, in.k, spines, Coefficients::rationals()); }) ==
        ErrorCode::MismatchedDatum);
}

TEST_CASE("expression parser") {
  Input in = ex1();
  CycleCalculus cc(in.s, in.lam, in.k, ex1_geometry(), Coefficients::rationals());
  auto x = cc.parse("dia:L:e1");
  CHECK(x.diaphragms.count({"L", E1}) == 1);
  auto y = cc.parse("2*face:4 + -face:7 + spine:eta:e12 + 1/2*diaphragm:L':e{1,2}");
  CHECK(y.faces == faces(in.s, {{4, 2}, {7, -1}}));
  CHECK(y.spines.at({"eta", E12}) == 1);
  CHECK(y.diaphragms.at({"L'", E12}) == Rational(1, 2));
  for (const char* bad : {"", "face:99", "spine:eta:e3", "dia:L", "x*face:1", "blob:1", "dia:L:ex"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(cc.parse(bad), TorusError);
  }
  CHECK(cc.render(y) == "2·[X_4] - [X_7] + spi_{eta,e12} + 1/2·dia_{L',e12}");
}

TEST_CASE("intersection number survives reorientation") {
  Input in = ex1();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> o(in.s.size());
    for (auto& v : o) v = (rng() & 1) ? 1 : -1;
    o[in.s.bottom()] = 1;
    SimplicialPoset t = in.s.reoriented(o);
    CharacteristicMatrix lt(t, in.lam.rows());
    CornerComplex kt = in.k.reoriented(t);
    CycleCalculus cc(t, lt, kt, ex1_geometry(false), Coefficients::rationals());
    auto lr = cc.intersect(cc.diaphragm("L", E1), cc.diaphragm("L", E2));
    CHECK(abs(cc.point_coefficient(lr)) == 9);
    CHECK(abs(cc.point_coefficient(cc.intersect(cc.spine("eta", 0), cc.diaphragm("L", E12)))) == 1);
  }
}
