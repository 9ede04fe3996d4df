#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "picgen/curve.hpp"

using namespace picgen;

namespace {
ModelPtr e_f5() {  // y^2 = x^3 + x over F_5
  auto f5 = make_field(5, 1);
  return HyperellipticModel::validate(
      f5, 1, Polynomial::from_ints(f5.get(), {0, 1, 0, 1}),
      Polynomial::zero(f5.get()));
}
ModelPtr e_f2() {  // y^2 + xy = x^3 + x^2 + 1 over F_2
  auto f2 = make_field(2, 1);
  return HyperellipticModel::validate(
      f2, 1, Polynomial::from_ints(f2.get(), {1, 0, 1, 1}),
      Polynomial::from_ints(f2.get(), {0, 1}));
}
}  // namespace

TEST_CASE("validate accepts the reference curves", "[curve]") {
  auto m1 = e_f5();
  CHECK(m1->genus() == 1);
  CHECK_FALSE(m1->exceptional());

  auto m2 = e_f2();
  CHECK(m2->exceptional());

  // genus-2 odd characteristic
  auto f5 = make_field(5, 1);
  REQUIRE_NOTHROW(HyperellipticModel::validate(
      f5, 2, Polynomial::from_ints(f5.get(), {1, 1, 0, 0, 0, 1}),
      Polynomial::zero(f5.get())));
}

TEST_CASE("validate rejects with clause names", "[curve]") {
  auto f5 = make_field(5, 1);
  auto f2 = make_field(2, 1);

  auto expect_clause = [](auto fn, const std::string& clause) {
    try {
      fn();
      FAIL("expected validation_error " << clause);
    } catch (const validation_error& e) {
      CHECK(e.clause() == clause);
    }
  };

  // x^3 is not separable
  expect_clause([&] {
    HyperellipticModel::validate(f5, 1,
                                 Polynomial::from_ints(f5.get(), {0, 0, 0, 1}),
                                 Polynomial::zero(f5.get()));
  }, "f-separable");

  // wrong degree for the genus
  expect_clause([&] {
    HyperellipticModel::validate(f5, 2,
                                 Polynomial::from_ints(f5.get(), {0, 1, 0, 1}),
                                 Polynomial::zero(f5.get()));
  }, "degree-f");

  // nonzero h in odd characteristic
  expect_clause([&] {
    HyperellipticModel::validate(f5, 1,
                                 Polynomial::from_ints(f5.get(), {0, 1, 0, 1}),
                                 Polynomial::from_ints(f5.get(), {1}));
  }, "h-zero");

  // h = 0 in characteristic 2
  expect_clause([&] {
    HyperellipticModel::validate(f2, 1,
                                 Polynomial::from_ints(f2.get(), {1, 0, 1, 1}),
                                 Polynomial::zero(f2.get()));
  }, "h-nonzero");

  // deg f = 2g+2 in odd characteristic: infinity splits or is inert
  expect_clause([&] {
    HyperellipticModel::validate(f5, 1,
                                 Polynomial::from_ints(f5.get(), {1, 1, 0, 0, 1}),
                                 Polynomial::zero(f5.get()));
  }, "ramified-infinity");

  // constant h in characteristic 2: not ramified at infinity
  expect_clause([&] {
    HyperellipticModel::validate(f2, 1,
                                 Polynomial::from_ints(f2.get(), {1, 1, 0, 1}),
                                 Polynomial::from_ints(f2.get(), {1}));
  }, "ramified-infinity");

  // h and h'^2 f + f'^2 share a root: singular affine model
  // h = x, f = x^3: h' = 1, f' = x^2, so h'^2 f + f'^2 = x^3 + x^4, sharing x
  expect_clause([&] {
    HyperellipticModel::validate(f2, 1,
                                 Polynomial::from_ints(f2.get(), {0, 0, 0, 1}),
                                 Polynomial::from_ints(f2.get(), {0, 1}));
  }, "h-coprime");

  CHECK(true);
}

TEST_CASE("the paper's char-2 elliptic example validates clause by clause", "[curve]") {
  // y^2 + xy = x^3 + x^2 + 1 over F_2: deg h = 1 = g, gcd(x, f + x^4) = 1,
  // (h_2, h_1^2 f_4 + f_3^2) = (0, 1)
  auto m = e_f2();
  CHECK(m->h().degree() == m->genus());
  auto inv = char2_invariants(*m);
  CHECK(inv.d0 == m->field()->one());   // f_2 = 1, f_4 = 0
  CHECK(inv.d1 == m->field()->one());   // f_3 = 1
  CHECK(inv.h_g == m->field()->one());
  CHECK(inv.epsilon == -1);             // tr_{F_2}(1) = 1
}

TEST_CASE("count_points", "[curve]") {
  CHECK(count_points(*e_f5(), 1) == 4);  // (0,0),(2,0),(3,0) and infinity
  CHECK(count_points(*e_f2(), 1) == 2);  // (0,1) and infinity

  // Hasse-Weil across extensions for both curves
  for (const auto& m : {e_f5(), e_f2()}) {
    for (int j = 1; j <= 4; ++j) {
      double qj = std::pow(static_cast<double>(m->field()->q()), j);
      auto n = count_points(*m, j);
      CHECK(std::abs(static_cast<double>(n) - qj - 1.0) <=
            2.0 * m->genus() * std::sqrt(qj) + 1e-9);
    }
  }
  REQUIRE_THROWS_AS(count_points(*e_f5(), 12), resource_error);
}

TEST_CASE("points_with_x_in", "[curve]") {
  auto m = e_f5();
  auto k = m->field();
  CHECK(points_with_x_in(*m, {}).empty());

  auto pts = points_with_x_in(*m, {k->from_int(0), k->from_int(1)});
  REQUIRE(pts.size() == 1);  // x=1 gives the nonresidue 2
  CHECK(pts[0].x == k->zero());
  CHECK(pts[0].y == k->zero());

  auto m2 = e_f2();
  auto k2 = m2->field();
  auto pts2 = points_with_x_in(*m2, {k2->from_int(0), k2->from_int(1)});
  REQUIRE(pts2.size() == 1);  // x=1: z^2+z=1 has trace 1, unsolvable
  CHECK(pts2[0].x == k2->zero());
  CHECK(pts2[0].y == k2->one());

  // full-field enumeration plus infinity matches count_points; every point is
  // on the curve and the involution permutes the list
  for (const auto& m3 : {e_f5(), e_f2()}) {
    std::vector<FieldElement> all;
    for (std::uint64_t c = 0; c < m3->field()->q(); ++c)
      all.push_back(m3->field()->from_encoding(c));
    auto pts3 = points_with_x_in(*m3, all);
    CHECK(pts3.size() + 1 == count_points(*m3, 1));
    for (const auto& pt : pts3) {
      CHECK(m3->on_curve(pt));
      auto conj = involution(*m3, pt);
      CHECK(m3->on_curve(conj));
      CHECK(involution(*m3, conj) == pt);
      CHECK(std::count(pts3.begin(), pts3.end(), conj) == 1);
    }
  }
}

TEST_CASE("tv", "[curve]") {
  auto f5 = make_field(5, 1);
  // tv(x - a) = a
  for (int a = 0; a < 5; ++a) {
    auto u = Polynomial::from_ints(f5.get(), {-a, 1});
    CHECK(tv(u) == f5->from_int(a));
  }
  // char 2: tv(x^2 + x + 1) = 1
  auto f2 = make_field(2, 1);
  CHECK(tv(Polynomial::from_ints(f2.get(), {1, 1, 1})) == f2->one());
  // additive over products (Vieta)
  auto u1 = Polynomial::from_ints(f5.get(), {-2, 1});
  auto u2 = Polynomial::from_ints(f5.get(), {-4, 1});
  CHECK(tv(u1 * u2) == tv(u1) + tv(u2));
  REQUIRE_THROWS_AS(tv(Polynomial::from_ints(f5.get(), {0, 2})), input_error);
  REQUIRE_THROWS_AS(tv(Polynomial::constant(f5->one())), input_error);
}

TEST_CASE("involution fixed points", "[curve]") {
  auto m = e_f5();
  auto k = m->field();
  AffinePoint w{k->zero(), k->zero()};
  CHECK(involution(*m, w) == w);  // Weierstrass point

  auto m2 = e_f2();
  AffinePoint p{m2->field()->zero(), m2->field()->one()};
  CHECK(involution(*m2, p) == p);  // x = 0 kills h = x
}

TEST_CASE("char2_invariants and H_C", "[curve]") {
  auto m = e_f2();
  auto inv = char2_invariants(*m);

  // epsilon = -1 means 0 is in H_C
  CHECK(inv.epsilon == -1);
  CHECK(in_H_C(inv, m->field()->zero()));

  // the same curve over F_4 has trace(1) = 0, so epsilon flips to +1
  auto f4 = make_field(2, 2);
  auto emb = make_embedding(m->field(), f4);
  auto m4 = base_change(*m, emb);
  auto inv4 = char2_invariants(*m4);
  CHECK(inv4.epsilon == 1);
  CHECK_FALSE(in_H_C(inv4, f4->zero()));

  // H_C is a coset of an index-2 subgroup: exactly q/2 members (q <= 64)
  for (const auto& mm : {m4, base_change(*m, make_embedding(m->field(), make_field(2, 3))),
                         base_change(*m, make_embedding(m->field(), make_field(2, 6)))}) {
    auto cinv = char2_invariants(*mm);
    std::uint64_t members = 0;
    for (std::uint64_t c = 0; c < mm->field()->q(); ++c)
      if (in_H_C(cinv, mm->field()->from_encoding(c))) ++members;
    CHECK(members == mm->field()->q() / 2);
  }

  // d_i = f_{2g+i} when f_{2g+2} = 0
  CHECK(inv.d0 == m->f().coeff(2));
  CHECK(inv.d1 == m->f().coeff(3));

  REQUIRE_THROWS_AS(char2_invariants(*e_f5()), input_error);
}

TEST_CASE("base_change", "[curve]") {
  auto m = e_f5();
  auto id = make_embedding(m->field(), m->field());
  CHECK(*base_change(*m, id) == *m);

  auto f25 = make_field(5, 2);
  auto m25 = base_change(*m, make_embedding(m->field(), f25));
  CHECK(m25->genus() == 1);
  CHECK(count_points(*m25, 1) == count_points(*m, 2));

  REQUIRE_THROWS_AS(base_change(*m, make_embedding(f25, make_field(5, 4))),
                    input_error);
}

TEST_CASE("working_f normalization in characteristic 2", "[curve]") {
  // deg f = 2g+2 model: y^2 + x^2 y = x^6 + x + 1 over F_2, g = 2
  auto f2 = make_field(2, 1);
  auto m = HyperellipticModel::validate(
      f2, 2, Polynomial::from_ints(f2.get(), {1, 1, 0, 0, 0, 0, 1}),
      Polynomial::from_ints(f2.get(), {0, 0, 1}));
  CHECK(m->needs_shift());
  CHECK(m->working_f().degree() == 2 * m->genus() + 1);
  // the shifted equation holds: for every affine point, y' = y + s x^{g+1}
  // satisfies y'^2 + h y' = f_work
  std::vector<FieldElement> all;
  for (std::uint64_t c = 0; c < 2; ++c) all.push_back(f2->from_encoding(c));
  for (const auto& pt : points_with_x_in(*m, all)) {
    FieldElement xg1 = pt.x.pow(static_cast<std::uint64_t>(m->genus() + 1));
    FieldElement yp = pt.y + m->y_shift() * xg1;
    CHECK(yp * yp + m->h().eval(pt.x) * yp == m->working_f().eval(pt.x));
  }
  // models of degree 2g+1 need no shift
  CHECK_FALSE(e_f2()->needs_shift());
}
