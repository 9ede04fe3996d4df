#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "picgen/jacobian.hpp"

using namespace picgen;

namespace {
ModelPtr e_f5() {  // y^2 = x^3 + x over F_5, Pic = Z/2 x Z/2
  auto f5 = make_field(5, 1);
  return HyperellipticModel::validate(
      f5, 1, Polynomial::from_ints(f5.get(), {0, 1, 0, 1}),
      Polynomial::zero(f5.get()));
}
ModelPtr e_f2() {  // y^2 + xy = x^3 + x^2 + 1 over F_2, Pic = Z/2
  auto f2 = make_field(2, 1);
  return HyperellipticModel::validate(
      f2, 1, Polynomial::from_ints(f2.get(), {1, 0, 1, 1}),
      Polynomial::from_ints(f2.get(), {0, 1}));
}
ModelPtr g2_f3() {  // y^2 = x^5 + 2x + 1 over F_3
  auto f3 = make_field(3, 1);
  return HyperellipticModel::validate(
      f3, 2, Polynomial::from_ints(f3.get(), {1, 2, 0, 0, 0, 1}),
      Polynomial::zero(f3.get()));
}
ModelPtr g2_f2_shift() {  // y^2 + x^2 y = x^6 + x + 1 over F_2 (deg f = 2g+2)
  auto f2 = make_field(2, 1);
  return HyperellipticModel::validate(
      f2, 2, Polynomial::from_ints(f2.get(), {1, 1, 0, 0, 0, 0, 1}),
      Polynomial::from_ints(f2.get(), {0, 0, 1}));
}

MumfordDivisor wpoint(const ModelPtr& m, std::int64_t xroot) {
  const FiniteField* k = m->field().get();
  return MumfordDivisor(m, Polynomial::from_ints(k, {-xroot, 1}),
                        Polynomial::zero(k));
}
}  // namespace

TEST_CASE("identity and 2-torsion arithmetic on the Klein curve", "[jacobian]") {
  auto m = e_f5();
  auto id = MumfordDivisor::identity(m);
  CHECK(add(id, id) == id);
  CHECK(id.u().degree() == 0);

  auto d0 = wpoint(m, 0), d2 = wpoint(m, 2), d3 = wpoint(m, 3);
  CHECK(add(d0, d0) == id);
  CHECK(add(d0, d2) == d3);  // Klein group: two nontrivial classes sum to the third
  CHECK(add(d2, d3) == d0);
  CHECK(add(d0, id) == d0);
  CHECK(scalar_mul(d2, 2) == id);
  CHECK(scalar_mul(d2, 0) == id);
  CHECK(scalar_mul(d2, 1) == d2);
  CHECK(neg(id) == id);
  CHECK(neg(d2) == d2);
}

TEST_CASE("neg", "[jacobian]") {
  auto m = e_f5();
  auto k = m->field();
  // odd characteristic: neg((x - a, y0)) = (x - a, -y0)
  auto pts = points_with_x_in(*m, {k->from_int(0), k->from_int(2)});
  for (const auto& p : pts) {
    auto d = phi(m, p);
    auto nd = neg(d);
    CHECK(nd.v() == Polynomial(k.get(), {-p.y}));
    CHECK(add(d, nd) == MumfordDivisor::identity(m));
  }
  // char 2, h = x: (x, 1) is its own inverse
  auto m2 = e_f2();
  auto d = phi(m2, AffinePoint{m2->field()->zero(), m2->field()->one()});
  CHECK(neg(d) == d);
  CHECK(add(d, d) == MumfordDivisor::identity(m2));
}

TEST_CASE("phi", "[jacobian]") {
  auto m = e_f5();
  auto k = m->field();
  auto d = phi(m, AffinePoint{k->zero(), k->zero()});
  CHECK(d.u() == Polynomial::from_ints(k.get(), {0, 1}));
  CHECK(d.v().is_zero());

  auto m2 = e_f2();
  auto d2 = phi(m2, AffinePoint{m2->field()->zero(), m2->field()->one()});
  CHECK(d2.u() == Polynomial::from_ints(m2->field().get(), {0, 1}));
  CHECK(d2.v() == Polynomial::constant(m2->field()->one()));

  REQUIRE_THROWS_AS(phi(m, AffinePoint{k->one(), k->one()}), input_error);
}

TEST_CASE("group_order_via_zeta", "[jacobian]") {
  CHECK(group_order_via_zeta(*e_f5()) == 4);  // 1 + a + q with a = -2
  CHECK(group_order_via_zeta(*e_f2()) == 2);
}

TEST_CASE("enumerate_picard small curves", "[jacobian]") {
  auto t5 = enumerate_picard(e_f5());
  REQUIRE(t5.elements.size() == 4);
  CHECK(t5.structure.group->invariant_factors() ==
        std::vector<std::int64_t>{2, 2});
  // the elements are exactly {1, (x,0), (x-2,0), (x-3,0)}
  std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> keys;
  for (const auto& d : t5.elements) keys.insert(d.key());
  CHECK(keys.size() == 4);
  CHECK(keys.count({{0, 1}, {}}) == 1);             // (x, 0)
  CHECK(keys.count({{3, 1}, {}}) == 1);             // (x-2, 0)
  CHECK(keys.count({{2, 1}, {}}) == 1);             // (x-3, 0)

  auto t2 = enumerate_picard(e_f2());
  CHECK(t2.elements.size() == 2);
  CHECK(t2.structure.group->invariant_factors() == std::vector<std::int64_t>{2});

  // genus 2: enumeration count equals the zeta value (cross-check of two
  // independent computations happens inside enumerate_picard); group laws hold
  auto t32 = enumerate_picard(g2_f3());
  CHECK(t32.elements.size() == group_order_via_zeta(*g2_f3()));

  // uniqueness of reduced representatives
  std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> k32;
  for (const auto& d : t32.elements) k32.insert(d.key());
  CHECK(k32.size() == t32.elements.size());
}

TEST_CASE("group axioms on oracle tables", "[jacobian]") {
  for (const auto& model : {e_f5(), e_f2(), g2_f3(), g2_f2_shift()}) {
    auto table = enumerate_picard(model);
    const std::size_t n = table.elements.size();
    auto idx_add = [&](std::size_t a, std::size_t b) {
      return table.index_of(add(table.elements[a], table.elements[b]));
    };
    std::size_t id = table.identity_index;
    // identity and inverses
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(idx_add(a, id) == a);
      CHECK(idx_add(a, table.index_of(neg(table.elements[a]))) == id);
    }
    if (n <= 50) {
      // associativity on all triples, with cached pair sums
      std::vector<std::vector<std::size_t>> sums(n, std::vector<std::size_t>(n));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sums[a][b] = idx_add(a, b);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          bool row_ok = true;
          for (std::size_t c = 0; c < n; ++c)
            row_ok = row_ok && sums[sums[a][b]][c] == sums[a][sums[b][c]];
          CHECK(row_ok);
        }
    }
    // the recovered structure matches Cantor addition
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < std::min(n, a + 7); ++b)
        CHECK(table.add_indices(a, b) == idx_add(a, b));
  }
}

TEST_CASE("phi pairs with the involution", "[jacobian]") {
  for (const auto& model : {e_f5(), e_f2(), g2_f3(), g2_f2_shift()}) {
    std::vector<FieldElement> xs;
    for (std::uint64_t c = 0; c < model->field()->q(); ++c)
      xs.push_back(model->field()->from_encoding(c));
    for (const auto& p : points_with_x_in(*model, xs)) {
      auto d = phi(model, p);
      auto dbar = phi(model, involution(*model, p));
      CHECK(add(d, dbar) == MumfordDivisor::identity(model));
    }
  }
}

TEST_CASE("psi is a surjective homomorphism with kernel of index 2", "[jacobian]") {
  auto m = e_f2();
  auto table = enumerate_picard(m);
  CHECK(psi(MumfordDivisor::identity(m)) == 0);

  auto d = phi(m, AffinePoint{m->field()->zero(), m->field()->one()});
  CHECK(psi(d) == 1);  // tr(0*d1 + 1*d0) = tr(1) = 1

  for (const auto& model : {e_f2(), g2_f2_shift()}) {
    if (!model->exceptional()) continue;
    auto t = enumerate_picard(model);
    std::size_t zero_count = 0, one_count = 0;
    for (const auto& el : t.elements) (psi(el) == 0 ? zero_count : one_count)++;
    CHECK(zero_count == one_count);  // kernel has index exactly 2
    CHECK(one_count > 0);            // surjective
    for (std::size_t a = 0; a < t.elements.size(); ++a)
      for (std::size_t b = a; b < t.elements.size(); ++b) {
        int lhs = psi(add(t.elements[a], t.elements[b]));
        CHECK(lhs == (psi(t.elements[a]) ^ psi(t.elements[b])));
      }
  }
  REQUIRE_THROWS_AS(psi(MumfordDivisor::identity(e_f5())), input_error);
}

TEST_CASE("from_orbit", "[jacobian]") {
  auto m = e_f5();
  auto k = m->field();
  auto k25 = make_field(5, 2);
  auto emb = make_embedding(k, k25);
  auto m25 = base_change(*m, emb);

  // (a) k-rational point: result is i * phi(P)
  AffinePoint p0{k->zero(), k->zero()};
  AffinePoint p0e{emb.apply(p0.x), emb.apply(p0.y)};
  CHECK(from_orbit(m, m25, p0e, emb) == scalar_mul(phi(m, p0), 2));

  // (b) x in k, y not in k: conjugate pair, the class is principal
  // x = 1: f(1) = 2 is a nonresidue mod 5, so y lives in F_25
  auto pts1 = points_with_x_in(*m25, {emb.apply(k->one())});
  REQUIRE(pts1.size() == 2);
  CHECK(from_orbit(m, m25, pts1[0], emb) == MumfordDivisor::identity(m));

  // (c) full-orbit sweep: every norm lands in the oracle table, and the norms
  // generate Pic^0_k (surjectivity of the norm at desk scale)
  auto table = enumerate_picard(m);
  std::vector<FieldElement> all25;
  for (std::uint64_t c = 0; c < k25->q(); ++c)
    all25.push_back(k25->from_encoding(c));
  std::vector<std::size_t> gen_idx;
  for (const auto& p : points_with_x_in(*m25, all25)) {
    auto d = from_orbit(m, m25, p, emb);
    std::size_t idx = table.index_of(d);  // throws if not a valid table class
    if (idx != table.identity_index) gen_idx.push_back(idx);
  }
  auto closure = closure_indices(table, gen_idx);
  CHECK(closure.size() == table.elements.size());

  // the same sweep on the exceptional char-2 curve into F_4
  auto m2 = e_f2();
  auto f4 = make_field(2, 2);
  auto emb2 = make_embedding(m2->field(), f4);
  auto m2e = base_change(*m2, emb2);
  auto table2 = enumerate_picard(m2);
  std::vector<FieldElement> all4;
  for (std::uint64_t c = 0; c < 4; ++c) all4.push_back(f4->from_encoding(c));
  std::vector<std::size_t> gens2;
  for (const auto& p : points_with_x_in(*m2e, all4)) {
    auto d = from_orbit(m2, m2e, p, emb2);
    gens2.push_back(table2.index_of(d));
  }
  CHECK(closure_indices(table2, gens2).size() == 2);

  // errors: a point that is not on the base-changed curve
  REQUIRE_THROWS_AS(from_orbit(m, m25, AffinePoint{k25->one(), k25->one()}, emb),
                    input_error);
}

TEST_CASE("from_orbit with a genuine degree-2 orbit", "[jacobian]") {
  auto m = e_f5();
  auto k = m->field();
  auto k25 = make_field(5, 2);
  auto emb = make_embedding(k, k25);
  auto m25 = base_change(*m, emb);
  auto table = enumerate_picard(m);

  // find a point whose x-coordinate is not in k: its orbit has size 2 with
  // distinct x-coordinates, exercising interpolation + retraction + reduction
  bool found = false;
  for (std::uint64_t c = 0; c < k25->q() && !found; ++c) {
    FieldElement x = k25->from_encoding(c);
    if (emb.retract(x).has_value()) continue;
    auto pts = points_with_x_in(*m25, {x});
    if (pts.empty()) continue;
    auto d = from_orbit(m, m25, pts[0], emb);
    // membership in the oracle; the class times the group exponent vanishes
    std::size_t idx = table.index_of(d);
    (void)idx;
    CHECK(scalar_mul(d, 2) == MumfordDivisor::identity(m));  // exponent of [2,2]
    found = true;
  }
  CHECK(found);
}

TEST_CASE("from_orbit agrees with extension-field Cantor addition", "[jacobian]") {
  // Independent route for full orbits: add the phi classes of the conjugates
  // inside Pic over k' with Cantor's algorithm, then retract the reduced pair
  // (reduction commutes with base change, so the coefficients land in k).
  // This is orientation-sensitive on groups with elements of order > 2.
  auto f7 = make_field(7, 1);
  auto m = HyperellipticModel::validate(
      f7, 1, Polynomial::from_ints(f7.get(), {1, 1, 0, 1}),
      Polynomial::zero(f7.get()));
  auto k49 = make_field(7, 2);
  auto emb = make_embedding(f7, k49);
  auto m49 = base_change(*m, emb);
  auto table = enumerate_picard(m);
  REQUIRE(table.elements.size() == 5);  // cyclic of order 5: orientation matters

  // k-rational non-Weierstrass point: norm = 2 * phi(P) exactly
  std::vector<FieldElement> xs7;
  for (std::uint64_t c = 0; c < 7; ++c) xs7.push_back(f7->from_encoding(c));
  int rational_checked = 0;
  for (const auto& p : points_with_x_in(*m, xs7)) {
    if (p.y.is_zero()) continue;
    AffinePoint pe{emb.apply(p.x), emb.apply(p.y)};
    CHECK(from_orbit(m, m49, pe, emb) == scalar_mul(phi(m, p), 2));
    ++rational_checked;
  }
  CHECK(rational_checked >= 2);

  // genuine quadratic orbits: both routes give the same reduced pair
  int orbit_checked = 0;
  for (std::uint64_t c = 0; c < k49->q() && orbit_checked < 8; ++c) {
    FieldElement x = k49->from_encoding(c);
    if (emb.retract(x).has_value()) continue;
    for (const auto& p : points_with_x_in(*m49, {x})) {
      AffinePoint conj{p.x.pow(7), p.y.pow(7)};
      auto sum49 = add(phi(m49, p), phi(m49, conj));
      auto u = sum49.u().encodings();
      auto v = sum49.v().encodings();
      // retract coefficient-wise
      std::vector<FieldElement> uk, vk;
      bool retractable = true;
      for (auto code : u) {
        auto r = emb.retract(k49->from_encoding(code));
        if (!r) { retractable = false; break; }
        uk.push_back(*r);
      }
      for (auto code : v) {
        auto r = emb.retract(k49->from_encoding(code));
        if (!r) { retractable = false; break; }
        vk.push_back(*r);
      }
      REQUIRE(retractable);
      MumfordDivisor expected(m, Polynomial(f7.get(), uk), Polynomial(f7.get(), vk));
      CHECK(from_orbit(m, m49, p, emb) == expected);
      ++orbit_checked;
    }
  }
  CHECK(orbit_checked >= 4);
}

TEST_CASE("jacobian arithmetic on the shifted char-2 genus-2 model", "[jacobian]") {
  auto m = g2_f2_shift();
  auto table = enumerate_picard(m);
  CHECK(table.elements.size() == group_order_via_zeta(*m));
  // doubling and inverses behave across the shift
  for (const auto& d : table.elements) {
    CHECK(add(d, neg(d)) == MumfordDivisor::identity(m));
    CHECK(scalar_mul(d, static_cast<std::int64_t>(table.elements.size())) ==
          MumfordDivisor::identity(m));
  }
}
