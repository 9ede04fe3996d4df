#include <catch2/catch_amalgamated.hpp>

#include "picgen/generator.hpp"

using namespace picgen;

namespace {
ModelPtr e_f5() {
  auto f5 = make_field(5, 1);
  return HyperellipticModel::validate(
      f5, 1, Polynomial::from_ints(f5.get(), {0, 1, 0, 1}),
      Polynomial::zero(f5.get()));
}
ModelPtr e_f2() {
  auto f2 = make_field(2, 1);
  return HyperellipticModel::validate(
      f2, 1, Polynomial::from_ints(f2.get(), {1, 0, 1, 1}),
      Polynomial::from_ints(f2.get(), {0, 1}));
}
ModelPtr e_f4() {  // same equation read over F_4; epsilon flips to +1
  auto f4 = make_field(2, 2);
  return HyperellipticModel::validate(
      f4, 1, Polynomial::from_ints(f4.get(), {1, 0, 1, 1}),
      Polynomial::from_ints(f4.get(), {0, 1}));
}
}  // namespace

TEST_CASE("plan reproduces the worked parameter sets", "[generator]") {
  // g=1, q=3
  auto p13 = plan_params(1, 3, 1, false);
  CHECK(p13.t == 2704);
  CHECK(p13.i == 8);
  CHECK(p13.q_to_i == 6561);
  CHECK(p13.r == 972);
  CHECK(p13.interval_size == 1458);  // 2 * 3^6
  CHECK(p13.interval_c == 2);
  CHECK(p13.interval_j == 6);

  // g=1, q=2 (exceptional flag set)
  auto p12 = plan_params(1, 2, 1, true);
  CHECK(p12.t == 2704);
  CHECK(p12.i == 12);
  CHECK(p12.q_to_i == 4096);
  CHECK(p12.r == 768);
  CHECK(p12.interval_size == 1024);  // 2^10
  CHECK(p12.in_H_C);

  // g=2, q=3
  auto p23 = plan_params(2, 3, 1, false);
  CHECK(p23.t == 7056);
  CHECK(p23.i == 9);
  CHECK(p23.r == 2806);
  CHECK(p23.interval_size == 4374);  // 2 * 3^7

  // determinism
  auto again = plan_params(2, 3, 1, false);
  CHECK(again.interval_size == p23.interval_size);
  CHECK(again.r == p23.r);
}

TEST_CASE("plan invariant chains hold over the (g, q) sweep", "[generator]") {
  const std::pair<std::int64_t, int> qs[] = {
      {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1},
      {13, 1}, {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1},
      {31, 1}, {2, 5}};
  for (int g = 1; g <= 5; ++g)
    for (auto [p, n] : qs) {
      auto pr = plan_params(g, p, n, false);
      CHECK(pr.s == (p == 2 ? 2 : 3));
      std::int64_t base = 16 * (2 * g + 1) + 4;
      CHECK(pr.t == base * base);
      CHECK(static_cast<std::uint64_t>(pr.t) <= pr.q_to_i);
      CHECK(static_cast<unsigned __int128>(pr.q_to_i) <
            static_cast<unsigned __int128>(pr.t) * pr.q);
      // r is the exact ceiling of 4(2g+1) q^{i/2}
      unsigned __int128 rr = static_cast<unsigned __int128>(pr.r) * pr.r;
      unsigned __int128 target = static_cast<unsigned __int128>(16) *
                                 (2 * g + 1) * (2 * g + 1) * pr.q_to_i;
      CHECK(rr >= target);
      if (pr.r > 0) {
        unsigned __int128 below = static_cast<unsigned __int128>(pr.r - 1) * (pr.r - 1);
        CHECK(below < target);
      }
      CHECK(pr.r <= pr.interval_size);
      CHECK(pr.interval_size <= 2 * pr.r);
      CHECK(4 * pr.r <= pr.q_to_i);
      CHECK(pr.interval_c >= 1);
      CHECK(pr.interval_c <= p - 1);
    }
}

TEST_CASE("end-to-end generation on the Klein curve", "[generator]") {
  auto m = e_f5();
  auto pl = plan(*m);
  CHECK(pl.i == 5);  // 5^5 = 3125 in [2704, 13520)
  CHECK(pl.q_to_i == 3125);

  auto report = generate(m);
  REQUIRE_FALSE(report.plan_only);
  CHECK(report.points_found > 0);
  CHECK(report.sqrt_calls <= 2 * report.params.r);

  auto table = enumerate_picard(m);
  std::vector<std::size_t> gens;
  for (const auto& d : report.generators) gens.push_back(table.index_of(d));
  CHECK(closure_indices(table, gens).size() == table.elements.size());
}

TEST_CASE("end-to-end generation in the exceptional case", "[generator]") {
  // E/F_2: the run interval must live inside H_C of F_{2^12}
  auto m = e_f2();
  auto report = generate(m);
  REQUIRE_FALSE(report.plan_only);
  CHECK(report.params.in_H_C);
  CHECK(report.artin_schreier_calls >= report.params.interval_size);

  auto table = enumerate_picard(m);
  std::vector<std::size_t> gens;
  for (const auto& d : report.generators) gens.push_back(table.index_of(d));
  CHECK(closure_indices(table, gens).size() == 2);  // the full group, not ker psi

  // over F_4 the base epsilon flips sign; the pipeline still generates all
  auto m4 = e_f4();
  auto rep4 = generate(m4);
  REQUIRE_FALSE(rep4.plan_only);
  auto t4 = enumerate_picard(m4);
  std::vector<std::size_t> g4;
  for (const auto& d : rep4.generators) g4.push_back(t4.index_of(d));
  CHECK(closure_indices(t4, g4).size() == t4.elements.size());
}

TEST_CASE("generate honors the desk guard", "[generator]") {
  auto m = e_f5();
  auto report = generate(m, /*guard=*/100);
  CHECK(report.plan_only);
  CHECK(report.generators.empty());
  CHECK(report.params.q_to_i == 3125);
}

TEST_CASE("check_generation on cosets and intervals", "[generator]") {
  auto m = e_f5();
  auto table = enumerate_picard(m);
  const FiniteField& k = *m->field();

  // the full field is a coset; hypothesis holds and the conclusion follows
  std::vector<FieldElement> full;
  for (std::uint64_t c = 0; c < k.q(); ++c) full.push_back(k.from_encoding(c));
  auto chk = check_generation(table, full, SubsetMode::coset);
  CHECK(chk.shape_bound == 1.0);
  CHECK(chk.hypothesis_main);
  CHECK(chk.generated_full);
  CHECK(chk.conclusion_holds);

  // a singleton: tiny subset, hypothesis fails, nothing is claimed
  auto chk1 = check_generation(table, {k.from_int(1)}, SubsetMode::coset);
  CHECK_FALSE(chk1.hypothesis_main);
  CHECK(chk1.conclusion_holds);

  REQUIRE_THROWS_AS(check_generation(table, {}, SubsetMode::coset), input_error);
}

TEST_CASE("check_generation in the exceptional case", "[generator]") {
  auto m = e_f2();
  auto table = enumerate_picard(m);
  const FiniteField& k = *m->field();

  // S = {0} = H_C here (epsilon = -1, tr(x) = 0 iff x = 0 over F_2)
  auto chk = check_generation(table, {k.zero()}, SubsetMode::coset);
  CHECK(chk.exceptional);
  CHECK(chk.meets_H_C);
  CHECK(chk.conclusion_holds);

  // S = {1} misses H_C; phi(C_S) is empty, so the closure is trivial = ker psi
  auto chk2 = check_generation(table, {k.one()}, SubsetMode::coset);
  CHECK_FALSE(chk2.meets_H_C);
  CHECK(chk2.generated_kernel);
  CHECK(chk2.conclusion_holds);

  // S = k generates everything
  auto chk3 = check_generation(table, {k.zero(), k.one()}, SubsetMode::coset);
  CHECK(chk3.generated_full);
  CHECK(chk3.conclusion_holds);
}

TEST_CASE("char_sum_table bounds", "[generator]") {
  auto m = e_f5();
  auto table = enumerate_picard(m);
  auto cs = char_sum_table(table);
  REQUIRE(cs.rows.size() == 5 * 4);
  CHECK_FALSE(cs.exceptional);
  CHECK(cs.max_exact_error <= 1e-9);
  CHECK(cs.max_bound_violation <= 1e-6);
  for (const auto& row : cs.rows) {
    if (row.lambda_code == 0 && row.chi_code == 0) {
      CHECK(std::abs(row.value - std::complex<double>(3.0)) < 1e-9);
    } else if (row.lambda_code == 0) {
      // g = 1: the bound (2g-2) sqrt(q) vanishes, so the value is exactly -1
      CHECK(std::abs(row.value - std::complex<double>(-1.0)) < 1e-9);
    } else {
      CHECK(std::abs(row.value) <= 3.0 * std::sqrt(5.0) + 1e-6);
    }
  }
}

TEST_CASE("char_sum_table exceptional twist", "[generator]") {
  for (auto m : {e_f2(), e_f4()}) {
    auto table = enumerate_picard(m);
    auto cs = char_sum_table(table);
    CHECK(cs.exceptional);
    CHECK(cs.max_exact_error <= 1e-9);
    CHECK(cs.max_bound_violation <= 1e-6);
    CHECK(cs.max_twist_error <= 1e-6);
    // the (lambda_2, chi_2) row equals epsilon (#C - 1)
    double expected = static_cast<double>(cs.epsilon) *
                      (static_cast<double>(count_points(*m, 1)) - 1.0);
    bool found = false;
    for (const auto& row : cs.rows)
      if (row.lambda_code == cs.lambda2_code && row.chi_code == cs.chi2_code) {
        CHECK(std::abs(row.value - std::complex<double>(expected)) < 1e-9);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("subset families", "[generator]") {
  auto f9 = make_field(3, 2);
  auto cosets = all_cosets(*f9);
  // subgroups of F_9^+: {0}, four lines, the plane -> 9 + 4*3 + 1 cosets
  CHECK(cosets.size() == 22);
  for (const auto& inst : cosets) {
    auto ag = additive_group(*f9);
    CHECK(is_coset(to_additive_subset(ag, inst.elements)));
  }

  auto ivals = interval_family(*f9, 50);
  CHECK(ivals.size() >= 50);

  auto f13 = make_field(13, 1);
  CHECK(interval_family(*f13, 50).size() >= 50);

  // tiny fields cannot reach 50 distinct intervals; the family is exhaustive
  auto f2 = make_field(2, 1);
  auto tiny = interval_family(*f2, 50);
  CHECK(tiny.size() == 3);  // {0}, {1}, {0,1}
}
