#include <catch_amalgamated.hpp>

#include "qdomain/cross_validate.hpp"
#include "qdomain/fixtures.hpp"
#include "qdomain/q_power_checks.hpp"

using namespace qdomain;

TEST_CASE("standard quantales are divisible") {
  CHECK(check_divisible(fixtures::g3()).divisible);
  CHECK(check_divisible(fixtures::luk3()).divisible);
  CHECK(check_divisible(fixtures::pwr2()).divisible);
  CHECK(fixtures::pwr2().lattice().size() == 4);
  CHECK(boolean2()->num_objects() == 1);
  CHECK(boolean2()->hom(0, 0).size() == 2);
}

TEST_CASE("posets up to isomorphism") {
  // counts of unlabelled posets: 1, 1, 2, 5, 16, 63
  const std::vector<std::size_t> expected{1, 1, 2, 5, 16, 63};
  for (std::size_t n = 0; n <= 5; ++n) CHECK(posets_up_to_iso(n).size() == expected[n]);
}

TEST_CASE("poset round trip through 2-categories") {
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& p : posets_up_to_iso(n)) {
      auto A = poset_to_2cat(p);
      CHECK(cat2_to_poset(*A) == p);
      CHECK(is_skeletal(*A));
    }
  auto anti = fixtures::antichain2();
  CHECK(anti->hom(0, 1) == 0);
  CHECK(anti->hom(0, 0) == 1);
  CHECK_THROWS_AS(cat2_to_poset(*fixtures::bg3_category()), ValidationError);
}

TEST_CASE("oracle on small posets") {
  auto v = poset_oracle(fixtures::v_poset());
  CHECK(v.ideals == std::vector<std::uint32_t>{0b001, 0b010, 0b111});
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(v.wb(a, b) == fixtures::v_poset().leq(a, b));
  CHECK(v.continuous);
  CHECK(v.algebraic);
  auto d = poset_oracle(fixtures::diamond_poset());
  CHECK(d.compacts.size() == 4);
  auto one = poset_oracle(fixtures::chain_poset(1));
  CHECK(one.algebraic);
}

TEST_CASE("cross validation on every poset with at most 4 elements") {
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& p : posets_up_to_iso(n))
      for (const auto& id : cross_validation_classes()) {
        auto r = cross_validate(p, parse_class(id));
        INFO(n << " " << id);
        CHECK(r.ok());
      }
}

TEST_CASE("cross validation on named posets") {
  for (const auto& [name, p] : fixtures::named_posets())
    for (const auto& id : cross_validation_classes()) {
      INFO(name << " " << id);
      CHECK(cross_validate(p, parse_class(id)).ok());
    }
}

TEST_CASE("q_power over 2") {
  auto QA = q_power(boolean2(), 0);
  REQUIRE(QA->size() == 2);
  CHECK(underlying_preorder(*QA).rel == fixtures::chain_poset(2).rel);
  CHECK(QA->hom(0, 1) == 1);
  CHECK(QA->hom(1, 0) == 0);
  for (std::size_t f = 0; f < 2; ++f) {
    auto d = q_power_d(*QA, 0, f);
    for (auto v : d.values) CHECK(v == f);
  }
}

TEST_CASE("q_power of B_G3") {
  auto Q = fixtures::bg3();
  const Obj half = Q->object("1/2");
  auto QA = q_power(Q, half);
  CHECK(QA->size() == 1 + 2 + 2);
  auto r = check_q_power(Q, Q->object("1"));
  CHECK(r.integral);
  CHECK(r.d_adjoint_sup);
  CHECK(r.sup_is_value_at_identity);
  CHECK(r.integral_simplification);
  CHECK(r.d_identity_is_yoneda);
  CHECK(r.p_continuous);
  CHECK(r.way_below_is_d);
  CHECK(r.finite_meets);
  CHECK(r.every_d_flat);
  CHECK(r.f_continuous);
}

TEST_CASE("q_power of every object of B_PWR2") {
  auto Q = fixtures::bpwr2();
  for (Obj a = 0; a < Q->num_objects(); ++a) {
    INFO(Q->object_name(a));
    auto r = check_q_power(Q, a);
    CHECK(r.d_adjoint_sup);
    CHECK(r.sup_is_value_at_identity);
    CHECK(r.p_continuous);
    CHECK(r.every_d_flat);
    CHECK(r.f_continuous);
  }
}

TEST_CASE("a continuous G3-category that is not algebraic") {
  auto A = fixtures::g3_nonalgebraic();
  for (const char* id : {"all", "flat", "irreducible", "weakly-flat"}) {
    INFO(id);
    auto an = analyze(parse_class(id), A);
    CHECK(an->continuity.verdict);
    CHECK_FALSE(an->algebraicity.verdict);
    CHECK_FALSE(an->algebraicity.s_equals_fdown);
    CHECK(A->quantaloid().hom(0, 0).name(an->way.matrix(1, 1)) == "1/2");
    CHECK(an->algebraicity.compacts == std::vector<std::size_t>{0});
    CHECK(an->interpolation.holds);
  }
}
