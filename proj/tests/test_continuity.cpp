#include <catch_amalgamated.hpp>

#include "qdomain/continuity.hpp"
#include "qdomain/fixtures.hpp"

using namespace qdomain;

namespace {

QDistributor order_of(const CategoryPtr& A) { return identity_distributor(A); }

}  // namespace

TEST_CASE("phi_s on V") {
  auto V = fixtures::fix_v();
  auto all = analyze(parse_class("all"), V);
  CHECK(all->phi->size() == 5);
  CHECK(all->s.members.size() == 4);
  CHECK(all->s.adjunction_ok);
  auto f = analyze(parse_class("inhabited-flat"), V);
  CHECK(f->s.members.size() == 3);
  auto r = analyze(parse_class("representable"), V);
  CHECK(r->s.members.size() == 3);
}

TEST_CASE("way-below on V is the order") {
  auto V = fixtures::fix_v();
  for (const char* id : {"inhabited-flat", "conical-ideal", "inhabited-irreducible", "representable"}) {
    INFO(id);
    auto an = analyze(parse_class(id), V);
    CHECK(an->way.matrix == order_of(V));
    CHECK(an->way.below_identity);
    CHECK(an->way.idempotent_below);
    CHECK(an->continuity.verdict);
    CHECK(an->continuity.approx_ok);
    REQUIRE(an->continuity.left_adjoint_ok);
    CHECK(*an->continuity.left_adjoint_ok);
    CHECK(an->interpolation.holds);
    CHECK(an->algebraicity.compacts == std::vector<std::size_t>{0, 1, 2});
    CHECK(an->algebraicity.sigma == order_of(V));
    CHECK(an->algebraicity.verdict);
  }
  auto an = analyze(parse_class("inhabited-flat"), V);
  auto fd = way_below_functor(an->way);
  CHECK(fd[2] == Presheaf{0, {1, 1, 1}});
  for (std::size_t a = 0; a < 3; ++a) CHECK(pointwise_leq(*V, fd[a], representable(*V, a)));
}

TEST_CASE("all presheaves on V: z is not compact") {
  // {x,y} has sup z but misses z, so z is not way below itself
  auto V = fixtures::fix_v();
  auto an = analyze(parse_class("all"), V);
  QDistributor expected = order_of(V);
  expected.at(2, 2) = 0;
  CHECK(an->way.matrix == expected);
  CHECK(an->continuity.verdict);
  CHECK(an->algebraicity.compacts == std::vector<std::size_t>{0, 1});
  CHECK(an->algebraicity.verdict);
  CHECK(an->algebraicity.s_equals_fdown);
}

TEST_CASE("one-element category") {
  auto P = poset_to_2cat(fixtures::chain_poset(1));
  auto an = analyze(parse_class("inhabited-flat"), P);
  CHECK(an->way.matrix == identity_distributor(P));
  CHECK(an->continuity.verdict);
  CHECK(an->interpolation.holds);
  CHECK(an->algebraicity.sigma == identity_distributor(P));
  auto eq = algebraic_equivalence(*an);
  CHECK(eq.verdict);
  CHECK(eq.phi_compact->size() == 1);
}

TEST_CASE("equivalence with the ideals of the compacts on V") {
  auto V = fixtures::fix_v();
  auto an = analyze(parse_class("inhabited-flat"), V);
  auto eq = algebraic_equivalence(*an);
  CHECK(eq.preconditions);
  CHECK(eq.phi_compact->size() == 3);
  CHECK(eq.gf_iso_identity);
  CHECK(eq.fg_identity);
  REQUIRE(eq.g);
  REQUIRE(eq.f);
  CHECK(compose(*eq.g, *eq.f).map == identity_functor(V).map);
  auto all = analyze(parse_class("all"), V);
  CHECK_THROWS_AS(algebraic_equivalence(*all), PreconditionFailed);
}

TEST_CASE("presheaf categories are continuous") {
  for (auto A : {fixtures::fix_v(), fixtures::antichain2()}) {
    auto pa = presheaf_category(A);
    auto an = analyze(parse_class("all"), pa.as_category);
    CHECK(an->s.members.size() == an->phi->size());
    CHECK(an->continuity.verdict);
    CHECK(*an->continuity.left_adjoint_ok);
    CHECK(an->interpolation.holds);
  }
}

TEST_CASE("phi A is algebraic with representables compact") {
  auto V = fixtures::fix_v();
  for (const char* id : {"inhabited-flat", "flat", "irreducible", "conical", "representable"}) {
    INFO(id);
    auto c = parse_class(id);
    ClassContext ctx(V);
    auto phi = phi_category(c, ctx);
    auto an = analyze(c, phi.as_category);
    CHECK(an->s.members.size() == an->phi->size());
    CHECK(an->algebraicity.verdict);
    for (auto k : phi.yoneda->map) CHECK(is_compact(an->s, an->way, k));
    auto eq = algebraic_equivalence(*an);
    CHECK(eq.verdict);
    CHECK(eq.phi_compact->size() == phi.size());
  }
}

TEST_CASE("way-below over B_G3") {
  auto A = fixtures::bg3_category();
  for (const auto& id : builtin_class_ids()) {
    INFO(id);
    auto an = analyze(parse_class(id), A);
    CHECK(an->way.below_identity);
    CHECK(an->way.idempotent_below);
    CHECK(an->algebraicity.sigma_below_way_below);
    if (an->continuity.verdict) CHECK(an->interpolation.holds);
  }
}
