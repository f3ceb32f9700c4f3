#include <catch_amalgamated.hpp>

#include <set>

#include "qdomain/fixtures.hpp"
#include "qdomain/presheaf.hpp"

using namespace qdomain;

namespace {

// Presheaves over 2 on a poset are exactly the lower sets; enumerate those directly.
std::set<std::vector<Elem>> lower_sets(const Preorder& p) {
  std::set<std::vector<Elem>> out;
  const std::size_t n = p.size();
  for (unsigned m = 0; m < (1u << n); ++m) {
    bool down = true;
    for (std::size_t a = 0; a < n && down; ++a)
      for (std::size_t b = 0; b < n && down; ++b)
        if ((m >> b & 1u) && p.leq(a, b) && !(m >> a & 1u)) down = false;
    if (!down) continue;
    std::vector<Elem> v(n);
    for (std::size_t a = 0; a < n; ++a) v[a] = m >> a & 1u;
    out.insert(v);
  }
  return out;
}

Presheaf lower(std::initializer_list<Elem> v) { return Presheaf{0, v}; }

}  // namespace

TEST_CASE("presheaves on V are its five lower sets") {
  auto V = fixtures::fix_v();
  auto ps = enumerate_presheaves(*V, 0);
  CHECK(ps.size() == 5);
  std::set<std::vector<Elem>> got;
  for (auto& p : ps) got.insert(p.values);
  CHECK(got == lower_sets(fixtures::v_poset()));
  CHECK(std::is_sorted(ps.begin(), ps.end()));
}

TEST_CASE("presheaf counts on small categories") {
  CHECK(enumerate_presheaves(*fixtures::antichain2(), 0).size() == 4);
  auto empty = validate_category({boolean2(), {}, {}, {}});
  CHECK(enumerate_presheaves(*empty, 0).size() == 1);
  CHECK(enumerate_copresheaves(*fixtures::fix_v(), 0).size() == 5);
}

TEST_CASE("enumeration respects the cap") {
  auto V = fixtures::fix_v();
  CHECK_THROWS_AS(enumerate_presheaves(*V, 0, {4}), EnumerationCapExceeded);
  CHECK_NOTHROW(enumerate_presheaves(*V, 0, {5}));
}

TEST_CASE("presheaf category of V is lower-set inclusion") {
  auto V = fixtures::fix_v();
  auto pa = presheaf_category(V);
  REQUIRE(pa.size() == 5);
  CHECK(pa.validated);
  CHECK(is_skeletal(*pa.as_category));
  auto pre = underlying_preorder(*pa.as_category);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(pre.leq(i, j) == pointwise_leq(*V, pa[i], pa[j]));
  auto cpa = copresheaf_category(V);
  REQUIRE(cpa.size() == 5);
  CHECK(is_skeletal(*cpa.as_category));
  auto cpre = underlying_preorder(*cpa.as_category);
  // P†A orders upper sets by reverse containment
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(cpre.leq(i, j) == pointwise_leq(*V, cpa[j], cpa[i]));
}

TEST_CASE("Yoneda embedding on V") {
  auto V = fixtures::fix_v();
  auto pa = presheaf_category(V);
  auto y = yoneda(pa);
  CHECK(pa[y(V->index("z"))] == lower({1, 1, 1}));
  CHECK(pa[y(V->index("x"))] == lower({1, 0, 0}));
  CHECK(presheaf_hom(*V, representable(*V, 0), lower({1, 1, 0})) == 1);
  CHECK(check_yoneda_lemma(pa).holds);
  CHECK(is_fully_faithful(y));
  CHECK(dist_compose(cograph(y), graph(y)) == identity_distributor(V));
}

TEST_CASE("suprema on V") {
  auto V = fixtures::fix_v();
  auto s = sup(*V, lower({1, 1, 0}));
  REQUIRE(s.exists);
  CHECK(V->name(*s.canonical) == "z");
  CHECK_FALSE(sup(*V, lower({0, 0, 0})).exists);
  for (std::size_t a = 0; a < 3; ++a) CHECK(sup(*V, representable(*V, a)).canonical == a);
}

TEST_CASE("sup returns the whole isomorphism class") {
  auto A = poset_to_2cat(make_preorder({"p", "q", "r"}, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}));
  auto s = sup(*A, representable(*A, 0));
  CHECK(s.representatives == std::vector<std::size_t>{0, 1});
  CHECK(s.canonical == 0u);
}

TEST_CASE("inhabited presheaves") {
  auto V = fixtures::fix_v();
  CHECK(inhabited(*V, lower({1, 0, 0})));
  CHECK_FALSE(inhabited(*V, lower({0, 0, 0})));
  for (std::size_t a = 0; a < 3; ++a) CHECK(inhabited(*V, representable(*V, a)));
  auto B = fixtures::bg3_category();
  const auto& Q = B->quantaloid();
  CHECK_FALSE(inhabited(*B, bottom_presheaf(*B, Q.object("1"))));
  CHECK_FALSE(inhabited(*B, bottom_presheaf(*B, Q.object("1/2"))));
  // hom(0,0) is the one-point lattice, so 1_0 is its bottom
  CHECK(inhabited(*B, bottom_presheaf(*B, Q.object("0"))));
}

TEST_CASE("colimits on V") {
  auto V = fixtures::fix_v();
  auto one = singleton_category(V->ambient(), 0);
  auto theta = as_distributor(V, lower({1, 1, 0}));
  auto r = colim(theta, identity_functor(V));
  REQUIRE(r.functor);
  CHECK(V->name(r.functor->map[0]) == "z");
  CHECK(r.graph_law_ok);
  auto y = colim(as_distributor(V, representable(*V, 1)), identity_functor(V));
  CHECK(y.functor->map[0] == 1u);
  auto none = colim(as_distributor(V, lower({0, 0, 0})), identity_functor(V));
  CHECK_FALSE(none.functor);
  CHECK_FALSE(none.per_object[0].exists);
}

TEST_CASE("colimit along a full inclusion is the sup of the pushed weight") {
  auto V = fixtures::fix_v();
  auto [sub, inc] = full_subcategory(V, {0, 1});
  Presheaf w{0, {1, 1}};
  auto r = colim(as_distributor(sub, w), inc);
  REQUIRE(r.functor);
  CHECK(V->name(r.functor->map[0]) == "z");
  CHECK(r.graph_law_ok);
}

TEST_CASE("image and preimage along an inclusion") {
  auto V = fixtures::fix_v();
  auto [sub, inc] = full_subcategory(V, {0, 2});
  CHECK(f_to(inc, Presheaf{0, {1, 0}}) == lower({1, 0, 0}));
  CHECK(f_from(inc, lower({1, 1, 1})) == (Presheaf{0, {1, 1}}));
  CHECK(f_to(identity_functor(V), lower({0, 1, 0})) == lower({0, 1, 0}));
  auto pa = presheaf_category(sub), pb = presheaf_category(V);
  CHECK(check_adjoint(f_to_functor(inc, pa, pb), f_from_functor(inc, pa, pb)).holds);
}

TEST_CASE("sup in the presheaf category is Psi composed with the Yoneda graph") {
  auto V = fixtures::fix_v();
  auto pa = presheaf_category(V);
  auto ppa = presheaf_category(pa.as_category);
  std::size_t checked = 0;
  for (const auto& psi : ppa.members) {
    auto s = sup_in_presheaf_category(pa, psi);
    auto generic = sup(*pa.as_category, psi);
    REQUIRE(generic.exists);
    CHECK(generic.representatives.size() == 1);
    CHECK(pa[*generic.canonical] == s);
    ++checked;
  }
  CHECK(checked == ppa.size());
  auto y = yoneda(pa);
  auto x = pa.at(representable(*V, 0)), yy = pa.at(representable(*V, 1));
  auto psi = pointwise_join(*pa.as_category, representable(*pa.as_category, x), representable(*pa.as_category, yy));
  CHECK(sup_in_presheaf_category(pa, psi) == lower({1, 1, 0}));
  (void)y;
}
