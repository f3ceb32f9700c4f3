#include <catch_amalgamated.hpp>

#include "qdomain/fixtures.hpp"
#include "qdomain/models.hpp"
#include "qdomain/quantaloid.hpp"

using namespace qdomain;

namespace {

// Largest w (by brute force over the carrier) with the given predicate.
template <class Pred>
Elem largest(const FiniteLattice& L, Pred p) {
  std::vector<Elem> ok;
  for (Elem w = 0; w < L.size(); ++w)
    if (p(w)) ok.push_back(w);
  for (Elem w : ok)
    if (std::all_of(ok.begin(), ok.end(), [&](Elem v) { return L.leq(v, w); })) return w;
  throw std::logic_error("no largest");
}

void check_residuals(const Quantaloid& Q) {
  const Obj n = static_cast<Obj>(Q.num_objects());
  for (Obj p = 0; p < n; ++p)
    for (Obj q = 0; q < n; ++q)
      for (Obj r = 0; r < n; ++r) {
        const auto& Hpq = Q.hom(p, q);
        const auto& Hqr = Q.hom(q, r);
        const auto& Hpr = Q.hom(p, r);
        for (Elem u = 0; u < Hpq.size(); ++u)
          for (Elem v = 0; v < Hpr.size(); ++v) {
            Elem l = Q.lres(p, q, r, v, u);
            CHECK(l == largest(Hqr, [&](Elem w) { return Hpr.leq(Q.compose(p, q, r, w, u), v); }));
            for (Elem w = 0; w < Hqr.size(); ++w)
              CHECK(Hpr.leq(Q.compose(p, q, r, w, u), v) == Hqr.leq(w, l));
          }
        for (Elem u = 0; u < Hqr.size(); ++u)
          for (Elem v = 0; v < Hpr.size(); ++v) {
            Elem rr = Q.rres(p, q, r, u, v);
            for (Elem w = 0; w < Hpq.size(); ++w)
              CHECK(Hpr.leq(Q.compose(p, q, r, u, w), v) == Hpq.leq(w, rr));
          }
      }
}

}  // namespace

TEST_CASE("standard quantales are divisible") {
  CHECK(check_divisible(fixtures::g3()).divisible);
  CHECK(check_divisible(fixtures::luk3()).divisible);
  CHECK(check_divisible(fixtures::pwr2()).divisible);
  CHECK(check_divisible(boolean2_quantale()).divisible);
}

TEST_CASE("drastic product on four elements is not divisible") {
  auto q = fixtures::drastic4();
  auto r = check_divisible(q);
  REQUIRE_FALSE(r.divisible);
  const auto& L = q.lattice();
  // witness a = 2/3, b = 1/3: a\b = 2/3 and 2/3 & 2/3 = 0
  CHECK(q.right_residual(L.at("2/3"), L.at("1/3")) == L.at("2/3"));
  CHECK(q.tensor(L.at("2/3"), L.at("2/3")) == L.at("0"));
  CHECK_THROWS_AS(b_q(q), NotDivisible);
}

TEST_CASE("drastic product on three elements coincides with Lukasiewicz") {
  auto d = chain_quantale(3, ChainTensor::drastic);
  auto l = fixtures::luk3();
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) CHECK(d.tensor(a, b) == l.tensor(a, b));
}

TEST_CASE("Godel residuals") {
  auto q = fixtures::g3();
  const auto& L = q.lattice();
  CHECK(q.right_residual(L.at("1"), L.at("1/2")) == L.at("1/2"));
  CHECK(q.right_residual(L.at("1/2"), L.at("0")) == L.at("0"));
  CHECK(q.right_residual(L.at("1/2"), L.at("1/2")) == L.at("1"));
}

TEST_CASE("Lukasiewicz residuals") {
  auto q = fixtures::luk3();
  const auto& L = q.lattice();
  // a\b = min(1, 1 - a + b)
  CHECK(q.right_residual(L.at("1"), L.at("1/2")) == L.at("1/2"));
  CHECK(q.right_residual(L.at("1/2"), L.at("0")) == L.at("1/2"));
  CHECK(q.right_residual(L.at("1"), L.at("0")) == L.at("0"));
}

TEST_CASE("residuals are adjoint to composition") {
  check_residuals(*fixtures::g3().as_quantaloid());
  check_residuals(*fixtures::luk3().as_quantaloid());
  check_residuals(*fixtures::pwr2().as_quantaloid());
  check_residuals(*fixtures::drastic4().as_quantaloid());
  check_residuals(*fixtures::bg3());
  check_residuals(*fixtures::bpwr2());
}

TEST_CASE("B_Q of Godel-3") {
  auto Q = fixtures::bg3();
  REQUIRE(Q->num_objects() == 3);
  const Obj half = Q->object("1/2"), one = Q->object("1");
  CHECK(Q->hom(half, one).carrier() == std::vector<std::string>{"0", "1/2"});
  CHECK(Q->hom(one, one).size() == 3);
  CHECK(Q->hom(Q->object("0"), one).size() == 1);
  CHECK(Q->hom(half, half).name(Q->identity(half)) == "1/2");
  // b∘a = b & (y\a) for a: 1 -> 1/2, b: 1/2 -> 1
  auto a = Q->arrow("1", "1/2", "1/2");
  auto b = Q->arrow("1/2", "1", "1/2");
  CHECK(Q->describe(Q->compose(b, a)) == "1/2:1->1");
}

TEST_CASE("B_Q outputs validate for every divisible fixture") {
  CHECK_NOTHROW(b_q(fixtures::g3()));
  CHECK_NOTHROW(b_q(fixtures::luk3()));
  CHECK_NOTHROW(b_q(fixtures::pwr2()));
  CHECK(fixtures::bpwr2()->num_objects() == 4);
}

TEST_CASE("broken composition is rejected with a witness") {
  auto spec = fixtures::g3().as_quantaloid()->spec();
  // make 1/2 & 1/2 = 0: no longer unital-consistent or associative
  spec.compose[0][1 * 3 + 1] = 0;
  spec.compose[0][2 * 3 + 1] = 0;
  try {
    validate_quantaloid(spec);
    FAIL("accepted");
  } catch (const ValidationError& e) {
    CHECK(e.has("UnitLawViolated"));
  }
}

TEST_CASE("non-join-preserving composition is rejected") {
  auto q = fixtures::g3();
  QuantaleSpec s{q.lattice(), std::vector<Elem>(9, 0), 2};
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) s.tensor[a * 3 + b] = std::min(a, b);
  s.tensor[0 * 3 + 0] = 1;  // 0&0 = 1/2 breaks the empty join
  try {
    validate_quantale(s);
    FAIL("accepted");
  } catch (const ValidationError& e) {
    CHECK((e.has("NotJoinContinuous") || e.has("UnitLawViolated") || e.has("NotAssociative")));
  }
}

TEST_CASE("typed arrow operations reject mismatched types") {
  auto Q = fixtures::bg3();
  auto a = Q->arrow("1", "1/2", "1/2");
  CHECK_THROWS_AS(Q->compose(a, a), TypeMismatch);
}
