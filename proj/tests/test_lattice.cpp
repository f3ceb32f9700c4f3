#include <catch_amalgamated.hpp>

#include "qdomain/lattice.hpp"

using namespace qdomain;

namespace {

FiniteLattice diamond() {
  return validate_lattice({"bot", "x", "y", "top"},
                          {{"bot", "bot"}, {"bot", "x"}, {"bot", "y"}, {"bot", "top"}, {"x", "x"}, {"x", "top"},
                           {"y", "y"}, {"y", "top"}, {"top", "top"}});
}

}  // namespace

TEST_CASE("two-element chain is a lattice") {
  auto L = validate_lattice({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "1"}});
  CHECK(L.size() == 2);
  CHECK(L.bottom() == L.at("0"));
  CHECK(L.top() == L.at("1"));
  CHECK(L.join(L.at("0"), L.at("1")) == L.at("1"));
}

TEST_CASE("diamond joins and meets") {
  auto L = diamond();
  CHECK(L.name(L.join(L.at("x"), L.at("y"))) == "top");
  CHECK(L.name(L.meet(L.at("x"), L.at("y"))) == "bot");
  std::vector<Elem> none;
  CHECK(L.join(none) == L.at("bot"));
  CHECK(L.meet(none) == L.at("top"));
  std::vector<Elem> xy{L.at("x"), L.at("y")};
  CHECK(L.join(xy) == L.at("top"));
}

TEST_CASE("join and meet agree with a brute-force bound search") {
  auto L = diamond();
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b) {
      std::vector<Elem> ub;
      for (Elem u = 0; u < L.size(); ++u)
        if (L.leq(a, u) && L.leq(b, u)) ub.push_back(u);
      Elem lub = ub.front();
      for (Elem u : ub)
        if (std::all_of(ub.begin(), ub.end(), [&](Elem v) { return L.leq(u, v); })) lub = u;
      CHECK(L.join(a, b) == lub);
    }
}

TEST_CASE("antisymmetry violation carries its witness") {
  try {
    validate_lattice({"a", "b"}, {{"a", "a"}, {"b", "b"}, {"a", "b"}, {"b", "a"}});
    FAIL("accepted");
  } catch (const ValidationError& e) {
    CHECK(e.has("NotAntisymmetric"));
    CHECK(e.violations().front().witness == "a,b");
  }
}

TEST_CASE("missing join and missing top are reported") {
  try {
    validate_lattice({"b", "x", "y"}, {{"b", "b"}, {"x", "x"}, {"y", "y"}, {"b", "x"}, {"b", "y"}});
    FAIL("accepted");
  } catch (const ValidationError& e) {
    CHECK(e.has("MissingTop"));
    CHECK(e.has("MissingJoin"));
  }
}

TEST_CASE("relation must be listed reflexively") {
  CHECK_THROWS_AS(validate_lattice({"0", "1"}, {{"0", "1"}}), ValidationError);
}

TEST_CASE("foreign elements are rejected") {
  auto L = diamond();
  CHECK_THROWS_AS(L.at("nope"), ForeignElement);
  std::vector<Elem> bad{99};
  CHECK_THROWS_AS(L.join(bad), ForeignElement);
  CHECK_THROWS_AS(validate_lattice({"0"}, {{"0", "1"}}), ValidationError);
}

TEST_CASE("empty carrier") { CHECK_THROWS_AS(validate_lattice({}, {}), ValidationError); }

TEST_CASE("down-set keeps the induced order") {
  auto L = diamond();
  auto D = L.down_set(L.at("x"));
  CHECK(D.carrier() == std::vector<std::string>{"bot", "x"});
  CHECK(D.leq(D.at("bot"), D.at("x")));
}
