#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "models.hpp"

namespace qdomain::fixtures {

inline Preorder v_poset() { return make_preorder({"x", "y", "z"}, {{0, 2}, {1, 2}}); }
inline Preorder antichain2_poset() { return make_preorder({"a", "b"}, {}); }
inline Preorder diamond_poset() { return make_preorder({"bot", "l", "r", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }
inline Preorder chain_poset(std::size_t n) {
  std::vector<std::string> c;
  std::vector<std::pair<std::size_t, std::size_t>> g;
  for (std::size_t i = 0; i < n; ++i) {
    c.push_back("c" + std::to_string(i));
    if (i) g.emplace_back(i - 1, i);
  }
  return make_preorder(std::move(c), g);
}
/// Three minimal elements a, b, c under two maximal ones d, e: a,b <= d and b,c <= e.
inline Preorder w_poset() { return make_preorder({"a", "b", "c", "d", "e"}, {{0, 3}, {1, 3}, {1, 4}, {2, 4}}); }
inline Preorder n5_poset() {
  return make_preorder({"bot", "a", "b", "c", "top"}, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}});
}
inline Preorder m3_poset() {
  return make_preorder({"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}
/// Six-element crown: a, b, c below d, e, f with a <= d,e; b <= e,f; c <= f,d.
inline Preorder crown_poset() {
  return make_preorder({"a", "b", "c", "d", "e", "f"}, {{0, 3}, {0, 4}, {1, 4}, {1, 5}, {2, 5}, {2, 3}});
}

inline std::vector<std::pair<std::string, Preorder>> named_five_element_posets() {
  return {{"w", w_poset()}, {"n5", n5_poset()}, {"m3", m3_poset()}, {"chain5", chain_poset(5)}};
}
/// The five-element posets plus the six-element crown.
inline std::vector<std::pair<std::string, Preorder>> named_posets() {
  auto v = named_five_element_posets();
  v.emplace_back("crown", crown_poset());
  return v;
}

inline CategoryPtr fix_v() { return poset_to_2cat(v_poset()); }
inline CategoryPtr antichain2() { return poset_to_2cat(antichain2_poset()); }

inline Quantale g3() { return chain_quantale(3, ChainTensor::godel); }
/// G3 as a one-object quantaloid, shared.
inline QuantaloidPtr g3q() {
  static const QuantaloidPtr q = g3().as_quantaloid();
  return q;
}
inline Quantale luk3() { return chain_quantale(3, ChainTensor::lukasiewicz); }
inline Quantale pwr2() { return powerset_quantale({"1", "2"}); }
/// Drastic product on the 4-chain: not divisible.
inline Quantale drastic4() { return chain_quantale(4, ChainTensor::drastic); }

inline QuantaloidPtr bg3() {
  static const QuantaloidPtr q = b_q(g3());
  return q;
}
inline QuantaloidPtr bpwr2() {
  static const QuantaloidPtr q = b_q(pwr2());
  return q;
}

/// Two elements over B_{G3}: a of type 1 and b of type 1/2, every hom as large as allowed.
inline CategoryPtr bg3_category(const QuantaloidPtr& Q = bg3()) {
  const Obj one = Q->object("1"), half = Q->object("1/2");
  CategorySpec s{Q, {"a", "b"}, {one, half}, {}};
  s.hom = {Q->hom(one, one).at("1"), Q->hom(one, half).at("1/2"), Q->hom(half, one).at("1/2"),
           Q->hom(half, half).at("1/2")};
  return validate_category(std::move(s));
}

/// a, b over G3 with A(a,b) = 1/2 and A(b,a) = 0. b is the sup of the constant 1/2
/// presheaf, so ⇓(b,b) = 1/2: continuous for all, flat, irreducible, weakly-flat, but not algebraic.
inline CategoryPtr g3_nonalgebraic() {
  auto Q = g3q();
  const auto& H = Q->hom(0, 0);
  CategorySpec s{Q, {"a", "b"}, {0, 0}, {H.at("1"), H.at("1/2"), H.at("0"), H.at("1")}};
  return validate_category(std::move(s));
}

}  // namespace qdomain::fixtures
