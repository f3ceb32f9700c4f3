#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "json_io.hpp"
#include "presheaf.hpp"

namespace qdomain {

struct CatalogEntry {
  std::string id;
  std::string description;
  std::function<Workspace()> build;
};

namespace catalog_detail {

inline Workspace single(CategoryPtr A) {
  Workspace w;
  w.quantaloid = A->ambient();
  w.categories.emplace_back("A", std::move(A));
  return w;
}

inline Workspace q_power_fixture(const QuantaloidPtr& Q, const std::string& object) {
  return single(q_power(Q, Q->object(object)));
}

}  // namespace catalog_detail

/// Every named fixture, in listing order. Each builds a validated workspace with one category "A".
inline const std::vector<CatalogEntry>& fixture_catalog() {
  using namespace catalog_detail;
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"fix-point", "one-element poset over 2", [] { return single(poset_to_2cat(fixtures::chain_poset(1))); }});
    e.push_back({"fix-2", "two-element chain c0 <= c1 over 2", [] { return single(poset_to_2cat(fixtures::chain_poset(2))); }});
    e.push_back({"fix-v", "poset V: x <= z, y <= z over 2", [] { return single(fixtures::fix_v()); }});
    e.push_back({"fix-antichain2", "two-element antichain over 2", [] { return single(fixtures::antichain2()); }});
    e.push_back({"fix-diamond", "four-element diamond over 2", [] { return single(poset_to_2cat(fixtures::diamond_poset())); }});
    e.push_back({"fix-w", "five-element W poset over 2", [] { return single(poset_to_2cat(fixtures::w_poset())); }});
    e.push_back({"fix-n5", "pentagon N5 over 2", [] { return single(poset_to_2cat(fixtures::n5_poset())); }});
    e.push_back({"fix-m3", "diamond M3 over 2", [] { return single(poset_to_2cat(fixtures::m3_poset())); }});
    e.push_back({"fix-chain5", "five-element chain over 2", [] { return single(poset_to_2cat(fixtures::chain_poset(5))); }});
    e.push_back({"fix-crown", "six-element crown over 2", [] { return single(poset_to_2cat(fixtures::crown_poset())); }});
    e.push_back({"fix-g3", "Goedel 3-chain as a category over itself (Q^*)",
                 [] { return q_power_fixture(fixtures::g3q(), "*"); }});
    e.push_back({"fix-luk3", "Lukasiewicz 3-chain as a category over itself (Q^*)",
                 [] { return q_power_fixture(fixtures::luk3().as_quantaloid(), "*"); }});
    e.push_back({"fix-pwr2", "powerset of {1,2} as a category over itself (Q^*)",
                 [] { return q_power_fixture(fixtures::pwr2().as_quantaloid(), "*"); }});
    e.push_back({"fix-bg3", "a (type 1) and b (type 1/2) over B_G3, homs maximal", [] { return single(fixtures::bg3_category()); }});
    e.push_back({"fix-qa-bg3-1", "B_G3^A at object 1", [] { return q_power_fixture(fixtures::bg3(), "1"); }});
    e.push_back({"fix-qa-bg3-half", "B_G3^A at object 1/2", [] { return q_power_fixture(fixtures::bg3(), "1/2"); }});
    e.push_back({"fix-qa-bpwr2-12", "B_PWR2^A at object {1,2}", [] { return q_power_fixture(fixtures::bpwr2(), "{1,2}"); }});
    e.push_back({"fix-qa-bpwr2-1", "B_PWR2^A at object {1}", [] { return q_power_fixture(fixtures::bpwr2(), "{1}"); }});
    e.push_back({"fix-g3-nonalg", "a, b over G3 with A(a,b)=1/2, A(b,a)=0: continuous, not algebraic",
                 [] { return single(fixtures::g3_nonalgebraic()); }});
    e.push_back({"fix-pa-v", "presheaf category of fix-v", [] { return single(presheaf_category(fixtures::fix_v()).as_category); }});
    e.push_back({"fix-pa-antichain2", "presheaf category of fix-antichain2",
                 [] { return single(presheaf_category(fixtures::antichain2()).as_category); }});
    return e;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : fixture_catalog())
    if (e.id == id) return e;
  throw ParseError("unknown fixture '" + id + "'");
}

inline Workspace load_fixture(const std::string& id) { return catalog_entry(id).build(); }

}  // namespace qdomain
