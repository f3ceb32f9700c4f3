#pragma once

#include <set>
#include <string>
#include <vector>

#include "continuity.hpp"
#include "models.hpp"
#include "poset_oracle.hpp"

namespace qdomain {

struct CrossValidation {
  std::string class_id;
  bool ideals_match = false;
  bool way_below_match = false;
  bool continuous_match = false;
  bool algebraic_match = false;
  std::vector<std::string> mismatches;

  bool ok() const { return ideals_match && way_below_match && continuous_match && algebraic_match; }
};

/// Compares the enriched pipeline over 2 with the classical oracle on one poset.
inline CrossValidation cross_validate(const Preorder& p, const IdealClass& c, ContextOptions opts = {}) {
  CrossValidation r;
  r.class_id = c.id();
  const auto o = poset_oracle(p);
  const auto A = poset_to_2cat(p);
  auto an = analyze(c, A, opts);
  const std::size_t n = p.size();
  const Elem top = A->quantaloid().hom(0, 0).top();

  std::set<std::uint32_t> enriched;
  for (const auto& phi : an->phi->presheaves) {
    std::uint32_t m = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (phi.values[a] == top) m |= 1u << a;
    enriched.insert(m);
  }
  const std::set<std::uint32_t> classical(o.ideals.begin(), o.ideals.end());
  r.ideals_match = enriched == classical && enriched.size() == an->phi->size();
  if (!r.ideals_match)
    r.mismatches.push_back("ideals: enriched " + std::to_string(enriched.size()) + ", oracle " +
                           std::to_string(classical.size()));

  r.way_below_match = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if ((an->way.matrix(a, b) == top) != o.wb(a, b)) {
        if (r.way_below_match) r.mismatches.push_back("way-below at (" + p.carrier[a] + "," + p.carrier[b] + ")");
        r.way_below_match = false;
      }
  r.continuous_match = an->continuity.verdict == o.continuous;
  if (!r.continuous_match) r.mismatches.push_back("continuity verdict");
  r.algebraic_match = an->algebraicity.verdict == o.algebraic;
  if (!r.algebraic_match) r.mismatches.push_back("algebraicity verdict");
  return r;
}

/// Classes for which the finite-poset correspondence is expected.
inline std::vector<std::string> cross_validation_classes() {
  return {"inhabited-flat", "inhabited-irreducible", "conical-ideal"};
}

}  // namespace qdomain
