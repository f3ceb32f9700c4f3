#pragma once

#include <optional>
#include <string>

#include "continuity.hpp"
#include "models.hpp"

namespace qdomain {

/// Continuity facts about Q^A for one object A of Q.
struct QPowerReport {
  CategoryPtr qa;
  std::size_t elements = 0;
  bool integral = false;
  bool d_adjoint_sup = true;            // P(Q^A)(d f, μ) = Q^A(f, sup μ)
  bool sup_is_value_at_identity = true; // sup μ = μ(1_A)
  bool integral_simplification = true;  // d f = f∘⊤ when 1_A = ⊤
  bool d_identity_is_yoneda = true;     // d(1_A) = Y(1_A)
  bool p_continuous = false;
  bool way_below_is_d = false;          // F⇓ = d for the class of all presheaves
  bool finite_meets = false;
  bool every_d_flat = true;
  bool f_continuous = false;
  std::string witness;
};

inline QPowerReport check_q_power(const QuantaloidPtr& Q, Obj a, ContextOptions opts = {}) {
  QPowerReport r;
  r.qa = q_power(Q, a);
  const auto& QA = *r.qa;
  r.elements = QA.size();
  r.integral = is_integral_at(*Q, a);
  auto ctx = std::make_shared<ClassContext>(r.qa, opts);
  const auto& pa = ctx->pa();
  const std::size_t id = q_power_identity(QA, a);
  std::vector<Presheaf> d;
  for (std::size_t f = 0; f < QA.size(); ++f) d.push_back(q_power_d(QA, a, f));
  auto note = [&](const std::string& w) {
    if (r.witness.empty()) r.witness = w;
  };

  for (std::size_t k = 0; k < pa.size(); ++k) {
    const auto& mu = pa[k];
    auto s = sup(QA, mu);
    const std::size_t expected = q_power_index(QA, a, Arrow{a, mu.type, mu.values[id]});
    if (!s.exists || *s.canonical != expected) {
      r.sup_is_value_at_identity = false;
      note("sup of " + presheaf_name(QA, mu));
      continue;
    }
    for (std::size_t f = 0; f < QA.size(); ++f)
      if (d[f].type == mu.type && presheaf_hom(QA, d[f], mu) != QA.hom(f, *s.canonical)) {
        r.d_adjoint_sup = false;
        note("d(" + QA.name(f) + ") against " + presheaf_name(QA, mu));
      }
  }
  if (r.integral)
    for (std::size_t f = 0; f < QA.size(); ++f)
      if (d[f] != q_power_d_integral(QA, a, f)) {
        r.integral_simplification = false;
        note("integral form of d(" + QA.name(f) + ")");
      }
  r.d_identity_is_yoneda = d[id] == representable(QA, id);

  auto all = analyze(parse_class("all"), ctx);
  r.p_continuous = all->continuity.verdict;
  r.way_below_is_d = way_below_functor(all->way) == d;

  r.finite_meets = check_finite_meet_criterion(*Q, a).holds;
  for (std::size_t f = 0; f < QA.size(); ++f)
    if (!is_flat(*ctx, d[f]).holds) {
      r.every_d_flat = false;
      note("d(" + QA.name(f) + ") not flat");
    }
  r.f_continuous = analyze(parse_class("flat"), ctx)->continuity.verdict;
  return r;
}

}  // namespace qdomain
