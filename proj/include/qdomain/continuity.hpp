#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "errors.hpp"
#include "ideal_classes.hpp"
#include "presheaf.hpp"

namespace qdomain {

/// Φ-ideals whose supremum exists.
struct PhiS {
  const PhiCategory* phi = nullptr;
  std::vector<std::size_t> members;  // ΦA indices
  std::vector<std::size_t> sup_map;  // canonical sup of each member
  bool adjunction_ok = true;         // sup(Y a) ≅ a and Y(sup μ) >= μ over members
};

inline PhiS phi_s(const PhiCategory& phi) {
  const auto& A = *phi.base;
  PhiS s;
  s.phi = &phi;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    auto r = sup(A, phi.presheaves[k]);
    if (!r.exists) continue;
    s.members.push_back(k);
    s.sup_map.push_back(*r.canonical);
    if (!pointwise_leq(A, phi.presheaves[k], representable(A, *r.canonical))) s.adjunction_ok = false;
  }
  for (std::size_t a = 0; a < A.size(); ++a) {
    auto r = sup(A, representable(A, a));
    if (!r.exists || !isomorphic(A, *r.canonical, a)) s.adjunction_ok = false;
  }
  return s;
}

struct WayBelow {
  CategoryPtr base;
  QDistributor matrix;  // ⇓(y,x)
  bool below_identity = false;
  bool idempotent_below = false;  // ⇓∘⇓ <= ⇓
};

/// ⇓(y,x) = ⋀_{φ∈Φ_s} A(x, sup φ) ↘ φ(y).
inline WayBelow way_below(const PhiS& s) {
  const auto& phi = *s.phi;
  const auto& A = *phi.base;
  const auto& Q = A.quantaloid();
  WayBelow w{phi.base, QDistributor{phi.base, phi.base, std::vector<Elem>(A.size() * A.size(), 0)}};
  for (std::size_t y = 0; y < A.size(); ++y)
    for (std::size_t x = 0; x < A.size(); ++x) {
      const auto& H = Q.hom(A.type(y), A.type(x));
      Elem acc = H.top();
      for (std::size_t m = 0; m < s.members.size(); ++m) {
        const auto& mu = phi.presheaves[s.members[m]];
        acc = H.meet(acc, Q.rres(A.type(y), A.type(x), mu.type, A.hom(x, s.sup_map[m]), mu.values[y]));
      }
      w.matrix.at(y, x) = acc;
    }
  w.matrix = validate_distributor(std::move(w.matrix));
  w.below_identity = dist_leq(w.matrix, identity_distributor(phi.base));
  w.idempotent_below = dist_leq(dist_compose(w.matrix, w.matrix), w.matrix);
  return w;
}

/// F⇓(a) = ⇓(−,a).
inline std::vector<Presheaf> way_below_functor(const WayBelow& w) {
  std::vector<Presheaf> out;
  for (std::size_t a = 0; a < w.base->size(); ++a) out.push_back(column(w.matrix, a));
  return out;
}

struct ElementContinuity {
  Presheaf ideal;
  bool in_phi_s = false;
  bool sup_ok = false;
};

struct ContinuityReport {
  bool verdict = false;                   // every F⇓(a) in Φ_s with sup ≅ a
  std::vector<ElementContinuity> per_element;
  bool approx_ok = false;                 // ⇓ is a Φ-distributor and A = A↙⇓
  bool cross_check_ok = false;
  std::optional<bool> left_adjoint_ok;    // F⇓ ⊣ sup on Φ_s, when continuous
  std::optional<std::size_t> witness;     // first element failing the per-element check
};

inline ContinuityReport check_continuous(const PhiS& s, const WayBelow& w) {
  const auto& phi = *s.phi;
  const auto& A = *phi.base;
  ContinuityReport r;
  r.verdict = true;
  auto cols = way_below_functor(w);
  for (std::size_t a = 0; a < A.size(); ++a) {
    ElementContinuity e{cols[a]};
    auto k = phi.find(cols[a]);
    std::optional<std::size_t> sp;
    if (k) {
      auto it = std::find(s.members.begin(), s.members.end(), *k);
      if (it != s.members.end()) {
        e.in_phi_s = true;
        sp = s.sup_map[static_cast<std::size_t>(it - s.members.begin())];
      }
    }
    e.sup_ok = sp && isomorphic(A, *sp, a);
    if (!(e.in_phi_s && e.sup_ok)) {
      r.verdict = false;
      if (!r.witness) r.witness = a;
    }
    r.per_element.push_back(std::move(e));
  }
  bool columns_in_phi = true;
  for (const auto& c : cols) columns_in_phi = columns_in_phi && phi.find(c).has_value();
  r.approx_ok = columns_in_phi && dist_lres(identity_distributor(phi.base), w.matrix) == identity_distributor(phi.base);
  r.cross_check_ok = r.approx_ok == r.verdict;
  if (!r.cross_check_ok)
    throw InternalInconsistency("continuity characterizations disagree (pointwise " + std::to_string(r.verdict) +
                                ", distributor " + std::to_string(r.approx_ok) + ")");
  if (r.verdict) {
    bool ok = true;
    for (std::size_t a = 0; a < A.size() && ok; ++a)
      for (std::size_t m = 0; m < s.members.size() && ok; ++m)
        ok = presheaf_hom(A, cols[a], phi.presheaves[s.members[m]]) == A.hom(a, s.sup_map[m]);
    r.left_adjoint_ok = ok;
  }
  return r;
}

struct InterpolationResult {
  bool holds = true;
  std::optional<Witness2> witness;  // (y, x)
};

/// ⇓ = ⇓∘⇓.
inline InterpolationResult check_interpolation(const WayBelow& w) {
  auto sq = dist_compose(w.matrix, w.matrix);
  const std::size_t n = w.base->size();
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (sq(y, x) != w.matrix(y, x)) return {false, Witness2{y, x}};
  return {};
}

/// 1 <= ⇓(a,a), cross-checked against A(a, sup φ) <= φ(a) over Φ_s.
inline bool is_compact(const PhiS& s, const WayBelow& w, std::size_t a) {
  const auto& A = *s.phi->base;
  const auto& Q = A.quantaloid();
  const Obj t = A.type(a);
  const bool by_diagonal = Q.hom(t, t).leq(Q.identity(t), w.matrix(a, a));
  bool by_sups = true;
  for (std::size_t m = 0; m < s.members.size() && by_sups; ++m) {
    const auto& mu = s.phi->presheaves[s.members[m]];
    by_sups = Q.hom(t, mu.type).leq(A.hom(a, s.sup_map[m]), mu.values[a]);
  }
  if (by_diagonal != by_sups)
    throw InternalInconsistency("compactness characterizations disagree at " + A.name(a));
  return by_diagonal;
}

inline std::vector<std::size_t> compacts(const PhiS& s, const WayBelow& w) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < s.phi->base->size(); ++a)
    if (is_compact(s, w, a)) out.push_back(a);
  return out;
}

struct SigmaResult {
  QDistributor sigma;
  std::vector<Presheaf> s;  // S(a) = Σ(−,a)
  bool below_way_below = false;
};

/// Σ(x,y) = ⋁_{a compact} A(a,y)∘A(x,a).
inline SigmaResult sigma_and_s(const CategoryPtr& Ap, const std::vector<std::size_t>& compact, const WayBelow& w) {
  const auto& A = *Ap;
  const auto& Q = A.quantaloid();
  SigmaResult r{QDistributor{Ap, Ap, std::vector<Elem>(A.size() * A.size(), 0)}, {}, false};
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y) {
      const auto& H = Q.hom(A.type(x), A.type(y));
      Elem acc = H.bottom();
      for (auto a : compact) acc = H.join(acc, Q.compose(A.type(x), A.type(a), A.type(y), A.hom(a, y), A.hom(x, a)));
      r.sigma.at(x, y) = acc;
    }
  r.sigma = validate_distributor(std::move(r.sigma));
  for (std::size_t a = 0; a < A.size(); ++a) r.s.push_back(column(r.sigma, a));
  r.below_way_below = dist_leq(r.sigma, w.matrix);
  return r;
}

struct AlgebraicityReport {
  std::vector<std::size_t> compacts;
  QDistributor sigma;
  bool verdict = false;
  bool s_equals_fdown = false;
  bool sigma_below_way_below = false;
  std::optional<std::size_t> witness;  // first x failing S(x) ∈ Φ_s with sup ≅ x
};

inline AlgebraicityReport check_algebraic(const PhiS& s, const WayBelow& w, const ContinuityReport& cont) {
  const auto& phi = *s.phi;
  const auto& A = *phi.base;
  AlgebraicityReport r;
  r.compacts = compacts(s, w);
  auto sig = sigma_and_s(phi.base, r.compacts, w);
  r.sigma = sig.sigma;
  r.sigma_below_way_below = sig.below_way_below;
  r.s_equals_fdown = sig.sigma == w.matrix;
  r.verdict = true;
  for (std::size_t x = 0; x < A.size(); ++x) {
    bool ok = false;
    if (auto k = phi.find(sig.s[x])) {
      auto it = std::find(s.members.begin(), s.members.end(), *k);
      if (it != s.members.end()) ok = isomorphic(A, s.sup_map[static_cast<std::size_t>(it - s.members.begin())], x);
    }
    if (!ok) {
      r.verdict = false;
      if (!r.witness) r.witness = x;
    }
  }
  if (r.verdict != (cont.verdict && r.s_equals_fdown))
    throw InternalInconsistency("algebraicity characterizations disagree");
  return r;
}

// ---------------------------------------------------------------------------
// One-shot analysis

/// Everything the engine derives for one (class, category) pair.
struct Analysis {
  IdealClass cls;
  std::shared_ptr<ClassContext> ctx;
  std::unique_ptr<PhiCategory> phi;
  PhiS s;
  WayBelow way;
  ContinuityReport continuity;
  InterpolationResult interpolation;
  AlgebraicityReport algebraicity;
};

inline std::unique_ptr<Analysis> analyze(const IdealClass& c, std::shared_ptr<ClassContext> ctx) {
  auto an = std::make_unique<Analysis>();
  an->cls = c;
  an->ctx = std::move(ctx);
  an->phi = std::make_unique<PhiCategory>(phi_category(c, *an->ctx));
  an->s = phi_s(*an->phi);
  an->way = way_below(an->s);
  an->continuity = check_continuous(an->s, an->way);
  an->interpolation = check_interpolation(an->way);
  an->algebraicity = check_algebraic(an->s, an->way, an->continuity);
  return an;
}

inline std::unique_ptr<Analysis> analyze(const IdealClass& c, const CategoryPtr& A, ContextOptions opts = {}) {
  return analyze(c, std::make_shared<ClassContext>(A, opts));
}

// ---------------------------------------------------------------------------
// A ≃ Φ(A_c)

struct EquivalenceReport {
  bool preconditions = false;  // Φ-cocomplete and Φ-algebraic
  CategoryPtr compact_part;    // A_c
  std::unique_ptr<PhiCategory> phi_compact;
  std::shared_ptr<ClassContext> compact_ctx;
  std::optional<QFunctor> f;   // A → Φ(A_c)
  std::optional<QFunctor> g;   // Φ(A_c) → A
  bool gf_iso_identity = false;
  bool fg_identity = false;
  bool verdict = false;
  std::string failure;
};

/// F(x) = A(j−, x), G(φ) = sup(φ∘j^♮); checks G∘F ≅ 1 and F∘G = 1.
inline EquivalenceReport algebraic_equivalence(const Analysis& an, bool require_preconditions = true) {
  EquivalenceReport r;
  const auto& A = *an.phi->base;
  const bool cocomplete = an.s.members.size() == an.phi->size();
  r.preconditions = cocomplete && an.algebraicity.verdict;
  if (!r.preconditions && require_preconditions)
    throw PreconditionFailed("equivalence needs a cocomplete and algebraic category");
  auto [ac, j] = full_subcategory(an.phi->base, an.algebraicity.compacts);
  r.compact_part = ac;
  r.compact_ctx = std::make_shared<ClassContext>(ac, an.ctx->options());
  r.phi_compact = std::make_unique<PhiCategory>(phi_category(an.cls, *r.compact_ctx));
  const auto& pc = *r.phi_compact;

  QFunctor f{an.phi->base, pc.as_category, {}};
  for (std::size_t x = 0; x < A.size(); ++x) {
    Presheaf p{A.type(x), {}};
    for (auto k : an.algebraicity.compacts) p.values.push_back(A.hom(k, x));
    auto idx = pc.find(p);
    if (!idx) {
      r.failure = "F(" + A.name(x) + ") is not in the class on the compact part";
      return r;
    }
    f.map.push_back(*idx);
  }
  QFunctor g{pc.as_category, an.phi->base, {}};
  for (std::size_t k = 0; k < pc.size(); ++k) {
    auto sp = sup(A, f_to(j, pc.presheaves[k]));
    if (!sp.exists) {
      r.failure = "G(" + pc.as_category->name(k) + ") has no supremum";
      return r;
    }
    g.map.push_back(*sp.canonical);
  }
  r.f = validate_functor(std::move(f));
  r.g = validate_functor(std::move(g));
  r.gf_iso_identity = functors_isomorphic(compose(*r.g, *r.f), identity_functor(an.phi->base));
  r.fg_identity = compose(*r.f, *r.g).map == identity_functor(pc.as_category).map;
  r.verdict = r.gf_iso_identity && r.fg_identity;
  if (!r.verdict) r.failure = r.gf_iso_identity ? "F∘G is not the identity" : "G∘F is not isomorphic to the identity";
  return r;
}

}  // namespace qdomain
