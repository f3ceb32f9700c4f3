#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "category.hpp"
#include "errors.hpp"
#include "presheaf.hpp"

namespace qdomain {

struct ContextOptions {
  EnumerationOptions enumeration;
  std::size_t validate_up_to = 256;
  /// Largest candidate set for the directed-subset search of conical ideals.
  std::size_t conical_subset_cap = 16;
  /// Per-type (co)presheaf count up to which pairwise join/meet tables are cached.
  std::size_t table_cap = 4096;
};

class ClassContext;

enum class BaseClass { representable, all, irreducible, flat, weakly_flat, conical, conical_ideal, custom };

/// A class of presheaves: a base predicate optionally intersected with "inhabited".
struct IdealClass {
  BaseClass base = BaseClass::all;
  bool inhabited_only = false;
  std::string custom_name;
  std::function<bool(const ClassContext&, const Presheaf&)> custom;

  std::string id() const;
  /// One of the classes the library knows to be saturated.
  bool builtin_saturated() const { return base != BaseClass::custom; }
};

inline const std::vector<std::pair<std::string, BaseClass>>& base_class_names() {
  static const std::vector<std::pair<std::string, BaseClass>> names = {
      {"representable", BaseClass::representable}, {"all", BaseClass::all},
      {"irreducible", BaseClass::irreducible},     {"flat", BaseClass::flat},
      {"weakly-flat", BaseClass::weakly_flat},     {"conical", BaseClass::conical},
      {"conical-ideal", BaseClass::conical_ideal}};
  return names;
}

inline std::string IdealClass::id() const {
  std::string b = custom_name;
  for (const auto& [n, c] : base_class_names())
    if (c == base && base != BaseClass::custom) b = n;
  return inhabited_only ? "inhabited-" + b : b;
}

/// Parses a class id such as "flat", "inhabited-irreducible" or "conical-ideal".
inline IdealClass parse_class(std::string_view id) {
  IdealClass c;
  std::string_view rest = id;
  constexpr std::string_view prefix = "inhabited-";
  if (rest.substr(0, prefix.size()) == prefix) {
    c.inhabited_only = true;
    rest.remove_prefix(prefix.size());
  }
  for (const auto& [n, b] : base_class_names())
    if (rest == n) {
      c.base = b;
      return c;
    }
  throw ParseError("unknown class id '" + std::string(id) + "'");
}

inline std::vector<std::string> builtin_class_ids() {
  return {"representable", "all",           "irreducible", "inhabited-irreducible", "flat",
          "inhabited-flat", "weakly-flat",  "conical",     "conical-ideal"};
}

inline IdealClass custom_class(std::string name, std::function<bool(const ClassContext&, const Presheaf&)> pred,
                               bool inhabited_only = false) {
  IdealClass c;
  c.base = BaseClass::custom;
  c.inhabited_only = inhabited_only;
  c.custom_name = std::move(name);
  c.custom = std::move(pred);
  return c;
}

/// Lazily enumerated presheaf and copresheaf categories of one base category,
/// with cached join/meet tables and per-class membership vectors.
class ClassContext {
 public:
  explicit ClassContext(CategoryPtr A, ContextOptions opts = {}) : a_(std::move(A)), opts_(opts) {}

  const CategoryPtr& base() const noexcept { return a_; }
  const QCategory& category() const noexcept { return *a_; }
  const ContextOptions& options() const noexcept { return opts_; }

  const PresheafCategory& pa() const {
    if (!pa_) pa_ = std::make_shared<PresheafCategory>(presheaf_category(a_, {opts_.enumeration, opts_.validate_up_to}));
    return *pa_;
  }
  const CopresheafCategory& copa() const {
    if (!copa_)
      copa_ = std::make_shared<CopresheafCategory>(copresheaf_category(a_, {opts_.enumeration, opts_.validate_up_to}));
    return *copa_;
  }

  /// Index in pa() of the pointwise join of members i and j (same type).
  std::size_t pa_join(std::size_t i, std::size_t j) const {
    return cached_pair(pa(), pa_types_, pa_tables_, i, j, [&](const Presheaf& a, const Presheaf& b) {
      return pointwise_join(*a_, a, b);
    });
  }
  /// Index in copa() of the pointwise meet of members i and j (same type).
  std::size_t copa_meet(std::size_t i, std::size_t j) const {
    return cached_pair(copa(), copa_types_, copa_tables_, i, j, [&](const Copresheaf& a, const Copresheaf& b) {
      return pointwise_meet(*a_, a, b);
    });
  }

  /// Members of pa() of type q, in pa() order.
  const std::vector<std::size_t>& pa_of_type(Obj q) const { return of_type(pa(), pa_types_, q); }
  const std::vector<std::size_t>& copa_of_type(Obj q) const { return of_type(copa(), copa_types_, q); }

  std::map<std::string, std::vector<std::uint8_t>>& membership_cache() const { return membership_; }

 private:
  template <class PC>
  const std::vector<std::size_t>& of_type(const PC& pc, std::map<Obj, std::vector<std::size_t>>& cache, Obj q) const {
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, pc.of_type(q)).first;
    return it->second;
  }

  struct PairTable {
    std::vector<std::size_t> local;  // position of each member inside its type block
    std::map<Obj, std::vector<std::size_t>> table;
  };

  template <class PC, class Op>
  std::size_t cached_pair(const PC& pc, std::map<Obj, std::vector<std::size_t>>& types, PairTable& t, std::size_t i,
                          std::size_t j, Op&& op) const {
    const Obj q = pc[i].type;
    if (pc[j].type != q) throw TypeMismatch("pairwise operation on different types");
    const auto& block = of_type(pc, types, q);
    if (block.size() > opts_.table_cap) return pc.at(op(pc[i], pc[j]));
    if (t.local.empty()) {
      t.local.assign(pc.size(), 0);
      for (Obj o = 0; o < a_->quantaloid().num_objects(); ++o) {
        const auto& b = of_type(pc, types, o);
        for (std::size_t k = 0; k < b.size(); ++k) t.local[b[k]] = k;
      }
    }
    auto& tab = t.table[q];
    const std::size_t m = block.size();
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    if (tab.empty()) tab.assign(m * m, unset);
    auto& slot = tab[t.local[i] * m + t.local[j]];
    if (slot == unset) slot = pc.at(op(pc[i], pc[j]));
    return slot;
  }

  CategoryPtr a_;
  ContextOptions opts_;
  mutable std::shared_ptr<PresheafCategory> pa_;
  mutable std::shared_ptr<CopresheafCategory> copa_;
  mutable PairTable pa_tables_, copa_tables_;
  mutable std::map<Obj, std::vector<std::size_t>> pa_types_, copa_types_;
  mutable std::map<std::string, std::vector<std::uint8_t>> membership_;
};

// ---------------------------------------------------------------------------
// Predicates

struct PairWitness {
  bool holds = true;
  /// Indices into pa() (irreducible) or copa() (flat) of the first failing pair.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// PA(φ, φ1∨φ2) = PA(φ,φ1) ∨ PA(φ,φ2) for all same-type φ1, φ2, over every type.
inline PairWitness is_irreducible(const ClassContext& ctx, const Presheaf& phi) {
  const auto& A = ctx.category();
  const auto& Q = A.quantaloid();
  const auto& pa = ctx.pa();
  std::vector<Elem> h(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) h[i] = presheaf_hom(A, phi, pa[i]);
  for (Obj q = 0; q < Q.num_objects(); ++q) {
    const auto& H = Q.hom(phi.type, q);
    const auto& block = ctx.pa_of_type(q);
    for (std::size_t bi = 0; bi < block.size(); ++bi)
      for (std::size_t bj = bi + 1; bj < block.size(); ++bj) {
        const std::size_t i = block[bi], j = block[bj];
        if (h[ctx.pa_join(i, j)] != H.join(h[i], h[j])) return {false, std::make_pair(i, j)};
      }
  }
  return {};
}

namespace detail {

inline PairWitness flat_check(const ClassContext& ctx, const Presheaf& phi, bool only_inhabited) {
  const auto& A = ctx.category();
  const auto& Q = A.quantaloid();
  const auto& copa = ctx.copa();
  std::vector<Elem> h(copa.size());
  std::vector<std::uint8_t> inh(copa.size(), 1);
  for (std::size_t i = 0; i < copa.size(); ++i) {
    h[i] = pair_presheaves(A, phi, copa[i]);
    if (only_inhabited) inh[i] = inhabited_co(A, copa[i]) ? 1 : 0;
  }
  for (Obj p = 0; p < Q.num_objects(); ++p) {
    const auto& H = Q.hom(p, phi.type);
    const auto& block = ctx.copa_of_type(p);
    for (std::size_t bi = 0; bi < block.size(); ++bi)
      for (std::size_t bj = bi + 1; bj < block.size(); ++bj) {
        const std::size_t i = block[bi], j = block[bj];
        if (!inh[i] || !inh[j]) continue;
        if (h[ctx.copa_meet(i, j)] != H.meet(h[i], h[j])) return {false, std::make_pair(i, j)};
      }
  }
  return {};
}

}  // namespace detail

/// φ∘(λ1∧λ2) = φ∘λ1 ∧ φ∘λ2 for all same-type copresheaves, over every type.
inline PairWitness is_flat(const ClassContext& ctx, const Presheaf& phi) { return detail::flat_check(ctx, phi, false); }

/// The flat equation restricted to inhabited copresheaves.
inline PairWitness is_weakly_flat(const ClassContext& ctx, const Presheaf& phi) {
  return detail::flat_check(ctx, phi, true);
}

/// Elements a of type(φ) with Y(a) <= φ, in carrier order.
inline std::vector<std::size_t> representables_below(const QCategory& A, const Presheaf& phi) {
  std::vector<std::size_t> out;
  for (auto a : A.of_type(phi.type))
    if (pointwise_leq(A, representable(A, a), phi)) out.push_back(a);
  return out;
}

inline Presheaf join_of_representables(const QCategory& A, Obj q, const std::vector<std::size_t>& elems) {
  Presheaf acc = bottom_presheaf(A, q);
  for (auto a : elems) acc = pointwise_join(A, acc, representable(A, a));
  return acc;
}

/// φ = ⋁{Y(a) : Y(a) <= φ}.
inline bool is_conical(const ClassContext& ctx, const Presheaf& phi) {
  const auto& A = ctx.category();
  return join_of_representables(A, phi.type, representables_below(A, phi)) == phi;
}

struct ConicalIdealResult {
  bool holds = false;
  std::vector<std::size_t> witness;  // a directed generating set
  std::vector<std::size_t> candidates;  // {a : Y(a) <= φ}
  /// On failure: two candidates with no upper bound among the candidates, if there are such.
  std::optional<std::pair<std::size_t, std::size_t>> unbounded_pair;
};

/// Searches the nonempty subsets of {a : Y(a) <= φ}, smallest first, for one
/// that is directed in the underlying preorder and whose representables join to φ.
inline ConicalIdealResult is_conical_ideal(const ClassContext& ctx, const Presheaf& phi) {
  const auto& A = ctx.category();
  auto cand = representables_below(A, phi);
  if (cand.size() > ctx.options().conical_subset_cap) throw SubsetSearchCapExceeded(ctx.options().conical_subset_cap);
  const auto pre = underlying_preorder(A);
  const std::size_t m = cand.size();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 1; s < (1u << m); ++s) masks.push_back(s);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (auto s : masks) {
    std::vector<std::size_t> sub;
    for (std::size_t k = 0; k < m; ++k)
      if (s >> k & 1u) sub.push_back(cand[k]);
    bool directed = true;
    for (std::size_t i = 0; i < sub.size() && directed; ++i)
      for (std::size_t j = i + 1; j < sub.size() && directed; ++j) {
        bool ub = false;
        for (auto u : sub) ub = ub || (pre.leq(sub[i], u) && pre.leq(sub[j], u));
        directed = ub;
      }
    if (directed && join_of_representables(A, phi.type, sub) == phi) return {true, sub, cand, std::nullopt};
  }
  ConicalIdealResult r{false, {}, cand, std::nullopt};
  for (std::size_t i = 0; i < m && !r.unbounded_pair; ++i)
    for (std::size_t j = i + 1; j < m && !r.unbounded_pair; ++j) {
      bool ub = false;
      for (auto u : cand) ub = ub || (pre.leq(cand[i], u) && pre.leq(cand[j], u));
      if (!ub) r.unbounded_pair = std::make_pair(cand[i], cand[j]);
    }
  return r;
}

inline bool is_representable(const QCategory& A, const Presheaf& phi) {
  for (auto a : A.of_type(phi.type))
    if (representable(A, a) == phi) return true;
  return false;
}

inline bool membership(const IdealClass& c, const ClassContext& ctx, const Presheaf& phi) {
  const auto& A = ctx.category();
  if (c.inhabited_only && !inhabited(A, phi)) return false;
  switch (c.base) {
    case BaseClass::representable: return is_representable(A, phi);
    case BaseClass::all: return true;
    case BaseClass::irreducible: return is_irreducible(ctx, phi).holds;
    case BaseClass::flat: return is_flat(ctx, phi).holds;
    case BaseClass::weakly_flat: return is_weakly_flat(ctx, phi).holds;
    case BaseClass::conical: return is_conical(ctx, phi);
    case BaseClass::conical_ideal: return is_conical_ideal(ctx, phi).holds;
    case BaseClass::custom: return c.custom(ctx, phi);
  }
  return false;
}

/// Membership of every presheaf in ctx.pa(), cached per class id.
inline const std::vector<std::uint8_t>& membership_all(const IdealClass& c, const ClassContext& ctx) {
  auto& cache = ctx.membership_cache();
  auto it = cache.find(c.id());
  if (it != cache.end()) return it->second;
  const auto& pa = ctx.pa();
  std::vector<std::uint8_t> v(pa.size(), 0);
  for (std::size_t i = 0; i < pa.size(); ++i) v[i] = membership(c, ctx, pa[i]) ? 1 : 0;
  return cache.emplace(c.id(), std::move(v)).first->second;
}

// ---------------------------------------------------------------------------
// ΦA

struct PhiCategory {
  IdealClass cls;
  CategoryPtr base;
  std::vector<std::size_t> members;     // indices into the presheaf category
  std::vector<Presheaf> presheaves;     // members, in order
  CategoryPtr as_category;
  QFunctor inclusion;                   // ΦA → PA
  std::optional<QFunctor> yoneda;       // A → ΦA, when every representable is a member
  std::optional<std::size_t> missing_representable;

  std::size_t size() const noexcept { return members.size(); }
  std::optional<std::size_t> find(const Presheaf& p) const {
    auto it = std::find(presheaves.begin(), presheaves.end(), p);
    if (it == presheaves.end()) return std::nullopt;
    return static_cast<std::size_t>(it - presheaves.begin());
  }
};

inline PhiCategory phi_category(const IdealClass& c, const ClassContext& ctx) {
  const auto& pa = ctx.pa();
  const auto& mem = membership_all(c, ctx);
  PhiCategory phi;
  phi.cls = c;
  phi.base = ctx.base();
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (mem[i]) {
      phi.members.push_back(i);
      phi.presheaves.push_back(pa[i]);
    }
  const std::size_t n = phi.members.size();
  CategorySpec s{ctx.base()->ambient(), {}, {}, {}};
  for (auto i : phi.members) {
    s.names.push_back(pa.as_category->name(i));
    s.types.push_back(pa[i].type);
  }
  for (auto i : phi.members)
    for (auto j : phi.members) s.hom.push_back(pa.as_category->hom(i, j));
  phi.as_category = n <= ctx.options().validate_up_to ? validate_category(std::move(s)) : trusted_category(std::move(s));
  phi.inclusion = QFunctor{phi.as_category, pa.as_category, phi.members};
  const auto& A = ctx.category();
  QFunctor y{ctx.base(), phi.as_category, {}};
  for (std::size_t a = 0; a < A.size(); ++a) {
    auto idx = phi.find(representable(A, a));
    if (!idx) {
      phi.missing_representable = a;
      break;
    }
    y.map.push_back(*idx);
  }
  if (!phi.missing_representable) phi.yoneda = std::move(y);
  return phi;
}

struct ColumnWitness {
  bool holds = true;
  std::optional<std::size_t> failing_column;
};

/// Every column φ(−,b) is a Φ-ideal; ctx must be the context of dom(φ).
inline ColumnWitness is_phi_distributor(const IdealClass& c, const ClassContext& ctx, const QDistributor& d) {
  if (!same_category(ctx.base(), d.dom)) throw TypeMismatch("is_phi_distributor: context is not the domain");
  for (std::size_t b = 0; b < d.cod->size(); ++b)
    if (!membership(c, ctx, column(d, b))) return {false, b};
  return {};
}

struct CocompletenessReport {
  bool verdict = true;
  std::vector<std::size_t> missing;     // ΦA indices without a sup
  std::vector<SupResult> sup_table;     // per ΦA index
  std::optional<QFunctor> sup_functor;  // ΦA → A, when verdict
  std::optional<bool> adjoint_ok;       // sup ⊣ co-restricted Yoneda
};

inline CocompletenessReport check_cocomplete(const PhiCategory& phi) {
  const auto& A = *phi.base;
  CocompletenessReport r;
  QFunctor s{phi.as_category, phi.base, {}};
  for (std::size_t k = 0; k < phi.size(); ++k) {
    r.sup_table.push_back(sup(A, phi.presheaves[k]));
    if (!r.sup_table.back().exists)
      r.missing.push_back(k);
    else
      s.map.push_back(*r.sup_table.back().canonical);
  }
  r.verdict = r.missing.empty();
  if (r.verdict) {
    s = validate_functor(std::move(s));
    if (phi.yoneda) r.adjoint_ok = check_adjoint(s, *phi.yoneda).holds;
    r.sup_functor = std::move(s);
  }
  return r;
}

struct CocontinuityResult {
  bool holds = true;
  std::optional<std::size_t> witness;  // ΦA index of the first ideal whose sup is not preserved
};

/// F preserves every existing sup of a Φ-ideal: sup(F→φ) exists and contains F(sup φ).
inline CocontinuityResult check_cocontinuous(const PhiCategory& phi, const QFunctor& f) {
  if (!same_category(phi.base, f.dom)) throw TypeMismatch("check_cocontinuous: functor domain is not the base");
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    auto s = sup(A, phi.presheaves[k]);
    if (!s.exists) continue;
    auto t = sup(B, f_to(f, phi.presheaves[k]));
    const std::size_t image = f.map[*s.canonical];
    if (!t.exists || std::find(t.representatives.begin(), t.representatives.end(), image) == t.representatives.end())
      return {false, k};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Functor search

/// Maps a ↦ target element, with a's candidates supplied per element and the
/// functor inequality A(a',a) <= T(Ga',Ga) enforced during backtracking.
struct FunctorSpace {
  const QCategory* dom = nullptr;
  const QCategory* target = nullptr;
  std::vector<std::vector<std::size_t>> candidates;
};

inline FunctorSpace functor_space(const QCategory& A, const QCategory& T,
                                  const std::function<bool(std::size_t, std::size_t)>& allowed = {}) {
  FunctorSpace s{&A, &T, {}};
  for (std::size_t a = 0; a < A.size(); ++a) {
    std::vector<std::size_t> c;
    for (auto t : T.of_type(A.type(a)))
      if (!allowed || allowed(a, t)) c.push_back(t);
    s.candidates.push_back(std::move(c));
  }
  return s;
}

namespace detail {

inline bool functor_fits(const FunctorSpace& s, const std::vector<std::size_t>& g, std::size_t a, std::size_t t) {
  const auto& A = *s.dom;
  const auto& T = *s.target;
  const auto& Q = A.quantaloid();
  if (!Q.hom(A.type(a), A.type(a)).leq(A.hom(a, a), T.hom(t, t))) return false;
  for (std::size_t a1 = 0; a1 < a; ++a1) {
    if (!Q.hom(A.type(a1), A.type(a)).leq(A.hom(a1, a), T.hom(g[a1], t))) return false;
    if (!Q.hom(A.type(a), A.type(a1)).leq(A.hom(a, a1), T.hom(t, g[a1]))) return false;
  }
  return true;
}

}  // namespace detail

struct FunctorEnumeration {
  std::vector<std::vector<std::size_t>> maps;
  bool complete = true;  // false when the limit stopped enumeration early
};

/// Lexicographic enumeration, stopping after `limit` maps.
inline FunctorEnumeration enumerate_functor_maps(const FunctorSpace& s, std::size_t limit) {
  FunctorEnumeration out;
  const std::size_t n = s.dom->size();
  std::vector<std::size_t> g(n, 0);
  auto rec = [&](auto&& self, std::size_t a) -> bool {
    if (a == n) {
      if (out.maps.size() >= limit) {
        out.complete = false;
        return false;
      }
      out.maps.push_back(g);
      return true;
    }
    for (auto t : s.candidates[a]) {
      if (!detail::functor_fits(s, g, a, t)) continue;
      g[a] = t;
      if (!self(self, a + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
  return out;
}

/// Up to `count` distinct maps found by randomized backtracking from `seed`.
inline std::vector<std::vector<std::size_t>> sample_functor_maps(const FunctorSpace& s, std::size_t count,
                                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = s.dom->size();
  std::vector<std::vector<std::size_t>> out;
  std::map<std::vector<std::size_t>, bool> seen;
  const std::size_t attempts = count * 20;
  for (std::size_t k = 0; k < attempts && out.size() < count; ++k) {
    std::vector<std::size_t> g(n, 0);
    auto rec = [&](auto&& self, std::size_t a) -> bool {
      if (a == n) return true;
      auto order = s.candidates[a];
      std::shuffle(order.begin(), order.end(), rng);
      for (auto t : order) {
        if (!detail::functor_fits(s, g, a, t)) continue;
        g[a] = t;
        if (self(self, a + 1)) return true;
      }
      return false;
    };
    if (!rec(rec, 0)) break;
    if (seen.emplace(g, true).second) out.push_back(g);
  }
  return out;
}

struct FunctorSelection {
  std::vector<std::vector<std::size_t>> maps;
  bool exhaustive = true;
  std::size_t space_lower_bound = 0;  // candidates seen before sampling kicked in
};

/// Exhaustive when at most `exhaustive_cap` maps exist, else a seeded sample of `sample`.
inline FunctorSelection select_functor_maps(const FunctorSpace& s, std::size_t exhaustive_cap, std::size_t sample,
                                            std::uint64_t seed) {
  auto e = enumerate_functor_maps(s, exhaustive_cap);
  if (e.complete) return {std::move(e.maps), true, 0};
  return {sample_functor_maps(s, sample, seed), false, exhaustive_cap + 1};
}

// ---------------------------------------------------------------------------
// Saturation harness

struct SaturationOptions {
  std::size_t exhaustive_cap = 5000;
  std::size_t sample_size = 1000;
  std::uint64_t seed = 1;
  /// Presheaves on ΦA are enumerated for the sup-formula check only when |ΦA| is at most this.
  std::size_t phi_of_phi_cap = 8;
};

struct SaturationCheck {
  std::string name;
  std::string fixtures;
  std::size_t cases = 0;
  std::size_t counterexamples = 0;
  bool exhaustive = true;
  bool skipped = false;
  std::string first_witness;
};

struct SaturationReport {
  std::string class_id;
  bool pass = true;
  std::vector<SaturationCheck> checks;
  std::vector<std::string> disclosures;
};

struct NamedContext {
  std::string name;
  std::shared_ptr<ClassContext> ctx;
};

namespace detail {

inline QDistributor distributor_from_columns(const CategoryPtr& A, const CategoryPtr& B, const PhiCategory& phiA,
                                             const std::vector<std::size_t>& cols) {
  QDistributor d{A, B, std::vector<Elem>(A->size() * B->size(), 0)};
  for (std::size_t b = 0; b < B->size(); ++b)
    for (std::size_t x = 0; x < A->size(); ++x) d.at(x, b) = phiA.presheaves[cols[b]].values[x];
  return d;
}

inline std::string describe_map(const QCategory& A, const QCategory& T, const std::vector<std::size_t>& g) {
  std::string s = "{";
  for (std::size_t a = 0; a < g.size(); ++a) s += (a ? "," : "") + A.name(a) + "->" + T.name(g[a]);
  return s + "}";
}

}  // namespace detail

/// Refutation-style evidence for saturation of a class on the given fixtures.
/// Passing is evidence on these instances only.
inline SaturationReport saturation_harness(const IdealClass& c, const std::vector<NamedContext>& fixtures,
                                           SaturationOptions opts = {}) {
  SaturationReport rep;
  rep.class_id = c.id();
  rep.disclosures.push_back("instance-level refutation harness; a pass is not a proof of saturation");
  std::vector<PhiCategory> phis;
  for (const auto& f : fixtures) phis.push_back(phi_category(c, *f.ctx));
  auto sampled_note = [&](const std::string& what) {
    rep.disclosures.push_back(what + ": more than " + std::to_string(opts.exhaustive_cap) + " candidates, seeded sample of " +
                              std::to_string(opts.sample_size) + " (seed " + std::to_string(opts.seed) + ")");
  };
  auto finish = [&](SaturationCheck ch) {
    if (ch.counterexamples) rep.pass = false;
    rep.checks.push_back(std::move(ch));
  };

  // representables
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    SaturationCheck ch;
    ch.name = "representables";
    ch.fixtures = fixtures[i].name;
    const auto& A = fixtures[i].ctx->category();
    ch.cases = A.size();
    for (std::size_t a = 0; a < A.size(); ++a)
      if (!phis[i].find(representable(A, a))) {
        if (!ch.counterexamples++) ch.first_witness = "Y(" + A.name(a) + ") not in class";
      }
    finish(std::move(ch));
  }

  for (std::size_t i = 0; i < fixtures.size(); ++i)
    for (std::size_t j = 0; j < fixtures.size(); ++j) {
      const auto& ci = *fixtures[i].ctx;
      const auto& cj = *fixtures[j].ctx;
      if (ci.base()->ambient() != cj.base()->ambient()) continue;
      const auto& A = ci.category();
      const auto& B = cj.category();
      const std::string pair = fixtures[i].name + "->" + fixtures[j].name;

      // functor images: F→(φ) ∈ ΦB for every functor F: A → B
      {
        SaturationCheck ch;
    ch.name = "functor-image";
    ch.fixtures = pair;
        auto sel = select_functor_maps(functor_space(A, B), opts.exhaustive_cap, opts.sample_size, opts.seed);
        ch.exhaustive = sel.exhaustive;
        if (!sel.exhaustive) sampled_note("functor-image " + pair);
        for (const auto& m : sel.maps) {
          QFunctor f{ci.base(), cj.base(), m};
          for (const auto& mu : phis[i].presheaves) {
            ++ch.cases;
            if (!phis[j].find(f_to(f, mu))) {
              if (!ch.counterexamples++)
                ch.first_witness = "F=" + detail::describe_map(A, B, m) + " mu=" + presheaf_name(A, mu);
            }
          }
        }
        finish(std::move(ch));
      }

      // colimit closure: colim(μ, G) ∈ ΦB for μ ∈ ΦA and G: A → PB with each G(a) ∈ ΦB
      {
        SaturationCheck ch;
    ch.name = "colimit-closure";
    ch.fixtures = pair;
        const auto& pb = cj.pa();
        auto sel = select_functor_maps(
            functor_space(A, *phis[j].as_category), opts.exhaustive_cap, opts.sample_size, opts.seed);
        ch.exhaustive = sel.exhaustive;
        if (!sel.exhaustive) sampled_note("colimit-closure " + pair);
        for (const auto& m : sel.maps) {
          QFunctor g{ci.base(), pb.as_category, {}};
          for (auto k : m) g.map.push_back(phis[j].members[k]);
          for (const auto& mu : phis[i].presheaves) {
            ++ch.cases;
            auto col = sup_in_presheaf_category(pb, f_to(g, mu));
            if (!phis[j].find(col)) {
              if (!ch.counterexamples++)
                ch.first_witness = "G=" + detail::describe_map(A, *phis[j].as_category, m) + " mu=" +
                                   presheaf_name(A, mu) + " colim=" + presheaf_name(B, col);
            }
          }
        }
        finish(std::move(ch));
      }

      // composition of Φ-distributors φ: A ⇸ B and ψ: B ⇸ C stays a Φ-distributor
      for (std::size_t k = 0; k < fixtures.size(); ++k) {
        const auto& ck = *fixtures[k].ctx;
        if (ck.base()->ambient() != ci.base()->ambient()) continue;
        const auto& C = ck.category();
        SaturationCheck ch;
    ch.name = "distributor-composition";
    ch.fixtures = pair + "->" + fixtures[k].name;
        // Φ-distributors A ⇸ B are the functors B → ΦA
        auto phis_ab = select_functor_maps(functor_space(B, *phis[i].as_category), opts.exhaustive_cap,
                                           opts.sample_size, opts.seed);
        auto psis_bc = select_functor_maps(functor_space(C, *phis[j].as_category), opts.exhaustive_cap,
                                           opts.sample_size, opts.seed + 1);
        const std::size_t total = phis_ab.maps.size() * psis_bc.maps.size();
        std::vector<std::pair<std::size_t, std::size_t>> chosen;
        if (total <= opts.exhaustive_cap && phis_ab.exhaustive && psis_bc.exhaustive) {
          for (std::size_t u = 0; u < phis_ab.maps.size(); ++u)
            for (std::size_t v = 0; v < psis_bc.maps.size(); ++v) chosen.emplace_back(u, v);
        } else {
          ch.exhaustive = false;
          sampled_note("distributor-composition " + ch.fixtures);
          std::mt19937_64 rng(opts.seed + 2);
          if (total > 0) {
            std::uniform_int_distribution<std::size_t> du(0, phis_ab.maps.size() - 1), dv(0, psis_bc.maps.size() - 1);
            for (std::size_t s = 0; s < opts.sample_size; ++s) chosen.emplace_back(du(rng), dv(rng));
          }
        }
        for (auto [u, v] : chosen) {
          auto phi = detail::distributor_from_columns(ci.base(), cj.base(), phis[i], phis_ab.maps[u]);
          auto psi = detail::distributor_from_columns(cj.base(), ck.base(), phis[j], psis_bc.maps[v]);
          auto comp = dist_compose(psi, phi);
          ++ch.cases;
          for (std::size_t z = 0; z < C.size(); ++z)
            if (!phis[i].find(column(comp, z))) {
              if (!ch.counterexamples++)
                ch.first_witness = "phi columns " + detail::describe_map(B, *phis[i].as_category, phis_ab.maps[u]) +
                                   " psi columns " + detail::describe_map(C, *phis[j].as_category, psis_bc.maps[v]) +
                                   " column " + C.name(z);
              break;
            }
        }
        finish(std::move(ch));
      }
    }

  // sup Ψ in ΦA equals sup(i→Ψ) in PA, for Ψ ∈ Φ(ΦA)
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    SaturationCheck ch;
    ch.name = "sup-formula";
    ch.fixtures = fixtures[i].name;
    const auto& phi = phis[i];
    if (phi.size() > opts.phi_of_phi_cap) {
      ch.skipped = true;
      rep.disclosures.push_back("sup-formula " + fixtures[i].name + ": skipped, |PhiA| = " + std::to_string(phi.size()) +
                                " exceeds " + std::to_string(opts.phi_of_phi_cap));
      rep.checks.push_back(std::move(ch));
      continue;
    }
    ClassContext pctx(phi.as_category, fixtures[i].ctx->options());
    const auto& pa = fixtures[i].ctx->pa();
    const auto& mem = membership_all(c, pctx);
    for (std::size_t k = 0; k < pctx.pa().size(); ++k) {
      if (!mem[k]) continue;
      const auto& psi = pctx.pa()[k];
      ++ch.cases;
      auto pushed = sup_in_presheaf_category(pa, f_to(phi.inclusion, psi));
      auto in_phi = phi.find(pushed);
      auto generic = sup(*phi.as_category, psi);
      if (!in_phi || !generic.exists || *generic.canonical != *in_phi) {
        if (!ch.counterexamples++) ch.first_witness = "Psi=" + presheaf_name(*phi.as_category, psi);
      }
    }
    finish(std::move(ch));
  }
  return rep;
}

}  // namespace qdomain
