#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "category.hpp"
#include "errors.hpp"

namespace qdomain {

/// A presheaf μ: A ⇸ {type}; values[x] is an arrow type(x) -> type.
struct Presheaf {
  Obj type = 0;
  std::vector<Elem> values;
  auto operator<=>(const Presheaf&) const = default;
};

/// A copresheaf λ: {type} ⇸ A; values[x] is an arrow type -> type(x).
struct Copresheaf {
  Obj type = 0;
  std::vector<Elem> values;
  auto operator<=>(const Copresheaf&) const = default;
};

struct EnumerationOptions {
  std::size_t cap = 20000;
};

namespace detail {

// Backtracking over carrier order; `fits(values, x, v)` checks every constraint
// between x and the already-assigned prefix. Output is lexicographic.
template <class Fits, class Domain>
std::vector<std::vector<Elem>> enumerate_assignments(std::size_t n, Domain&& domain_size, Fits&& fits,
                                                     std::size_t cap) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> vals(n, 0);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      if (out.size() >= cap) throw EnumerationCapExceeded(cap);
      out.push_back(vals);
      return;
    }
    const std::size_t m = domain_size(x);
    for (Elem v = 0; v < m; ++v) {
      if (!fits(vals, x, v)) continue;
      vals[x] = v;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// Every presheaf of type q on A, lexicographic in carrier / lattice order.
inline std::vector<Presheaf> enumerate_presheaves(const QCategory& A, Obj q, EnumerationOptions opts = {}) {
  const auto& Q = A.quantaloid();
  auto fits = [&](const std::vector<Elem>& mu, std::size_t x, Elem v) {
    const Obj tx = A.type(x);
    const auto& Hx = Q.hom(tx, q);
    if (!Hx.leq(Q.compose(tx, tx, q, v, A.hom(x, x)), v)) return false;
    for (std::size_t x1 = 0; x1 < x; ++x1) {
      const Obj t1 = A.type(x1);
      // μ(x')∘A(x,x') <= μ(x) and μ(x)∘A(x',x) <= μ(x')
      if (!Hx.leq(Q.compose(tx, t1, q, mu[x1], A.hom(x, x1)), v)) return false;
      if (!Q.hom(t1, q).leq(Q.compose(t1, tx, q, v, A.hom(x1, x)), mu[x1])) return false;
    }
    return true;
  };
  auto dom = [&](std::size_t x) { return Q.hom(A.type(x), q).size(); };
  std::vector<Presheaf> out;
  for (auto& v : detail::enumerate_assignments(A.size(), dom, fits, opts.cap)) out.push_back({q, std::move(v)});
  return out;
}

/// Every copresheaf of type q on A, lexicographic.
inline std::vector<Copresheaf> enumerate_copresheaves(const QCategory& A, Obj q, EnumerationOptions opts = {}) {
  const auto& Q = A.quantaloid();
  auto fits = [&](const std::vector<Elem>& la, std::size_t x, Elem v) {
    const Obj tx = A.type(x);
    const auto& Hx = Q.hom(q, tx);
    if (!Hx.leq(Q.compose(q, tx, tx, A.hom(x, x), v), v)) return false;
    for (std::size_t x1 = 0; x1 < x; ++x1) {
      const Obj t1 = A.type(x1);
      // A(x',x)∘λ(x') <= λ(x) and A(x,x')∘λ(x) <= λ(x')
      if (!Hx.leq(Q.compose(q, t1, tx, A.hom(x1, x), la[x1]), v)) return false;
      if (!Q.hom(q, t1).leq(Q.compose(q, tx, t1, A.hom(x, x1), v), la[x1])) return false;
    }
    return true;
  };
  auto dom = [&](std::size_t x) { return Q.hom(q, A.type(x)).size(); };
  std::vector<Copresheaf> out;
  for (auto& v : detail::enumerate_assignments(A.size(), dom, fits, opts.cap)) out.push_back({q, std::move(v)});
  return out;
}

inline bool is_presheaf(const QCategory& A, const Presheaf& mu) {
  const auto& Q = A.quantaloid();
  if (mu.values.size() != A.size() || mu.type >= Q.num_objects()) return false;
  for (std::size_t x = 0; x < A.size(); ++x)
    if (mu.values[x] >= Q.hom(A.type(x), mu.type).size()) return false;
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t x1 = 0; x1 < A.size(); ++x1)
      if (!Q.hom(A.type(x), mu.type)
               .leq(Q.compose(A.type(x), A.type(x1), mu.type, mu.values[x1], A.hom(x, x1)), mu.values[x]))
        return false;
  return true;
}

inline bool is_copresheaf(const QCategory& A, const Copresheaf& la) {
  const auto& Q = A.quantaloid();
  if (la.values.size() != A.size() || la.type >= Q.num_objects()) return false;
  for (std::size_t x = 0; x < A.size(); ++x)
    if (la.values[x] >= Q.hom(la.type, A.type(x)).size()) return false;
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t x1 = 0; x1 < A.size(); ++x1)
      if (!Q.hom(la.type, A.type(x))
               .leq(Q.compose(la.type, A.type(x1), A.type(x), A.hom(x1, x), la.values[x1]), la.values[x]))
        return false;
  return true;
}

inline Presheaf validate_presheaf(const QCategory& A, Presheaf mu) {
  if (!is_presheaf(A, mu)) throw ValidationError("BimoduleInequalityViolated", "not a presheaf");
  return mu;
}

/// The representable presheaf A(−, x).
inline Presheaf representable(const QCategory& A, std::size_t x) {
  Presheaf p{A.type(x), std::vector<Elem>(A.size(), 0)};
  for (std::size_t y = 0; y < A.size(); ++y) p.values[y] = A.hom(y, x);
  return p;
}

/// The representable copresheaf A(x, −).
inline Copresheaf corepresentable(const QCategory& A, std::size_t x) {
  Copresheaf p{A.type(x), std::vector<Elem>(A.size(), 0)};
  for (std::size_t y = 0; y < A.size(); ++y) p.values[y] = A.hom(x, y);
  return p;
}

inline Presheaf bottom_presheaf(const QCategory& A, Obj q) {
  Presheaf p{q, std::vector<Elem>(A.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x) p.values[x] = A.quantaloid().hom(A.type(x), q).bottom();
  return p;
}

template <class P>
P pointwise_join(const QCategory& A, const P& a, const P& b) {
  if (a.type != b.type) throw TypeMismatch("pointwise join of different types");
  const auto& Q = A.quantaloid();
  P out{a.type, a.values};
  for (std::size_t x = 0; x < A.size(); ++x) {
    const auto& H = std::is_same_v<P, Presheaf> ? Q.hom(A.type(x), a.type) : Q.hom(a.type, A.type(x));
    out.values[x] = H.join(a.values[x], b.values[x]);
  }
  return out;
}

template <class P>
P pointwise_meet(const QCategory& A, const P& a, const P& b) {
  if (a.type != b.type) throw TypeMismatch("pointwise meet of different types");
  const auto& Q = A.quantaloid();
  P out{a.type, a.values};
  for (std::size_t x = 0; x < A.size(); ++x) {
    const auto& H = std::is_same_v<P, Presheaf> ? Q.hom(A.type(x), a.type) : Q.hom(a.type, A.type(x));
    out.values[x] = H.meet(a.values[x], b.values[x]);
  }
  return out;
}

template <class P>
bool pointwise_leq(const QCategory& A, const P& a, const P& b) {
  if (a.type != b.type) return false;
  const auto& Q = A.quantaloid();
  for (std::size_t x = 0; x < A.size(); ++x) {
    const auto& H = std::is_same_v<P, Presheaf> ? Q.hom(A.type(x), a.type) : Q.hom(a.type, A.type(x));
    if (!H.leq(a.values[x], b.values[x])) return false;
  }
  return true;
}

/// PA(μ, μ') = μ'↙μ = ⋀_x μ'(x)↙μ(x), an arrow type(μ) -> type(μ').
inline Elem presheaf_hom(const QCategory& A, const Presheaf& mu, const Presheaf& mu2) {
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(mu.type, mu2.type);
  Elem acc = H.top();
  for (std::size_t x = 0; x < A.size(); ++x)
    acc = H.meet(acc, Q.lres(A.type(x), mu.type, mu2.type, mu2.values[x], mu.values[x]));
  return acc;
}

/// P†A(λ, λ') = λ'↘λ = ⋀_x λ'(x)↘λ(x), an arrow type(λ) -> type(λ').
inline Elem copresheaf_hom(const QCategory& A, const Copresheaf& la, const Copresheaf& la2) {
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(la.type, la2.type);
  Elem acc = H.top();
  for (std::size_t x = 0; x < A.size(); ++x)
    acc = H.meet(acc, Q.rres(la.type, la2.type, A.type(x), la2.values[x], la.values[x]));
  return acc;
}

/// φ∘λ for a presheaf φ and copresheaf λ: ⋁_x φ(x)∘λ(x), an arrow type(λ) -> type(φ).
inline Elem pair_presheaves(const QCategory& A, const Presheaf& phi, const Copresheaf& la) {
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(la.type, phi.type);
  Elem acc = H.bottom();
  for (std::size_t x = 0; x < A.size(); ++x)
    acc = H.join(acc, Q.compose(la.type, A.type(x), phi.type, phi.values[x], la.values[x]));
  return acc;
}

/// 1_q <= ⋁_{ta=q} μ(a).
inline bool inhabited(const QCategory& A, const Presheaf& mu) {
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(mu.type, mu.type);
  Elem acc = H.bottom();
  for (auto a : A.of_type(mu.type)) acc = H.join(acc, mu.values[a]);
  return H.leq(Q.identity(mu.type), acc);
}

inline bool inhabited_co(const QCategory& A, const Copresheaf& la) {
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(la.type, la.type);
  Elem acc = H.bottom();
  for (auto a : A.of_type(la.type)) acc = H.join(acc, la.values[a]);
  return H.leq(Q.identity(la.type), acc);
}

/// A human-readable id: value names in carrier order, suffixed with the type
/// when the quantaloid has more than one object.
template <class P>
std::string presheaf_name(const QCategory& A, const P& p) {
  const auto& Q = A.quantaloid();
  std::string s = "[";
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (x) s += ",";
    const auto& H = std::is_same_v<P, Presheaf> ? Q.hom(A.type(x), p.type) : Q.hom(p.type, A.type(x));
    s += H.name(p.values[x]);
  }
  s += "]";
  if (Q.num_objects() > 1) s += "@" + Q.object_name(p.type);
  return s;
}

/// μ as the distributor A ⇸ {type}.
inline QDistributor as_distributor(const CategoryPtr& A, const Presheaf& mu) {
  return QDistributor{A, singleton_category(A->ambient(), mu.type), mu.values};
}

inline QDistributor as_distributor(const CategoryPtr& A, const Copresheaf& la) {
  return QDistributor{singleton_category(A->ambient(), la.type), A, la.values};
}

/// The column φ(−, b) of a distributor, as a presheaf on its domain.
inline Presheaf column(const QDistributor& d, std::size_t b) {
  Presheaf p{d.cod->type(b), std::vector<Elem>(d.dom->size(), 0)};
  for (std::size_t x = 0; x < d.dom->size(); ++x) p.values[x] = d(x, b);
  return p;
}

// ---------------------------------------------------------------------------
// Presheaf categories

struct PresheafCategoryOptions {
  EnumerationOptions enumeration;
  /// Run the full category validator when the result has at most this many objects.
  std::size_t validate_up_to = 256;
};

/// PA (or P†A): the enumerated presheaves on A as a skeletal Q-category.
template <class P>
struct GenericPresheafCategory {
  CategoryPtr base;
  std::vector<P> members;  // by type, then lexicographic
  CategoryPtr as_category;
  std::map<P, std::size_t> index;
  bool validated = false;

  std::size_t size() const noexcept { return members.size(); }
  const P& operator[](std::size_t i) const { return members[i]; }
  std::optional<std::size_t> find(const P& p) const {
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(const P& p) const {
    auto i = find(p);
    if (!i) throw ForeignElement("presheaf " + presheaf_name(*base, p) + " not enumerated");
    return *i;
  }
  std::vector<std::size_t> of_type(Obj q) const { return as_category->of_type(q); }
};

using PresheafCategory = GenericPresheafCategory<Presheaf>;
using CopresheafCategory = GenericPresheafCategory<Copresheaf>;

namespace detail {

template <class P, class Enum, class Hom>
GenericPresheafCategory<P> build_presheaf_category(const CategoryPtr& A, PresheafCategoryOptions opts, Enum&& enumerate,
                                                   Hom&& hom) {
  GenericPresheafCategory<P> pc;
  pc.base = A;
  const auto& Q = A->quantaloid();
  for (Obj q = 0; q < Q.num_objects(); ++q) {
    EnumerationOptions eo = opts.enumeration;
    if (pc.members.size() > eo.cap) throw EnumerationCapExceeded(opts.enumeration.cap);
    eo.cap -= pc.members.size();
    auto part = enumerate(*A, q, eo);
    for (auto& p : part) pc.members.push_back(std::move(p));
  }
  const std::size_t n = pc.members.size();
  CategorySpec spec{A->ambient(), {}, {}, std::vector<Elem>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    pc.index.emplace(pc.members[i], i);
    spec.names.push_back(presheaf_name(*A, pc.members[i]));
    spec.types.push_back(pc.members[i].type);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) spec.hom[i * n + j] = hom(*A, pc.members[i], pc.members[j]);
  if (n <= opts.validate_up_to) {
    pc.as_category = validate_category(std::move(spec));
    pc.validated = true;
  } else {
    pc.as_category = trusted_category(std::move(spec));
  }
  return pc;
}

}  // namespace detail

inline PresheafCategory presheaf_category(const CategoryPtr& A, PresheafCategoryOptions opts = {}) {
  return detail::build_presheaf_category<Presheaf>(
      A, opts, [](const QCategory& B, Obj q, EnumerationOptions eo) { return enumerate_presheaves(B, q, eo); },
      presheaf_hom);
}

inline CopresheafCategory copresheaf_category(const CategoryPtr& A, PresheafCategoryOptions opts = {}) {
  return detail::build_presheaf_category<Copresheaf>(
      A, opts, [](const QCategory& B, Obj q, EnumerationOptions eo) { return enumerate_copresheaves(B, q, eo); },
      copresheaf_hom);
}

/// Full subcategory of PA on the given members.
inline CategoryPtr presheaf_subcategory(const PresheafCategory& pa, const std::vector<std::size_t>& members) {
  return full_subcategory(pa.as_category, members).first;
}

/// Yoneda embedding A → PA, x ↦ A(−, x).
inline QFunctor yoneda(const PresheafCategory& pa) {
  const auto& A = *pa.base;
  QFunctor y{pa.base, pa.as_category, {}};
  for (std::size_t x = 0; x < A.size(); ++x) y.map.push_back(pa.at(representable(A, x)));
  return y;
}

struct YonedaCheck {
  bool holds = true;
  std::optional<Witness2> witness;  // (x, μ index)
};

/// PA(Y x, μ) = μ(x) for every x and every enumerated μ.
inline YonedaCheck check_yoneda_lemma(const PresheafCategory& pa) {
  const auto& A = *pa.base;
  for (std::size_t x = 0; x < A.size(); ++x) {
    auto yx = representable(A, x);
    for (std::size_t m = 0; m < pa.size(); ++m)
      if (presheaf_hom(A, yx, pa[m]) != pa[m].values[x]) return {false, Witness2{x, m}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Suprema and colimits

struct SupResult {
  bool exists = false;
  std::vector<std::size_t> representatives;
  std::optional<std::size_t> canonical;
};

/// The row A↙μ : b ↦ ⋀_a A(a,b)↙μ(a); sup(μ) is any s with A(s,−) equal to it.
inline std::vector<Elem> sup_row(const QCategory& A, const Presheaf& mu) {
  const auto& Q = A.quantaloid();
  std::vector<Elem> row(A.size(), 0);
  for (std::size_t b = 0; b < A.size(); ++b) {
    const auto& H = Q.hom(mu.type, A.type(b));
    Elem acc = H.top();
    for (std::size_t a = 0; a < A.size(); ++a)
      acc = H.meet(acc, Q.lres(A.type(a), mu.type, A.type(b), A.hom(a, b), mu.values[a]));
    row[b] = acc;
  }
  return row;
}

inline SupResult sup(const QCategory& A, const Presheaf& mu) {
  auto row = sup_row(A, mu);
  SupResult r;
  for (auto s : A.of_type(mu.type)) {
    bool ok = true;
    for (std::size_t b = 0; b < A.size() && ok; ++b) ok = A.hom(s, b) == row[b];
    if (ok) r.representatives.push_back(s);
  }
  r.exists = !r.representatives.empty();
  if (r.exists) r.canonical = r.representatives.front();
  return r;
}

/// F→(μ) = μ∘F^♮, on B: b ↦ ⋁_a μ(a)∘B(b, Fa).
inline Presheaf f_to(const QFunctor& f, const Presheaf& mu) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  const auto& Q = A.quantaloid();
  if (mu.values.size() != A.size()) throw TypeMismatch("f_to: presheaf not on the functor's domain");
  Presheaf out{mu.type, std::vector<Elem>(B.size(), 0)};
  for (std::size_t b = 0; b < B.size(); ++b) {
    const auto& H = Q.hom(B.type(b), mu.type);
    Elem acc = H.bottom();
    for (std::size_t a = 0; a < A.size(); ++a)
      acc = H.join(acc, Q.compose(B.type(b), A.type(a), mu.type, mu.values[a], B.hom(b, f.map[a])));
    out.values[b] = acc;
  }
  return out;
}

/// F←(λ) = λ∘F♮, on A: a ↦ ⋁_b λ(b)∘B(Fa, b).
inline Presheaf f_from(const QFunctor& f, const Presheaf& la) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  const auto& Q = A.quantaloid();
  if (la.values.size() != B.size()) throw TypeMismatch("f_from: presheaf not on the functor's codomain");
  Presheaf out{la.type, std::vector<Elem>(A.size(), 0)};
  for (std::size_t a = 0; a < A.size(); ++a) {
    const auto& H = Q.hom(A.type(a), la.type);
    Elem acc = H.bottom();
    for (std::size_t b = 0; b < B.size(); ++b)
      acc = H.join(acc, Q.compose(A.type(a), B.type(b), la.type, la.values[b], B.hom(f.map[a], b)));
    out.values[a] = acc;
  }
  return out;
}

/// F→ : PA → PB as a functor between enumerated presheaf categories.
inline QFunctor f_to_functor(const QFunctor& f, const PresheafCategory& pa, const PresheafCategory& pb) {
  QFunctor out{pa.as_category, pb.as_category, {}};
  for (const auto& mu : pa.members) out.map.push_back(pb.at(f_to(f, mu)));
  return out;
}

/// F← : PB → PA.
inline QFunctor f_from_functor(const QFunctor& f, const PresheafCategory& pa, const PresheafCategory& pb) {
  QFunctor out{pb.as_category, pa.as_category, {}};
  for (const auto& la : pb.members) out.map.push_back(pa.at(f_from(f, la)));
  return out;
}

struct ColimResult {
  std::vector<SupResult> per_object;  // indexed by elements of C
  std::optional<QFunctor> functor;    // canonical representatives, when all exist
  bool graph_law_ok = false;          // colim♮ = F♮↙θ
};

/// The weight θ(−,c)∘F^♮ on A for θ: B ⇸ C, F: B → A.
inline Presheaf colim_weight(const QDistributor& theta, const QFunctor& f, std::size_t c) {
  return f_to(f, column(theta, c));
}

/// colim(θ, F): per c, the supremum of θ(−,c)∘F^♮.
inline ColimResult colim(const QDistributor& theta, const QFunctor& f) {
  if (!same_category(theta.dom, f.dom)) throw TypeMismatch("colim: weight and diagram domains differ");
  const auto& A = *f.cod;
  const auto& C = *theta.cod;
  ColimResult r;
  bool all = true;
  QFunctor g{theta.cod, f.cod, {}};
  for (std::size_t c = 0; c < C.size(); ++c) {
    r.per_object.push_back(sup(A, colim_weight(theta, f, c)));
    all = all && r.per_object.back().exists;
    if (r.per_object.back().exists) g.map.push_back(*r.per_object.back().canonical);
  }
  if (all) {
    g = validate_functor(std::move(g));
    r.graph_law_ok = graph(g) == dist_lres(graph(f), theta);
    r.functor = std::move(g);
  }
  return r;
}

/// sup(Ψ) in PA, computed as Ψ∘(Y_A)♮: x ↦ ⋁_μ Ψ(μ)∘μ(x).
inline Presheaf sup_in_presheaf_category(const PresheafCategory& pa, const Presheaf& psi) {
  const auto& A = *pa.base;
  const auto& Q = A.quantaloid();
  if (psi.values.size() != pa.size()) throw TypeMismatch("sup_in_presheaf_category: not a presheaf on PA");
  Presheaf out{psi.type, std::vector<Elem>(A.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x) {
    const auto& H = Q.hom(A.type(x), psi.type);
    Elem acc = H.bottom();
    for (std::size_t m = 0; m < pa.size(); ++m)
      acc = H.join(acc, Q.compose(A.type(x), pa[m].type, psi.type, psi.values[m], pa[m].values[x]));
    out.values[x] = acc;
  }
  return out;
}

}  // namespace qdomain
