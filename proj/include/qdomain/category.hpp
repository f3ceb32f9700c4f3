#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quantaloid.hpp"

namespace qdomain {

/// Unvalidated Q-category data: typed element set plus hom matrix (a*n+b).
struct CategorySpec {
  QuantaloidPtr ambient;
  std::vector<std::string> names;
  std::vector<Obj> types;
  std::vector<Elem> hom;
};

/// A Q-enriched category: A(a,b) is an arrow type(a) -> type(b).
class QCategory {
 public:
  const QuantaloidPtr& ambient() const noexcept { return q_; }
  const Quantaloid& quantaloid() const noexcept { return *q_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  Obj type(std::size_t a) const { return types_[a]; }
  const std::vector<Obj>& types() const noexcept { return types_; }
  Elem hom(std::size_t a, std::size_t b) const { return hom_[a * size() + b]; }
  Arrow hom_arrow(std::size_t a, std::size_t b) const { return {type(a), type(b), hom(a, b)}; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view id) const {
    auto i = find(id);
    if (!i) throw ForeignElement("element '" + std::string(id) + "'");
    return *i;
  }

  /// Elements of the given type, in carrier order.
  std::vector<std::size_t> of_type(Obj q) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
      if (types_[a] == q) out.push_back(a);
    return out;
  }

  bool same_structure(const QCategory& o) const {
    return q_ == o.q_ && names_ == o.names_ && types_ == o.types_ && hom_ == o.hom_;
  }

  CategorySpec spec() const { return {q_, names_, types_, hom_}; }

  friend std::shared_ptr<const QCategory> validate_category(CategorySpec);
  friend std::shared_ptr<const QCategory> trusted_category(CategorySpec);

 private:
  QuantaloidPtr q_;
  std::vector<std::string> names_;
  std::vector<Obj> types_;
  std::vector<Elem> hom_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using CategoryPtr = std::shared_ptr<const QCategory>;

inline CategoryPtr validate_category(CategorySpec spec) {
  if (!spec.ambient) throw ValidationError("TypeMismatch", "no ambient quantaloid");
  const Quantaloid& Q = *spec.ambient;
  const std::size_t n = spec.names.size();
  if (spec.types.size() != n || spec.hom.size() != n * n) throw ValidationError("PartialTable", "category");
  auto c = std::make_shared<QCategory>();
  for (std::size_t a = 0; a < n; ++a) {
    if (spec.types[a] >= Q.num_objects()) throw ValidationError("TypeMismatch", spec.names[a]);
    if (!c->index_.emplace(spec.names[a], a).second) throw ValidationError("DuplicateElement", spec.names[a]);
  }
  const auto& T = spec.types;
  auto H = [&](std::size_t a, std::size_t b) { return spec.hom[a * n + b]; };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (H(a, b) >= Q.hom(T[a], T[b]).size())
        throw ValidationError("TypeMismatch", "hom(" + spec.names[a] + "," + spec.names[b] + ")");
  for (std::size_t a = 0; a < n; ++a)
    if (!Q.hom(T[a], T[a]).leq(Q.identity(T[a]), H(a, a)))
      throw ValidationError("UnitInequalityViolated", spec.names[a]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a1 = 0; a1 < n; ++a1)
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        Elem comp = Q.compose(T[a], T[a1], T[a2], H(a1, a2), H(a, a1));
        if (!Q.hom(T[a], T[a2]).leq(comp, H(a, a2)))
          throw ValidationError("CompositionInequalityViolated",
                                spec.names[a] + "," + spec.names[a1] + "," + spec.names[a2]);
      }
  c->q_ = std::move(spec.ambient);
  c->names_ = std::move(spec.names);
  c->types_ = std::move(spec.types);
  c->hom_ = std::move(spec.hom);
  return c;
}

/// Shape and type checks only. For categories that hold by construction
/// but are too large for the cubic composition check.
inline CategoryPtr trusted_category(CategorySpec spec) {
  const std::size_t n = spec.names.size();
  if (!spec.ambient || spec.types.size() != n || spec.hom.size() != n * n)
    throw ValidationError("PartialTable", "category");
  auto c = std::make_shared<QCategory>();
  for (std::size_t a = 0; a < n; ++a)
    if (!c->index_.emplace(spec.names[a], a).second) throw ValidationError("DuplicateElement", spec.names[a]);
  c->q_ = std::move(spec.ambient);
  c->names_ = std::move(spec.names);
  c->types_ = std::move(spec.types);
  c->hom_ = std::move(spec.hom);
  return c;
}

/// The discrete one-object category {q} with hom 1_q.
inline CategoryPtr singleton_category(const QuantaloidPtr& Q, Obj q) {
  return validate_category({Q, {Q->object_name(q)}, {q}, {Q->identity(q)}});
}

inline bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  return a == b || (a && b && a->same_structure(*b));
}

// ---------------------------------------------------------------------------
// Functors

struct QFunctor {
  CategoryPtr dom;
  CategoryPtr cod;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t a) const { return map[a]; }
  bool operator==(const QFunctor& o) const {
    return same_category(dom, o.dom) && same_category(cod, o.cod) && map == o.map;
  }
};

/// Type preservation and A(a',a) <= B(Fa',Fa).
inline QFunctor validate_functor(QFunctor f) {
  if (!f.dom || !f.cod) throw ValidationError("TypeMismatch", "missing category");
  if (f.dom->ambient() != f.cod->ambient()) throw ValidationError("TypeMismatch", "different quantaloids");
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  const auto& Q = A.quantaloid();
  if (f.map.size() != A.size()) throw ValidationError("PartialTable", "functor map");
  for (std::size_t a = 0; a < A.size(); ++a) {
    if (f.map[a] >= B.size()) throw ValidationError("ForeignElement", A.name(a));
    if (B.type(f.map[a]) != A.type(a)) throw ValidationError("TypeMismatch", A.name(a) + " -> " + B.name(f.map[a]));
  }
  for (std::size_t a1 = 0; a1 < A.size(); ++a1)
    for (std::size_t a = 0; a < A.size(); ++a)
      if (!Q.hom(A.type(a1), A.type(a)).leq(A.hom(a1, a), B.hom(f.map[a1], f.map[a])))
        throw ValidationError("HomInequalityViolated", A.name(a1) + "," + A.name(a));
  return f;
}

inline QFunctor identity_functor(const CategoryPtr& A) {
  QFunctor f{A, A, {}};
  for (std::size_t a = 0; a < A->size(); ++a) f.map.push_back(a);
  return f;
}

/// G∘F.
inline QFunctor compose(const QFunctor& g, const QFunctor& f) {
  if (!same_category(f.cod, g.dom)) throw TypeMismatch("functor composition");
  QFunctor h{f.dom, g.cod, {}};
  for (auto x : f.map) h.map.push_back(g.map[x]);
  return h;
}

inline bool is_fully_faithful(const QFunctor& f) {
  for (std::size_t a1 = 0; a1 < f.dom->size(); ++a1)
    for (std::size_t a = 0; a < f.dom->size(); ++a)
      if (f.dom->hom(a1, a) != f.cod->hom(f.map[a1], f.map[a])) return false;
  return true;
}

/// Full subcategory on the given elements (kept in the given order) and its inclusion.
inline std::pair<CategoryPtr, QFunctor> full_subcategory(const CategoryPtr& A, const std::vector<std::size_t>& elems) {
  CategorySpec s{A->ambient(), {}, {}, {}};
  for (auto a : elems) {
    s.names.push_back(A->name(a));
    s.types.push_back(A->type(a));
  }
  for (auto a : elems)
    for (auto b : elems) s.hom.push_back(A->hom(a, b));
  auto sub = validate_category(std::move(s));
  return {sub, QFunctor{sub, A, elems}};
}

// ---------------------------------------------------------------------------
// Preorder

struct Preorder {
  std::vector<std::string> carrier;
  std::vector<std::uint8_t> rel;  // a*n+b

  std::size_t size() const noexcept { return carrier.size(); }
  bool leq(std::size_t a, std::size_t b) const { return rel[a * size() + b] != 0; }
  bool operator==(const Preorder&) const = default;
};

/// x <= y iff same type and 1 <= A(x,y).
inline Preorder underlying_preorder(const QCategory& A) {
  const auto& Q = A.quantaloid();
  Preorder p{A.names(), std::vector<std::uint8_t>(A.size() * A.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y)
      if (A.type(x) == A.type(y) && Q.hom(A.type(x), A.type(x)).leq(Q.identity(A.type(x)), A.hom(x, y)))
        p.rel[x * A.size() + y] = 1;
  return p;
}

inline bool isomorphic(const QCategory& A, std::size_t x, std::size_t y) {
  if (A.type(x) != A.type(y)) return false;
  const auto& Q = A.quantaloid();
  const auto& H = Q.hom(A.type(x), A.type(x));
  Elem one = Q.identity(A.type(x));
  return H.leq(one, A.hom(x, y)) && H.leq(one, A.hom(y, x));
}

/// Partition into isomorphism classes, each class and the list in carrier order.
inline std::vector<std::vector<std::size_t>> iso_classes(const QCategory& A) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(A.size(), false);
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t y = x; y < A.size(); ++y)
      if (!seen[y] && isomorphic(A, x, y)) {
        cls.push_back(y);
        seen[y] = true;
      }
    out.push_back(std::move(cls));
  }
  return out;
}

inline bool is_skeletal(const QCategory& A) { return iso_classes(A).size() == A.size(); }

/// F ≅ G pointwise.
inline bool functors_isomorphic(const QFunctor& f, const QFunctor& g) {
  if (f.map.size() != g.map.size()) return false;
  for (std::size_t a = 0; a < f.map.size(); ++a)
    if (!isomorphic(*f.cod, f.map[a], g.map[a])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Distributors

/// A Q-distributor dom ⇸ cod; matrix(x,y): type(x) -> type(y).
struct QDistributor {
  CategoryPtr dom;
  CategoryPtr cod;
  std::vector<Elem> matrix;  // x*|cod|+y

  Elem operator()(std::size_t x, std::size_t y) const { return matrix[x * cod->size() + y]; }
  Elem& at(std::size_t x, std::size_t y) { return matrix[x * cod->size() + y]; }
  bool operator==(const QDistributor& o) const {
    return same_category(dom, o.dom) && same_category(cod, o.cod) && matrix == o.matrix;
  }
};

inline QDistributor zero_distributor(const CategoryPtr& A, const CategoryPtr& B) {
  const auto& Q = A->quantaloid();
  QDistributor d{A, B, std::vector<Elem>(A->size() * B->size(), 0)};
  for (std::size_t x = 0; x < A->size(); ++x)
    for (std::size_t y = 0; y < B->size(); ++y) d.at(x, y) = Q.hom(A->type(x), B->type(y)).bottom();
  return d;
}

/// Bimodule inequality B(y',y)∘φ(x',y')∘A(x,x') <= φ(x,y), checked as its two
/// one-sided halves (equivalent given the unit inequalities of A and B).
inline QDistributor validate_distributor(QDistributor d) {
  if (!d.dom || !d.cod) throw ValidationError("TypeMismatch", "missing category");
  if (d.dom->ambient() != d.cod->ambient()) throw ValidationError("TypeMismatch", "different quantaloids");
  const auto& A = *d.dom;
  const auto& B = *d.cod;
  const auto& Q = A.quantaloid();
  if (d.matrix.size() != A.size() * B.size()) throw ValidationError("PartialTable", "matrix");
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < B.size(); ++y)
      if (d(x, y) >= Q.hom(A.type(x), B.type(y)).size())
        throw ValidationError("TypeMismatch", A.name(x) + "," + B.name(y));
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t x1 = 0; x1 < A.size(); ++x1)
      for (std::size_t y = 0; y < B.size(); ++y) {
        Elem c = Q.compose(A.type(x), A.type(x1), B.type(y), d(x1, y), A.hom(x, x1));
        if (!Q.hom(A.type(x), B.type(y)).leq(c, d(x, y)))
          throw ValidationError("BimoduleInequalityViolated", A.name(x) + "," + A.name(x1) + ";" + B.name(y));
      }
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y1 = 0; y1 < B.size(); ++y1)
      for (std::size_t y = 0; y < B.size(); ++y) {
        Elem c = Q.compose(A.type(x), B.type(y1), B.type(y), B.hom(y1, y), d(x, y1));
        if (!Q.hom(A.type(x), B.type(y)).leq(c, d(x, y)))
          throw ValidationError("BimoduleInequalityViolated", A.name(x) + ";" + B.name(y1) + "," + B.name(y));
      }
  return d;
}

inline QDistributor identity_distributor(const CategoryPtr& A) { return QDistributor{A, A, A->spec().hom}; }

/// (ψ∘φ)(x,z) = ⋁_y ψ(y,z)∘φ(x,y).
inline QDistributor dist_compose(const QDistributor& psi, const QDistributor& phi) {
  if (!same_category(phi.cod, psi.dom)) throw TypeMismatch("distributor composition");
  const auto& A = *phi.dom;
  const auto& B = *phi.cod;
  const auto& C = *psi.cod;
  const auto& Q = A.quantaloid();
  QDistributor out{phi.dom, psi.cod, std::vector<Elem>(A.size() * C.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t z = 0; z < C.size(); ++z) {
      const auto& H = Q.hom(A.type(x), C.type(z));
      Elem acc = H.bottom();
      for (std::size_t y = 0; y < B.size(); ++y)
        acc = H.join(acc, Q.compose(A.type(x), B.type(y), C.type(z), psi(y, z), phi(x, y)));
      out.at(x, z) = acc;
    }
  return out;
}

/// φ↘ψ : C ⇸ A for φ: A ⇸ B, ψ: C ⇸ B; (c,a) ↦ ⋀_b φ(a,b)↘ψ(c,b).
inline QDistributor dist_rres(const QDistributor& phi, const QDistributor& psi) {
  if (!same_category(phi.cod, psi.cod)) throw TypeMismatch("dist_rres codomains differ");
  const auto& A = *phi.dom;
  const auto& B = *phi.cod;
  const auto& C = *psi.dom;
  const auto& Q = A.quantaloid();
  QDistributor out{psi.dom, phi.dom, std::vector<Elem>(C.size() * A.size(), 0)};
  for (std::size_t c = 0; c < C.size(); ++c)
    for (std::size_t a = 0; a < A.size(); ++a) {
      const auto& H = Q.hom(C.type(c), A.type(a));
      Elem acc = H.top();
      for (std::size_t b = 0; b < B.size(); ++b)
        acc = H.meet(acc, Q.rres(C.type(c), A.type(a), B.type(b), phi(a, b), psi(c, b)));
      out.at(c, a) = acc;
    }
  return out;
}

/// φ↙γ : C ⇸ B for φ: A ⇸ B, γ: A ⇸ C; (c,b) ↦ ⋀_a φ(a,b)↙γ(a,c).
inline QDistributor dist_lres(const QDistributor& phi, const QDistributor& gamma) {
  if (!same_category(phi.dom, gamma.dom)) throw TypeMismatch("dist_lres domains differ");
  const auto& A = *phi.dom;
  const auto& B = *phi.cod;
  const auto& C = *gamma.cod;
  const auto& Q = A.quantaloid();
  QDistributor out{gamma.cod, phi.cod, std::vector<Elem>(C.size() * B.size(), 0)};
  for (std::size_t c = 0; c < C.size(); ++c)
    for (std::size_t b = 0; b < B.size(); ++b) {
      const auto& H = Q.hom(C.type(c), B.type(b));
      Elem acc = H.top();
      for (std::size_t a = 0; a < A.size(); ++a)
        acc = H.meet(acc, Q.lres(A.type(a), C.type(c), B.type(b), phi(a, b), gamma(a, c)));
      out.at(c, b) = acc;
    }
  return out;
}

/// Pointwise order of parallel distributors.
inline bool dist_leq(const QDistributor& a, const QDistributor& b) {
  if (!same_category(a.dom, b.dom) || !same_category(a.cod, b.cod)) throw TypeMismatch("dist_leq");
  const auto& Q = a.dom->quantaloid();
  for (std::size_t x = 0; x < a.dom->size(); ++x)
    for (std::size_t y = 0; y < a.cod->size(); ++y)
      if (!Q.hom(a.dom->type(x), a.cod->type(y)).leq(a(x, y), b(x, y))) return false;
  return true;
}

/// Graph F♮: A ⇸ B, (x,y) ↦ B(Fx,y).
inline QDistributor graph(const QFunctor& f) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  QDistributor d{f.dom, f.cod, std::vector<Elem>(A.size() * B.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < B.size(); ++y) d.at(x, y) = B.hom(f.map[x], y);
  return d;
}

/// Cograph F^♮: B ⇸ A, (y,x) ↦ B(y,Fx).
inline QDistributor cograph(const QFunctor& f) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  QDistributor d{f.cod, f.dom, std::vector<Elem>(B.size() * A.size(), 0)};
  for (std::size_t y = 0; y < B.size(); ++y)
    for (std::size_t x = 0; x < A.size(); ++x) d.at(y, x) = B.hom(y, f.map[x]);
  return d;
}

/// φ(F−, G−) for φ: A ⇸ B, F: X → A, G: Y → B.
inline QDistributor restrict_distributor(const QDistributor& phi, const QFunctor& f, const QFunctor& g) {
  if (!same_category(f.cod, phi.dom) || !same_category(g.cod, phi.cod)) throw TypeMismatch("restrict_distributor");
  QDistributor d{f.dom, g.dom, std::vector<Elem>(f.dom->size() * g.dom->size(), 0)};
  for (std::size_t x = 0; x < f.dom->size(); ++x)
    for (std::size_t y = 0; y < g.dom->size(); ++y) d.at(x, y) = phi(f.map[x], g.map[y]);
  return d;
}

struct Witness2 {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct AdjointResult {
  bool holds = true;
  std::optional<Witness2> witness;  // (x in A, y in B) with B(Fx,y) != A(x,Gy)
};

/// F ⊣ G iff B(Fx, y) = A(x, Gy) for all x in A, y in B.
inline AdjointResult check_adjoint(const QFunctor& f, const QFunctor& g) {
  if (!same_category(f.dom, g.cod) || !same_category(f.cod, g.dom)) throw TypeMismatch("check_adjoint");
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < B.size(); ++y)
      if (B.hom(f.map[x], y) != A.hom(x, g.map[y])) return {false, Witness2{x, y}};
  return {};
}

}  // namespace qdomain
