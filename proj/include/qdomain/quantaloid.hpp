#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"

namespace qdomain {

/// Index of an object of a quantaloid.
using Obj = std::uint16_t;

/// A typed arrow u: dom -> cod of a quantaloid.
struct Arrow {
  Obj dom = 0;
  Obj cod = 0;
  Elem value = 0;
  bool operator==(const Arrow&) const = default;
};

/// Unvalidated quantaloid data, as read from a document or built by a model.
///
/// homs are indexed p*n+q; compose tables by (p*n+q)*n+r and hold b∘a at
/// position b*|hom(p,q)|+a for a in hom(p,q), b in hom(q,r).
struct QuantaloidSpec {
  std::vector<std::string> objects;
  std::vector<FiniteLattice> homs;
  std::vector<std::vector<Elem>> compose;
  std::vector<Elem> identity;
};

struct QuantaloidValidationOptions {
  /// Full subset check of join-continuity when |hom| is at most this size.
  std::size_t subset_check_cap = 12;
};

class Quantaloid {
 public:
  std::size_t num_objects() const noexcept { return objects_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::string& object_name(Obj o) const { return objects_.at(o); }
  std::optional<Obj> find_object(std::string_view id) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i] == id) return static_cast<Obj>(i);
    return std::nullopt;
  }
  Obj object(std::string_view id) const {
    auto o = find_object(id);
    if (!o) throw ForeignElement("object '" + std::string(id) + "'");
    return *o;
  }

  const FiniteLattice& hom(Obj p, Obj q) const { return homs_[p * n() + q]; }

  /// b∘a for a: p -> q and b: q -> r.
  Elem compose(Obj p, Obj q, Obj r, Elem b, Elem a) const {
    return compose_[(p * n() + q) * n() + r][b * hom(p, q).size() + a];
  }
  Elem identity(Obj q) const { return identity_[q]; }

  /// Largest w: q -> r with w∘u <= v, for v: p -> r and u: p -> q.
  Elem lres(Obj p, Obj q, Obj r, Elem v, Elem u) const {
    return lres_[(p * n() + q) * n() + r][v * hom(p, q).size() + u];
  }
  /// Largest w: p -> q with u∘w <= v, for u: q -> r and v: p -> r.
  Elem rres(Obj p, Obj q, Obj r, Elem u, Elem v) const {
    return rres_[(p * n() + q) * n() + r][u * hom(p, r).size() + v];
  }

  Arrow compose(Arrow b, Arrow a) const {
    if (a.cod != b.dom) throw TypeMismatch("compose " + describe(b) + " after " + describe(a));
    return {a.dom, b.cod, compose(a.dom, a.cod, b.cod, b.value, a.value)};
  }
  Arrow identity_arrow(Obj q) const { return {q, q, identity(q)}; }
  /// v↙u for v: p -> r, u: p -> q.
  Arrow lres(Arrow v, Arrow u) const {
    if (v.dom != u.dom) throw TypeMismatch("lres " + describe(v) + " by " + describe(u));
    return {u.cod, v.cod, lres(u.dom, u.cod, v.cod, v.value, u.value)};
  }
  /// u↘v for u: q -> r, v: p -> r.
  Arrow rres(Arrow u, Arrow v) const {
    if (u.cod != v.cod) throw TypeMismatch("rres " + describe(u) + " into " + describe(v));
    return {v.dom, u.dom, rres(v.dom, u.dom, u.cod, u.value, v.value)};
  }
  Arrow arrow(std::string_view dom, std::string_view cod, std::string_view value) const {
    Obj p = object(dom), q = object(cod);
    return {p, q, hom(p, q).at(value)};
  }

  std::string describe(Arrow a) const {
    return hom(a.dom, a.cod).name(a.value) + ":" + object_name(a.dom) + "->" + object_name(a.cod);
  }

  /// "all-subsets" or "pairs+empty", per the size cap used while validating.
  const std::string& join_continuity_mode() const noexcept { return join_mode_; }

  const QuantaloidSpec& spec() const noexcept { return spec_; }

  friend std::shared_ptr<const Quantaloid> validate_quantaloid(QuantaloidSpec, QuantaloidValidationOptions);

 private:
  std::size_t n() const noexcept { return objects_.size(); }
  void build_residuals();

  std::vector<std::string> objects_;
  std::vector<FiniteLattice> homs_;
  std::vector<std::vector<Elem>> compose_;
  std::vector<Elem> identity_;
  std::vector<std::vector<Elem>> lres_;
  std::vector<std::vector<Elem>> rres_;
  std::string join_mode_;
  QuantaloidSpec spec_;
};

using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

inline void Quantaloid::build_residuals() {
  const std::size_t N = n();
  lres_.assign(N * N * N, {});
  rres_.assign(N * N * N, {});
  for (Obj p = 0; p < N; ++p)
    for (Obj q = 0; q < N; ++q)
      for (Obj r = 0; r < N; ++r) {
        const auto& Hpq = hom(p, q);
        const auto& Hqr = hom(q, r);
        const auto& Hpr = hom(p, r);
        // lres: v in hom(p,r), u in hom(p,q) -> join of {w in hom(q,r) : w∘u <= v}
        auto& L = lres_[(p * N + q) * N + r];
        L.assign(Hpr.size() * Hpq.size(), 0);
        for (Elem v = 0; v < Hpr.size(); ++v)
          for (Elem u = 0; u < Hpq.size(); ++u) {
            Elem acc = Hqr.bottom();
            for (Elem w = 0; w < Hqr.size(); ++w)
              if (Hpr.leq(compose(p, q, r, w, u), v)) acc = Hqr.join(acc, w);
            L[v * Hpq.size() + u] = acc;
          }
        // rres: u in hom(q,r), v in hom(p,r) -> join of {w in hom(p,q) : u∘w <= v}
        auto& R = rres_[(p * N + q) * N + r];
        R.assign(Hqr.size() * Hpr.size(), 0);
        for (Elem u = 0; u < Hqr.size(); ++u)
          for (Elem v = 0; v < Hpr.size(); ++v) {
            Elem acc = Hpq.bottom();
            for (Elem w = 0; w < Hpq.size(); ++w)
              if (Hpr.leq(compose(p, q, r, u, w), v)) acc = Hpq.join(acc, w);
            R[u * Hpr.size() + v] = acc;
          }
      }
}

/// Checks associativity, unit laws and join-continuity exhaustively.
/// Throws ValidationError carrying the first failing triple/pair.
inline QuantaloidPtr validate_quantaloid(QuantaloidSpec spec, QuantaloidValidationOptions opts = {}) {
  const std::size_t N = spec.objects.size();
  if (N == 0) throw ValidationError("EmptyQuantaloid", "no objects");
  if (spec.homs.size() != N * N) throw ValidationError("PartialTable", "homs");
  if (spec.compose.size() != N * N * N) throw ValidationError("PartialTable", "compose");
  if (spec.identity.size() != N) throw ValidationError("PartialTable", "identity");

  auto q = std::make_shared<Quantaloid>();
  q->objects_ = spec.objects;
  q->homs_ = spec.homs;
  q->compose_ = spec.compose;
  q->identity_ = spec.identity;
  const Quantaloid& Q = *q;
  const auto& names = spec.objects;

  auto cell = [&](Obj p, Obj qq, Obj r) -> std::string {
    return names[p] + "|" + names[qq] + "|" + names[r];
  };

  for (Obj p = 0; p < N; ++p)
    for (Obj qq = 0; qq < N; ++qq)
      for (Obj r = 0; r < N; ++r) {
        const auto& t = spec.compose[(p * N + qq) * N + r];
        if (t.size() != Q.hom(p, qq).size() * Q.hom(qq, r).size())
          throw ValidationError("PartialTable", cell(p, qq, r));
        for (Elem e : t)
          if (e >= Q.hom(p, r).size()) throw ValidationError("ForeignElement", cell(p, qq, r));
      }
  for (Obj p = 0; p < N; ++p)
    if (spec.identity[p] >= Q.hom(p, p).size()) throw ValidationError("ForeignElement", "identity " + names[p]);

  // unit laws
  for (Obj p = 0; p < N; ++p)
    for (Obj qq = 0; qq < N; ++qq) {
      const auto& H = Q.hom(p, qq);
      for (Elem u = 0; u < H.size(); ++u) {
        if (Q.compose(p, qq, qq, Q.identity(qq), u) != u)
          throw ValidationError("UnitLawViolated", "1_" + names[qq] + "∘" + H.name(u) + " in " + names[p] + "|" + names[qq]);
        if (Q.compose(p, p, qq, u, Q.identity(p)) != u)
          throw ValidationError("UnitLawViolated", H.name(u) + "∘1_" + names[p] + " in " + names[p] + "|" + names[qq]);
      }
    }

  // associativity
  for (Obj p = 0; p < N; ++p)
    for (Obj qq = 0; qq < N; ++qq)
      for (Obj r = 0; r < N; ++r)
        for (Obj s = 0; s < N; ++s) {
          const auto& A = Q.hom(p, qq);
          const auto& B = Q.hom(qq, r);
          const auto& C = Q.hom(r, s);
          for (Elem a = 0; a < A.size(); ++a)
            for (Elem b = 0; b < B.size(); ++b) {
              Elem ba = Q.compose(p, qq, r, b, a);
              for (Elem c = 0; c < C.size(); ++c) {
                Elem left = Q.compose(p, qq, s, Q.compose(qq, r, s, c, b), a);
                Elem right = Q.compose(p, r, s, c, ba);
                if (left != right)
                  throw ValidationError("NotAssociative", C.name(c) + "," + B.name(b) + "," + A.name(a) + " over " +
                                                             names[p] + "|" + names[qq] + "|" + names[r] + "|" + names[s]);
              }
            }
        }

  // join-continuity in each argument
  bool all_subsets = true;
  for (const auto& H : spec.homs) all_subsets = all_subsets && H.size() <= opts.subset_check_cap;
  q->join_mode_ = all_subsets ? "all-subsets" : "pairs+empty";

  auto check_side = [&](Obj p, Obj qq, Obj r, bool vary_right) {
    // vary_right: fix b in hom(qq,r), vary a in hom(p,qq); else fix a, vary b.
    const auto& Var = vary_right ? Q.hom(p, qq) : Q.hom(qq, r);
    const auto& Fix = vary_right ? Q.hom(qq, r) : Q.hom(p, qq);
    const auto& Out = Q.hom(p, r);
    auto apply = [&](Elem fixed, Elem v) {
      return vary_right ? Q.compose(p, qq, r, fixed, v) : Q.compose(p, qq, r, v, fixed);
    };
    for (Elem f = 0; f < Fix.size(); ++f) {
      auto fail = [&](const std::string& what) {
        throw ValidationError("NotJoinContinuous", std::string(vary_right ? "right" : "left") + " argument, fixed " +
                                                       Fix.name(f) + ", " + what + " in " + cell(p, qq, r));
      };
      if (apply(f, Var.bottom()) != Out.bottom()) fail("empty join");
      if (all_subsets) {
        const std::size_t m = Var.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
          Elem jin = Var.bottom(), jout = Out.bottom();
          for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) {
              jin = Var.join(jin, static_cast<Elem>(i));
              jout = Out.join(jout, apply(f, static_cast<Elem>(i)));
            }
          if (apply(f, jin) != jout) fail("subset mask " + std::to_string(mask));
        }
      } else {
        for (Elem x = 0; x < Var.size(); ++x)
          for (Elem y = 0; y < Var.size(); ++y)
            if (apply(f, Var.join(x, y)) != Out.join(apply(f, x), apply(f, y)))
              fail("pair " + Var.name(x) + "," + Var.name(y));
      }
    }
  };
  for (Obj p = 0; p < N; ++p)
    for (Obj qq = 0; qq < N; ++qq)
      for (Obj r = 0; r < N; ++r) {
        check_side(p, qq, r, true);
        check_side(p, qq, r, false);
      }

  q->spec_ = std::move(spec);
  q->build_residuals();
  return q;
}

/// A unital quantale: lattice, tensor table (x&y at x*n+y) and unit.
struct QuantaleSpec {
  FiniteLattice lattice;
  std::vector<Elem> tensor;
  Elem unit = 0;
};

/// A validated quantale together with its one-object quantaloid (object "*").
class Quantale {
 public:
  const FiniteLattice& lattice() const noexcept { return lattice_; }
  Elem tensor(Elem a, Elem b) const { return tensor_[a * lattice_.size() + b]; }
  Elem unit() const noexcept { return unit_; }
  const QuantaloidPtr& as_quantaloid() const noexcept { return quantaloid_; }
  /// a\b: largest w with a&w <= b.
  Elem right_residual(Elem a, Elem b) const { return quantaloid_->rres(0, 0, 0, a, b); }
  /// b/a: largest w with w&a <= b.
  Elem left_residual(Elem b, Elem a) const { return quantaloid_->lres(0, 0, 0, b, a); }

  friend Quantale validate_quantale(QuantaleSpec, QuantaloidValidationOptions);

 private:
  FiniteLattice lattice_;
  std::vector<Elem> tensor_;
  Elem unit_ = 0;
  QuantaloidPtr quantaloid_;
};

inline QuantaloidSpec quantale_embedding(const QuantaleSpec& q) {
  QuantaloidSpec s;
  s.objects = {"*"};
  s.homs = {q.lattice};
  s.compose = {q.tensor};
  s.identity = {q.unit};
  return s;
}

inline Quantale validate_quantale(QuantaleSpec spec, QuantaloidValidationOptions opts = {}) {
  const std::size_t n = spec.lattice.size();
  if (spec.tensor.size() != n * n) throw ValidationError("PartialTable", "tensor");
  Quantale q;
  q.quantaloid_ = validate_quantaloid(quantale_embedding(spec), opts);
  q.lattice_ = std::move(spec.lattice);
  q.tensor_ = std::move(spec.tensor);
  q.unit_ = spec.unit;
  return q;
}

struct DivisibilityResult {
  bool divisible = true;
  std::optional<std::pair<Elem, Elem>> witness;
};

/// a&(a\b) = a∧b = (b/a)&a for all a, b.
inline DivisibilityResult check_divisible(const Quantale& q) {
  const auto& L = q.lattice();
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b) {
      Elem m = L.meet(a, b);
      if (q.tensor(a, q.right_residual(a, b)) != m || q.tensor(q.left_residual(b, a), a) != m)
        return {false, std::make_pair(a, b)};
    }
  return {};
}

/// The quantaloid B_Q of a divisible quantale: objects are the elements of Q,
/// hom(x,y) = {a : a <= x∧y}, b∘a = b&(y\a), identity 1_x = x.
inline QuantaloidPtr b_q(const Quantale& q) {
  auto div = check_divisible(q);
  if (!div.divisible) {
    const auto& L = q.lattice();
    throw NotDivisible("witness a=" + L.name(div.witness->first) + ", b=" + L.name(div.witness->second));
  }
  const auto& L = q.lattice();
  const std::size_t N = L.size();
  QuantaloidSpec s;
  s.objects = L.carrier();
  s.homs.reserve(N * N);
  for (Elem x = 0; x < N; ++x)
    for (Elem y = 0; y < N; ++y) s.homs.push_back(L.down_set(L.meet(x, y)));
  auto local = [&](Obj x, Obj y, Elem global) { return s.homs[x * N + y].at(L.name(global)); };
  auto global = [&](Obj x, Obj y, Elem e) { return L.at(s.homs[x * N + y].name(e)); };
  s.compose.assign(N * N * N, {});
  for (Obj x = 0; x < N; ++x)
    for (Obj y = 0; y < N; ++y)
      for (Obj z = 0; z < N; ++z) {
        const auto& Hxy = s.homs[x * N + y];
        const auto& Hyz = s.homs[y * N + z];
        auto& t = s.compose[(x * N + y) * N + z];
        t.assign(Hxy.size() * Hyz.size(), 0);
        for (Elem b = 0; b < Hyz.size(); ++b)
          for (Elem a = 0; a < Hxy.size(); ++a) {
            Elem ga = global(x, y, a), gb = global(y, z, b);
            Elem r = q.tensor(gb, q.right_residual(y, ga));
            auto lr = s.homs[x * N + z].find(L.name(r));
            if (!lr) throw ValidationError("CompositeOutOfHom", L.name(gb) + "∘" + L.name(ga));
            t[b * Hxy.size() + a] = *lr;
          }
      }
  s.identity.resize(N);
  for (Obj x = 0; x < N; ++x) s.identity[x] = local(x, x, x);
  return validate_quantaloid(std::move(s));
}

}  // namespace qdomain
