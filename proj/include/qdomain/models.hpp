#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "presheaf.hpp"
#include "quantaloid.hpp"

namespace qdomain {

enum class ChainTensor { godel, lukasiewicz, drastic };

inline std::string chain_element_name(std::size_t k, std::size_t n) {
  if (k == 0) return "0";
  if (k == n - 1) return "1";
  const std::size_t g = std::gcd(k, n - 1);
  return std::to_string(k / g) + "/" + std::to_string((n - 1) / g);
}

/// The n-element chain 0 < 1/(n-1) < ... < 1 with unit 1.
inline Quantale chain_quantale(std::size_t n, ChainTensor t) {
  if (n < 2) throw PreconditionFailed("chain_quantale needs n >= 2");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(chain_element_name(k, n));
  QuantaleSpec s{lattice_from_order(names, [](std::size_t a, std::size_t b) { return a <= b; }), {}, 0};
  s.unit = static_cast<Elem>(n - 1);
  s.tensor.resize(n * n);
  const std::size_t top = n - 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t r = 0;
      switch (t) {
        case ChainTensor::godel: r = std::min(a, b); break;
        case ChainTensor::lukasiewicz: r = a + b > top ? a + b - top : 0; break;
        case ChainTensor::drastic: r = a == top ? b : (b == top ? a : 0); break;
      }
      s.tensor[a * n + b] = static_cast<Elem>(r);
    }
  return validate_quantale(std::move(s));
}

/// The two-element Boolean algebra with & = ∧.
inline Quantale boolean2_quantale() { return chain_quantale(2, ChainTensor::godel); }
/// Shared instance, so that categories over 2 built separately can be composed.
inline QuantaloidPtr boolean2() {
  static const QuantaloidPtr two = boolean2_quantale().as_quantaloid();
  return two;
}

inline std::string subset_name(unsigned mask, const std::vector<std::string>& X) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += X[i];
      first = false;
    }
  return s + "}";
}

/// (P(X), ∪, ∩, X); subsets listed by bitmask.
inline Quantale powerset_quantale(const std::vector<std::string>& X) {
  if (X.size() > 8) throw PreconditionFailed("powerset_quantale: |X| <= 8");
  const unsigned n = 1u << X.size();
  std::vector<std::string> names;
  for (unsigned m = 0; m < n; ++m) names.push_back(subset_name(m, X));
  QuantaleSpec s{lattice_from_order(names, [](std::size_t a, std::size_t b) { return (a & ~b) == 0; }), {}, 0};
  s.unit = static_cast<Elem>(n - 1);
  s.tensor.resize(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) s.tensor[a * n + b] = static_cast<Elem>(a & b);
  return validate_quantale(std::move(s));
}

// ---------------------------------------------------------------------------
// Posets and 2-categories

/// Builds a preorder from a carrier and a list of generating pairs, closed
/// reflexively and transitively.
inline Preorder make_preorder(std::vector<std::string> carrier, const std::vector<std::pair<std::size_t, std::size_t>>& gens) {
  const std::size_t n = carrier.size();
  Preorder p{std::move(carrier), std::vector<std::uint8_t>(n * n, 0)};
  for (std::size_t a = 0; a < n; ++a) p.rel[a * n + a] = 1;
  for (auto [a, b] : gens) p.rel[a * n + b] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (p.rel[a * n + k] && p.rel[k * n + b]) p.rel[a * n + b] = 1;
  return p;
}

inline bool is_antisymmetric(const Preorder& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b) && p.leq(b, a)) return false;
  return true;
}

inline bool is_over_2(const Quantaloid& Q) {
  if (Q.num_objects() != 1) return false;
  const auto& H = Q.hom(0, 0);
  if (H.size() != 2) return false;
  const Elem bot = H.bottom(), top = H.top();
  return Q.identity(0) == top && Q.compose(0, 0, 0, top, top) == top && Q.compose(0, 0, 0, bot, top) == bot &&
         Q.compose(0, 0, 0, top, bot) == bot && Q.compose(0, 0, 0, bot, bot) == bot;
}

/// hom(a,b) = 1 iff a <= b.
inline CategoryPtr poset_to_2cat(const Preorder& p, QuantaloidPtr two = boolean2()) {
  if (!is_over_2(*two)) throw ValidationError("NotOver2", "ambient quantaloid");
  const std::size_t n = p.size();
  const auto& H = two->hom(0, 0);
  CategorySpec s{two, p.carrier, std::vector<Obj>(n, 0), std::vector<Elem>(n * n, 0)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s.hom[a * n + b] = p.leq(a, b) ? H.top() : H.bottom();
  return validate_category(std::move(s));
}

inline Preorder cat2_to_poset(const QCategory& A) {
  if (!is_over_2(A.quantaloid())) throw ValidationError("NotOver2", "category is not enriched in 2");
  return underlying_preorder(A);
}

// ---------------------------------------------------------------------------
// Q^A and d

/// Q^A: arrows out of object `a`, typed by codomain; hom(g,f) = f↙g.
inline CategoryPtr q_power(const QuantaloidPtr& Q, Obj a) {
  CategorySpec s{Q, {}, {}, {}};
  std::vector<Arrow> arrows;
  for (Obj q = 0; q < Q->num_objects(); ++q)
    for (Elem v = 0; v < Q->hom(a, q).size(); ++v) {
      arrows.push_back({a, q, v});
      s.names.push_back(Q->num_objects() == 1 ? Q->hom(a, q).name(v)
                                               : Q->hom(a, q).name(v) + ":" + Q->object_name(q));
      s.types.push_back(q);
    }
  for (const auto& g : arrows)
    for (const auto& f : arrows) s.hom.push_back(Q->lres(a, g.cod, f.cod, f.value, g.value));
  return validate_category(std::move(s));
}

/// The element of q_power(Q, a) holding the identity 1_a.
inline std::size_t q_power_identity(const QCategory& QA, Obj a) {
  const auto& Q = QA.quantaloid();
  std::size_t offset = 0;
  for (Obj q = 0; q < a; ++q) offset += Q.hom(a, q).size();
  return offset + Q.identity(a);
}

/// The arrow of Q held by element i of q_power(Q, a).
inline Arrow q_power_arrow(const QCategory& QA, Obj a, std::size_t i) {
  const auto& Q = QA.quantaloid();
  std::size_t offset = 0;
  for (Obj q = 0; q < Q.num_objects(); ++q) {
    const std::size_t m = Q.hom(a, q).size();
    if (i < offset + m) return {a, q, static_cast<Elem>(i - offset)};
    offset += m;
  }
  throw ForeignElement("q_power element " + std::to_string(i));
}

inline std::size_t q_power_index(const QCategory& QA, Obj a, const Arrow& f) {
  const auto& Q = QA.quantaloid();
  if (f.dom != a) throw TypeMismatch("q_power_index: arrow not out of the base object");
  std::size_t offset = 0;
  for (Obj q = 0; q < f.cod; ++q) offset += Q.hom(a, q).size();
  return offset + f.value;
}

/// d(f)(g) = f∘(1_a↙g), a presheaf on Q^A of type cod(f).
inline Presheaf q_power_d(const QCategory& QA, Obj a, std::size_t f_index) {
  const auto& Q = QA.quantaloid();
  const Arrow f = q_power_arrow(QA, a, f_index);
  Presheaf p{f.cod, std::vector<Elem>(QA.size(), 0)};
  for (std::size_t gi = 0; gi < QA.size(); ++gi) {
    const Arrow g = q_power_arrow(QA, a, gi);
    const Elem r = Q.lres(a, g.cod, a, Q.identity(a), g.value);
    p.values[gi] = Q.compose(g.cod, a, f.cod, f.value, r);
  }
  return p;
}

/// f∘⊤_{cod g, a}; equal to d(f)(g) when 1_a is the top of hom(a,a).
inline Presheaf q_power_d_integral(const QCategory& QA, Obj a, std::size_t f_index) {
  const auto& Q = QA.quantaloid();
  const Arrow f = q_power_arrow(QA, a, f_index);
  Presheaf p{f.cod, std::vector<Elem>(QA.size(), 0)};
  for (std::size_t gi = 0; gi < QA.size(); ++gi) {
    const Arrow g = q_power_arrow(QA, a, gi);
    p.values[gi] = Q.compose(g.cod, a, f.cod, f.value, Q.hom(g.cod, a).top());
  }
  return p;
}

inline bool is_integral_at(const Quantaloid& Q, Obj a) { return Q.identity(a) == Q.hom(a, a).top(); }

struct FiniteMeetResult {
  bool holds = true;
  std::string witness;
};

/// For every f: a -> x and object b, f∘− : Q(b,a) -> Q(b,x) preserves binary meets.
inline FiniteMeetResult check_finite_meet_criterion(const Quantaloid& Q, Obj a) {
  for (Obj x = 0; x < Q.num_objects(); ++x)
    for (Elem f = 0; f < Q.hom(a, x).size(); ++f)
      for (Obj b = 0; b < Q.num_objects(); ++b) {
        const auto& Hba = Q.hom(b, a);
        const auto& Hbx = Q.hom(b, x);
        for (Elem u = 0; u < Hba.size(); ++u)
          for (Elem v = 0; v < Hba.size(); ++v)
            if (Q.compose(b, a, x, f, Hba.meet(u, v)) != Hbx.meet(Q.compose(b, a, x, f, u), Q.compose(b, a, x, f, v)))
              return {false, Q.hom(a, x).name(f) + ":" + Q.object_name(a) + "->" + Q.object_name(x) + " on " +
                                 Hba.name(u) + "," + Hba.name(v) + " from " + Q.object_name(b)};
      }
  return {};
}

}  // namespace qdomain
