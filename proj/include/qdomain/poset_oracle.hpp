#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "category.hpp"
#include "errors.hpp"

namespace qdomain {

/// Classical domain theory on a finite poset, by brute force over subsets.
/// Deliberately shares nothing with the enriched engine beyond the Preorder type.
struct PosetOracle {
  Preorder poset;
  std::vector<std::uint32_t> ideals;      // nonempty directed lower sets, ascending bitmask
  std::vector<std::uint8_t> way_below;    // way_below[a*n+b]: a << b
  bool continuous = false;
  bool algebraic = false;
  std::vector<std::size_t> compacts;

  std::size_t size() const noexcept { return poset.size(); }
  bool wb(std::size_t a, std::size_t b) const { return way_below[a * size() + b] != 0; }
};

namespace oracle_detail {

inline bool down_closed(const Preorder& p, std::uint32_t s) {
  for (std::size_t b = 0; b < p.size(); ++b)
    if (s >> b & 1u)
      for (std::size_t a = 0; a < p.size(); ++a)
        if (p.leq(a, b) && !(s >> a & 1u)) return false;
  return true;
}

inline bool directed(const Preorder& p, std::uint32_t s) {
  if (s == 0) return false;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (!(s >> a & 1u) || !(s >> b & 1u)) continue;
      bool ub = false;
      for (std::size_t c = 0; c < p.size() && !ub; ++c) ub = (s >> c & 1u) && p.leq(a, c) && p.leq(b, c);
      if (!ub) return false;
    }
  return true;
}

/// Least upper bound of the subset s, if any.
inline std::optional<std::size_t> lub(const Preorder& p, std::uint32_t s) {
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < p.size(); ++u) {
    bool upper = true;
    for (std::size_t a = 0; a < p.size() && upper; ++a)
      if (s >> a & 1u) upper = p.leq(a, u);
    if (!upper) continue;
    if (!best || p.leq(u, *best)) best = u;
  }
  if (!best) return std::nullopt;
  for (std::size_t u = 0; u < p.size(); ++u) {
    bool upper = true;
    for (std::size_t a = 0; a < p.size() && upper; ++a)
      if (s >> a & 1u) upper = p.leq(a, u);
    if (upper && !p.leq(*best, u)) return std::nullopt;
  }
  return best;
}

}  // namespace oracle_detail

inline PosetOracle poset_oracle(const Preorder& p) {
  const std::size_t n = p.size();
  if (n > 20) throw PreconditionFailed("poset_oracle: at most 20 elements");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && p.leq(a, b) && p.leq(b, a)) throw PreconditionFailed("poset_oracle: not antisymmetric");
  PosetOracle o{p, {}, std::vector<std::uint8_t>(n * n, 0), false, false, {}};
  for (std::uint32_t s = 1; s < (1u << n); ++s)
    if (oracle_detail::down_closed(p, s) && oracle_detail::directed(p, s)) o.ideals.push_back(s);

  // a << b iff every ideal whose sup exists and is above b contains a
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool w = true;
      for (auto I : o.ideals) {
        auto s = oracle_detail::lub(p, I);
        if (s && p.leq(b, *s) && !(I >> a & 1u)) {
          w = false;
          break;
        }
      }
      o.way_below[a * n + b] = w;
    }

  // continuous: each ↡b is directed with sup b; algebraic: the same for compacts below b
  o.continuous = true;
  o.algebraic = true;
  for (std::size_t a = 0; a < n; ++a)
    if (o.wb(a, a)) o.compacts.push_back(a);
  for (std::size_t b = 0; b < n; ++b) {
    std::uint32_t approx = 0, compact_below = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (o.wb(a, b)) approx |= 1u << a;
      if (o.wb(a, a) && p.leq(a, b)) compact_below |= 1u << a;
    }
    auto sa = oracle_detail::lub(p, approx);
    if (!oracle_detail::directed(p, approx) || !sa || *sa != b) o.continuous = false;
    auto sc = oracle_detail::lub(p, compact_below);
    if (!oracle_detail::directed(p, compact_below) || !sc || *sc != b) o.algebraic = false;
  }
  return o;
}

// ---------------------------------------------------------------------------
// Posets up to isomorphism

namespace oracle_detail {

inline std::vector<std::uint8_t> permuted(const std::vector<std::uint8_t>& rel, std::size_t n,
                                          const std::vector<std::size_t>& perm) {
  std::vector<std::uint8_t> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[perm[a] * n + perm[b]] = rel[a * n + b];
  return out;
}

/// Lexicographically largest relation matrix over all relabellings.
inline std::vector<std::uint8_t> canonical_form(const std::vector<std::uint8_t>& rel, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best = rel;
  do {
    auto r = permuted(rel, n, perm);
    if (r > best) best = r;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle_detail

/// All partial orders on n points up to isomorphism, in canonical form, sorted.
/// Elements are named p0, p1, ...
inline std::vector<Preorder> posets_up_to_iso(std::size_t n) {
  if (n > 5) throw PreconditionFailed("posets_up_to_iso: n <= 5");
  std::vector<std::pair<std::size_t, std::size_t>> offdiag;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) offdiag.emplace_back(a, b);
  std::vector<std::vector<std::uint8_t>> forms;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << offdiag.size()); ++code) {
    std::vector<std::uint8_t> rel(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) rel[a * n + a] = 1;
    for (std::size_t k = 0; k < offdiag.size(); ++k)
      if (code >> k & 1u) rel[offdiag[k].first * n + offdiag[k].second] = 1;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (a != b && rel[a * n + b] && rel[b * n + a]) ok = false;
        for (std::size_t c = 0; c < n && ok; ++c)
          if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c]) ok = false;
      }
    if (ok) forms.push_back(oracle_detail::canonical_form(rel, n));
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  std::vector<Preorder> out;
  for (auto& f : forms) {
    Preorder p;
    for (std::size_t a = 0; a < n; ++a) p.carrier.push_back("p" + std::to_string(a));
    p.rel = std::move(f);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qdomain
