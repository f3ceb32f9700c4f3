#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qdomain {

/// Index of an element inside one finite lattice.
using Elem = std::uint16_t;

/// A finite complete lattice on named elements with memoized join/meet tables.
///
/// Instances are only produced by validate_lattice (or the sublattice helper),
/// so every value satisfies the lattice axioms.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& carrier() const noexcept { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }

  std::optional<Elem> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Elem at(std::string_view id) const {
    auto e = find(id);
    if (!e) throw ForeignElement("'" + std::string(id) + "' is not in the lattice");
    return *e;
  }

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }

  Elem join(std::span<const Elem> s) const {
    Elem acc = bottom_;
    for (Elem e : s) acc = join(acc, check(e));
    return acc;
  }
  Elem meet(std::span<const Elem> s) const {
    Elem acc = top_;
    for (Elem e : s) acc = meet(acc, check(e));
    return acc;
  }

  /// All pairs (a,b) with a <= b, in carrier order.
  std::vector<std::pair<Elem, Elem>> relation() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < size(); ++a)
      for (Elem b = 0; b < size(); ++b)
        if (leq(a, b)) out.emplace_back(a, b);
    return out;
  }

  /// Elements of `this` below `bound`, as a lattice with the induced order.
  /// Element names are kept; the mapping back is by name.
  FiniteLattice down_set(Elem bound) const;

  friend FiniteLattice validate_lattice(std::vector<std::string> carrier,
                                        const std::vector<std::pair<std::string, std::string>>& leq);
  template <class LeqFn>
  friend FiniteLattice lattice_from_order(std::vector<std::string> carrier, LeqFn&& leq);

  bool operator==(const FiniteLattice& o) const {
    return names_ == o.names_ && leq_ == o.leq_;
  }

 private:
  Elem check(Elem e) const {
    if (e >= size()) throw ForeignElement("element index " + std::to_string(e) + " out of range");
    return e;
  }

  static FiniteLattice build(std::vector<std::string> names, std::vector<std::uint8_t> leq);

  std::vector<std::string> names_;
  std::map<std::string, Elem, std::less<>> index_;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

namespace detail {

inline std::string pair_witness(const std::vector<std::string>& n, std::size_t a, std::size_t b) {
  return n[a] + "," + n[b];
}

}  // namespace detail

inline FiniteLattice FiniteLattice::build(std::vector<std::string> names, std::vector<std::uint8_t> leq) {
  const std::size_t n = names.size();
  std::vector<Violation> bad;
  if (n == 0) throw ValidationError("EmptyCarrier", "carrier has no elements");
  if (n > 0xFFFF) throw ValidationError("TooLarge", std::to_string(n));

  FiniteLattice L;
  for (std::size_t i = 0; i < n; ++i) {
    if (!L.index_.emplace(names[i], static_cast<Elem>(i)).second) {
      bad.push_back({"DuplicateElement", names[i]});
    }
  }
  auto le = [&](std::size_t a, std::size_t b) { return leq[a * n + b] != 0; };

  auto first = [&](auto pred) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (pred(a, b)) return std::make_pair(a, b);
    return std::nullopt;
  };

  for (std::size_t a = 0; a < n; ++a)
    if (!le(a, a)) {
      bad.push_back({"NotReflexive", names[a]});
      break;
    }
  if (auto w = first([&](auto a, auto b) { return a != b && le(a, b) && le(b, a); }))
    bad.push_back({"NotAntisymmetric", detail::pair_witness(names, w->first, w->second)});
  for (std::size_t a = 0; a < n && (bad.empty() || bad.back().kind != "NotTransitive"); ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c)) {
          bad.push_back({"NotTransitive", names[a] + "," + names[b] + "," + names[c]});
          b = n;
          break;
        }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::optional<std::size_t> bottom, top;
  for (std::size_t a = 0; a < n; ++a) {
    bool is_bottom = true, is_top = true;
    for (std::size_t b = 0; b < n; ++b) {
      is_bottom = is_bottom && le(a, b);
      is_top = is_top && le(b, a);
    }
    if (is_bottom) bottom = a;
    if (is_top) top = a;
  }
  if (!bottom) bad.push_back({"MissingBottom", ""});
  if (!top) bad.push_back({"MissingTop", ""});

  L.join_.assign(n * n, 0);
  L.meet_.assign(n * n, 0);
  bool join_reported = false, meet_reported = false;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> lub, glb;
      for (std::size_t u = 0; u < n; ++u) {
        if (le(a, u) && le(b, u)) {
          bool least = true;
          for (std::size_t v = 0; v < n && least; ++v)
            if (le(a, v) && le(b, v) && !le(u, v)) least = false;
          if (least) lub = u;
        }
        if (le(u, a) && le(u, b)) {
          bool greatest = true;
          for (std::size_t v = 0; v < n && greatest; ++v)
            if (le(v, a) && le(v, b) && !le(v, u)) greatest = false;
          if (greatest) glb = u;
        }
      }
      if (!lub && !join_reported) {
        bad.push_back({"MissingJoin", detail::pair_witness(names, a, b)});
        join_reported = true;
      }
      if (!glb && !meet_reported) {
        bad.push_back({"MissingMeet", detail::pair_witness(names, a, b)});
        meet_reported = true;
      }
      L.join_[a * n + b] = static_cast<Elem>(lub.value_or(0));
      L.meet_[a * n + b] = static_cast<Elem>(glb.value_or(0));
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  L.names_ = std::move(names);
  L.leq_ = std::move(leq);
  L.bottom_ = static_cast<Elem>(*bottom);
  L.top_ = static_cast<Elem>(*top);
  return L;
}

/// Validates a raw carrier + order relation. The relation must be listed in
/// full (reflexive pairs included); nothing is closed implicitly.
inline FiniteLattice validate_lattice(std::vector<std::string> carrier,
                                      const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = carrier.size();
  std::map<std::string, std::size_t, std::less<>> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(carrier[i], i);
  std::vector<std::uint8_t> rel(n * n, 0);
  for (const auto& [a, b] : leq) {
    auto ia = pos.find(a), ib = pos.find(b);
    if (ia == pos.end() || ib == pos.end())
      throw ValidationError("ForeignElement", a + "<=" + b);
    rel[ia->second * n + ib->second] = 1;
  }
  return FiniteLattice::build(std::move(carrier), std::move(rel));
}

/// Builds a lattice from a predicate on carrier positions.
template <class LeqFn>
FiniteLattice lattice_from_order(std::vector<std::string> carrier, LeqFn&& leq) {
  const std::size_t n = carrier.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) rel[a * n + b] = leq(a, b) ? 1 : 0;
  return FiniteLattice::build(std::move(carrier), std::move(rel));
}

inline FiniteLattice FiniteLattice::down_set(Elem bound) const {
  std::vector<Elem> keep;
  for (Elem e = 0; e < size(); ++e)
    if (leq(e, bound)) keep.push_back(e);
  std::vector<std::string> names;
  for (Elem e : keep) names.push_back(names_[e]);
  return lattice_from_order(std::move(names), [&](std::size_t a, std::size_t b) { return leq(keep[a], keep[b]); });
}

}  // namespace qdomain
