#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "category.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "models.hpp"
#include "presheaf.hpp"
#include "quantaloid.hpp"

namespace qdomain {

using Json = nlohmann::ordered_json;

/// A quantaloid plus named categories, functors and distributors over it, all validated.
struct Workspace {
  QuantaloidPtr quantaloid;
  std::vector<std::pair<std::string, CategoryPtr>> categories;
  std::vector<std::pair<std::string, QFunctor>> functors;
  std::vector<std::pair<std::string, QDistributor>> distributors;

  CategoryPtr category(const std::string& name) const {
    for (const auto& [n, c] : categories)
      if (n == name) return c;
    throw ParseError("no category named '" + name + "'");
  }
  /// The named category, or the first one when the name is empty.
  CategoryPtr category_or_first(const std::string& name) const {
    if (!name.empty()) return category(name);
    if (categories.empty()) throw ParseError("workspace has no category");
    return categories.front().second;
  }
};

namespace json_detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string key2(const std::string& a, const std::string& b) { return a + "|" + b; }

inline Elem element(const FiniteLattice& L, const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": lattice element must be a string");
  auto e = L.find(v.get<std::string>());
  if (!e) throw ValidationError("ForeignElement", where + ": " + v.get<std::string>());
  return *e;
}

template <class F>
decltype(auto) guard(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace json_detail

// ---------------------------------------------------------------------------
// Lattices and quantaloids

inline FiniteLattice lattice_from_json(const Json& j) {
  return json_detail::guard([&] {
    auto carrier = json_detail::field(j, "carrier").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> leq;
    for (const auto& p : json_detail::field(j, "leq")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("leq entries are pairs");
      leq.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return validate_lattice(std::move(carrier), leq);
  });
}

inline Json lattice_to_json(const FiniteLattice& L) {
  Json j;
  j["carrier"] = L.carrier();
  Json leq = Json::array();
  for (auto [a, b] : L.relation()) leq.push_back({L.name(a), L.name(b)});
  j["leq"] = std::move(leq);
  return j;
}

inline QuantaloidPtr quantaloid_from_json(const Json& j) {
  return json_detail::guard([&] {
    QuantaloidSpec s;
    s.objects = json_detail::field(j, "objects").get<std::vector<std::string>>();
    const std::size_t n = s.objects.size();
    const auto& homs = json_detail::field(j, "homs");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto k = json_detail::key2(s.objects[p], s.objects[q]);
        if (!homs.contains(k)) throw ValidationError("PartialTable", "homs " + k);
        s.homs.push_back(lattice_from_json(homs.at(k)));
      }
    const auto& comp = json_detail::field(j, "compose");
    s.compose.resize(n * n * n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r) {
          const auto k = s.objects[p] + "|" + s.objects[q] + "|" + s.objects[r];
          if (!comp.contains(k)) throw ValidationError("PartialTable", "compose " + k);
          const auto& Hpq = s.homs[p * n + q];
          const auto& Hqr = s.homs[q * n + r];
          const auto& Hpr = s.homs[p * n + r];
          auto& table = s.compose[(p * n + q) * n + r];
          table.assign(Hqr.size() * Hpq.size(), 0);
          std::vector<std::uint8_t> seen(table.size(), 0);
          for (const auto& t : comp.at(k)) {
            if (!t.is_array() || t.size() != 3) throw ParseError("compose entries are [b, a, result]");
            const Elem b = json_detail::element(Hqr, t[0], "compose " + k);
            const Elem a = json_detail::element(Hpq, t[1], "compose " + k);
            const std::size_t idx = b * Hpq.size() + a;
            if (seen[idx]) throw ValidationError("DuplicateEntry", "compose " + k);
            seen[idx] = 1;
            table[idx] = json_detail::element(Hpr, t[2], "compose " + k);
          }
          for (auto x : seen)
            if (!x) throw ValidationError("PartialTable", "compose " + k);
        }
    const auto& id = json_detail::field(j, "identity");
    for (std::size_t q = 0; q < n; ++q) {
      if (!id.contains(s.objects[q])) throw ValidationError("PartialTable", "identity " + s.objects[q]);
      s.identity.push_back(json_detail::element(s.homs[q * n + q], id.at(s.objects[q]), "identity"));
    }
    return validate_quantaloid(std::move(s));
  });
}

inline Json quantaloid_to_json(const Quantaloid& Q) {
  Json j;
  const std::size_t n = Q.num_objects();
  j["objects"] = Q.objects();
  Json homs = Json::object();
  for (Obj p = 0; p < n; ++p)
    for (Obj q = 0; q < n; ++q) homs[json_detail::key2(Q.object_name(p), Q.object_name(q))] = lattice_to_json(Q.hom(p, q));
  j["homs"] = std::move(homs);
  Json comp = Json::object();
  for (Obj p = 0; p < n; ++p)
    for (Obj q = 0; q < n; ++q)
      for (Obj r = 0; r < n; ++r) {
        Json t = Json::array();
        for (Elem b = 0; b < Q.hom(q, r).size(); ++b)
          for (Elem a = 0; a < Q.hom(p, q).size(); ++a)
            t.push_back({Q.hom(q, r).name(b), Q.hom(p, q).name(a), Q.hom(p, r).name(Q.compose(p, q, r, b, a))});
        comp[Q.object_name(p) + "|" + Q.object_name(q) + "|" + Q.object_name(r)] = std::move(t);
      }
  j["compose"] = std::move(comp);
  Json id = Json::object();
  for (Obj q = 0; q < n; ++q) id[Q.object_name(q)] = Q.hom(q, q).name(Q.identity(q));
  j["identity"] = std::move(id);
  return j;
}

/// {"carrier", "leq", "tensor": [[a, b, a&b], ...], "unit"}
inline Quantale quantale_from_json(const Json& j) {
  return json_detail::guard([&] {
    QuantaleSpec s{lattice_from_json(j), {}, 0};
    const std::size_t n = s.lattice.size();
    s.tensor.assign(n * n, 0);
    std::vector<std::uint8_t> seen(n * n, 0);
    for (const auto& t : json_detail::field(j, "tensor")) {
      if (!t.is_array() || t.size() != 3) throw ParseError("tensor entries are [a, b, result]");
      const Elem a = json_detail::element(s.lattice, t[0], "tensor");
      const Elem b = json_detail::element(s.lattice, t[1], "tensor");
      seen[a * n + b] = 1;
      s.tensor[a * n + b] = json_detail::element(s.lattice, t[2], "tensor");
    }
    for (auto x : seen)
      if (!x) throw ValidationError("PartialTable", "tensor");
    s.unit = json_detail::element(s.lattice, json_detail::field(j, "unit"), "unit");
    return validate_quantale(std::move(s));
  });
}

// ---------------------------------------------------------------------------
// Categories, functors, distributors, presheaves

inline CategoryPtr category_from_json(const QuantaloidPtr& Q, const Json& j) {
  return json_detail::guard([&] {
    CategorySpec s{Q, {}, {}, {}};
    std::map<std::string, std::size_t> pos;
    for (const auto& e : json_detail::field(j, "elements")) {
      auto id = json_detail::field(e, "id").get<std::string>();
      auto t = Q->find_object(json_detail::field(e, "type").get<std::string>());
      if (!t) throw TypeMismatch("element " + id + ": unknown type");
      pos.emplace(id, s.names.size());
      s.names.push_back(id);
      s.types.push_back(*t);
    }
    const std::size_t n = s.names.size();
    s.hom.assign(n * n, 0);
    std::vector<std::uint8_t> seen(n * n, 0);
    for (const auto& t : json_detail::field(j, "hom")) {
      if (!t.is_array() || t.size() != 3) throw ParseError("hom entries are [a, b, value]");
      auto a = pos.find(t[0].get<std::string>());
      auto b = pos.find(t[1].get<std::string>());
      if (a == pos.end() || b == pos.end()) throw ValidationError("ForeignElement", "hom entry " + t.dump());
      const auto& H = Q->hom(s.types[a->second], s.types[b->second]);
      seen[a->second * n + b->second] = 1;
      s.hom[a->second * n + b->second] = json_detail::element(H, t[2], "hom");
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) throw ValidationError("PartialTable", "hom " + s.names[k / n] + "," + s.names[k % n]);
    return validate_category(std::move(s));
  });
}

inline Json category_to_json(const QCategory& A) {
  const auto& Q = A.quantaloid();
  Json j;
  Json els = Json::array();
  for (std::size_t a = 0; a < A.size(); ++a) els.push_back({{"id", A.name(a)}, {"type", Q.object_name(A.type(a))}});
  j["elements"] = std::move(els);
  Json hom = Json::array();
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b)
      hom.push_back({A.name(a), A.name(b), Q.hom(A.type(a), A.type(b)).name(A.hom(a, b))});
  j["hom"] = std::move(hom);
  return j;
}

inline Json presheaf_to_json(const QCategory& A, const Presheaf& p) {
  const auto& Q = A.quantaloid();
  Json v = Json::object();
  for (std::size_t x = 0; x < A.size(); ++x) v[A.name(x)] = Q.hom(A.type(x), p.type).name(p.values[x]);
  return Json{{"type", Q.object_name(p.type)}, {"values", std::move(v)}};
}

inline Json copresheaf_to_json(const QCategory& A, const Copresheaf& p) {
  const auto& Q = A.quantaloid();
  Json v = Json::object();
  for (std::size_t x = 0; x < A.size(); ++x) v[A.name(x)] = Q.hom(p.type, A.type(x)).name(p.values[x]);
  return Json{{"type", Q.object_name(p.type)}, {"values", std::move(v)}};
}

inline Presheaf presheaf_from_json(const QCategory& A, const Json& j) {
  return json_detail::guard([&] {
    const auto& Q = A.quantaloid();
    auto t = Q.find_object(json_detail::field(j, "type").get<std::string>());
    if (!t) throw TypeMismatch("presheaf: unknown type");
    const auto& vals = json_detail::field(j, "values");
    Presheaf p{*t, std::vector<Elem>(A.size(), 0)};
    for (std::size_t x = 0; x < A.size(); ++x) {
      if (!vals.contains(A.name(x))) throw ValidationError("PartialTable", "presheaf value at " + A.name(x));
      p.values[x] = json_detail::element(Q.hom(A.type(x), *t), vals.at(A.name(x)), "presheaf");
    }
    return validate_presheaf(A, std::move(p));
  });
}

inline Json distributor_to_json(const QDistributor& d) {
  const auto& Q = d.dom->quantaloid();
  Json m = Json::array();
  for (std::size_t x = 0; x < d.dom->size(); ++x)
    for (std::size_t y = 0; y < d.cod->size(); ++y)
      m.push_back({d.dom->name(x), d.cod->name(y), Q.hom(d.dom->type(x), d.cod->type(y)).name(d(x, y))});
  return m;
}

inline Json functor_map_to_json(const QFunctor& f) {
  Json m = Json::object();
  for (std::size_t a = 0; a < f.dom->size(); ++a) m[f.dom->name(a)] = f.cod->name(f.map[a]);
  return m;
}

// ---------------------------------------------------------------------------
// Workspaces

inline Workspace workspace_from_json(const Json& j) {
  return json_detail::guard([&] {
    if (!j.is_object()) throw ParseError("workspace must be a JSON object");
    if (j.contains("schema") && j.at("schema") != 1) throw ParseError("unsupported schema");
    Workspace w;
    if (j.contains("quantaloid")) {
      w.quantaloid = quantaloid_from_json(j.at("quantaloid"));
    } else if (j.contains("quantale")) {
      auto q = quantale_from_json(j.at("quantale"));
      w.quantaloid = j.value("b_q", false) ? b_q(q) : q.as_quantaloid();
    } else {
      throw ParseError("workspace needs 'quantaloid' or 'quantale'");
    }
    if (j.contains("categories"))
      for (const auto& [name, c] : j.at("categories").items())
        w.categories.emplace_back(name, category_from_json(w.quantaloid, c));
    if (j.contains("functors"))
      for (const auto& [name, f] : j.at("functors").items()) {
        auto dom = w.category(json_detail::field(f, "dom").get<std::string>());
        auto cod = w.category(json_detail::field(f, "cod").get<std::string>());
        QFunctor F{dom, cod, std::vector<std::size_t>(dom->size(), 0)};
        const auto& m = json_detail::field(f, "map");
        for (std::size_t a = 0; a < dom->size(); ++a) {
          if (!m.contains(dom->name(a))) throw ValidationError("PartialTable", "functor " + name + " at " + dom->name(a));
          auto b = cod->find(m.at(dom->name(a)).get<std::string>());
          if (!b) throw ValidationError("ForeignElement", "functor " + name);
          F.map[a] = *b;
        }
        w.functors.emplace_back(name, validate_functor(std::move(F)));
      }
    if (j.contains("distributors"))
      for (const auto& [name, d] : j.at("distributors").items()) {
        auto dom = w.category(json_detail::field(d, "dom").get<std::string>());
        auto cod = w.category(json_detail::field(d, "cod").get<std::string>());
        QDistributor D{dom, cod, std::vector<Elem>(dom->size() * cod->size(), 0)};
        std::vector<std::uint8_t> seen(D.matrix.size(), 0);
        for (const auto& t : json_detail::field(d, "matrix")) {
          if (!t.is_array() || t.size() != 3) throw ParseError("matrix entries are [x, y, value]");
          auto x = dom->find(t[0].get<std::string>());
          auto y = cod->find(t[1].get<std::string>());
          if (!x || !y) throw ValidationError("ForeignElement", "distributor " + name);
          seen[*x * cod->size() + *y] = 1;
          D.at(*x, *y) = json_detail::element(w.quantaloid->hom(dom->type(*x), cod->type(*y)), t[2], "matrix");
        }
        for (auto s : seen)
          if (!s) throw ValidationError("PartialTable", "distributor " + name);
        w.distributors.emplace_back(name, validate_distributor(std::move(D)));
      }
    return w;
  });
}

inline Json workspace_to_json(const Workspace& w) {
  Json j;
  j["schema"] = 1;
  j["quantaloid"] = quantaloid_to_json(*w.quantaloid);
  Json cats = Json::object();
  for (const auto& [n, c] : w.categories) cats[n] = category_to_json(*c);
  j["categories"] = std::move(cats);
  if (!w.functors.empty()) {
    Json fs = Json::object();
    for (const auto& [n, f] : w.functors) {
      std::string dom, cod;
      for (const auto& [cn, c] : w.categories) {
        if (c == f.dom && dom.empty()) dom = cn;
        if (c == f.cod && cod.empty()) cod = cn;
      }
      fs[n] = {{"dom", dom}, {"cod", cod}, {"map", functor_map_to_json(f)}};
    }
    j["functors"] = std::move(fs);
  }
  if (!w.distributors.empty()) {
    Json ds = Json::object();
    for (const auto& [n, d] : w.distributors) {
      std::string dom, cod;
      for (const auto& [cn, c] : w.categories) {
        if (c == d.dom && dom.empty()) dom = cn;
        if (c == d.cod && cod.empty()) cod = cn;
      }
      ds[n] = {{"dom", dom}, {"cod", cod}, {"matrix", distributor_to_json(d)}};
    }
    j["distributors"] = std::move(ds);
  }
  return j;
}

/// Reads and validates a workspace file. Malformed JSON raises ParseError.
inline Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return workspace_from_json(j);
}

}  // namespace qdomain
