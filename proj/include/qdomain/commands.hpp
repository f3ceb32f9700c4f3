#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "continuity.hpp"
#include "cross_validate.hpp"
#include "ideal_classes.hpp"
#include "json_io.hpp"
#include "q_power_checks.hpp"

namespace qdomain {

/// Flags shared by every command.
struct CommandOptions {
  std::string command;
  std::string fixture;
  std::string workspace;
  std::string category;
  std::string class_id = "inhabited-flat";
  std::string type;
  std::string presheaf;  // JSON {"type","values"} or comma-separated values in carrier order
  std::string object;
  std::vector<std::string> fixtures;  // saturation harness
  std::size_t cap = 20000;
  bool cap_overridden = false;
  std::uint64_t seed = 1;
  std::size_t max_poset = 4;
  bool named = false;
  bool co = false;
};

struct Report {
  Json json;
  std::optional<bool> verdict;
};

namespace cmd_detail {

inline ContextOptions context_options(const CommandOptions& o) {
  ContextOptions c;
  c.enumeration.cap = o.cap;
  return c;
}

inline Json echo(const CommandOptions& o) {
  Json a = Json::object();
  if (!o.fixture.empty()) a["fixture"] = o.fixture;
  if (!o.workspace.empty()) a["workspace"] = o.workspace;
  if (!o.category.empty()) a["category"] = o.category;
  a["class"] = o.class_id;
  if (!o.type.empty()) a["type"] = o.type;
  if (!o.presheaf.empty()) a["presheaf"] = o.presheaf;
  if (!o.object.empty()) a["object"] = o.object;
  if (!o.fixtures.empty()) a["fixtures"] = o.fixtures;
  a["cap"] = o.cap;
  a["seed"] = o.seed;
  return a;
}

inline Json begin(const CommandOptions& o) {
  Json j;
  j["schema"] = 1;
  j["command"] = o.command;
  j["args"] = echo(o);
  j["verdict"] = nullptr;
  j["witnesses"] = Json::array();
  j["disclosures"] = Json::array();
  return j;
}

inline Workspace workspace(const CommandOptions& o) {
  if (!o.workspace.empty()) return load_workspace(o.workspace);
  if (!o.fixture.empty()) return load_fixture(o.fixture);
  throw ParseError("one of --workspace or --fixture is required");
}

inline Json name_matrix(const QDistributor& d) {
  const auto& Q = d.dom->quantaloid();
  Json rows = Json::object();
  for (std::size_t x = 0; x < d.dom->size(); ++x) {
    Json r = Json::object();
    for (std::size_t y = 0; y < d.cod->size(); ++y) r[d.cod->name(y)] = Q.hom(d.dom->type(x), d.cod->type(y)).name(d(x, y));
    rows[d.dom->name(x)] = std::move(r);
  }
  return rows;
}

inline Json element_list(const QCategory& A, const std::vector<std::size_t>& xs) {
  Json j = Json::array();
  for (auto x : xs) j.push_back(A.name(x));
  return j;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

inline std::optional<Obj> type_flag(const QCategory& A, const std::string& t) {
  if (t.empty()) return std::nullopt;
  auto q = A.quantaloid().find_object(t);
  if (!q) throw ParseError("unknown type '" + t + "'");
  return q;
}

/// The presheaf given by --presheaf: a JSON document or "v1,v2,..." in carrier order.
inline Presheaf parse_presheaf(const QCategory& A, const std::string& text, std::optional<Obj> type) {
  if (!text.empty() && text.front() == '{') {
    try {
      return presheaf_from_json(A, Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("--presheaf: ") + e.what());
    }
  }
  const auto& Q = A.quantaloid();
  Obj q = type ? *type : 0;
  if (!type && Q.num_objects() != 1) throw ParseError("--presheaf needs --type over a multi-object quantaloid");
  auto parts = split(text, ',');
  if (A.size() == 0 && parts.size() == 1 && parts[0].empty()) parts.clear();
  if (parts.size() != A.size()) throw ParseError("--presheaf: expected " + std::to_string(A.size()) + " values");
  Presheaf p{q, std::vector<Elem>(A.size(), 0)};
  for (std::size_t x = 0; x < A.size(); ++x) {
    auto e = Q.hom(A.type(x), q).find(parts[x]);
    if (!e) throw ValidationError("ForeignElement", "--presheaf value " + parts[x]);
    p.values[x] = *e;
  }
  return validate_presheaf(A, std::move(p));
}

/// Membership of one presheaf with the predicate's own witness.
inline Json membership_detail(const IdealClass& c, const ClassContext& ctx, const Presheaf& p, bool& member) {
  const auto& A = ctx.category();
  Json j;
  j["presheaf"] = presheaf_to_json(A, p);
  Json w = nullptr;
  member = membership(c, ctx, p);
  if (!member) {
    if (c.inhabited_only && !inhabited(A, p)) {
      w = "not inhabited";
    } else {
      switch (c.base) {
        case BaseClass::irreducible: {
          auto r = is_irreducible(ctx, p);
          w = Json::array({presheaf_to_json(A, ctx.pa()[r.witness->first]), presheaf_to_json(A, ctx.pa()[r.witness->second])});
          break;
        }
        case BaseClass::flat:
        case BaseClass::weakly_flat: {
          auto r = c.base == BaseClass::flat ? is_flat(ctx, p) : is_weakly_flat(ctx, p);
          w = Json::array(
              {copresheaf_to_json(A, ctx.copa()[r.witness->first]), copresheaf_to_json(A, ctx.copa()[r.witness->second])});
          break;
        }
        case BaseClass::conical: w = "not the join of the representables below it"; break;
        case BaseClass::conical_ideal: {
          auto r = is_conical_ideal(ctx, p);
          w = {{"representablesBelow", element_list(A, r.candidates)}};
          if (r.unbounded_pair)
            w["unboundedPair"] = element_list(A, {r.unbounded_pair->first, r.unbounded_pair->second});
          else
            w["reason"] = "no directed subset of the representables below joins to it";
          break;
        }
        case BaseClass::representable: w = "not representable"; break;
        default: w = "predicate false"; break;
      }
    }
  } else if (c.base == BaseClass::conical_ideal) {
    j["directedWitness"] = element_list(A, is_conical_ideal(ctx, p).witness);
  }
  j["member"] = member;
  j["witness"] = std::move(w);
  return j;
}

inline Json saturation_json(const SaturationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"fixtures", c.fixtures},
                      {"cases", c.cases},
                      {"counterexamples", c.counterexamples},
                      {"exhaustive", c.exhaustive},
                      {"skipped", c.skipped},
                      {"firstWitness", c.first_witness}});
  return checks;
}

}  // namespace cmd_detail

// ---------------------------------------------------------------------------

inline Report cmd_validate(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  const auto& Q = *w.quantaloid;
  Json res;
  res["objects"] = Q.objects();
  res["joinContinuityCheck"] = Q.join_continuity_mode();
  Json cats = Json::object();
  for (const auto& [n, c] : w.categories) cats[n] = {{"size", c->size()}, {"skeletal", is_skeletal(*c)}};
  res["categories"] = std::move(cats);
  res["functors"] = w.functors.size();
  res["distributors"] = w.distributors.size();
  j["verdict"] = true;
  j["result"] = std::move(res);
  return {std::move(j), true};
}

inline Report cmd_enumerate(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  auto A = w.category_or_first(o.category);
  auto type = cmd_detail::type_flag(*A, o.type);
  EnumerationOptions eo{o.cap};
  Json list = Json::array();
  for (Obj q = 0; q < A->quantaloid().num_objects(); ++q) {
    if (type && *type != q) continue;
    if (o.co) {
      for (const auto& p : enumerate_copresheaves(*A, q, eo)) list.push_back(copresheaf_to_json(*A, p));
    } else {
      for (const auto& p : enumerate_presheaves(*A, q, eo)) list.push_back(presheaf_to_json(*A, p));
    }
  }
  j["result"] = {{"kind", o.co ? "copresheaves" : "presheaves"}, {"count", list.size()}, {"items", std::move(list)}};
  return {std::move(j), std::nullopt};
}

inline Report cmd_check_ideal(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  auto A = w.category_or_first(o.category);
  auto c = parse_class(o.class_id);
  ClassContext ctx(A, cmd_detail::context_options(o));
  auto type = cmd_detail::type_flag(*A, o.type);
  Json items = Json::array();
  bool all = true;
  std::size_t members = 0;
  auto check = [&](const Presheaf& p) {
    bool m = false;
    auto d = cmd_detail::membership_detail(c, ctx, p, m);
    if (!m) {
      all = false;
      j["witnesses"].push_back({{"presheaf", d["presheaf"]}, {"witness", d["witness"]}});
    }
    members += m;
    items.push_back(std::move(d));
  };
  if (!o.presheaf.empty()) {
    check(cmd_detail::parse_presheaf(*A, o.presheaf, type));
  } else {
    for (std::size_t i = 0; i < ctx.pa().size(); ++i)
      if (!type || ctx.pa()[i].type == *type) check(ctx.pa()[i]);
  }
  j["verdict"] = all;
  j["result"] = {{"checked", items.size()}, {"members", members}, {"items", std::move(items)}};
  return {std::move(j), all};
}

inline Report cmd_phi_cat(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  auto A = w.category_or_first(o.category);
  ClassContext ctx(A, cmd_detail::context_options(o));
  auto phi = phi_category(parse_class(o.class_id), ctx);
  Json members = Json::array();
  for (std::size_t k = 0; k < phi.size(); ++k)
    members.push_back({{"id", phi.as_category->name(k)}, {"presheaf", presheaf_to_json(*A, phi.presheaves[k])}});
  Json res;
  res["size"] = phi.size();
  res["presheafCategorySize"] = ctx.pa().size();
  res["members"] = std::move(members);
  res["skeletal"] = is_skeletal(*phi.as_category);
  if (phi.yoneda) res["yoneda"] = functor_map_to_json(*phi.yoneda);
  const bool ok = !phi.missing_representable;
  if (!ok) j["witnesses"].push_back({{"missingRepresentable", A->name(*phi.missing_representable)}});
  j["verdict"] = ok;
  j["result"] = std::move(res);
  return {std::move(j), ok};
}

inline Report cmd_check_cocomplete(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  auto A = w.category_or_first(o.category);
  ClassContext ctx(A, cmd_detail::context_options(o));
  auto phi = phi_category(parse_class(o.class_id), ctx);
  auto r = check_cocomplete(phi);
  Json table = Json::array();
  for (std::size_t k = 0; k < phi.size(); ++k) {
    Json e{{"presheaf", presheaf_to_json(*A, phi.presheaves[k])}, {"exists", r.sup_table[k].exists}};
    e["sup"] = r.sup_table[k].exists ? Json(A->name(*r.sup_table[k].canonical)) : Json(nullptr);
    e["isoClass"] = cmd_detail::element_list(*A, r.sup_table[k].representatives);
    table.push_back(std::move(e));
  }
  for (auto k : r.missing) j["witnesses"].push_back({{"noSup", presheaf_to_json(*A, phi.presheaves[k])}});
  j["verdict"] = r.verdict;
  j["result"] = {{"supTable", std::move(table)},
                 {"supLeftAdjointToYoneda", r.adjoint_ok ? Json(*r.adjoint_ok) : Json(nullptr)}};
  return {std::move(j), r.verdict};
}

namespace cmd_detail {

inline std::unique_ptr<Analysis> analysis(const CommandOptions& o, CategoryPtr& A) {
  auto w = workspace(o);
  A = w.category_or_first(o.category);
  return analyze(parse_class(o.class_id), A, context_options(o));
}

}  // namespace cmd_detail

inline Report cmd_way_below(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  CategoryPtr A;
  auto an = cmd_detail::analysis(o, A);
  Json fd = Json::object();
  auto cols = way_below_functor(an->way);
  for (std::size_t a = 0; a < A->size(); ++a) fd[A->name(a)] = presheaf_to_json(*A, cols[a]);
  const bool ok = an->way.below_identity && an->way.idempotent_below;
  j["verdict"] = ok;
  j["result"] = {{"phiSize", an->phi->size()},
                 {"phiSSize", an->s.members.size()},
                 {"wayBelow", cmd_detail::name_matrix(an->way.matrix)},
                 {"belowIdentity", an->way.below_identity},
                 {"composeBelow", an->way.idempotent_below},
                 {"fDown", std::move(fd)}};
  return {std::move(j), ok};
}

inline Report cmd_check_continuous(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  CategoryPtr A;
  auto an = cmd_detail::analysis(o, A);
  const auto& c = an->continuity;
  Json per = Json::object();
  for (std::size_t a = 0; a < A->size(); ++a)
    per[A->name(a)] = {{"ideal", presheaf_to_json(*A, c.per_element[a].ideal)},
                       {"inPhiS", c.per_element[a].in_phi_s},
                       {"supOk", c.per_element[a].sup_ok}};
  if (c.witness) j["witnesses"].push_back({{"element", A->name(*c.witness)}});
  j["verdict"] = c.verdict;
  j["perElement"] = std::move(per);
  j["result"] = {{"approxOk", c.approx_ok},
                 {"crossCheckOk", c.cross_check_ok},
                 {"leftAdjointOk", c.left_adjoint_ok ? Json(*c.left_adjoint_ok) : Json(nullptr)},
                 {"interpolating", an->interpolation.holds},
                 {"supComparison", "iso-class"}};
  return {std::move(j), c.verdict};
}

inline Report cmd_check_algebraic(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  CategoryPtr A;
  auto an = cmd_detail::analysis(o, A);
  const auto& r = an->algebraicity;
  if (r.witness) j["witnesses"].push_back({{"element", A->name(*r.witness)}});
  Json per = Json::object();
  for (std::size_t a = 0; a < A->size(); ++a)
    per[A->name(a)] = {{"compact", std::find(r.compacts.begin(), r.compacts.end(), a) != r.compacts.end()},
                       {"selfWayBelow", A->quantaloid().hom(A->type(a), A->type(a)).name(an->way.matrix(a, a))}};
  j["verdict"] = r.verdict;
  j["perElement"] = std::move(per);
  j["result"] = {{"compacts", cmd_detail::element_list(*A, r.compacts)},
                 {"sigma", cmd_detail::name_matrix(r.sigma)},
                 {"sEqualsFDown", r.s_equals_fdown},
                 {"sigmaBelowWayBelow", r.sigma_below_way_below},
                 {"continuous", an->continuity.verdict},
                 {"supComparison", "iso-class"}};
  return {std::move(j), r.verdict};
}

inline Report cmd_equivalence(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  CategoryPtr A;
  auto an = cmd_detail::analysis(o, A);
  const bool cocomplete = an->s.members.size() == an->phi->size();
  if (!cocomplete || !an->algebraicity.verdict) {
    j["verdict"] = false;
    j["witnesses"].push_back({{"precondition", !cocomplete ? "not cocomplete" : "not algebraic"}});
    j["result"] = {{"preconditions", false}};
    return {std::move(j), false};
  }
  auto eq = algebraic_equivalence(*an);
  Json res;
  res["preconditions"] = true;
  res["compacts"] = cmd_detail::element_list(*A, an->algebraicity.compacts);
  res["phiCompactSize"] = eq.phi_compact->size();
  if (eq.f) res["F"] = functor_map_to_json(*eq.f);
  if (eq.g) res["G"] = functor_map_to_json(*eq.g);
  res["GFIsoIdentity"] = eq.gf_iso_identity;
  res["FGIdentity"] = eq.fg_identity;
  res["comparisons"] = {{"GF", "iso-class"}, {"FG", "exact"}};
  if (!eq.failure.empty()) j["witnesses"].push_back({{"failure", eq.failure}});
  j["verdict"] = eq.verdict;
  j["result"] = std::move(res);
  return {std::move(j), eq.verdict};
}

inline Report cmd_saturation(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  std::vector<std::string> ids = o.fixtures;
  if (ids.empty()) ids = {"fix-v", "fix-antichain2", "fix-bg3"};
  std::vector<NamedContext> fx;
  for (const auto& id : ids) {
    auto w = load_fixture(id);
    fx.push_back({id, std::make_shared<ClassContext>(w.category_or_first(""), cmd_detail::context_options(o))});
  }
  SaturationOptions so;
  so.seed = o.seed;
  auto r = saturation_harness(parse_class(o.class_id), fx, so);
  for (const auto& d : r.disclosures) j["disclosures"].push_back(d);
  for (const auto& c : r.checks)
    if (c.counterexamples) j["witnesses"].push_back({{"check", c.name}, {"fixtures", c.fixtures}, {"witness", c.first_witness}});
  j["verdict"] = r.pass;
  j["result"] = {{"checks", cmd_detail::saturation_json(r)}};
  return {std::move(j), r.pass};
}

inline Report cmd_cross_validate(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  j["args"]["maxPoset"] = o.max_poset;
  j["args"]["named"] = o.named;
  Json rows = Json::array();
  bool ok = true;
  auto run = [&](const std::string& label, const Preorder& p) {
    for (const auto& id : cross_validation_classes()) {
      auto r = cross_validate(p, parse_class(id), cmd_detail::context_options(o));
      if (!r.ok()) {
        ok = false;
        j["witnesses"].push_back({{"poset", label}, {"class", id}, {"mismatches", r.mismatches}});
      }
    }
  };
  for (std::size_t n = 0; n <= o.max_poset; ++n) {
    auto ps = posets_up_to_iso(n);
    for (std::size_t k = 0; k < ps.size(); ++k) run("n" + std::to_string(n) + "#" + std::to_string(k), ps[k]);
    rows.push_back({{"elements", n}, {"posets", ps.size()}});
  }
  Json named = Json::array();
  if (o.named)
    for (const auto& [name, p] : fixtures::named_posets()) {
      run(name, p);
      named.push_back(name);
    }
  j["verdict"] = ok;
  j["result"] = {{"corpus", std::move(rows)}, {"named", std::move(named)}, {"classes", cross_validation_classes()}};
  return {std::move(j), ok};
}

inline Report cmd_q_power(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  auto w = cmd_detail::workspace(o);
  const auto& Q = w.quantaloid;
  auto a = Q->find_object(o.object.empty() ? Q->object_name(0) : o.object);
  if (!a) throw ParseError("unknown object '" + o.object + "'");
  auto r = check_q_power(Q, *a, cmd_detail::context_options(o));
  const bool ok = r.d_adjoint_sup && r.sup_is_value_at_identity && r.integral_simplification && r.d_identity_is_yoneda &&
                  r.p_continuous && r.way_below_is_d;
  if (!r.witness.empty()) j["witnesses"].push_back(r.witness);
  j["verdict"] = ok;
  j["result"] = {{"elements", r.elements},          {"integral", r.integral},
                 {"dLeftAdjointToSup", r.d_adjoint_sup}, {"supIsValueAtIdentity", r.sup_is_value_at_identity},
                 {"integralForm", r.integral_simplification}, {"dIdentityIsYoneda", r.d_identity_is_yoneda},
                 {"pContinuous", r.p_continuous},   {"fDownEqualsD", r.way_below_is_d},
                 {"finiteMeetCriterion", r.finite_meets}, {"everyDFlat", r.every_d_flat},
                 {"fContinuous", r.f_continuous}};
  return {std::move(j), ok};
}

inline Report cmd_fixtures_list(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  Json list = Json::array();
  for (const auto& e : fixture_catalog()) list.push_back({{"id", e.id}, {"description", e.description}});
  j["result"] = {{"fixtures", std::move(list)}};
  return {std::move(j), std::nullopt};
}

inline Report cmd_fixtures_show(const CommandOptions& o) {
  auto j = cmd_detail::begin(o);
  j["result"] = workspace_to_json(load_fixture(o.fixture));
  return {std::move(j), std::nullopt};
}

/// Human-readable rendering derived from the JSON report, so both carry the same verdict and witnesses.
inline std::string render_table(const Json& j) {
  std::ostringstream out;
  out << "command     " << j.at("command").get<std::string>() << "\n";
  out << "verdict     " << (j.at("verdict").is_null() ? "n/a" : (j.at("verdict").get<bool>() ? "true" : "false")) << "\n";
  for (const auto& w : j.at("witnesses")) out << "witness     " << w.dump() << "\n";
  for (const auto& d : j.at("disclosures")) out << "disclosure  " << d.get<std::string>() << "\n";
  if (j.contains("perElement"))
    for (const auto& [k, v] : j.at("perElement").items()) out << "element     " << k << "  " << v.dump() << "\n";
  if (j.contains("result") && j.at("result").is_object())
    for (const auto& [k, v] : j.at("result").items()) {
      if (v.is_array() && !v.empty() && v.front().is_object()) {
        out << k << ":\n";
        for (const auto& item : v) out << "  " << item.dump() << "\n";
      } else {
        out << k << ": " << v.dump() << "\n";
      }
    }
  return out.str();
}

}  // namespace qdomain
