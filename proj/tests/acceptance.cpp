// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
// Optional argv[1]: path to the qdomain CLI, used for the cross-process determinism check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qdomain/catalog.hpp"
#include "qdomain/commands.hpp"
#include "qdomain/cross_validate.hpp"
#include "qdomain/q_power_checks.hpp"

using namespace qdomain;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// Time limits in seconds, per criterion.
constexpr std::array<double, 11> kLimit{0, 60, 60, 30, 300, 60, 300, 30, 120, 10, 120};

// Enumeration bounds for the exhaustive law checks.
constexpr std::size_t kFunctorCap = 5000;
constexpr std::size_t kPairCap = 200000;

std::vector<std::pair<std::string, CategoryPtr>> catalog_categories() {
  std::vector<std::pair<std::string, CategoryPtr>> out;
  for (const auto& e : fixture_catalog()) out.emplace_back(e.id, e.build().category_or_first(""));
  return out;
}

std::vector<std::pair<std::string, Preorder>> poset_corpus() {
  std::vector<std::pair<std::string, Preorder>> out;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto ps = posets_up_to_iso(n);
    for (std::size_t k = 0; k < ps.size(); ++k) out.emplace_back("n" + std::to_string(n) + "#" + std::to_string(k), ps[k]);
  }
  for (auto& np : fixtures::named_posets()) out.push_back(np);
  return out;
}

// ---------------------------------------------------------------------------

Outcome poset_ideals() {
  Outcome o;
  auto corpus = poset_corpus();
  std::size_t checks = 0;
  for (const auto& [name, p] : corpus)
    for (const char* id : {"inhabited-flat", "inhabited-irreducible"}) {
      auto r = cross_validate(p, parse_class(id));
      ++checks;
      o.require(r.ideals_match, name + " " + id);
    }
  o.detail = std::to_string(corpus.size()) + " posets, " + std::to_string(checks) + " ideal-set comparisons";
  return o;
}

Outcome poset_way_below() {
  Outcome o;
  auto corpus = poset_corpus();
  for (const auto& [name, p] : corpus)
    for (const auto& id : cross_validation_classes()) {
      auto r = cross_validate(p, parse_class(id));
      o.require(r.way_below_match && r.continuous_match && r.algebraic_match,
                name + " " + id + (r.mismatches.empty() ? "" : ": " + r.mismatches.front()));
    }
  o.detail = std::to_string(corpus.size()) + " posets x 3 classes";
  return o;
}

// Residuals of distributors, on the shapes A ⇸ {q} and {p} ⇸ A where everything is enumerable.
void distributor_residuals(Outcome& o, const std::string& name, const CategoryPtr& A, std::size_t& cases) {
  const auto& Q = A->quantaloid();
  const auto& amb = A->ambient();
  for (Obj p = 0; p < Q.num_objects(); ++p)
    for (Obj q = 0; q < Q.num_objects(); ++q) {
      auto pres_q = enumerate_presheaves(*A, q);
      auto pres_p = enumerate_presheaves(*A, p);
      auto copres_p = enumerate_copresheaves(*A, p);
      const auto& H = Q.hom(p, q);
      if (pres_q.size() * (pres_p.size() + copres_p.size()) * H.size() > kPairCap) continue;
      auto sp = singleton_category(amb, p);
      auto sq = singleton_category(amb, q);
      for (const auto& mu : pres_q) {
        auto phi = as_distributor(A, mu);
        for (Elem h = 0; h < H.size(); ++h) {
          QDistributor psi{sp, sq, {h}};
          auto r = dist_rres(phi, psi);
          for (const auto& la : copres_p) {
            ++cases;
            auto lam = as_distributor(A, la);
            o.require(dist_leq(lam, r) == dist_leq(dist_compose(phi, lam), psi), name + ": right residual");
          }
          for (const auto& nu : pres_p) {
            ++cases;
            auto gamma = as_distributor(A, nu);
            auto l = dist_lres(phi, gamma);
            o.require(dist_leq(psi, l) == dist_leq(dist_compose(psi, gamma), phi), name + ": left residual");
          }
        }
      }
    }
}

void quantaloid_residuals(Outcome& o, const Quantaloid& Q, std::size_t& cases) {
  const std::size_t n = Q.num_objects();
  for (Obj x = 0; x < n; ++x)
    for (Obj y = 0; y < n; ++y)
      for (Obj z = 0; z < n; ++z) {
        const auto& Hxy = Q.hom(x, y);
        const auto& Hyz = Q.hom(y, z);
        const auto& Hxz = Q.hom(x, z);
        for (Elem u = 0; u < Hxy.size(); ++u)
          for (Elem w = 0; w < Hyz.size(); ++w)
            for (Elem v = 0; v < Hxz.size(); ++v) {
              ++cases;
              const bool below = Hxz.leq(Q.compose(x, y, z, w, u), v);
              o.require(below == Hyz.leq(w, Q.lres(x, y, z, v, u)), "quantaloid left residual");
              o.require(below == Hxy.leq(u, Q.rres(x, y, z, w, v)), "quantaloid right residual");
            }
      }
}

Outcome calculus_laws() {
  Outcome o;
  auto cats = catalog_categories();
  std::size_t yoneda_cases = 0, residual_cases = 0, functor_pairs = 0, adjunctions = 0;
  std::vector<const Quantaloid*> seen;
  std::vector<std::string> sampled;
  for (const auto& [name, A] : cats) {
    const auto& Q = A->quantaloid();
    if (std::find(seen.begin(), seen.end(), &Q) == seen.end()) {
      seen.push_back(&Q);
      quantaloid_residuals(o, Q, residual_cases);
    }
    auto pa = presheaf_category(A);
    auto y = check_yoneda_lemma(pa);
    yoneda_cases += A->size() * pa.size();
    o.require(y.holds, name + ": Yoneda lemma");
    o.require(is_fully_faithful(yoneda(pa)), name + ": Yoneda embedding not fully faithful");
    distributor_residuals(o, name, A, residual_cases);

    // endofunctors: graph/cograph laws, composition, and F→ ⊣ F←
    auto e = enumerate_functor_maps(functor_space(*A, *A), kFunctorCap);
    if (!e.complete) sampled.push_back(name);
    std::vector<QFunctor> fs;
    for (auto& m : e.maps) fs.push_back(QFunctor{A, A, m});
    const auto idA = identity_distributor(A);
    for (const auto& f : fs) {
      auto g = graph(f), cg = cograph(f);
      o.require(dist_leq(idA, dist_compose(cg, g)), name + ": unit of graph -| cograph");
      o.require(dist_leq(dist_compose(g, cg), idA), name + ": counit of graph -| cograph");
      auto r = check_adjoint(f_to_functor(f, pa, pa), f_from_functor(f, pa, pa));
      ++adjunctions;
      o.require(r.holds, name + ": F-> -| F<-");
    }
    const std::size_t pair_count = fs.size() * fs.size() <= kPairCap ? fs.size() : 0;
    if (!pair_count && !fs.empty()) sampled.push_back(name + " (pairs)");
    for (std::size_t i = 0; i < pair_count; ++i)
      for (std::size_t j = 0; j < pair_count; ++j) {
        ++functor_pairs;
        const auto& f = fs[i];
        const auto& g = fs[j];
        auto gf = compose(g, f);
        o.require(graph(gf) == dist_compose(graph(g), graph(f)), name + ": (GF) graph");
        o.require(cograph(gf) == dist_compose(cograph(f), cograph(g)), name + ": (GF) cograph");
      }
  }
  std::ostringstream d;
  d << cats.size() << " fixtures; Yoneda " << yoneda_cases << ", residual " << residual_cases << ", functor pairs "
    << functor_pairs << ", F->-|F<- " << adjunctions;
  if (!sampled.empty()) {
    d << "; truncated:";
    for (const auto& s : sampled) d << " " << s;
  }
  o.detail = d.str();
  return o;
}

Outcome saturation() {
  Outcome o;
  std::vector<NamedContext> fx;
  for (const char* id : {"fix-v", "fix-antichain2", "fix-bg3"})
    fx.push_back({id, std::make_shared<ClassContext>(load_fixture(id).category_or_first(""))});
  std::size_t cases = 0, sampled = 0;
  for (const char* base : {"irreducible", "flat", "weakly-flat", "conical", "conical-ideal"})
    for (bool inh : {false, true}) {
      const std::string id = inh ? std::string("inhabited-") + base : base;
      auto r = saturation_harness(parse_class(id), fx);
      for (const auto& c : r.checks) {
        cases += c.cases;
        if (!c.exhaustive) ++sampled;
        o.require(c.counterexamples == 0, id + " " + c.name + " " + c.fixtures + ": " + c.first_witness);
      }
    }
  o.detail = "10 classes, " + std::to_string(cases) + " cases, " + std::to_string(sampled) + " sampled checks";
  return o;
}

Outcome presheaf_continuity() {
  Outcome o;
  for (const char* id : {"fix-v", "fix-antichain2"}) {
    auto pa = presheaf_category(load_fixture(id).category_or_first(""));
    auto an = analyze(parse_class("all"), pa.as_category);
    const std::string n = std::string("P(") + id + ")";
    o.require(an->s.members.size() == an->phi->size() && an->s.adjunction_ok, n + " not cocomplete");
    o.require(an->continuity.verdict, n + " not continuous");
    o.require(an->continuity.left_adjoint_ok.value_or(false), n + " F_down not left adjoint to sup");
  }
  o.detail = "P(fix-v), P(fix-antichain2) over all presheaves";
  return o;
}

Outcome phi_structure() {
  Outcome o;
  std::size_t instances = 0, round_trips = 0;
  for (const auto& [name, A] : catalog_categories())
    for (const auto& id : builtin_class_ids()) {
      auto c = parse_class(id);
      ClassContext ctx(A);
      auto phi = phi_category(c, ctx);
      if (phi.size() > 8) continue;
      ++instances;
      const std::string tag = name + " " + id;
      auto an = analyze(c, phi.as_category);
      for (auto k : phi.yoneda->map) o.require(is_compact(an->s, an->way, k), tag + ": representable not compact");
      o.require(an->s.members.size() == an->phi->size(), tag + ": Phi A not cocomplete");
      o.require(an->algebraicity.verdict, tag + ": Phi A not algebraic");
      auto eq = algebraic_equivalence(*an, false);
      o.require(eq.verdict, tag + ": Phi A not reconstructed from its compacts (" + eq.failure + ")");

      auto base = analyze(c, A);
      if (base->s.members.size() == base->phi->size() && base->algebraicity.verdict) {
        ++round_trips;
        auto be = algebraic_equivalence(*base);
        o.require(be.verdict, tag + ": A not equivalent to Phi(A_c) (" + be.failure + ")");
      }
    }
  o.detail = std::to_string(instances) + " (fixture, class) pairs with |Phi A| <= 8, " + std::to_string(round_trips) +
             " with A itself cocomplete and algebraic";
  return o;
}

Outcome interpolation() {
  Outcome o;
  std::size_t continuous = 0;
  for (const auto& [name, A] : catalog_categories())
    for (const auto& id : builtin_class_ids()) {
      auto an = analyze(parse_class(id), A);
      if (!an->continuity.verdict) continue;
      ++continuous;
      o.require(an->interpolation.holds, name + " " + id);
    }
  o.detail = std::to_string(continuous) + " continuous (fixture, class) pairs";
  return o;
}

Outcome divisible() {
  Outcome o;
  std::size_t objects = 0;
  for (const auto& [name, q] : std::vector<std::pair<std::string, Quantale>>{
           {"G3", fixtures::g3()}, {"L3", fixtures::luk3()}, {"PWR2", fixtures::pwr2()}}) {
    o.require(check_divisible(q).divisible, name + " not divisible");
    auto bq = b_q(q);
    bool valid = true;
    try {
      validate_quantaloid(bq->spec());
    } catch (const Error&) {
      valid = false;
    }
    o.require(valid, "B_" + name + " fails validation");
  }
  for (const auto& [name, Q] : std::vector<std::pair<std::string, QuantaloidPtr>>{{"B_G3", fixtures::bg3()},
                                                                                 {"B_PWR2", fixtures::bpwr2()}})
    for (Obj a = 0; a < Q->num_objects(); ++a) {
      ++objects;
      auto r = check_q_power(Q, a);
      const std::string tag = name + "^" + Q->object_name(a);
      o.require(r.d_adjoint_sup, tag + ": d not left adjoint to sup");
      o.require(r.sup_is_value_at_identity, tag + ": sup");
      o.require(r.integral_simplification, tag + ": integral form of d");
      o.require(r.d_identity_is_yoneda, tag + ": d(1)");
      o.require(r.p_continuous && r.way_below_is_d, tag + ": P-continuity");
      o.require(r.every_d_flat, tag + ": d(f) not flat (" + r.witness + ")");
      o.require(r.f_continuous, tag + ": not F-continuous");
    }
  o.detail = "3 quantales, " + std::to_string(objects) + " objects of B_G3 and B_PWR2";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  auto V = fixtures::fix_v();
  ClassContext ctx(V);
  Presheaf xy{0, {1, 1, 0}};
  auto f = is_flat(ctx, xy);
  o.require(!f.holds && f.witness, "{x,y} flat or no witness");
  auto i = is_irreducible(ctx, xy);
  o.require(!i.holds && i.witness, "{x,y} irreducible or no witness");
  auto c = is_conical_ideal(ctx, xy);
  o.require(!c.holds && c.unbounded_pair, "{x,y} conical ideal or no witness");
  auto phi = phi_category(parse_class("all"), ctx);
  auto cc = check_cocomplete(phi);
  bool empty_missing = false;
  for (auto k : cc.missing) empty_missing |= phi.presheaves[k] == Presheaf{0, {0, 0, 0}};
  o.require(!cc.verdict && empty_missing, "(all, V) cocomplete or witness is not the empty presheaf");
  o.detail = "{x,y} on V: flat, irreducible, conical-ideal refuted; (all, V) misses sup of 0";
  return o;
}

std::string run_cli(const std::string& cli, const std::string& args) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((cli + " " + args + " 2>/dev/null").c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

std::vector<std::string> command_matrix() {
  std::vector<std::string> cmds;
  for (const char* fx : {"fix-v", "fix-bg3", "fix-g3-nonalg", "fix-qa-bpwr2-12"}) {
    const std::string f = std::string(" --fixture ") + fx + " --json";
    for (const char* c : {"validate", "enumerate", "phi-cat", "check-cocomplete", "way-below", "check-continuous",
                          "check-algebraic", "equivalence"})
      cmds.push_back(c + f + " --class inhabited-flat");
    cmds.push_back("check-ideal" + f + " --class flat");
    cmds.push_back("enumerate --co" + f);
  }
  cmds.push_back("saturation-harness --class weakly-flat --seed 7 --json");
  cmds.push_back("cross-validate --max-poset 3 --named --json");
  cmds.push_back("q-power --fixture fix-qa-bpwr2-12 --object {1} --json");
  cmds.push_back("fixtures list --json");
  cmds.push_back("fixtures show fix-crown --json");
  return cmds;
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  std::size_t runs = 0;
  // in process: every command function, twice
  CommandOptions base;
  base.fixture = "fix-v";
  using Fn = Report (*)(const CommandOptions&);
  const std::vector<std::pair<const char*, Fn>> fns{
      {"validate", cmd_validate},        {"enumerate", cmd_enumerate},
      {"check-ideal", cmd_check_ideal},  {"phi-cat", cmd_phi_cat},
      {"check-cocomplete", cmd_check_cocomplete}, {"way-below", cmd_way_below},
      {"check-continuous", cmd_check_continuous}, {"check-algebraic", cmd_check_algebraic},
      {"equivalence", cmd_equivalence},  {"saturation-harness", cmd_saturation},
      {"cross-validate", cmd_cross_validate}, {"q-power", cmd_q_power},
      {"fixtures list", cmd_fixtures_list}, {"fixtures show", cmd_fixtures_show}};
  for (const auto& [name, fn] : fns) {
    CommandOptions opt = base;
    opt.command = name;
    if (std::string(name) == "q-power") opt.fixture = "fix-qa-bg3-1";
    auto a = fn(opt).json.dump(2), b = fn(opt).json.dump(2);
    ++runs;
    o.require(a == b, std::string("in-process ") + name);
  }
  if (!cli.empty()) {
    for (const auto& args : command_matrix()) {
      auto a = run_cli(cli, args), b = run_cli(cli, args);
      ++runs;
      o.require(!a.empty() && a == b, "cli " + args);
    }
  }
  o.detail = std::to_string(runs) + " command pairs" + (cli.empty() ? " (in process only; no CLI path given)" : "");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"poset ideals match the classical oracle", poset_ideals},
      {"way-below and verdicts match the classical oracle", poset_way_below},
      {"calculus laws on every fixture", calculus_laws},
      {"saturation harness, zero counterexamples", saturation},
      {"presheaf categories are P-continuous", presheaf_continuity},
      {"Phi A: compact representables, algebraic, round trip", phi_structure},
      {"interpolation wherever continuous", interpolation},
      {"divisible quantales and Q^A", divisible},
      {"negative controls on V", negative_controls},
      {"deterministic JSON reports", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const std::size_t n = k + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimit[n]) o.require(false, "time limit exceeded");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, kLimit[n]);
    std::cout << "criterion " << (n < 10 ? " " : "") << n << "  " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[k].first << "  [" << o.detail << "] " << timing << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    if (!o.pass) ++failures;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of " << criteria.size() << "\n";
  return failures;
}
