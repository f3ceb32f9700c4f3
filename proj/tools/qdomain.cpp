#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>

#include "qdomain/commands.hpp"

using namespace qdomain;

namespace {

enum Exit { ok = 0, negative = 1, invalid = 2, parse = 3, cap = 4, inconsistent = 5 };

struct Flags {
  CommandOptions opts;
  bool json = false;
  bool jsonl = false;
  bool assert_verdict = false;
  bool timing = false;
  std::string fixtures_csv;
};

void common(CLI::App* sub, Flags& f) {
  sub->add_option("--fixture", f.opts.fixture, "named fixture (see `fixtures list`)");
  sub->add_option("--workspace", f.opts.workspace, "workspace JSON file");
  sub->add_option("--category", f.opts.category, "category name inside the workspace");
  sub->add_option("--class", f.opts.class_id, "ideal class id")->capture_default_str();
  sub->add_option("--type", f.opts.type, "object of the quantaloid");
  sub->add_option("--cap", f.opts.cap, "enumeration cap")->envname("QDOMAIN_CAP")->capture_default_str();
  sub->add_option("--seed", f.opts.seed, "sampling seed")->capture_default_str();
  sub->add_flag("--json", f.json, "emit the JSON report");
  sub->add_flag("--assert", f.assert_verdict, "exit 1 on a negative verdict");
  sub->add_flag("--timing", f.timing, "print elapsed time to stderr");
}

Json error_report(const std::string& command, const std::string& kind, const std::string& message,
                  const std::vector<Violation>& violations = {}) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["error"] = kind;
  j["message"] = message;
  Json w = Json::array();
  for (const auto& v : violations) w.push_back({{"kind", v.kind}, {"witness", v.witness}});
  j["witnesses"] = std::move(w);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdomain: quantaloid-enriched domain theory on finite instances"};
  app.require_subcommand(1);
  Flags f;

  using Runner = std::function<Report(const CommandOptions&)>;
  std::map<std::string, Runner> runners;
  auto add = [&](const std::string& name, const std::string& help, Runner r) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, f);
    runners[name] = std::move(r);
    return sub;
  };

  add("validate", "load and validate a workspace or fixture", cmd_validate);
  auto* en = add("enumerate", "list all presheaves (or copresheaves) in canonical order", cmd_enumerate);
  en->add_flag("--co", f.opts.co, "enumerate copresheaves");
  en->add_flag("--jsonl", f.jsonl, "stream one JSON line per item");
  add("check-ideal", "membership of presheaves in an ideal class, with witnesses", cmd_check_ideal)
      ->add_option("--presheaf", f.opts.presheaf, "JSON presheaf or comma-separated values in carrier order");
  add("phi-cat", "the full subcategory of Phi-ideals", cmd_phi_cat);
  add("check-cocomplete", "does every Phi-ideal have a supremum", cmd_check_cocomplete);
  add("way-below", "the Phi-way-below distributor", cmd_way_below);
  add("check-continuous", "Phi-continuity with both characterizations", cmd_check_continuous);
  add("check-algebraic", "compact elements and Phi-algebraicity", cmd_check_algebraic);
  add("equivalence", "A against Phi of its compact part", cmd_equivalence);
  add("saturation-harness", "instance-level saturation evidence", cmd_saturation)
      ->add_option("--fixtures", f.fixtures_csv, "comma-separated fixture ids");
  auto* cv = add("cross-validate", "enriched pipeline against the classical poset oracle", cmd_cross_validate);
  cv->add_option("--max-poset", f.opts.max_poset, "all posets up to this size")->capture_default_str();
  cv->add_flag("--named", f.opts.named, "include the named 5-6 element posets");
  add("q-power", "continuity facts about Q^A", cmd_q_power)->add_option("--object", f.opts.object, "object A");
  auto* fx = app.add_subcommand("fixtures", "fixture catalog");
  fx->require_subcommand(1);
  auto* fl = fx->add_subcommand("list", "list fixture ids");
  auto* fs = fx->add_subcommand("show", "dump a fixture as a workspace document");
  fs->add_option("id", f.opts.fixture, "fixture id")->required();
  for (auto* s : {fl, fs}) {
    s->add_flag("--json", f.json, "emit the JSON report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return parse;
  }

  std::string command;
  Runner runner;
  if (fx->parsed()) {
    command = fl->parsed() ? "fixtures list" : "fixtures show";
    runner = fl->parsed() ? Runner(cmd_fixtures_list) : Runner(cmd_fixtures_show);
  } else {
    for (auto* s : app.get_subcommands()) {
      command = s->get_name();
      runner = runners.at(command);
    }
  }
  f.opts.command = command;
  if (!f.fixtures_csv.empty()) f.opts.fixtures = cmd_detail::split(f.fixtures_csv, ',');

  auto fail = [&](int code, const std::string& kind, const std::string& msg, const std::vector<Violation>& v = {}) {
    auto j = error_report(command, kind, msg, v);
    if (f.json)
      std::cout << j.dump(2) << "\n";
    else {
      std::cerr << "error: " << msg << "\n";
    }
    return code;
  };

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r = runner(f.opts);
    if (f.jsonl) {
      for (const auto& item : r.json.at("result").at("items")) std::cout << item.dump() << "\n";
    } else if (f.json) {
      std::cout << r.json.dump(2) << "\n";
    } else {
      std::cout << render_table(r.json);
    }
    if (f.timing)
      std::cerr << "elapsed "
                << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count()
                << " ms\n";
    if (f.assert_verdict && r.verdict && !*r.verdict) return negative;
    return ok;
  } catch (const ValidationError& e) {
    return fail(invalid, "ValidationError", e.what(), e.violations());
  } catch (const ParseError& e) {
    return fail(parse, "ParseError", e.what());
  } catch (const CapExceeded& e) {
    return fail(cap, "CapExceeded", e.what());
  } catch (const InternalInconsistency& e) {
    return fail(inconsistent, "InternalInconsistency", e.what());
  } catch (const Error& e) {
    return fail(invalid, "Error", e.what());
  }
}
