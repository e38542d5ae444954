// bapal command line front end.
//
// Exit codes: 0 and 1 encode boolean verdicts (true/sat/valid/bisimilar/
// accepted vs their negations); 2 is any error, malformed input or
// exceeded resource cap.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "bapal/bisim.hpp"
#include "bapal/closure.hpp"
#include "bapal/fixtures.hpp"
#include "bapal/json_io.hpp"
#include "bapal/mc.hpp"
#include "bapal/model.hpp"
#include "bapal/normalform.hpp"
#include "bapal/parser.hpp"
#include "bapal/proof.hpp"
#include "bapal/sat.hpp"

namespace {

using nlohmann::json;

bapal::FiniteModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  auto m = bapal::model_from_json(j);
  auto viol = bapal::validate(m);
  if (!viol.empty())
    throw std::runtime_error("invalid model " + path + ": " + viol[0].code +
                             " (" + viol[0].detail + ")");
  return m;
}

int state_index_or_throw(const bapal::FiniteModel& m, const std::string& s) {
  int i = m.state_index(s);
  if (i < 0) throw std::runtime_error("unknown state \"" + s + "\"");
  return i;
}

void report(bool as_json, const std::string& verdict, const json& witness,
            const std::vector<std::string>& diagnostics) {
  if (as_json) {
    json out = {{"verdict", verdict},
                {"witness", witness},
                {"diagnostics", diagnostics}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << verdict << "\n";
    for (const auto& d : diagnostics) std::cout << "note: " << d << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reasoning toolkit for epistemic logic with boolean "
               "announcement quantifiers"};
  app.require_subcommand(1);
  bool as_json = false;

  // shared option holders
  std::string formula_str, model_path, model2_path, state_name, state2_name;
  std::string derivation_path, format = "human";
  int n_flag = -1;
  std::vector<std::string> atoms_flag;
  bapal::SatCaps caps;
  std::string mode_str = "auto";
  int box_class_cap = 20;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: human or json")
        ->check(CLI::IsMember({"human", "json"}));
  };
  auto add_caps = [&](CLI::App* cmd) {
    cmd->add_option("--max-states", caps.oracle_max_states,
                    "oracle model size bound");
    cmd->add_option("--extra-atoms", caps.oracle_extra_atoms,
                    "fresh atoms available to the oracle");
    cmd->add_option("--palette", caps.palette, "palette atom count");
    cmd->add_option("--cl-cap", caps.cl_cap, "closure size cap");
    cmd->add_option("--sigma-cap", caps.sigma_cap, "candidate world cap");
    cmd->add_option("--candidate-cap", caps.candidate_cap,
                    "candidate model cap");
    cmd->add_option("--box-class-cap", caps.box_class_cap,
                    "valuation class cap for quantifier evaluation");
    cmd->add_option("--mode", mode_str, "auto, faithful or oracle")
        ->check(CLI::IsMember({"auto", "faithful", "oracle"}));
  };

  auto* c_check = app.add_subcommand("check", "evaluate a formula in a model");
  c_check->add_option("--model", model_path)->required();
  c_check->add_option("--state", state_name)->required();
  c_check->add_option("--formula", formula_str)->required();
  c_check->add_option("--box-class-cap", box_class_cap);
  add_format(c_check);

  auto* c_sat = app.add_subcommand("sat", "decide satisfiability");
  c_sat->add_option("--formula", formula_str)->required();
  add_caps(c_sat);
  add_format(c_sat);

  auto* c_valid = app.add_subcommand("valid", "decide validity");
  c_valid->add_option("--formula", formula_str)->required();
  add_caps(c_valid);
  add_format(c_valid);

  auto* c_aanf = app.add_subcommand("aanf", "normal form translation");
  c_aanf->add_option("--formula", formula_str)->required();
  add_format(c_aanf);

  auto* c_reduce = app.add_subcommand("reduce", "announcement reduction");
  c_reduce->add_option("--formula", formula_str)->required();
  add_format(c_reduce);

  auto* c_bisim = app.add_subcommand("bisim", "pointed model bisimilarity");
  c_bisim->add_option("--model1", model_path)->required();
  c_bisim->add_option("--model2", model2_path)->required();
  c_bisim->add_option("--state1", state_name)->required();
  c_bisim->add_option("--state2", state2_name)->required();
  c_bisim->add_option("--n", n_flag, "depth bound (unbounded if absent)");
  c_bisim->add_option("--atoms", atoms_flag,
                      "atom restriction (default: both signatures)");
  add_format(c_bisim);

  auto* c_closure = app.add_subcommand("closure", "closure of a formula");
  c_closure->add_option("--formula", formula_str)->required();
  c_closure->add_option("--cl-cap", caps.cl_cap);
  add_format(c_closure);

  auto* c_prove = app.add_subcommand("prove", "check a derivation file");
  c_prove->add_option("--derivation", derivation_path)->required();
  add_format(c_prove);

  auto* c_fix = app.add_subcommand("fixtures", "built-in example models");
  std::string fix_action, fix_name;
  int gap = 4;
  c_fix->add_option("action", fix_action, "list or emit")->required();
  c_fix->add_option("name", fix_name, "fixture name (for emit)");
  c_fix->add_option("--gap", gap, "chain fixture length parameter");
  add_format(c_fix);

  CLI11_PARSE(app, argc, argv);
  as_json = format == "json";
  caps.mode = mode_str == "faithful" ? bapal::SatMode::Faithful
              : mode_str == "oracle" ? bapal::SatMode::Oracle
                                     : bapal::SatMode::Auto;

  try {
    if (*c_check) {
      auto m = load_model(model_path);
      int s = state_index_or_throw(m, state_name);
      auto f = bapal::parse_formula(formula_str);
      bapal::Evaluator ev(m, box_class_cap);
      bool v = ev.holds_at(f, s);
      report(as_json, v ? "true" : "false", nullptr, {});
      return v ? 0 : 1;
    }
    if (*c_sat) {
      auto f = bapal::parse_formula(formula_str);
      auto r = bapal::decide_sat(f, caps);
      json witness = nullptr;
      if (r.witness) witness = bapal::model_to_json(*r.witness);
      switch (r.verdict) {
        case bapal::SatVerdict::Sat:
          report(as_json, "sat", witness, r.diagnostics);
          return 0;
        case bapal::SatVerdict::Unsat:
          report(as_json, "unsat", nullptr, r.diagnostics);
          return 1;
        case bapal::SatVerdict::ResourceExceeded:
          report(as_json, "resource-exceeded", nullptr, r.diagnostics);
          return 2;
      }
    }
    if (*c_valid) {
      auto f = bapal::parse_formula(formula_str);
      auto r = bapal::decide_valid(f, caps);
      json witness = nullptr;
      if (r.countermodel) witness = bapal::model_to_json(*r.countermodel);
      switch (r.verdict) {
        case bapal::ValidVerdict::Valid:
          report(as_json, "valid", nullptr, r.diagnostics);
          return 0;
        case bapal::ValidVerdict::Invalid:
          report(as_json, "invalid", witness, r.diagnostics);
          return 1;
        case bapal::ValidVerdict::ResourceExceeded:
          report(as_json, "resource-exceeded", nullptr, r.diagnostics);
          return 2;
      }
    }
    if (*c_aanf) {
      auto f = bapal::parse_formula(formula_str);
      report(as_json, bapal::render(bapal::to_aanf(f)), nullptr, {});
      return 0;
    }
    if (*c_reduce) {
      auto f = bapal::parse_formula(formula_str);
      report(as_json, bapal::render(bapal::pal_reduce(f)), nullptr, {});
      return 0;
    }
    if (*c_bisim) {
      auto m1 = load_model(model_path);
      auto m2 = load_model(model2_path);
      int s1 = state_index_or_throw(m1, state_name);
      int s2 = state_index_or_throw(m2, state2_name);
      std::optional<std::set<std::string>> q;
      if (!atoms_flag.empty())
        q = std::set<std::string>(atoms_flag.begin(), atoms_flag.end());
      bool related;
      json witness = nullptr;
      if (n_flag >= 0) {
        related = bapal::n_bisimilar(m1, s1, m2, s2, n_flag, q);
      } else {
        auto r = bapal::bisimilar(m1, s1, m2, s2, q);
        related = r.related;
        if (related) {
          json pairs = json::array();
          for (auto [u, v] : r.witness)
            pairs.push_back({m1.states[u], m2.states[v]});
          witness = pairs;
        }
      }
      report(as_json, related ? "bisimilar" : "not-bisimilar", witness, {});
      return related ? 0 : 1;
    }
    if (*c_closure) {
      auto f = bapal::to_aanf(bapal::parse_formula(formula_str));
      auto c = bapal::closure_of(f, caps.cl_cap);
      if (as_json) {
        json items = json::array();
        for (const auto& g : c.formulas) items.push_back(bapal::render(g));
        json out = {{"verdict", "ok"},
                    {"witness", {{"size", c.formulas.size()}, {"formulas", items}}},
                    {"diagnostics", json::array()}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << c.formulas.size() << " formulas\n";
        for (const auto& g : c.formulas)
          std::cout << bapal::render(g) << "\n";
      }
      return 0;
    }
    if (*c_prove) {
      std::ifstream in(derivation_path);
      if (!in) throw std::runtime_error("cannot open " + derivation_path);
      auto d = bapal::derivation_from_json(json::parse(in));
      auto rep = bapal::check_derivation(d);
      std::vector<std::string> diags;
      for (const auto& ld : rep.diagnostics)
        diags.push_back("line " + std::to_string(ld.index) + ": " +
                        ld.message);
      report(as_json, rep.ok ? "accepted" : "rejected", nullptr, diags);
      return rep.ok ? 0 : 1;
    }
    if (*c_fix) {
      auto emit = [&](const bapal::FiniteModel& m) {
        std::cout << bapal::model_to_json(m).dump(2) << "\n";
      };
      if (fix_action == "list") {
        std::cout << "m\nmprime\nchain_n\nchain_o\n";
        return 0;
      }
      if (fix_action != "emit")
        throw std::runtime_error("fixtures action must be list or emit");
      if (fix_name == "m") {
        emit(bapal::fixtures::model_m());
      } else if (fix_name == "mprime") {
        emit(bapal::fixtures::model_m_prime());
      } else if (fix_name == "chain_n") {
        emit(bapal::fixtures::chain(gap, false));
      } else if (fix_name == "chain_o") {
        emit(bapal::fixtures::chain(gap, true));
      } else {
        throw std::runtime_error("unknown fixture \"" + fix_name + "\"");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    if (as_json) {
      json out = {{"verdict", "error"},
                  {"witness", nullptr},
                  {"diagnostics", {e.what()}}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  return 2;
}
