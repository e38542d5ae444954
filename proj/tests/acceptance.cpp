// Acceptance suite: one line of output per criterion, pass or fail.
// Returns a nonzero exit code iff any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "bapal/bisim.hpp"
#include "bapal/closure.hpp"
#include "bapal/fixtures.hpp"
#include "bapal/mc.hpp"
#include "bapal/model.hpp"
#include "bapal/normalform.hpp"
#include "bapal/parser.hpp"
#include "bapal/proof.hpp"
#include "bapal/sat.hpp"
#include "generators.hpp"

using namespace bapal;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

using Check = std::function<Outcome()>;

std::map<std::string, Formula> bindings(
    std::initializer_list<std::pair<const char*, const char*>> items) {
  std::map<std::string, Formula> out;
  for (auto [k, v] : items) out.emplace(k, parse_formula(v));
  return out;
}

// ---------------------------------------------------------------- 1
Outcome expressivity_fixture() {
  Outcome o;
  Formula goal = parse_formula("E (K a p & ~K b K a p)");
  auto m = fixtures::model_m();
  auto mp = fixtures::model_m_prime();
  bool v1 = Evaluator(m).holds_at_designated(goal);
  bool v2 = Evaluator(mp).holds_at_designated(goal);
  bool v3 = Evaluator(mp).holds_at_designated(
      parse_formula("<q> (K a p & ~K b K a p)"));
  o.ok = !v1 && v2 && v3;
  std::ostringstream s;
  s << "two-state=" << v1 << " four-state=" << v2 << " witness-q=" << v3;
  o.note = s.str();
  return o;
}

// ---------------------------------------------------------------- 2
Outcome axiom_validity_sweep() {
  Outcome o;
  std::vector<std::pair<std::string, Formula>> instances;
  // five propositional tautologies stand in for the tautology schema
  for (const char* t :
       {"p | ~p", "p -> (q -> p)", "K a p -> K a p", "A p | ~A p",
        "(p -> q) -> (~q -> ~p)"})
    instances.emplace_back("P", parse_formula(t));
  // five binding sets per schema, at most two distinct variables each
  std::vector<std::map<std::string, Formula>> eps = {
      bindings({{"a", "a"}, {"phi", "p"}, {"psi", "q"}}),
      bindings({{"a", "a"}, {"phi", "~p"}, {"psi", "p & q"}}),
      bindings({{"a", "b"}, {"phi", "p & q"}, {"psi", "~q"}}),
      bindings({{"a", "a"}, {"phi", "K a p"}, {"psi", "q"}}),
      bindings({{"a", "b"}, {"phi", "p -> q"}, {"psi", "K b q"}}),
  };
  for (const char* name : {"K", "T", "4", "5"})
    for (const auto& b : eps) instances.emplace_back(name, axiom_instance(name, b));
  std::vector<std::map<std::string, Formula>> anns = {
      bindings({{"phi", "q"}, {"psi", "p"}, {"psi2", "~q"}, {"p", "p"}}),
      bindings({{"phi", "p & q"}, {"psi", "~p"}, {"psi2", "q"}, {"p", "q"}}),
      bindings({{"phi", "K a p"}, {"psi", "q"}, {"psi2", "p"}, {"p", "p"}}),
      bindings({{"phi", "~q"}, {"psi", "K a q"}, {"psi2", "~p"}, {"p", "q"}}),
      bindings({{"phi", "p -> q"}, {"psi", "p & q"}, {"psi2", "~q"}, {"p", "p"}}),
  };
  for (const char* name : {"AP", "AN", "AC", "AK", "AA"})
    for (const auto& b : anns) {
      std::map<std::string, Formula> use = b;
      use.emplace("a", Formula::atom("a"));
      instances.emplace_back(name, axiom_instance(name, use));
    }
  std::vector<std::map<std::string, Formula>> boxes = {
      bindings({{"phi", "p"}, {"psi0", "q"}}),
      bindings({{"phi", "K a p"}, {"psi0", "~q"}}),
      bindings({{"phi", "p & q"}, {"psi0", "p & ~q"}}),
      bindings({{"phi", "~K a p"}, {"psi0", "T"}}),
      bindings({{"phi", "p -> q"}, {"psi0", "~p"}}),
  };
  for (const auto& b : boxes)
    instances.emplace_back("ABox", axiom_instance("ABox", b));

  int valid = 0, inconclusive = 0, invalid = 0, countermodels = 0;
  for (const auto& [name, inst] : instances) {
    auto r = decide_valid(inst);
    if (r.verdict == ValidVerdict::Valid) ++valid;
    else if (r.verdict == ValidVerdict::ResourceExceeded) ++inconclusive;
    else {
      ++invalid;
      std::cerr << "  unexpected invalid " << name << ": " << render(inst)
                << "\n";
    }
    if (oracle_search(Formula::neg(inst)).found) {
      ++countermodels;
      std::cerr << "  unexpected countermodel for " << name << ": "
                << render(inst) << "\n";
    }
  }
  std::ostringstream s;
  s << instances.size() << " instances, valid=" << valid
    << " inconclusive=" << inconclusive << " invalid=" << invalid
    << " countermodels=" << countermodels;
  o.note = s.str();
  o.ok = instances.size() >= 50 && invalid == 0 && countermodels == 0;
  return o;
}

// ---------------------------------------------------------------- 3
Outcome quantifier_validities() {
  Outcome o;
  // one variable with two agents, or two variables with one agent, to
  // keep the exhaustive countermodel search within its time budget
  std::vector<const char*> bodies = {"p",         "~p",       "K a p",
                                     "~K a p",    "K a p -> p", "p & q",
                                     "p -> q",    "K a q",    "p | q",
                                     "K a (p & q)"};
  std::vector<Formula> instances;
  for (const char* b : bodies) {
    Formula f = parse_formula(b);
    instances.push_back(Formula::imp(Formula::box(f),
                                     Formula::box(Formula::box(f))));
    instances.push_back(
        Formula::imp(Formula::box(Formula::dia(f)),
                     Formula::dia(Formula::box(f))));
    instances.push_back(
        Formula::imp(Formula::dia(Formula::box(f)),
                     Formula::box(Formula::dia(f))));
  }
  int countermodels = 0, eval_failures = 0;
  for (const auto& inst : instances)
    if (oracle_search(Formula::neg(inst)).found) {
      ++countermodels;
      std::cerr << "  countermodel for " << render(inst) << "\n";
    }
  std::mt19937 rng(1001);
  for (int i = 0; i < 20; ++i) {
    FiniteModel m = testgen::random_model(rng, 5, {"p", "q", "r"});
    Evaluator ev(m);
    for (const auto& inst : instances)
      for (int s = 0; s < m.num_states(); ++s)
        if (!ev.holds_at(inst, s)) ++eval_failures;
  }
  std::ostringstream s;
  s << instances.size() << " instances, countermodels=" << countermodels
    << " eval-failures=" << eval_failures;
  o.note = s.str();
  o.ok = countermodels == 0 && eval_failures == 0;
  return o;
}

// ---------------------------------------------------------------- 4
Outcome translation_soundness() {
  Outcome o;
  std::mt19937 rng(2002);
  testgen::FormulaGenOpts go;
  go.max_depth = 5;
  go.max_quant_depth = 2;
  std::vector<FiniteModel> models;
  for (int i = 0; i < 20; ++i) models.push_back(testgen::random_model(rng, 5));
  int formulas = 0, mismatches = 0, fragment_failures = 0;
  while (formulas < 200) {
    Formula f = testgen::random_formula(rng, go);
    if (f.size() > 25 || f.quant_depth() > 2) continue;
    ++formulas;
    Formula g = to_aanf(f);
    auto frag = fragment_of(g);
    if (frag != Fragment::Aanf && frag != Fragment::Epistemic &&
        frag != Fragment::Boolean)
      ++fragment_failures;
    for (const auto& m : models) {
      Evaluator ev(m);
      if (ev.extension(f) != ev.extension(g)) {
        ++mismatches;
        break;
      }
    }
  }
  std::ostringstream s;
  s << formulas << " formulas x " << models.size()
    << " models, mismatches=" << mismatches
    << " fragment-failures=" << fragment_failures;
  o.note = s.str();
  o.ok = mismatches == 0 && fragment_failures == 0;
  return o;
}

// ---------------------------------------------------------------- 5
Outcome quotient_invariance() {
  Outcome o;
  std::mt19937 rng(3003);
  testgen::FormulaGenOpts go;
  go.max_depth = 4;
  go.max_quant_depth = 1;
  std::vector<Formula> suite;
  for (int i = 0; i < 200; ++i) suite.push_back(testgen::random_formula(rng, go));
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    FiniteModel m = testgen::random_model(rng, 5);
    auto [q, cls] = quotient_with_map(m);
    Evaluator em(m), eq(q);
    for (const auto& f : suite)
      for (int s = 0; s < m.num_states(); ++s)
        if (em.holds_at(f, s) != eq.holds_at(f, cls[s])) ++mismatches;
  }
  std::ostringstream s;
  s << "20 models x 200 formulas, mismatches=" << mismatches;
  o.note = s.str();
  o.ok = mismatches == 0;
  return o;
}

// ---------------------------------------------------------------- 6
Outcome depth_bounded_bisimilarity() {
  Outcome o;
  std::mt19937 rng(4004);
  testgen::FormulaGenOpts go;
  go.max_depth = 4;
  go.allow_announce = false;
  go.allow_box = false;
  go.atoms = {"p"};
  int failures = 0;
  for (int gap : {3, 4, 5}) {
    auto [n, m] = fixtures::chain_pair(gap);
    for (int d = 0; d < gap; ++d)
      if (!n_bisimilar(n, 0, m, 0, d)) ++failures;
    if (n_bisimilar(n, 0, m, 0, gap)) ++failures;
    Evaluator en(n), em(m);
    for (int k = 0; k < 200; ++k) {
      Formula f = testgen::random_formula(rng, go);
      if (f.modal_depth() >= gap) continue;
      if (en.holds_at(f, 0) != em.holds_at(f, 0)) ++failures;
    }
  }
  std::ostringstream s;
  s << "gaps {3,4,5}, failures=" << failures;
  o.note = s.str();
  o.ok = failures == 0;
  return o;
}

// ---------------------------------------------------------------- 7
Outcome closure_conformance() {
  Outcome o;
  Formula phi = to_aanf(parse_formula("p -> K a K b [q] A r"));
  Closure c = closure_of(phi);
  auto in = [&](const char* s) { return c.contains(parse_formula(s)); };
  bool example = in("p") && in("q") && in("r") && in("[q] A r") &&
                 in("K b [q] A r") && in("~K a K b r") && in("K a q") &&
                 !in("K b K a r") && !in("K a p") && !in("A r");
  std::mt19937 rng(5005);
  testgen::FormulaGenOpts go;
  go.max_depth = 4;
  go.max_quant_depth = 1;
  int tried = 0, bound_failures = 0;
  while (tried < 500) {
    Formula f = to_aanf(testgen::random_formula(rng, go));
    Closure cf;
    try {
      cf = closure_of(f, 100000);
    } catch (const ResourceError&) {
      continue;
    }
    ++tried;
    if ((double)cf.formulas.size() > f.size() * std::pow(4.0, f.size()))
      ++bound_failures;
  }
  std::ostringstream s;
  s << "example=" << example << " bound-failures=" << bound_failures << "/500";
  o.note = s.str();
  o.ok = example && bound_failures == 0;
  return o;
}

// ---------------------------------------------------------------- 8
Outcome sat_oracle_agreement() {
  Outcome o;
  // exhaustive normal-form corpus over {p,q,T} and agents {a,b}
  std::vector<std::vector<Formula>> by_size(8);
  by_size[1] = {Formula::atom("p"), Formula::atom("q"), Formula::top()};
  for (int n = 2; n <= 7; ++n) {
    for (const auto& f : by_size[n - 1]) {
      by_size[n].push_back(Formula::neg(f));
      by_size[n].push_back(Formula::know("a", f));
      by_size[n].push_back(Formula::know("b", f));
    }
    for (int i = 1; i + 1 < n; ++i)
      for (const auto& f : by_size[i])
        for (const auto& g : by_size[n - 1 - i])
          by_size[n].push_back(Formula::land(f, g));
    for (int i = 1; i + 2 < n; ++i)
      for (const auto& f : by_size[i])
        for (const auto& g : by_size[n - 2 - i])
          by_size[n].push_back(
              Formula::announce(f, Formula::box(g)));
  }
  std::vector<Formula> corpus;
  std::map<std::string, bool> seen;
  SatCaps caps;
  caps.mode = SatMode::Faithful;
  caps.palette = 2;
  for (const auto& level : by_size)
    for (const auto& f : level) {
      if (f.quant_depth() > 1) continue;
      try {
        if (closure_of(f).formulas.size() > 14) continue;
      } catch (...) {
        continue;
      }
      if (seen.emplace(render(f), true).second) corpus.push_back(f);
    }
  int sat = 0, unsat = 0, inconclusive = 0, contradictions = 0,
      witness_failures = 0;
  for (const auto& f : corpus) {
    auto r = decide_sat(f, caps);
    auto orc = oracle_search(f, 3, 1);
    if (r.verdict == SatVerdict::Sat) {
      ++sat;
      if (!r.witness || !Evaluator(*r.witness).holds_at_designated(f)) {
        ++witness_failures;
        std::cerr << "  witness failure: " << render(f) << "\n";
      }
    } else if (r.verdict == SatVerdict::Unsat) {
      ++unsat;
      if (orc.found) {
        ++contradictions;
        std::cerr << "  contradiction: unsat but oracle model for "
                  << render(f) << "\n";
      }
    } else {
      ++inconclusive;
    }
  }
  std::ostringstream s;
  s << corpus.size() << " formulas, sat=" << sat << " unsat=" << unsat
    << " inconclusive=" << inconclusive
    << " contradictions=" << contradictions
    << " witness-failures=" << witness_failures;
  o.note = s.str();
  o.ok = contradictions == 0 && witness_failures == 0 && !corpus.empty();
  return o;
}

// ---------------------------------------------------------------- 9
Outcome unsat_regressions() {
  Outcome o;
  int failures = 0;
  for (const char* src : {"p & ~p", "K a p & ~p", "~p & A p"})
    if (decide_sat(parse_formula(src)).verdict != SatVerdict::Unsat) {
      ++failures;
      std::cerr << "  expected unsat: " << src << "\n";
    }
  std::vector<Formula> axioms = {
      axiom_instance("T", bindings({{"a", "a"}, {"phi", "p"}})),
      axiom_instance("4", bindings({{"a", "a"}, {"phi", "p"}})),
      axiom_instance("5", bindings({{"a", "a"}, {"phi", "p"}})),
      axiom_instance("AP", bindings({{"phi", "q"}, {"p", "p"}})),
      axiom_instance("AK",
                     bindings({{"a", "a"}, {"phi", "p"}, {"psi", "q"}})),
      axiom_instance("ABox", bindings({{"phi", "p"}, {"psi0", "q"}})),
  };
  for (const auto& inst : axioms) {
    if (decide_sat(Formula::neg(inst)).verdict != SatVerdict::Unsat) {
      ++failures;
      std::cerr << "  expected unsat: ~(" << render(inst) << ")\n";
    }
    if (decide_valid(inst).verdict != ValidVerdict::Valid) {
      ++failures;
      std::cerr << "  expected valid: " << render(inst) << "\n";
    }
  }
  std::ostringstream s;
  s << "failures=" << failures;
  o.note = s.str();
  o.ok = failures == 0;
  return o;
}

// ---------------------------------------------------------------- 10
namespace proofs {

ProofLine line(int i, const Formula& f) {
  ProofLine l;
  l.index = i;
  l.formula = f;
  return l;
}

// theorem to quantified theorem: from a tautology, reach T -> [T] A taut
Derivation box_of_theorem() {
  Derivation d;
  Formula taut = parse_formula("~(q & ~q)");
  auto l1 = line(1, taut);
  l1.axiom = "P";
  auto l2 = line(2, parse_formula("[p] ~(q & ~q)"));
  l2.rule = "NecA";
  l2.from = {1};
  auto l3 = line(3, parse_formula("[T] [p] ~(q & ~q)"));
  l3.rule = "NecA";
  l3.from = {2};
  auto l4 = line(4, Formula::imp(l3.formula,
                                 Formula::imp(Formula::top(), l3.formula)));
  l4.axiom = "P";
  auto l5 = line(5, Formula::imp(Formula::top(), l3.formula));
  l5.rule = "MP";
  l5.from = {3, 4};
  auto l6 = line(6, parse_formula("T -> [T] A ~(q & ~q)"));
  l6.rule = "RBox";
  l6.from = {5};
  l6.fresh = "p";
  d.lines = {l1, l2, l3, l4, l5, l6};
  return d;
}

// the converted rule application: premise and conclusion produced by the
// context rewrite of [r][p](q -> q)
Derivation converted_rbox() {
  auto conv = to_rbox_premise(parse_formula("[r] [p] ~(q & ~q)"));
  Derivation d;
  Formula taut = parse_formula("~(q & ~q)");
  auto l1 = line(1, taut);
  l1.axiom = "P";
  auto l2 = line(2, parse_formula("[p] ~(q & ~q)"));
  l2.rule = "NecA";
  l2.from = {1};
  auto l3 = line(3, parse_formula("[r & [r] T] [p] ~(q & ~q)"));
  l3.rule = "NecA";
  l3.from = {2};
  auto l4 = line(4, Formula::imp(l3.formula,
                                 Formula::imp(parse_formula("[r] T"),
                                              l3.formula)));
  l4.axiom = "P";
  auto l5 = line(5, rbox_premise_formula(*conv));
  l5.rule = "MP";
  l5.from = {3, 4};
  auto l6 = line(6, rbox_conclusion_formula(*conv));
  l6.rule = "RBox";
  l6.from = {5};
  l6.fresh = conv->fresh;
  d.lines = {l1, l2, l3, l4, l5, l6};
  return d;
}

// one axiom line per schema, all checkable in a single derivation
Derivation axiom_gallery() {
  Derivation d;
  int i = 1;
  auto add = [&](const char* name,
                 std::map<std::string, Formula> b) {
    auto l = line(i++, axiom_instance(name, b));
    l.axiom = name;
    l.bind = std::move(b);
    d.lines.push_back(l);
  };
  add("K", bindings({{"a", "a"}, {"phi", "p"}, {"psi", "q"}}));
  add("T", bindings({{"a", "a"}, {"phi", "p"}}));
  add("4", bindings({{"a", "b"}, {"phi", "p"}}));
  add("5", bindings({{"a", "a"}, {"phi", "q"}}));
  add("AP", bindings({{"phi", "p"}, {"p", "q"}}));
  add("AN", bindings({{"phi", "p"}, {"psi", "q"}}));
  add("AC", bindings({{"phi", "p"}, {"psi", "q"}, {"psi2", "~p"}}));
  add("AK", bindings({{"a", "a"}, {"phi", "p"}, {"psi", "q"}}));
  add("AA", bindings({{"phi", "p"}, {"psi", "q"}, {"psi2", "~q"}}));
  add("ABox", bindings({{"phi", "K a p"}, {"psi0", "q"}}));
  auto lp = line(i++, parse_formula("p | ~p"));
  lp.axiom = "P";
  d.lines.push_back(lp);
  return d;
}

bool rejected_with(const Derivation& d, const std::string& needle) {
  auto rep = check_derivation(d);
  if (rep.ok) return false;
  for (const auto& diag : rep.diagnostics)
    if (diag.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace proofs

Outcome proof_checker() {
  Outcome o;
  int failures = 0;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ++failures;
      std::cerr << "  proof check failed: " << what << "\n";
    }
  };
  expect(check_derivation(proofs::box_of_theorem()).ok, "theorem derivation");
  expect(check_derivation(proofs::converted_rbox()).ok,
         "converted rule derivation");
  expect(check_derivation(proofs::axiom_gallery()).ok, "axiom gallery");

  // one mutation per schema: damage the formula, expect a mismatch report
  {
    auto base = proofs::axiom_gallery();
    for (std::size_t i = 0; i < base.lines.size(); ++i) {
      Derivation bad = base;
      bad.lines[i].formula =
          Formula::land(bad.lines[i].formula, Formula::atom("p"));
      std::string needle =
          bad.lines[i].axiom == "P" ? "tautology" : "match";
      expect(proofs::rejected_with(bad, needle),
             ("mutated axiom " + bad.lines[i].axiom).c_str());
    }
  }
  // rule mutations with their expected diagnostics
  {
    Derivation bad = proofs::box_of_theorem();  // non-fresh variable
    for (auto& l : bad.lines) {
      l.formula = substitute_atom(l.formula, "p", "q");
      if (l.fresh == "p") l.fresh = "q";
    }
    expect(proofs::rejected_with(bad, "freshness"), "non-fresh rule variable");
  }
  {
    Derivation bad = proofs::box_of_theorem();  // broken rule shape
    bad.lines[5].formula = parse_formula("T -> [q] A ~(q & ~q)");
    expect(proofs::rejected_with(bad, "shape"), "rule conclusion shape");
  }
  {
    Derivation bad = proofs::box_of_theorem();  // broken MP
    bad.lines[4].from = {2, 4};
    expect(proofs::rejected_with(bad, "MP"), "modus ponens premises");
  }
  {
    Derivation bad = proofs::box_of_theorem();  // broken NecA
    bad.lines[1].formula = parse_formula("[p] ~(q & q)");
    expect(!check_derivation(bad).ok, "announcement necessitation");
  }
  {
    Derivation bad;  // broken NecK
    auto l1 = proofs::line(1, parse_formula("p | ~p"));
    l1.axiom = "P";
    auto l2 = proofs::line(2, parse_formula("K a (p | p)"));
    l2.rule = "NecK";
    l2.from = {1};
    bad.lines = {l1, l2};
    expect(proofs::rejected_with(bad, "premise"), "knowledge necessitation");
  }
  // the boolean side condition of the quantifier axiom
  {
    Derivation bad;
    auto l = proofs::line(1, parse_formula("A p -> [K a q] p"));
    l.axiom = "ABox";
    l.bind = bindings({{"phi", "p"}, {"psi0", "K a q"}});
    bad.lines = {l};
    expect(proofs::rejected_with(bad, "boolean"), "non-boolean announcement");
  }
  std::ostringstream s;
  s << "failures=" << failures;
  o.note = s.str();
  o.ok = failures == 0;
  return o;
}

// ---------------------------------------------------------------- 11
Outcome completion_translation() {
  Outcome o;
  std::vector<FiniteModel> models = {fixtures::model_m(),
                                     fixtures::model_m_prime(),
                                     fixtures::chain(2, true),
                                     fixtures::chain(3, false),
                                     fixtures::chain(4, true)};
  std::mt19937 rng(6006);
  while (models.size() < 10) models.push_back(testgen::random_model(rng, 4));
  int mismatches = 0, suite_size = 0;
  for (const auto& m : models) {
    auto [big, mapping] = boolean_closure(m);
    auto tr = tr_mapping(m, mapping);
    testgen::FormulaGenOpts go;
    go.max_depth = 3;
    go.max_quant_depth = 1;
    go.atoms = m.atoms;
    for (const auto& [name, ext] : mapping) go.atoms.push_back(name);
    for (int k = 0; k < 100; ++k) {
      Formula f = testgen::random_formula(rng, go);
      Formula g = tr_translate(f, tr);
      ++suite_size;
      Evaluator eb(big), em(m);
      for (int s = 0; s < m.num_states(); ++s)
        if (eb.holds_at(f, s) != em.holds_at(g, s)) {
          ++mismatches;
          break;
        }
    }
  }
  std::ostringstream s;
  s << models.size() << " models x 100 formulas, mismatches=" << mismatches;
  o.note = s.str();
  o.ok = mismatches == 0;
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Check>> criteria = {
      {"expressivity fixture", expressivity_fixture},
      {"axiom validity sweep", axiom_validity_sweep},
      {"quantifier validities", quantifier_validities},
      {"normal form soundness", translation_soundness},
      {"quotient invariance", quotient_invariance},
      {"depth-bounded bisimilarity", depth_bounded_bisimilarity},
      {"closure conformance", closure_conformance},
      {"sat/oracle agreement", sat_oracle_agreement},
      {"unsat regressions", unsat_regressions},
      {"proof checker", proof_checker},
      {"completion translation", completion_translation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.ok = false;
      r.note = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count() /
                1000.0;
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << (r.ok ? "pass" : "FAIL") << " [" << r.note << "] "
              << secs << "s" << std::endl;
    if (!r.ok) ++failed;
  }
  if (failed) std::cout << failed << " criteria failed\n";
  return failed ? 1 : 0;
}
