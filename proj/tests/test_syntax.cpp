#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bapal/formula.hpp"
#include "bapal/forms.hpp"
#include "bapal/parser.hpp"
#include "generators.hpp"

using namespace bapal;

namespace {

// Independent recomputation of the measures, by direct recursion.
int ref_size(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return 1;
    case Kind::Neg:
    case Kind::Know:
    case Kind::Box:
      return 1 + ref_size(f.child());
    case Kind::And:
    case Kind::Announce:
      return 1 + ref_size(f.left()) + ref_size(f.right());
  }
  return 0;
}

int ref_d(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return 0;
    case Kind::Neg:
    case Kind::Box:
      return ref_d(f.child());
    case Kind::Know:
      return 1 + ref_d(f.child());
    case Kind::And:
    case Kind::Announce:
      return std::max(ref_d(f.left()), ref_d(f.right()));
  }
  return 0;
}

int ref_D(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return 0;
    case Kind::Neg:
    case Kind::Know:
      return ref_D(f.child());
    case Kind::Box:
      return 1 + ref_D(f.child());
    case Kind::And:
    case Kind::Announce:
      return std::max(ref_D(f.left()), ref_D(f.right()));
  }
  return 0;
}

}  // namespace

TEST_CASE("parser handles precedence and associativity") {
  CHECK(parse_formula("p & q & r") ==
        Formula::land(Formula::land(Formula::atom("p"), Formula::atom("q")),
                      Formula::atom("r")));
  CHECK(parse_formula("p | q & r") ==
        Formula::lor(Formula::atom("p"),
                     Formula::land(Formula::atom("q"), Formula::atom("r"))));
  // implication is right associative and binds looser than |
  CHECK(parse_formula("p -> q -> r") ==
        Formula::imp(Formula::atom("p"),
                     Formula::imp(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("p <-> q | r") ==
        Formula::iff(Formula::atom("p"),
                     Formula::lor(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("~K a p & q") ==
        Formula::land(Formula::neg(Formula::know("a", Formula::atom("p"))),
                      Formula::atom("q")));
}

TEST_CASE("sugar expands to primitives") {
  CHECK(parse_formula("F") == Formula::neg(Formula::top()));
  CHECK(parse_formula("p | q") ==
        Formula::neg(Formula::land(Formula::neg(Formula::atom("p")),
                                   Formula::neg(Formula::atom("q")))));
  CHECK(parse_formula("Khat a p") ==
        Formula::neg(Formula::know("a", Formula::neg(Formula::atom("p")))));
  CHECK(parse_formula("<p> q") ==
        Formula::neg(Formula::announce(Formula::atom("p"),
                                       Formula::neg(Formula::atom("q")))));
  CHECK(parse_formula("E p") ==
        Formula::neg(Formula::box(Formula::neg(Formula::atom("p")))));
  CHECK(parse_formula("[p] A q") ==
        Formula::announce(Formula::atom("p"),
                          Formula::box(Formula::atom("q"))));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("K p"), ParseError);  // agent must be lowercase ident
  CHECK_THROWS_AS(parse_formula("[p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("Q"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("render and parse are mutually inverse on random formulas") {
  std::mt19937 rng(20240811);
  testgen::FormulaGenOpts o;
  o.max_depth = 6;
  o.max_quant_depth = 2;
  for (int i = 0; i < 500; ++i) {
    Formula f = testgen::random_formula(rng, o);
    CHECK(parse_formula(render(f)) == f);
  }
}

TEST_CASE("measures match a direct recursion") {
  std::mt19937 rng(7);
  testgen::FormulaGenOpts o;
  o.max_depth = 6;
  o.max_quant_depth = 3;
  for (int i = 0; i < 300; ++i) {
    Formula f = testgen::random_formula(rng, o);
    CHECK(f.size() == ref_size(f));
    CHECK(f.modal_depth() == ref_d(f));
    CHECK(f.quant_depth() == ref_D(f));
    auto m = measures(f);
    CHECK(m.modal_depth == ref_d(f));
    CHECK(m.quant_depth == ref_D(f));
    CHECK(m.vars == vars_of(f));
  }
}

TEST_CASE("fragment classification") {
  CHECK(fragment_of(parse_formula("p & ~q")) == Fragment::Boolean);
  CHECK(fragment_of(parse_formula("K a (p -> q)")) == Fragment::Epistemic);
  CHECK(fragment_of(parse_formula("[p] A q")) == Fragment::Aanf);
  CHECK(fragment_of(parse_formula("K a [p] A q")) == Fragment::Aanf);
  CHECK(fragment_of(parse_formula("A p")) == Fragment::General);
  CHECK(fragment_of(parse_formula("[p] q")) == Fragment::General);
  CHECK(fragment_of(parse_formula("[p] A (q & A r)")) == Fragment::General);
}

TEST_CASE("atom substitution replaces every occurrence") {
  Formula f = parse_formula("p & K a (p | q) & [p] A p");
  Formula g = substitute_atom(f, "p", "r");
  CHECK(g == parse_formula("r & K a (r | q) & [r] A r"));
  CHECK(substitute_atom(f, "z", "r") == f);
  // agent names are untouched even when they collide with the atom
  Formula h = parse_formula("K p q");
  CHECK(substitute_atom(h, "p", "r") == h);
}

TEST_CASE("implication shape matcher") {
  Formula ant, cons;
  CHECK(match_imp(parse_formula("p -> q"), ant, cons));
  CHECK(ant == Formula::atom("p"));
  CHECK(cons == Formula::atom("q"));
  CHECK_FALSE(match_imp(parse_formula("p & q"), ant, cons));
  CHECK_FALSE(match_imp(parse_formula("~p"), ant, cons));
  // ~(p & q) is not an implication shape (no inner negation)
  CHECK_FALSE(match_imp(parse_formula("~(p & q)"), ant, cons));
}

TEST_CASE("necessity form instantiation and spine decomposition") {
  auto nf = NecessityForm::hole()
                .then_imp(parse_formula("p"))
                .then_know("a")
                .then_announce(parse_formula("q"));
  Formula inst = nf_instantiate(nf, parse_formula("r"));
  CHECK(inst == parse_formula("p -> K a [q] r"));

  auto [steps, terminal] = nf_spine(inst);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].kind == NecStep::Kind::Imp);
  CHECK(steps[0].formula == Formula::atom("p"));
  CHECK(steps[1].kind == NecStep::Kind::Know);
  CHECK(steps[1].agent == "a");
  CHECK(steps[2].kind == NecStep::Kind::Announce);
  CHECK(terminal == Formula::atom("r"));
}

TEST_CASE("possibility form is the dual instantiation") {
  auto nf = NecessityForm::hole()
                .then_imp(parse_formula("p"))
                .then_know("a")
                .then_announce(parse_formula("q"));
  Formula dual = pf_instantiate(nf_dual(nf), parse_formula("r"));
  CHECK(dual == parse_formula("p & Khat a <q> r"));
}

TEST_CASE("spine round trips on random necessity forms") {
  std::mt19937 rng(99);
  testgen::FormulaGenOpts o;
  o.max_depth = 3;
  for (int i = 0; i < 100; ++i) {
    NecessityForm nf;
    std::uniform_int_distribution<int> len(0, 4), kind(0, 2);
    int k = len(rng);
    for (int j = 0; j < k; ++j) {
      switch (kind(rng)) {
        case 0:
          nf = nf.then_imp(testgen::random_formula(rng, o));
          break;
        case 1:
          nf = nf.then_know(j % 2 ? "a" : "b");
          break;
        default:
          nf = nf.then_announce(testgen::random_formula(rng, o));
      }
    }
    // a terminal that cannot be mistaken for another context layer
    Formula t = Formula::atom("z");
    Formula inst = nf_instantiate(nf, t);
    auto [steps, terminal] = nf_spine(inst);
    CHECK(terminal == t);
    CHECK(nf_instantiate(NecessityForm{steps}, terminal) == inst);
  }
}
