#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bapal/forms.hpp"
#include "bapal/formula.hpp"
#include "bapal/parser.hpp"

namespace bapal {

/// Normal form translation: afterwards every quantifier sits directly
/// under an announcement and announcement bodies are quantified. The
/// announcement clauses push the announcement inward; the quantifier
/// clause wraps it in [T].
inline Formula to_aanf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return f;
    case Kind::Neg:
      return Formula::neg(to_aanf(f.child()));
    case Kind::And:
      return Formula::land(to_aanf(f.left()), to_aanf(f.right()));
    case Kind::Know:
      return Formula::know(f.name(), to_aanf(f.child()));
    case Kind::Box:
      return Formula::announce(Formula::top(), Formula::box(to_aanf(f.child())));
    case Kind::Announce: {
      Formula a = f.left(), body = f.right();
      switch (body.kind()) {
        case Kind::Top:
        case Kind::Atom:
          return to_aanf(Formula::imp(a, body));
        case Kind::Neg:
          return to_aanf(Formula::imp(
              a, Formula::neg(Formula::announce(a, body.child()))));
        case Kind::And:
          return to_aanf(Formula::land(Formula::announce(a, body.left()),
                                       Formula::announce(a, body.right())));
        case Kind::Know:
          return to_aanf(Formula::imp(
              a, Formula::know(body.name(),
                               Formula::announce(a, body.child()))));
        case Kind::Announce:
          return to_aanf(Formula::announce(
              Formula::land(a, Formula::announce(a, body.left())),
              body.right()));
        case Kind::Box:
          return Formula::announce(to_aanf(a),
                                   Formula::box(to_aanf(body.child())));
      }
      return f;
    }
  }
  return f;
}

/// Announcement elimination by the five reduction equivalences, applied
/// outermost-first. Announcements over quantified bodies are kept (they
/// have no reduction rule); on quantifier-free input the result has no
/// announcement nodes.
inline Formula pal_reduce(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return f;
    case Kind::Neg:
      return Formula::neg(pal_reduce(f.child()));
    case Kind::And:
      return Formula::land(pal_reduce(f.left()), pal_reduce(f.right()));
    case Kind::Know:
      return Formula::know(f.name(), pal_reduce(f.child()));
    case Kind::Box:
      return Formula::box(pal_reduce(f.child()));
    case Kind::Announce: {
      Formula a = f.left(), body = f.right();
      switch (body.kind()) {
        case Kind::Top:
        case Kind::Atom:
          return pal_reduce(Formula::imp(a, body));
        case Kind::Neg:
          return pal_reduce(Formula::imp(
              a, Formula::neg(Formula::announce(a, body.child()))));
        case Kind::And:
          return pal_reduce(Formula::land(Formula::announce(a, body.left()),
                                          Formula::announce(a, body.right())));
        case Kind::Know:
          return pal_reduce(Formula::imp(
              a, Formula::know(body.name(),
                               Formula::announce(a, body.child()))));
        case Kind::Announce:
          return pal_reduce(Formula::announce(
              Formula::land(a, Formula::announce(a, body.left())),
              body.right()));
        case Kind::Box:
          return Formula::announce(pal_reduce(a),
                                   Formula::box(pal_reduce(body.child())));
      }
      return f;
    }
  }
  return f;
}

/// Result of rewriting a one-hole-context instantiation psi([p]body)
/// into the shape psi' -> [phi'][p]body.
struct RBoxPremise {
  Formula psi_prime;
  Formula phi_prime;
  std::string fresh;
  Formula body;
  // The knowledge-absorption equivalence (chi -> K_a psi vs Khat_a chi
  // -> psi) preserves validity but not truth at a state. pointwise stays
  // true only when no knowledge layer had to be absorbed.
  bool pointwise = true;
  std::vector<std::string> trace;
};

/// Rewrites an instantiation of a necessity form around an atomic
/// announcement into the rule premise shape, recording the equivalences
/// used. The atomic announcement is the innermost context layer of the
/// form [p]; anything beneath it is the body.
inline std::optional<RBoxPremise> to_rbox_premise(const Formula& f) {
  auto [steps, terminal] = nf_spine(f);
  // innermost announcement-of-an-atom layer marks the hole
  int mark = -1;
  for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i) {
    if (steps[i].kind == NecStep::Kind::Announce &&
        steps[i].formula.kind() == Kind::Atom) {
      mark = i;
      break;
    }
  }
  if (mark < 0) return std::nullopt;

  RBoxPremise out;
  out.fresh = steps[mark].formula.name();
  NecessityForm below;
  below.steps.assign(steps.begin() + mark + 1, steps.end());
  out.body = nf_instantiate(below, terminal);

  // start from the padded shape T -> [T][p]body and absorb the remaining
  // context layers from the inside out
  out.psi_prime = Formula::top();
  out.phi_prime = Formula::top();
  out.trace.push_back("pad: phi == (T -> [T][p]body)");
  for (int i = mark - 1; i >= 0; --i) {
    const NecStep& s = steps[i];
    switch (s.kind) {
      case NecStep::Kind::Imp:
        // chi -> (psi' -> X)  ==  (chi & psi') -> X
        out.psi_prime = Formula::land(s.formula, out.psi_prime);
        out.trace.push_back("curry: chi -> (psi' -> X) == (chi & psi') -> X");
        break;
      case NecStep::Kind::Know:
        // K_a(psi' -> X) == (T -> K_a(psi' -> X)) == (Khat_a T -> (psi' -> X))
        // == ((Khat_a T & psi') -> X); valid but not pointwise
        out.psi_prime = Formula::land(
            Formula::khat(s.agent, Formula::top()), out.psi_prime);
        out.pointwise = false;
        out.trace.push_back(
            "absorb K " + s.agent +
            ": chi -> K_a X == Khat_a chi -> X (validity only)");
        break;
      case NecStep::Kind::Announce:
        // [chi](psi' -> X) == ([chi]psi' -> [chi][phi'][p]body)
        //                  == ([chi]psi' -> [chi & [chi]phi'][p]body)
        out.phi_prime = Formula::land(
            s.formula, Formula::announce(s.formula, out.phi_prime));
        out.psi_prime = Formula::announce(s.formula, out.psi_prime);
        out.trace.push_back(
            "distribute [chi] over ->, then merge [chi][phi'] into "
            "[chi & [chi]phi']");
        break;
    }
  }
  return out;
}

/// The premise shape itself, for checking and derivation emission.
inline Formula rbox_premise_formula(const RBoxPremise& r) {
  return Formula::imp(
      r.psi_prime,
      Formula::announce(r.phi_prime,
                        Formula::announce(Formula::atom(r.fresh), r.body)));
}

inline Formula rbox_conclusion_formula(const RBoxPremise& r) {
  return Formula::imp(
      r.psi_prime,
      Formula::announce(r.phi_prime, Formula::box(r.body)));
}

}  // namespace bapal
