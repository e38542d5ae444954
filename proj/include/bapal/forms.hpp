#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bapal/formula.hpp"

namespace bapal {

/// One context layer of a necessity form: (phi -> _), K a _, or [phi] _.
struct NecStep {
  enum class Kind { Imp, Know, Announce } kind;
  std::string agent;  // Know
  Formula formula;    // Imp antecedent / Announce content
};

/// A one-hole context # | (phi -> #) | K a # | [phi] #. The hole is the
/// rightmost leaf; the steps run outermost-first.
struct NecessityForm {
  std::vector<NecStep> steps;

  static NecessityForm hole() { return {}; }
  NecessityForm then_imp(Formula antecedent) const {
    NecessityForm n = *this;
    n.steps.push_back({NecStep::Kind::Imp, "", std::move(antecedent)});
    return n;
  }
  NecessityForm then_know(std::string agent) const {
    NecessityForm n = *this;
    n.steps.push_back({NecStep::Kind::Know, std::move(agent), Formula()});
    return n;
  }
  NecessityForm then_announce(Formula content) const {
    NecessityForm n = *this;
    n.steps.push_back({NecStep::Kind::Announce, "", std::move(content)});
    return n;
  }
};

/// Dual context # | (phi & #) | Khat a # | <phi> #.
struct PossibilityForm {
  std::vector<NecStep> steps;  // Imp stands for the & layer after dualizing
};

inline Formula nf_instantiate(const NecessityForm& n, Formula f) {
  for (auto it = n.steps.rbegin(); it != n.steps.rend(); ++it) {
    switch (it->kind) {
      case NecStep::Kind::Imp:
        f = Formula::imp(it->formula, f);
        break;
      case NecStep::Kind::Know:
        f = Formula::know(it->agent, f);
        break;
      case NecStep::Kind::Announce:
        f = Formula::announce(it->formula, f);
        break;
    }
  }
  return f;
}

/// Replaces -> by &, K by Khat, [phi] by <phi>.
inline PossibilityForm nf_dual(const NecessityForm& n) {
  return PossibilityForm{n.steps};
}

inline Formula pf_instantiate(const PossibilityForm& p, Formula f) {
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    switch (it->kind) {
      case NecStep::Kind::Imp:
        f = Formula::land(it->formula, f);
        break;
      case NecStep::Kind::Know:
        f = Formula::khat(it->agent, f);
        break;
      case NecStep::Kind::Announce:
        f = Formula::dia_announce(it->formula, f);
        break;
    }
  }
  return f;
}

/// Decomposes f along its rightmost spine of implication/K/announcement
/// layers. Returns the context steps and the terminal subformula reached
/// when no layer applies any more.
inline std::pair<std::vector<NecStep>, Formula> nf_spine(Formula f) {
  std::vector<NecStep> steps;
  for (;;) {
    Formula ant, cons;
    if (match_imp(f, ant, cons)) {
      steps.push_back({NecStep::Kind::Imp, "", ant});
      f = cons;
    } else if (f.kind() == Kind::Know) {
      steps.push_back({NecStep::Kind::Know, f.name(), Formula()});
      f = f.child();
    } else if (f.kind() == Kind::Announce) {
      steps.push_back({NecStep::Kind::Announce, "", f.left()});
      f = f.right();
    } else {
      return {std::move(steps), f};
    }
  }
}

}  // namespace bapal
