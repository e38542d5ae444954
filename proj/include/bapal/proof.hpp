#pragma once

#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bapal/formula.hpp"
#include "bapal/parser.hpp"

namespace bapal {

struct AxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Formula bind_get(const std::map<std::string, Formula>& bind,
                        const std::string& key) {
  auto it = bind.find(key);
  if (it == bind.end()) throw AxiomError("missing binding \"" + key + "\"");
  return it->second;
}

inline std::string bind_agent(const std::map<std::string, Formula>& bind,
                              const std::string& key) {
  Formula f = bind_get(bind, key);
  if (f.kind() != Kind::Atom)
    throw AxiomError("binding \"" + key + "\" must be an agent name");
  return f.name();
}

}  // namespace detail

/// Instantiates an axiom schema. Schema names: P has no instance form
/// (tautologies are checked, not generated); the boolean side condition
/// of ABox is enforced here.
inline Formula axiom_instance(const std::string& name,
                              const std::map<std::string, Formula>& bind) {
  using F = Formula;
  using detail::bind_agent;
  using detail::bind_get;
  if (name == "K") {
    auto a = bind_agent(bind, "a");
    auto phi = bind_get(bind, "phi"), psi = bind_get(bind, "psi");
    return F::imp(F::know(a, F::imp(phi, psi)),
                  F::imp(F::know(a, phi), F::know(a, psi)));
  }
  if (name == "T") {
    auto a = bind_agent(bind, "a");
    auto phi = bind_get(bind, "phi");
    return F::imp(F::know(a, phi), phi);
  }
  if (name == "4") {
    auto a = bind_agent(bind, "a");
    auto phi = bind_get(bind, "phi");
    return F::imp(F::know(a, phi), F::know(a, F::know(a, phi)));
  }
  if (name == "5") {
    auto a = bind_agent(bind, "a");
    auto phi = bind_get(bind, "phi");
    return F::imp(F::neg(F::know(a, phi)),
                  F::know(a, F::neg(F::know(a, phi))));
  }
  if (name == "AP") {
    auto phi = bind_get(bind, "phi"), p = bind_get(bind, "p");
    if (p.kind() != Kind::Atom && p.kind() != Kind::Top)
      throw AxiomError("AP needs an atom (or T) on the right");
    return F::iff(F::announce(phi, p), F::imp(phi, p));
  }
  if (name == "AN") {
    auto phi = bind_get(bind, "phi"), psi = bind_get(bind, "psi");
    return F::iff(F::announce(phi, F::neg(psi)),
                  F::imp(phi, F::neg(F::announce(phi, psi))));
  }
  if (name == "AC") {
    auto phi = bind_get(bind, "phi");
    auto psi = bind_get(bind, "psi"), psi2 = bind_get(bind, "psi2");
    return F::iff(F::announce(phi, F::land(psi, psi2)),
                  F::land(F::announce(phi, psi), F::announce(phi, psi2)));
  }
  if (name == "AK") {
    auto a = bind_agent(bind, "a");
    auto phi = bind_get(bind, "phi"), psi = bind_get(bind, "psi");
    return F::iff(F::announce(phi, F::know(a, psi)),
                  F::imp(phi, F::know(a, F::announce(phi, psi))));
  }
  if (name == "AA") {
    auto phi = bind_get(bind, "phi");
    auto psi = bind_get(bind, "psi"), psi2 = bind_get(bind, "psi2");
    return F::iff(F::announce(phi, F::announce(psi, psi2)),
                  F::announce(F::land(phi, F::announce(phi, psi)), psi2));
  }
  if (name == "ABox") {
    auto phi = bind_get(bind, "phi"), psi0 = bind_get(bind, "psi0");
    if (fragment_of(psi0) != Fragment::Boolean)
      throw AxiomError("ABox announcement must be boolean");
    return F::imp(F::box(phi), F::announce(psi0, phi));
  }
  throw AxiomError("unknown axiom \"" + name + "\"");
}

/// Propositional tautology test with the maximal non-propositional
/// subformulas abstracted to letters.
inline bool is_tautology_instance(const Formula& f, int atom_cap = 20) {
  std::vector<Formula> letters;
  auto letter_of = [&](const Formula& g) {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == g) return static_cast<int>(i);
    letters.push_back(g);
    return static_cast<int>(letters.size()) - 1;
  };
  // collect letters: atoms and maximal modal subformulas
  std::function<void(const Formula&)> collect = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Top:
        return;
      case Kind::Neg:
        collect(g.child());
        return;
      case Kind::And:
        collect(g.left());
        collect(g.right());
        return;
      default:
        letter_of(g);
        return;
    }
  };
  collect(f);
  if (static_cast<int>(letters.size()) > atom_cap)
    throw AxiomError("tautology check: too many distinct letters");
  std::function<bool(const Formula&, std::uint32_t)> ev =
      [&](const Formula& g, std::uint32_t assign) -> bool {
    switch (g.kind()) {
      case Kind::Top:
        return true;
      case Kind::Neg:
        return !ev(g.child(), assign);
      case Kind::And:
        return ev(g.left(), assign) && ev(g.right(), assign);
      default:
        return (assign >> letter_of(g)) & 1;
    }
  };
  for (std::uint32_t a = 0; a < (1u << letters.size()); ++a)
    if (!ev(f, a)) return false;
  return true;
}

struct ProofLine {
  int index = 0;
  Formula formula;
  // exactly one of axiom/rule is set
  std::string axiom;
  std::map<std::string, Formula> bind;
  std::string rule;
  std::vector<int> from;
  std::string fresh;  // RBox only
};

struct Derivation {
  std::vector<ProofLine> lines;
};

struct LineDiagnostic {
  int index;
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<LineDiagnostic> diagnostics;
};

inline CheckReport check_derivation(const Derivation& d) {
  CheckReport rep;
  std::map<int, Formula> by_index;
  auto fail = [&](int i, const std::string& msg) {
    rep.ok = false;
    rep.diagnostics.push_back({i, msg});
  };

  for (const auto& line : d.lines) {
    if (by_index.count(line.index)) {
      fail(line.index, "duplicate line index");
      continue;
    }
    auto premise = [&](int j) -> std::optional<Formula> {
      if (j >= line.index) {
        fail(line.index, "premise " + std::to_string(j) +
                             " does not precede the line");
        return std::nullopt;
      }
      auto it = by_index.find(j);
      if (it == by_index.end()) {
        fail(line.index, "premise " + std::to_string(j) + " missing");
        return std::nullopt;
      }
      return it->second;
    };

    if (!line.axiom.empty()) {
      if (line.axiom == "P") {
        try {
          if (!is_tautology_instance(line.formula))
            fail(line.index, "not a propositional tautology instance");
        } catch (const AxiomError& e) {
          fail(line.index, e.what());
        }
      } else {
        try {
          Formula inst = axiom_instance(line.axiom, line.bind);
          if (inst != line.formula)
            fail(line.index,
                 "formula does not match " + line.axiom + " instance");
        } catch (const AxiomError& e) {
          fail(line.index, e.what());
        }
      }
    } else if (line.rule == "MP") {
      if (line.from.size() != 2) {
        fail(line.index, "MP needs two premises");
      } else {
        auto a = premise(line.from[0]), b = premise(line.from[1]);
        if (a && b) {
          Formula ant, cons;
          bool ok =
              (match_imp(*a, ant, cons) && ant == *b &&
               cons == line.formula) ||
              (match_imp(*b, ant, cons) && ant == *a && cons == line.formula);
          if (!ok) fail(line.index, "MP premises do not yield this line");
        }
      }
    } else if (line.rule == "NecK") {
      if (line.from.size() != 1) {
        fail(line.index, "NecK needs one premise");
      } else if (auto a = premise(line.from[0])) {
        if (line.formula.kind() != Kind::Know || line.formula.child() != *a)
          fail(line.index, "line is not K applied to the premise");
      }
    } else if (line.rule == "NecA") {
      if (line.from.size() != 1) {
        fail(line.index, "NecA needs one premise");
      } else if (auto a = premise(line.from[0])) {
        if (line.formula.kind() != Kind::Announce ||
            line.formula.right() != *a)
          fail(line.index, "line is not an announcement of the premise");
      }
    } else if (line.rule == "RBox") {
      if (line.from.size() != 1 || line.fresh.empty()) {
        fail(line.index, "RBox needs one premise and a fresh atom");
      } else if (auto a = premise(line.from[0])) {
        // premise psi -> [phi'][p]phi, conclusion psi -> [phi']Box phi
        Formula psi, rest;
        Formula cpsi, crest;
        bool shape = false;
        if (match_imp(*a, psi, rest) &&
            match_imp(line.formula, cpsi, crest) && psi == cpsi &&
            rest.kind() == Kind::Announce && crest.kind() == Kind::Announce &&
            rest.left() == crest.left() &&
            rest.right().kind() == Kind::Announce &&
            rest.right().left() == Formula::atom(line.fresh) &&
            crest.right().kind() == Kind::Box &&
            rest.right().right() == crest.right().child()) {
          shape = true;
        }
        if (!shape) {
          fail(line.index, "RBox premise/conclusion shape mismatch");
        } else {
          auto used = vars_of(psi);
          auto v2 = vars_of(rest.left());
          auto v3 = vars_of(rest.right().right());
          used.insert(v2.begin(), v2.end());
          used.insert(v3.begin(), v3.end());
          if (used.count(line.fresh))
            fail(line.index,
                 "freshness violation: " + line.fresh + " occurs in the rule");
        }
      }
    } else {
      fail(line.index, "unknown justification");
    }
    by_index.emplace(line.index, line.formula);
  }
  return rep;
}

inline Derivation derivation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("lines") || !j["lines"].is_array())
    throw std::runtime_error("derivation must be {\"lines\": [...]}");
  Derivation d;
  for (const auto& jl : j["lines"]) {
    ProofLine line;
    line.index = jl.at("i").get<int>();
    line.formula = parse_formula(jl.at("formula").get<std::string>());
    const auto& by = jl.at("by");
    if (by.contains("axiom")) {
      line.axiom = by["axiom"].get<std::string>();
      if (by.contains("bind"))
        for (auto it = by["bind"].begin(); it != by["bind"].end(); ++it)
          line.bind.emplace(it.key(),
                            parse_formula(it.value().get<std::string>()));
    } else if (by.contains("rule")) {
      line.rule = by["rule"].get<std::string>();
      if (by.contains("from"))
        for (const auto& f : by["from"]) line.from.push_back(f.get<int>());
      if (by.contains("fresh")) line.fresh = by["fresh"].get<std::string>();
    } else {
      throw std::runtime_error("line justification needs axiom or rule");
    }
    d.lines.push_back(std::move(line));
  }
  return d;
}

}  // namespace bapal
