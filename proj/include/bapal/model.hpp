#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bapal/formula.hpp"

namespace bapal {

/// Subset of a model's states, indexed by position in the state list.
using StateSet = boost::dynamic_bitset<>;

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite S5 model over a declared atom signature. Atoms outside the
/// signature are false at every state.
struct FiniteModel {
  std::vector<std::string> atoms;
  std::vector<std::string> agents;
  std::vector<std::string> states;
  // Per agent, a partition of state indices into equivalence classes.
  std::vector<std::vector<std::vector<int>>> partitions;
  // Per signature atom, the set of states where it holds.
  std::vector<StateSet> valuation;
  int designated = -1;  // -1 = none

  int num_states() const { return static_cast<int>(states.size()); }

  int state_index(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
  }
  int atom_index(const std::string& name) const {
    auto it = std::find(atoms.begin(), atoms.end(), name);
    return it == atoms.end() ? -1 : static_cast<int>(it - atoms.begin());
  }
  int agent_index(const std::string& name) const {
    auto it = std::find(agents.begin(), agents.end(), name);
    return it == agents.end() ? -1 : static_cast<int>(it - agents.begin());
  }

  /// Class of state s under agent ai, as a StateSet.
  StateSet agent_class(int ai, int s) const {
    StateSet out(states.size());
    for (const auto& block : partitions[ai]) {
      if (std::find(block.begin(), block.end(), s) != block.end()) {
        for (int t : block) out.set(t);
        return out;
      }
    }
    return out;
  }

  StateSet full_domain() const {
    StateSet d(states.size());
    d.set();
    return d;
  }

  /// Index of the partition block containing s, or -1.
  int block_of(int ai, int s) const {
    for (std::size_t b = 0; b < partitions[ai].size(); ++b) {
      const auto& block = partitions[ai][b];
      if (std::find(block.begin(), block.end(), s) != block.end())
        return static_cast<int>(b);
    }
    return -1;
  }
};

struct Violation {
  std::string code;
  std::string detail;
};

inline std::vector<Violation> validate(const FiniteModel& m) {
  std::vector<Violation> out;
  const int n = m.num_states();
  if (m.partitions.size() != m.agents.size())
    out.push_back({"partitions-shape", "one partition required per agent"});
  for (std::size_t ai = 0;
       ai < std::min(m.partitions.size(), m.agents.size()); ++ai) {
    std::vector<int> cover(n, 0);
    for (const auto& block : m.partitions[ai]) {
      if (block.empty())
        out.push_back({"empty-block", "agent " + m.agents[ai]});
      for (int s : block) {
        if (s < 0 || s >= n) {
          out.push_back({"unknown-state",
                         "agent " + m.agents[ai] + " block mentions state #" +
                             std::to_string(s)});
        } else {
          ++cover[s];
        }
      }
    }
    for (int s = 0; s < n; ++s) {
      if (cover[s] == 0)
        out.push_back({"partition-not-covering",
                       "agent " + m.agents[ai] + " misses state " +
                           m.states[s]});
      else if (cover[s] > 1)
        out.push_back({"partition-overlap",
                       "agent " + m.agents[ai] + " repeats state " +
                           m.states[s]});
    }
  }
  if (m.valuation.size() != m.atoms.size())
    out.push_back({"valuation-shape", "one state set required per atom"});
  for (const auto& v : m.valuation) {
    if (static_cast<int>(v.size()) != n)
      out.push_back({"valuation-shape", "state set of wrong width"});
  }
  if (m.designated != -1 && (m.designated < 0 || m.designated >= n))
    out.push_back({"designated-unknown",
                   "designated state #" + std::to_string(m.designated)});
  // duplicate names
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (m.states[s] == m.states[t])
        out.push_back({"duplicate-state", m.states[s]});
  return out;
}

/// Model restriction to a nonempty U: domain U, classes and valuations
/// intersected, designated kept iff it survives.
inline FiniteModel restrict(const FiniteModel& m, const StateSet& u) {
  if (u.none())
    throw std::invalid_argument(
        "restrict: empty announcement extension rejected");
  FiniteModel out;
  out.atoms = m.atoms;
  out.agents = m.agents;
  std::vector<int> new_index(m.num_states(), -1);
  for (int s = 0; s < m.num_states(); ++s) {
    if (u.test(s)) {
      new_index[s] = static_cast<int>(out.states.size());
      out.states.push_back(m.states[s]);
    }
  }
  const int nn = static_cast<int>(out.states.size());
  out.partitions.resize(m.agents.size());
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    for (const auto& block : m.partitions[ai]) {
      std::vector<int> nb;
      for (int s : block)
        if (u.test(s)) nb.push_back(new_index[s]);
      if (!nb.empty()) out.partitions[ai].push_back(std::move(nb));
    }
  }
  out.valuation.resize(m.atoms.size());
  for (std::size_t pi = 0; pi < m.atoms.size(); ++pi) {
    StateSet v(nn);
    for (int s = 0; s < m.num_states(); ++s)
      if (u.test(s) && m.valuation[pi].test(s)) v.set(new_index[s]);
    out.valuation[pi] = std::move(v);
  }
  out.designated =
      (m.designated >= 0 && u.test(m.designated)) ? new_index[m.designated]
                                                  : -1;
  return out;
}

/// States grouped by identical signature valuation, in first-occurrence
/// order of the state list.
inline std::vector<StateSet> valuation_classes(const FiniteModel& m) {
  return [&] {
    std::vector<StateSet> classes;
    std::vector<std::vector<bool>> keys;
    for (int s = 0; s < m.num_states(); ++s) {
      std::vector<bool> key;
      key.reserve(m.atoms.size());
      for (const auto& v : m.valuation) key.push_back(v.test(s));
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(std::move(key));
        StateSet c(m.num_states());
        c.set(s);
        classes.push_back(std::move(c));
      } else {
        classes[it - keys.begin()].set(s);
      }
    }
    return classes;
  }();
}

/// All nonempty unions of valuation classes; these are exactly the sets
/// definable by a boolean over the signature. With an anchor, only unions
/// containing the anchor's class.
inline std::vector<StateSet> definable_extensions(
    const FiniteModel& m, std::optional<int> anchored_at = std::nullopt,
    int class_cap = 20) {
  auto classes = valuation_classes(m);
  const int k = static_cast<int>(classes.size());
  if (k > class_cap)
    throw ResourceError("definable_extensions: " + std::to_string(k) +
                        " valuation classes exceed cap " +
                        std::to_string(class_cap));
  int anchor_class = -1;
  if (anchored_at) {
    for (int i = 0; i < k; ++i)
      if (classes[i].test(*anchored_at)) anchor_class = i;
  }
  std::vector<StateSet> out;
  for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
    if (anchor_class >= 0 && !(mask & (1ull << anchor_class))) continue;
    StateSet u(m.num_states());
    for (int i = 0; i < k; ++i)
      if (mask & (1ull << i)) u |= classes[i];
    out.push_back(std::move(u));
  }
  return out;
}

/// Finite rendition of the boolean closure: one fresh atom per distinct
/// definable extension, appended to the signature.
inline std::pair<FiniteModel, std::vector<std::pair<std::string, StateSet>>>
boolean_closure(const FiniteModel& m, int class_cap = 20) {
  auto exts = definable_extensions(m, std::nullopt, class_cap);
  FiniteModel out = m;
  std::vector<std::pair<std::string, StateSet>> mapping;
  int counter = 0;
  auto fresh_name = [&] {
    std::string name;
    do {
      name = "c" + std::to_string(counter++);
    } while (m.atom_index(name) >= 0);
    return name;
  };
  for (const auto& u : exts) {
    std::string name = fresh_name();
    out.atoms.push_back(name);
    out.valuation.push_back(u);
    mapping.emplace_back(name, u);
  }
  return {std::move(out), std::move(mapping)};
}

/// Characteristic boolean of U in m: disjunction over the valuation
/// classes inside U of the conjunction fixing every signature atom.
inline Formula characteristic_boolean(const FiniteModel& m,
                                      const StateSet& u) {
  auto classes = valuation_classes(m);
  std::optional<Formula> disj;
  for (const auto& c : classes) {
    if (!c.is_subset_of(u)) continue;
    int rep = static_cast<int>(c.find_first());
    std::optional<Formula> conj;
    for (std::size_t pi = 0; pi < m.atoms.size(); ++pi) {
      Formula lit = Formula::atom(m.atoms[pi]);
      if (!m.valuation[pi].test(rep)) lit = Formula::neg(lit);
      conj = conj ? Formula::land(*conj, lit) : lit;
    }
    if (!conj) conj = Formula::top();
    disj = disj ? Formula::lor(*disj, *conj) : *conj;
  }
  if (!disj) return Formula::bot();
  return *disj;
}

/// Replaces closure atoms by their representative booleans.
inline Formula tr_translate(const Formula& f,
                            const std::map<std::string, Formula>& mapping) {
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Atom: {
      auto it = mapping.find(f.name());
      return it == mapping.end() ? f : it->second;
    }
    case Kind::Neg:
      return Formula::neg(tr_translate(f.child(), mapping));
    case Kind::And:
      return Formula::land(tr_translate(f.left(), mapping),
                           tr_translate(f.right(), mapping));
    case Kind::Know:
      return Formula::know(f.name(), tr_translate(f.child(), mapping));
    case Kind::Announce:
      return Formula::announce(tr_translate(f.left(), mapping),
                               tr_translate(f.right(), mapping));
    case Kind::Box:
      return Formula::box(tr_translate(f.child(), mapping));
  }
  return f;
}

/// Representative-boolean mapping for a boolean_closure result, for use
/// with tr_translate.
inline std::map<std::string, Formula> tr_mapping(
    const FiniteModel& original,
    const std::vector<std::pair<std::string, StateSet>>& closure_atoms) {
  std::map<std::string, Formula> out;
  for (const auto& [name, ext] : closure_atoms)
    out.emplace(name, characteristic_boolean(original, ext));
  return out;
}

}  // namespace bapal
