#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bapal/formula.hpp"
#include "bapal/model.hpp"

namespace bapal {

/// Extension-based evaluator. Announcements only ever shrink the domain,
/// so every submodel arising during evaluation is a subset of the root
/// state space and is represented as a domain bitset. Results are memoized
/// per (domain, subformula).
class Evaluator {
 public:
  explicit Evaluator(const FiniteModel& m, int box_class_cap = 20)
      : m_(m), box_class_cap_(box_class_cap) {
    classes_.resize(m.agents.size());
    for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
      classes_[ai].resize(m.num_states());
      for (int s = 0; s < m.num_states(); ++s)
        classes_[ai][s] = m.agent_class(static_cast<int>(ai), s);
    }
    val_classes_ = valuation_classes(m);
  }

  StateSet extension(const Formula& f) {
    return extension(f, m_.full_domain());
  }

  StateSet extension(const Formula& f, const StateSet& domain) {
    auto key = std::make_pair(static_cast<const void*>(f.raw()), domain);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    StateSet out = compute(f, domain);
    // keep the node alive so its address cannot be recycled for a
    // different formula while this memo entry exists
    pinned_.push_back(f);
    memo_.emplace(std::move(key), out);
    return out;
  }

  bool holds_at(const Formula& f, int state) {
    return extension(f).test(state);
  }

  bool holds_at_designated(const Formula& f) {
    if (m_.designated < 0)
      throw std::invalid_argument("model has no designated state");
    return holds_at(f, m_.designated);
  }

 private:
  StateSet compute(const Formula& f, const StateSet& domain) {
    switch (f.kind()) {
      case Kind::Top:
        return domain;
      case Kind::Atom: {
        int pi = m_.atom_index(f.name());
        if (pi < 0) return StateSet(m_.num_states());  // off-signature: false
        return m_.valuation[pi] & domain;
      }
      case Kind::Neg:
        return domain - extension(f.child(), domain);
      case Kind::And:
        return extension(f.left(), domain) & extension(f.right(), domain);
      case Kind::Know: {
        int ai = m_.agent_index(f.name());
        if (ai < 0)
          throw std::invalid_argument("agent \"" + f.name() +
                                      "\" not in model");
        StateSet body = extension(f.child(), domain);
        StateSet out(m_.num_states());
        for (int s = 0; s < m_.num_states(); ++s) {
          if (!domain.test(s)) continue;
          if ((classes_[ai][s] & domain).is_subset_of(body)) out.set(s);
        }
        return out;
      }
      case Kind::Announce: {
        StateSet content = extension(f.left(), domain);
        if (content.none()) return domain;  // vacuously true everywhere
        StateSet inner = extension(f.right(), content);
        // s survives the announcement iff s is in content; then the body
        // must hold in the restricted model.
        return (domain - content) | (inner & domain);
      }
      case Kind::Box:
        return box_extension(f.child(), domain);
    }
    return StateSet(m_.num_states());
  }

  // A psi holds at s iff psi holds at s in every restriction to a
  // boolean-definable set containing s. Definable sets are exactly the
  // nonempty unions of (domain-restricted) valuation classes.
  StateSet box_extension(const Formula& body, const StateSet& domain) {
    std::vector<StateSet> classes;
    for (const auto& c : val_classes_) {
      StateSet cd = c & domain;
      if (cd.any()) classes.push_back(std::move(cd));
    }
    const int k = static_cast<int>(classes.size());
    if (k > box_class_cap_)
      throw ResourceError("quantifier sweep: " + std::to_string(k) +
                          " valuation classes exceed cap " +
                          std::to_string(box_class_cap_));
    StateSet bad(m_.num_states());
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
      StateSet u(m_.num_states());
      for (int i = 0; i < k; ++i)
        if (mask & (1ull << i)) u |= classes[i];
      bad |= u - extension(body, u);
    }
    return domain - bad;
  }

  const FiniteModel& m_;
  int box_class_cap_;
  std::vector<std::vector<StateSet>> classes_;  // [agent][state]
  std::vector<StateSet> val_classes_;
  std::map<std::pair<const void*, StateSet>, StateSet> memo_;
  std::vector<Formula> pinned_;
};

inline StateSet eval_extension(const FiniteModel& m, const Formula& f,
                               int box_class_cap = 20) {
  return Evaluator(m, box_class_cap).extension(f);
}

inline bool eval_at(const FiniteModel& m, int state, const Formula& f,
                    int box_class_cap = 20) {
  return Evaluator(m, box_class_cap).holds_at(f, state);
}

/// Independent route to the quantifier extension: build the characteristic
/// boolean of every definable set as an actual formula and evaluate the
/// corresponding announcement from scratch. Slow; used to cross-check
/// box_extension.
inline StateSet eval_box_by_boolean_sweep(const FiniteModel& m,
                                          const Formula& body,
                                          int class_cap = 20) {
  auto exts = definable_extensions(m, std::nullopt, class_cap);
  StateSet out = m.full_domain();
  for (const auto& u : exts) {
    Formula ann = Formula::announce(characteristic_boolean(m, u), body);
    out &= eval_extension(m, ann, class_cap);
  }
  return out;
}

}  // namespace bapal
