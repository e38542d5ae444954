#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bapal/bisim.hpp"
#include "bapal/closure.hpp"
#include "bapal/formula.hpp"
#include "bapal/mc.hpp"
#include "bapal/model.hpp"
#include "bapal/normalform.hpp"

namespace bapal {

enum class SatMode { Auto, Faithful, Oracle };

struct SatCaps {
  int cl_cap = 200;
  int sigma_cap = 4096;      // assignments to membership-deciding items
  int candidate_cap = 20000;  // candidate models examined per query
  int palette = 3;            // palette atoms; bounds witness model size
  int box_class_cap = 20;
  int oracle_max_states = 4;
  int oracle_extra_atoms = 2;
  SatMode mode = SatMode::Auto;
};

// ---------------------------------------------------------------------
// Bounded brute-force search: every model up to max_states over the
// formula's atoms plus extra fresh ones, up to isomorphism. A hit is a
// definitive sat; exhaustion is only "no model within bounds".
// ---------------------------------------------------------------------

namespace detail {

/// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  rec(0, -1);
  return out;
}

/// Renumber a block string to first-occurrence order.
inline std::vector<int> normalize_rgs(const std::vector<int>& rgs) {
  std::vector<int> renum(rgs.size(), -1);
  std::vector<int> out(rgs.size());
  int next = 0;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (renum[rgs[i]] < 0) renum[rgs[i]] = next++;
    out[i] = renum[rgs[i]];
  }
  return out;
}

inline std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct Frame {
  std::vector<std::vector<int>> rgs_per_agent;
  std::vector<std::vector<int>> automorphisms;  // state permutations
};

/// Agent-partition tuples up to state permutation, with automorphisms.
inline std::vector<Frame> canonical_frames(int n, int num_agents) {
  auto parts = set_partitions(n);
  auto perms = permutations_of(n);
  std::vector<Frame> out;
  std::vector<int> pick(num_agents, 0);
  std::function<void(int)> rec = [&](int ai) {
    if (ai == num_agents) {
      std::vector<std::vector<int>> tuple;
      for (int a = 0; a < num_agents; ++a) tuple.push_back(parts[pick[a]]);
      // canonical iff no permutation yields a smaller tuple
      std::vector<std::vector<int>> autos;
      for (const auto& p : perms) {
        std::vector<std::vector<int>> img;
        for (const auto& rgs : tuple) {
          std::vector<int> moved(n);
          for (int s = 0; s < n; ++s) moved[p[s]] = rgs[s];
          img.push_back(normalize_rgs(moved));
        }
        if (img < tuple) return;
        if (img == tuple) autos.push_back(p);
      }
      out.push_back({std::move(tuple), std::move(autos)});
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      pick[ai] = static_cast<int>(i);
      rec(ai + 1);
    }
  };
  if (num_agents == 0) {
    out.push_back({{}, perms});
    return out;
  }
  rec(0);
  return out;
}

}  // namespace detail

struct OracleResult {
  bool found = false;
  std::optional<FiniteModel> model;  // designated state satisfies the query
  std::uint64_t models_tried = 0;
};

inline OracleResult oracle_search(const Formula& phi, int max_states = 4,
                                  int extra_atoms = 2,
                                  int box_class_cap = 20) {
  OracleResult res;
  std::vector<std::string> atoms;
  {
    auto vs = vars_of(phi);
    atoms.assign(vs.begin(), vs.end());
    int counter = 0;
    while (static_cast<int>(atoms.size()) <
           static_cast<int>(vs.size()) + extra_atoms) {
      std::string name = "e" + std::to_string(counter++);
      if (!vs.count(name)) atoms.push_back(name);
    }
  }
  std::vector<std::string> agents;
  {
    auto as = agents_of(phi);
    agents.assign(as.begin(), as.end());
  }
  const int k = static_cast<int>(atoms.size());

  for (int n = 1; n <= max_states; ++n) {
    auto frames =
        detail::canonical_frames(n, static_cast<int>(agents.size()));
    std::vector<std::string> names;
    for (int s = 0; s < n; ++s) names.push_back("s" + std::to_string(s));
    for (const auto& frame : frames) {
      FiniteModel m;
      m.atoms = atoms;
      m.agents = agents;
      m.states = names;
      m.partitions.resize(agents.size());
      for (std::size_t ai = 0; ai < agents.size(); ++ai) {
        int blocks =
            *std::max_element(frame.rgs_per_agent[ai].begin(),
                              frame.rgs_per_agent[ai].end()) +
            1;
        m.partitions[ai].assign(blocks, {});
        for (int s = 0; s < n; ++s)
          m.partitions[ai][frame.rgs_per_agent[ai][s]].push_back(s);
      }
      m.valuation.assign(k, StateSet(n));

      const std::uint64_t total = 1ull << (static_cast<std::uint64_t>(k) * n);
      for (std::uint64_t v = 0; v < total; ++v) {
        // valuation orbit representative under the frame automorphisms
        bool minimal = true;
        for (const auto& p : frame.automorphisms) {
          std::uint64_t img = 0;
          for (int pi = 0; pi < k; ++pi)
            for (int s = 0; s < n; ++s)
              if ((v >> (pi * n + s)) & 1)
                img |= 1ull << (pi * n + p[s]);
          if (img < v) {
            minimal = false;
            break;
          }
        }
        if (!minimal) continue;
        for (int pi = 0; pi < k; ++pi)
          for (int s = 0; s < n; ++s)
            m.valuation[pi][s] = (v >> (pi * n + s)) & 1;
        ++res.models_tried;
        StateSet ext = Evaluator(m, box_class_cap).extension(phi);
        if (ext.any()) {
          m.designated = static_cast<int>(ext.find_first());
          res.found = true;
          res.model = m;
          return res;
        }
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------
// Candidate closure models and the level filter.
// ---------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> palette_names(const Closure& c, int palette) {
  std::vector<std::string> names;
  int counter = 0;
  while (static_cast<int>(names.size()) < palette) {
    std::string name = "z" + std::to_string(counter++);
    if (std::find(c.vars.begin(), c.vars.end(), name) == c.vars.end())
      names.push_back(name);
  }
  return names;
}

/// Model over a multiset of candidate worlds. Relations: agreement on
/// the agent's knowledge formulas. Valuation: membership for the
/// formula's atoms; every state gets a distinct palette pattern so that
/// every subset of the domain is boolean-definable.
inline FiniteModel build_candidate(const Closure& c,
                                   const std::vector<PhiSetBits>& parts,
                                   const std::vector<int>& multiset,
                                   int palette) {
  FiniteModel m;
  m.atoms = c.vars;
  auto pal = palette_names(c, palette);
  m.atoms.insert(m.atoms.end(), pal.begin(), pal.end());
  m.agents = c.agents;
  const int n = static_cast<int>(multiset.size());
  for (int i = 0; i < n; ++i) m.states.push_back("s" + std::to_string(i));
  m.partitions.resize(c.agents.size());
  for (std::size_t ai = 0; ai < c.agents.size(); ++ai) {
    std::vector<int> relevant;
    for (int kf : c.know_items)
      if (c.formulas[kf].name() == c.agents[ai]) relevant.push_back(kf);
    std::map<std::vector<bool>, int> blocks;
    for (int i = 0; i < n; ++i) {
      std::vector<bool> key;
      for (int kf : relevant) key.push_back(parts[multiset[i]].test(kf));
      auto [it, fresh] =
          blocks.emplace(std::move(key), static_cast<int>(m.partitions[ai].size()));
      if (fresh) m.partitions[ai].push_back({});
      m.partitions[ai][it->second].push_back(i);
    }
  }
  m.valuation.assign(m.atoms.size(), StateSet(n));
  for (std::size_t vi = 0; vi < c.vars.size(); ++vi) {
    int item = -1;
    for (int ai : c.atom_items)
      if (c.formulas[ai].name() == c.vars[vi]) item = ai;
    for (int i = 0; i < n; ++i)
      if (item >= 0 && parts[multiset[i]].test(item)) m.valuation[vi].set(i);
  }
  for (int b = 0; b < palette; ++b)
    for (int i = 0; i < n; ++i)
      if ((i >> b) & 1) m.valuation[c.vars.size() + b].set(i);
  return m;
}

/// Witness condition inside a candidate: every refuted knowledge formula
/// has a refuting world in the same agent class.
inline bool clause3_holds(const Closure& c,
                          const std::vector<PhiSetBits>& parts,
                          const std::vector<int>& multiset) {
  const int n = static_cast<int>(multiset.size());
  for (int i = 0; i < n; ++i) {
    for (int kf : c.know_items) {
      if (parts[multiset[i]].test(kf)) continue;
      const std::string& agent = c.formulas[kf].name();
      int body = c.find(c.formulas[kf].child());
      std::vector<int> relevant;
      for (int kg : c.know_items)
        if (c.formulas[kg].name() == agent) relevant.push_back(kg);
      bool found = false;
      for (int j = 0; j < n && !found; ++j) {
        bool same_class = true;
        for (int kg : relevant)
          if (parts[multiset[i]].test(kg) != parts[multiset[j]].test(kg)) {
            same_class = false;
            break;
          }
        if (same_class && !parts[multiset[j]].test(body)) found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> enumerate_multisets(int num_parts,
                                                         int max_size,
                                                         int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty()) {
      if (static_cast<int>(out.size()) >= cap)
        throw ResourceError("candidate models exceed cap " +
                            std::to_string(cap));
      out.push_back(cur);
    }
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int p = from; p < num_parts; ++p) {
      cur.push_back(p);
      rec(p);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

struct GammaResult {
  Closure closure;
  std::vector<PhiSetBits> parts;
  std::vector<std::vector<int>> candidates;  // part multisets
  std::vector<std::vector<int>> levels;      // surviving candidate ids per level
  int reached_level = -1;
};

/// Builds the candidate closure models and filters them level by level.
/// The level constraint is realized as: membership of each quantified
/// announcement formula of that depth coincides with its model-checked
/// truth at every world. With `literal` set, the definition's phrasing
/// is used instead: quantify over announcement restrictions and over
/// previous-level models bisimilar to them (restricted to the formula's
/// atoms), and require the body in every matching world. Both agree on
/// small inputs; the literal route is kept for cross-checking.
inline GammaResult gamma_fixpoint(const Closure& c, const SatCaps& caps,
                                  bool literal = false) {
  GammaResult g{c, {}, {}, {}, -1};
  g.parts = enumerate_parts(c, caps.sigma_cap);
  const int max_size = 1 << caps.palette;
  g.candidates = detail::enumerate_multisets(
      static_cast<int>(g.parts.size()), max_size, caps.candidate_cap);

  std::vector<int> alive;
  for (std::size_t i = 0; i < g.candidates.size(); ++i)
    if (detail::clause3_holds(c, g.parts, g.candidates[i]))
      alive.push_back(static_cast<int>(i));
  g.levels.push_back(alive);
  g.reached_level = 0;

  std::set<std::string> var_scope(c.vars.begin(), c.vars.end());
  for (int x = 1; x <= c.depth; ++x) {
    std::vector<int> boxes;
    for (int bf : c.box_items)
      if (c.formulas[bf].quant_depth() <= x) boxes.push_back(bf);
    const std::vector<int>& prev = g.levels.back();
    std::vector<int> next;
    for (int id : prev) {
      const auto& ms = g.candidates[id];
      FiniteModel m = detail::build_candidate(c, g.parts, ms, caps.palette);
      Evaluator ev(m, caps.box_class_cap);
      bool ok = true;
      for (int bf : boxes) {
        const Formula& box = c.formulas[bf];
        if (!literal) {
          StateSet ext = ev.extension(box);
          for (std::size_t i = 0; i < ms.size() && ok; ++i)
            if (ext.test(i) != g.parts[ms[i]].test(bf)) ok = false;
        } else {
          Formula alpha = box.left();
          int body = c.find(box.right().child());
          StateSet ext_a = ev.extension(alpha);
          for (std::size_t i = 0; i < ms.size() && ok; ++i) {
            bool rhs = true;
            if (ext_a.test(i)) {
              FiniteModel r = restrict(m, ext_a);
              int ri = 0;  // rank of state i inside the restriction
              for (std::size_t b = 0; b < i; ++b)
                if (ext_a.test(b)) ++ri;
              for (const auto& u : definable_extensions(r, ri,
                                                        caps.box_class_cap)) {
                FiniteModel r2 = restrict(r, u);
                int r2i = 0;
                for (int b = 0; b < ri; ++b)
                  if (u.test(b)) ++r2i;
                for (int pid : prev) {
                  const auto& pms = g.candidates[pid];
                  FiniteModel pn = detail::build_candidate(c, g.parts, pms,
                                                           caps.palette);
                  for (std::size_t t = 0; t < pms.size(); ++t) {
                    if (!bisimilar(r2, r2i, pn, static_cast<int>(t),
                                   var_scope)
                             .related)
                      continue;
                    if (!g.parts[pms[t]].test(body)) rhs = false;
                  }
                  if (!rhs) break;
                }
                if (!rhs) break;
              }
            }
            if (rhs != g.parts[ms[i]].test(bf)) ok = false;
          }
        }
        if (!ok) break;
      }
      if (ok) next.push_back(id);
    }
    g.levels.push_back(std::move(next));
    g.reached_level = x;
  }
  return g;
}

// ---------------------------------------------------------------------
// Verdicts.
// ---------------------------------------------------------------------

enum class SatVerdict { Sat, Unsat, ResourceExceeded };

struct SatResult {
  SatVerdict verdict = SatVerdict::ResourceExceeded;
  std::optional<FiniteModel> witness;  // designated state satisfies
  std::vector<std::string> diagnostics;
};

namespace detail {

inline std::optional<FiniteModel> epistemic_witness(const Closure& c,
                                                    const SatCaps& caps) {
  // quantifier-free case: keep the largest world set in which every
  // refuted knowledge formula has its witness, shrinking to a fixpoint
  auto parts = enumerate_parts(c, caps.sigma_cap);
  std::vector<bool> alive(parts.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!alive[i]) continue;
      for (int kf : c.know_items) {
        if (parts[i].test(kf)) continue;
        const std::string& agent = c.formulas[kf].name();
        int body = c.find(c.formulas[kf].child());
        std::vector<int> relevant;
        for (int kg : c.know_items)
          if (c.formulas[kg].name() == agent) relevant.push_back(kg);
        bool found = false;
        for (std::size_t j = 0; j < parts.size() && !found; ++j) {
          if (!alive[j]) continue;
          bool same = true;
          for (int kg : relevant)
            if (parts[i].test(kg) != parts[j].test(kg)) {
              same = false;
              break;
            }
          if (same && !parts[j].test(body)) found = true;
        }
        if (!found) {
          alive[i] = false;
          changed = true;
          break;
        }
      }
    }
  }
  int target = c.find(c.base);
  std::vector<int> kept;
  int designated = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!alive[i]) continue;
    if (designated < 0 && parts[i].test(target))
      designated = static_cast<int>(kept.size());
    kept.push_back(static_cast<int>(i));
  }
  if (designated < 0) return std::nullopt;
  FiniteModel m = build_candidate(c, parts, kept, 0);
  m.designated = designated;
  return m;
}

}  // namespace detail

inline SatResult decide_sat(const Formula& phi, const SatCaps& caps = {}) {
  SatResult res;
  Formula aanf = to_aanf(phi);

  if (caps.mode != SatMode::Faithful) {
    auto oracle = oracle_search(phi, caps.oracle_max_states,
                                caps.oracle_extra_atoms, caps.box_class_cap);
    if (oracle.found) {
      res.verdict = SatVerdict::Sat;
      res.witness = oracle.model;
      res.diagnostics.push_back("witness found by bounded model search");
      return res;
    }
    if (caps.mode == SatMode::Oracle) {
      res.verdict = SatVerdict::ResourceExceeded;
      res.diagnostics.push_back(
          "no model within bounds (" + std::to_string(caps.oracle_max_states) +
          " states, " + std::to_string(caps.oracle_extra_atoms) +
          " extra atoms); not conclusive");
      return res;
    }
  }

  try {
    Closure c = closure_of(aanf, caps.cl_cap);
    if (c.depth == 0) {
      auto witness = detail::epistemic_witness(c, caps);
      if (!witness) {
        res.verdict = SatVerdict::Unsat;
        return res;
      }
      if (!Evaluator(*witness, caps.box_class_cap)
               .holds_at_designated(aanf)) {
        res.diagnostics.push_back("witness failed verification");
        return res;
      }
      res.verdict = SatVerdict::Sat;
      res.witness = std::move(witness);
      return res;
    }

    GammaResult g = gamma_fixpoint(c, caps);
    int target = c.find(aanf);
    for (int id : g.levels.back()) {
      const auto& ms = g.candidates[id];
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!g.parts[ms[i]].test(target)) continue;
        FiniteModel m =
            detail::build_candidate(c, g.parts, ms, caps.palette);
        m.designated = static_cast<int>(i);
        if (Evaluator(m, caps.box_class_cap).holds_at_designated(aanf)) {
          res.verdict = SatVerdict::Sat;
          res.witness = std::move(m);
          return res;
        }
        res.diagnostics.push_back("candidate witness failed verification");
      }
    }
    res.verdict = SatVerdict::Unsat;
    res.diagnostics.push_back(
        "palette-bounded search: candidate models limited to " +
        std::to_string(1 << caps.palette) + " worlds");
    return res;
  } catch (const ResourceError& e) {
    res.verdict = SatVerdict::ResourceExceeded;
    res.diagnostics.push_back(e.what());
    return res;
  }
}

enum class ValidVerdict { Valid, Invalid, ResourceExceeded };

struct ValidResult {
  ValidVerdict verdict = ValidVerdict::ResourceExceeded;
  std::optional<FiniteModel> countermodel;
  std::vector<std::string> diagnostics;
};

inline ValidResult decide_valid(const Formula& phi, const SatCaps& caps = {}) {
  SatResult neg = decide_sat(Formula::neg(phi), caps);
  ValidResult res;
  res.diagnostics = neg.diagnostics;
  switch (neg.verdict) {
    case SatVerdict::Unsat:
      res.verdict = ValidVerdict::Valid;
      break;
    case SatVerdict::Sat:
      res.verdict = ValidVerdict::Invalid;
      res.countermodel = neg.witness;
      break;
    case SatVerdict::ResourceExceeded:
      res.verdict = ValidVerdict::ResourceExceeded;
      break;
  }
  return res;
}

}  // namespace bapal
