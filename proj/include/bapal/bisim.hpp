#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bapal/model.hpp"

namespace bapal {

namespace detail {

/// Coarsest stable partition of the disjoint union of two models (the
/// second may be absent), starting from agreement on the atoms in q.
/// Returns a block id per union state (M's states first).
struct UnionRefinement {
  std::vector<int> block;          // per union state
  std::vector<std::string> agents;  // union agent list
  int offset;                       // index of N's first state
};

inline UnionRefinement refine_union(const FiniteModel& m,
                                    const FiniteModel* n,
                                    const std::set<std::string>& q) {
  UnionRefinement r;
  r.offset = m.num_states();
  const int total = m.num_states() + (n ? n->num_states() : 0);
  std::set<std::string> agent_set(m.agents.begin(), m.agents.end());
  if (n) agent_set.insert(n->agents.begin(), n->agents.end());
  r.agents.assign(agent_set.begin(), agent_set.end());

  auto model_of = [&](int u) -> const FiniteModel& {
    return u < r.offset ? m : *n;
  };
  auto local_of = [&](int u) { return u < r.offset ? u : u - r.offset; };

  // per union state and union agent, the agent class as union indices;
  // agents absent from a model act as identity
  std::vector<std::vector<std::vector<int>>> cls(
      total, std::vector<std::vector<int>>(r.agents.size()));
  for (int u = 0; u < total; ++u) {
    const FiniteModel& mm = model_of(u);
    int base = u < r.offset ? 0 : r.offset;
    for (std::size_t ai = 0; ai < r.agents.size(); ++ai) {
      int la = mm.agent_index(r.agents[ai]);
      if (la < 0) {
        cls[u][ai] = {u};
        continue;
      }
      StateSet c = mm.agent_class(la, local_of(u));
      for (int t = 0; t < mm.num_states(); ++t)
        if (c.test(t)) cls[u][ai].push_back(base + t);
    }
  }

  // initial blocks: agreement on q
  std::map<std::vector<bool>, int> init;
  r.block.resize(total);
  for (int u = 0; u < total; ++u) {
    const FiniteModel& mm = model_of(u);
    std::vector<bool> key;
    for (const auto& atom : q) {
      int pi = mm.atom_index(atom);
      key.push_back(pi >= 0 && mm.valuation[pi].test(local_of(u)));
    }
    r.block[u] = init.emplace(std::move(key), static_cast<int>(init.size()))
                     .first->second;
  }

  for (;;) {
    // signature: old block + per agent the set of blocks seen in the class
    std::map<std::pair<int, std::vector<std::set<int>>>, int> sig_ids;
    std::vector<int> next(total);
    for (int u = 0; u < total; ++u) {
      std::vector<std::set<int>> seen(r.agents.size());
      for (std::size_t ai = 0; ai < r.agents.size(); ++ai)
        for (int v : cls[u][ai]) seen[ai].insert(r.block[v]);
      auto key = std::make_pair(r.block[u], std::move(seen));
      next[u] = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size()))
                    .first->second;
    }
    if (next == r.block) break;
    r.block = std::move(next);
  }
  return r;
}

}  // namespace detail

struct BisimResult {
  bool related = false;
  // the maximal bisimulation as (state of M, state of N) pairs
  std::vector<std::pair<int, int>> witness;
};

inline std::set<std::string> default_atom_scope(const FiniteModel& m,
                                                const FiniteModel& n) {
  std::set<std::string> q(m.atoms.begin(), m.atoms.end());
  q.insert(n.atoms.begin(), n.atoms.end());
  return q;
}

/// Bisimilarity of pointed models, restricted to the atoms in q (default:
/// union of the two signatures). Computed by partition refinement on the
/// disjoint union.
inline BisimResult bisimilar(const FiniteModel& m, int s, const FiniteModel& n,
                             int t,
                             std::optional<std::set<std::string>> q =
                                 std::nullopt) {
  auto scope = q ? *q : default_atom_scope(m, n);
  auto r = detail::refine_union(m, &n, scope);
  BisimResult out;
  out.related = r.block[s] == r.block[r.offset + t];
  for (int u = 0; u < m.num_states(); ++u)
    for (int v = 0; v < n.num_states(); ++v)
      if (r.block[u] == r.block[r.offset + v]) out.witness.emplace_back(u, v);
  return out;
}

/// Depth-bounded bisimilarity, by the inductive definition: stage 0 is
/// atom agreement, stage k+1 adds forth and back one step into stage k.
inline bool n_bisimilar(const FiniteModel& m, int s, const FiniteModel& n,
                        int t, int depth,
                        std::optional<std::set<std::string>> q = std::nullopt) {
  auto scope = q ? *q : default_atom_scope(m, n);
  std::set<std::string> agent_set(m.agents.begin(), m.agents.end());
  agent_set.insert(n.agents.begin(), n.agents.end());

  auto atoms_agree = [&](int u, int v) {
    for (const auto& atom : scope) {
      int pm = m.atom_index(atom), pn = n.atom_index(atom);
      bool bu = pm >= 0 && m.valuation[pm].test(u);
      bool bv = pn >= 0 && n.valuation[pn].test(v);
      if (bu != bv) return false;
    }
    return true;
  };

  std::vector<std::vector<bool>> rel(m.num_states(),
                                     std::vector<bool>(n.num_states()));
  for (int u = 0; u < m.num_states(); ++u)
    for (int v = 0; v < n.num_states(); ++v) rel[u][v] = atoms_agree(u, v);

  for (int k = 0; k < depth; ++k) {
    auto next = rel;
    for (int u = 0; u < m.num_states(); ++u) {
      for (int v = 0; v < n.num_states(); ++v) {
        if (!next[u][v]) continue;
        bool ok = true;
        for (const auto& ag : agent_set) {
          int am = m.agent_index(ag), an = n.agent_index(ag);
          std::vector<int> cu, cv;
          if (am >= 0) {
            StateSet c = m.agent_class(am, u);
            for (int x = 0; x < m.num_states(); ++x)
              if (c.test(x)) cu.push_back(x);
          } else {
            cu = {u};
          }
          if (an >= 0) {
            StateSet c = n.agent_class(an, v);
            for (int y = 0; y < n.num_states(); ++y)
              if (c.test(y)) cv.push_back(y);
          } else {
            cv = {v};
          }
          auto forth = [&](const std::vector<int>& from,
                           const std::vector<int>& to, bool flip) {
            for (int x : from) {
              bool hit = false;
              for (int y : to)
                if (flip ? rel[y][x] : rel[x][y]) {
                  hit = true;
                  break;
                }
              if (!hit) return false;
            }
            return true;
          };
          if (!forth(cu, cv, false) || !forth(cv, cu, true)) {
            ok = false;
            break;
          }
        }
        next[u][v] = ok;
      }
    }
    rel = std::move(next);
  }
  return rel[s][t];
}

/// Verifies that a relation satisfies atoms/forth/back clause by clause.
inline bool verify_bisimulation(const FiniteModel& m, const FiniteModel& n,
                                const std::vector<std::pair<int, int>>& rel,
                                std::optional<std::set<std::string>> q =
                                    std::nullopt) {
  const std::set<std::string> scope = q ? *q : default_atom_scope(m, n);
  auto related = [&](int u, int v) {
    return std::find(rel.begin(), rel.end(), std::make_pair(u, v)) !=
           rel.end();
  };
  for (auto [u, v] : rel) {
    for (const auto& atom : scope) {
      int pm = m.atom_index(atom), pn = n.atom_index(atom);
      bool bu = pm >= 0 && m.valuation[pm].test(u);
      bool bv = pn >= 0 && n.valuation[pn].test(v);
      if (bu != bv) return false;
    }
    std::set<std::string> agent_set(m.agents.begin(), m.agents.end());
    agent_set.insert(n.agents.begin(), n.agents.end());
    for (const auto& ag : agent_set) {
      int am = m.agent_index(ag), an = n.agent_index(ag);
      std::vector<int> cu{u}, cv{v};
      if (am >= 0) {
        cu.clear();
        StateSet c = m.agent_class(am, u);
        for (int x = 0; x < m.num_states(); ++x)
          if (c.test(x)) cu.push_back(x);
      }
      if (an >= 0) {
        cv.clear();
        StateSet c = n.agent_class(an, v);
        for (int y = 0; y < n.num_states(); ++y)
          if (c.test(y)) cv.push_back(y);
      }
      for (int x : cu) {
        bool hit = false;
        for (int y : cv) hit = hit || related(x, y);
        if (!hit) return false;
      }
      for (int y : cv) {
        bool hit = false;
        for (int x : cu) hit = hit || related(x, y);
        if (!hit) return false;
      }
    }
  }
  return true;
}

/// Contraction: one state per class of the maximal autobisimulation.
/// Returns the quotient and the class index of every original state.
inline std::pair<FiniteModel, std::vector<int>> quotient_with_map(
    const FiniteModel& m) {
  std::set<std::string> scope(m.atoms.begin(), m.atoms.end());
  auto r = detail::refine_union(m, nullptr, scope);
  // renumber blocks by first occurrence so output order is deterministic
  std::vector<int> renum(m.num_states(), -1);
  std::vector<int> rep;
  std::vector<int> cls(m.num_states());
  int next_id = 0;
  std::map<int, int> seen;
  for (int s = 0; s < m.num_states(); ++s) {
    auto [it, fresh] = seen.emplace(r.block[s], next_id);
    if (fresh) {
      rep.push_back(s);
      ++next_id;
    }
    cls[s] = it->second;
  }
  FiniteModel q;
  q.atoms = m.atoms;
  q.agents = m.agents;
  for (int c = 0; c < next_id; ++c) q.states.push_back(m.states[rep[c]]);
  q.partitions.resize(m.agents.size());
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    std::set<std::set<int>> blocks;
    for (int c = 0; c < next_id; ++c) {
      StateSet orig = m.agent_class(static_cast<int>(ai), rep[c]);
      std::set<int> b;
      for (int s = 0; s < m.num_states(); ++s)
        if (orig.test(s)) b.insert(cls[s]);
      blocks.insert(std::move(b));
    }
    for (const auto& b : blocks)
      q.partitions[ai].emplace_back(b.begin(), b.end());
  }
  q.valuation.resize(m.atoms.size());
  for (std::size_t pi = 0; pi < m.atoms.size(); ++pi) {
    StateSet v(next_id);
    for (int c = 0; c < next_id; ++c)
      if (m.valuation[pi].test(rep[c])) v.set(c);
    q.valuation[pi] = std::move(v);
  }
  q.designated = m.designated >= 0 ? cls[m.designated] : -1;
  return {std::move(q), std::move(cls)};
}

inline FiniteModel quotient(const FiniteModel& m) {
  return quotient_with_map(m).first;
}

/// Renaming-invariant key of a pointed model: quotient first, then take
/// the lexicographically least serialization over state orderings with
/// the designated state pinned first. Intended for small models; guarded
/// by perm_cap.
inline std::string canonical_pointed_key(const FiniteModel& m, int s,
                                         int perm_cap = 8) {
  FiniteModel base = m;
  base.designated = s;
  auto [q, cls] = quotient_with_map(base);
  const int n = q.num_states();
  if (n > perm_cap)
    throw ResourceError("canonical key: " + std::to_string(n) +
                        " quotient states exceed cap " +
                        std::to_string(perm_cap));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // pin the designated state to the front
  std::swap(order[0], order[q.designated]);
  std::sort(order.begin() + 1, order.end());

  auto serialize = [&](const std::vector<int>& ord) {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[ord[i]] = i;
    std::string key;
    for (const auto& a : q.atoms) key += a + ";";
    for (const auto& a : q.agents) key += a + ";";
    key += "|";
    for (int i = 0; i < n; ++i)
      for (std::size_t pi = 0; pi < q.atoms.size(); ++pi)
        key += q.valuation[pi].test(ord[i]) ? '1' : '0';
    for (std::size_t ai = 0; ai < q.agents.size(); ++ai) {
      key += "|";
      // block id per state, numbered by first occurrence in ord
      std::map<int, int> renum;
      for (int i = 0; i < n; ++i) {
        int b = q.block_of(static_cast<int>(ai), ord[i]);
        int id = renum.emplace(b, static_cast<int>(renum.size())).first->second;
        key += static_cast<char>('0' + id);
      }
    }
    return key;
  };

  std::string best = serialize(order);
  while (std::next_permutation(order.begin() + 1, order.end())) {
    std::string k = serialize(order);
    if (k < best) best = std::move(k);
  }
  return best;
}

}  // namespace bapal
