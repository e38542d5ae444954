#pragma once

#include <string>
#include <utility>

#include "bapal/model.hpp"

namespace bapal {
namespace fixtures {

/// Two states s = {p}, t = {}; one a-class {s,t}; b distinguishes them.
/// Signature {p,q} with q empty everywhere; designated s.
inline FiniteModel model_m() {
  FiniteModel m;
  m.atoms = {"p", "q"};
  m.agents = {"a", "b"};
  m.states = {"s", "t"};
  m.partitions = {{{0, 1}}, {{0}, {1}}};
  m.valuation.resize(2);
  m.valuation[0] = StateSet(2);
  m.valuation[0].set(0);  // p at s
  m.valuation[1] = StateSet(2);  // q nowhere
  m.designated = 0;
  return m;
}

/// Four states sp = {p,q}, tp = {}, up = {p,q}, vp = {q}; a-classes
/// {sp,tp},{up,vp}; b-classes {sp,up},{tp,vp}; designated sp. Identical
/// to model_m when q is ignored, but distinguishable once q can be
/// announced.
inline FiniteModel model_m_prime() {
  FiniteModel m;
  m.atoms = {"p", "q"};
  m.agents = {"a", "b"};
  m.states = {"sp", "tp", "up", "vp"};
  m.partitions = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}};
  m.valuation.resize(2);
  m.valuation[0] = StateSet(4);
  m.valuation[0].set(0);
  m.valuation[0].set(2);  // p at sp, up
  m.valuation[1] = StateSet(4);
  m.valuation[1].set(0);
  m.valuation[1].set(2);
  m.valuation[1].set(3);  // q at sp, up, vp
  m.designated = 0;
  return m;
}

/// Path of gap+1 states w0..wgap with the edge between i and i+1 labeled
/// a when i is even, b when i is odd. p holds at the far end iff
/// p_at_end; designated w0.
inline FiniteModel chain(int gap, bool p_at_end) {
  FiniteModel m;
  m.atoms = {"p"};
  m.agents = {"a", "b"};
  const int n = gap + 1;
  for (int i = 0; i < n; ++i) m.states.push_back("w" + std::to_string(i));
  m.partitions.resize(2);
  std::vector<bool> used(n, false);
  for (int i = 0; i + 1 < n; ++i) {
    m.partitions[i % 2 == 0 ? 0 : 1].push_back({i, i + 1});
    if (i % 2 == 0) used[i] = used[i + 1] = true;
  }
  // singleton leftovers so each partition covers every state
  for (int ai = 0; ai < 2; ++ai) {
    std::vector<bool> covered(n, false);
    for (const auto& block : m.partitions[ai])
      for (int s : block) covered[s] = true;
    for (int i = 0; i < n; ++i)
      if (!covered[i]) m.partitions[ai].push_back({i});
  }
  m.valuation.resize(1);
  m.valuation[0] = StateSet(n);
  if (p_at_end) m.valuation[0].set(n - 1);
  m.designated = 0;
  return m;
}

/// The pair used for depth-bounded bisimilarity tests: identical paths
/// whose only difference is the valuation at distance gap from the
/// designated state.
inline std::pair<FiniteModel, FiniteModel> chain_pair(int gap) {
  return {chain(gap, false), chain(gap, true)};
}

}  // namespace fixtures
}  // namespace bapal
