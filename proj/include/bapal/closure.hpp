#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bapal/formula.hpp"
#include "bapal/model.hpp"
#include "bapal/parser.hpp"

namespace bapal {

/// The complement of f with double negations identified: ~f, or the body
/// when f is itself a negation.
inline Formula canonical_negation(const Formula& f) {
  return f.kind() == Kind::Neg ? f.child() : Formula::neg(f);
}

namespace detail {

/// Recursively collapses double negations; closure members are identified
/// modulo ~~.
inline Formula strip_double_negations(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return f;
    case Kind::Neg:
      if (f.child().kind() == Kind::Neg)
        return strip_double_negations(f.child().child());
      return Formula::neg(strip_double_negations(f.child()));
    case Kind::And:
      return Formula::land(strip_double_negations(f.left()),
                           strip_double_negations(f.right()));
    case Kind::Know:
      return Formula::know(f.name(), strip_double_negations(f.child()));
    case Kind::Announce:
      return Formula::announce(strip_double_negations(f.left()),
                               strip_double_negations(f.right()));
    case Kind::Box:
      return Formula::box(strip_double_negations(f.child()));
  }
  return f;
}

/// Subformulas in normal-form syntax: the body of an announcement is the
/// formula under the quantifier, the quantified formula itself is not a
/// subformula.
inline void aanf_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return;
    case Kind::Neg:
    case Kind::Know:
      aanf_subformulas(f.child(), out);
      return;
    case Kind::And:
      aanf_subformulas(f.left(), out);
      aanf_subformulas(f.right(), out);
      return;
    case Kind::Announce:
      aanf_subformulas(f.left(), out);
      if (f.right().kind() != Kind::Box)
        throw std::invalid_argument("closure requires normal-form input");
      aanf_subformulas(f.right().child(), out);
      return;
    case Kind::Box:
      throw std::invalid_argument("closure requires normal-form input");
  }
}

}  // namespace detail

/// Subformula-and-negation set with knowledge-prefix saturation, plus the
/// index structure the satisfiability procedure works with.
struct Closure {
  Formula base;
  std::vector<Formula> formulas;  // ordered by (size, rendering)
  std::vector<int> complement;    // index of the canonical complement
  std::vector<std::string> vars;
  std::vector<std::string> agents;
  // indices of the membership-deciding formulas: atoms, knowledge
  // formulas and announce-quantifier formulas; everything else is
  // determined by them
  std::vector<int> atom_items, know_items, box_items;
  int depth = 0;  // quantifier depth of base

  std::unordered_map<Formula, int, FormulaHash> index;

  int find(const Formula& f) const {
    auto it = index.find(f);
    if (it == index.end())
      it = index.find(detail::strip_double_negations(f));
    return it == index.end() ? -1 : it->second;
  }
  bool contains(const Formula& f) const { return find(f) >= 0; }
};

namespace detail {

inline void cl_set(const Formula& f, std::vector<Formula>& out,
                   std::unordered_map<Formula, bool, FormulaHash>& seen,
                   std::map<const Node*, std::vector<Formula>>& memo);

inline const std::vector<Formula>& cl_of(
    const Formula& f,
    std::map<const Node*, std::vector<Formula>>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  std::vector<Formula> out;
  std::unordered_map<Formula, bool, FormulaHash> seen;
  cl_set(f, out, seen, memo);
  return memo.emplace(f.raw(), std::move(out)).first->second;
}

inline void cl_set(const Formula& f, std::vector<Formula>& out,
                   std::unordered_map<Formula, bool, FormulaHash>& seen,
                   std::map<const Node*, std::vector<Formula>>& memo) {
  auto add = [&](const Formula& g) {
    if (seen.emplace(g, true).second) out.push_back(g);
  };
  std::vector<Formula> subs;
  aanf_subformulas(f, subs);
  for (const auto& s : subs) {
    add(s);
    add(canonical_negation(s));
  }
  // knowledge-prefix saturation: K_a applied to the closure of each
  // knowledge subformula's body
  for (const auto& s : subs) {
    if (s.kind() != Kind::Know) continue;
    for (const auto& inner : cl_of(s.child(), memo)) {
      Formula k = Formula::know(s.name(), inner);
      add(k);
      add(canonical_negation(k));
    }
  }
}

}  // namespace detail

inline Closure closure_of(const Formula& aanf, int cl_cap = 200) {
  auto frag = fragment_of(aanf);
  if (frag != Fragment::Aanf && frag != Fragment::Epistemic &&
      frag != Fragment::Boolean)
    throw std::invalid_argument("closure requires normal-form input");

  Closure c;
  c.base = detail::strip_double_negations(aanf);
  c.depth = aanf.quant_depth();
  {
    auto vs = vars_of(aanf);
    c.vars.assign(vs.begin(), vs.end());
    auto as = agents_of(aanf);
    c.agents.assign(as.begin(), as.end());
  }
  std::map<const detail::Node*, std::vector<Formula>> memo;
  c.formulas = detail::cl_of(c.base, memo);
  if (static_cast<int>(c.formulas.size()) > cl_cap)
    throw ResourceError("closure has " + std::to_string(c.formulas.size()) +
                        " formulas, cap is " + std::to_string(cl_cap));
  std::stable_sort(c.formulas.begin(), c.formulas.end(),
                   [](const Formula& a, const Formula& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return render(a) < render(b);
                   });
  for (std::size_t i = 0; i < c.formulas.size(); ++i)
    c.index.emplace(c.formulas[i], static_cast<int>(i));
  c.complement.resize(c.formulas.size());
  for (std::size_t i = 0; i < c.formulas.size(); ++i) {
    int j = c.find(canonical_negation(c.formulas[i]));
    if (j < 0)
      throw std::logic_error("closure not complement-closed");
    c.complement[i] = j;
    switch (c.formulas[i].kind()) {
      case Kind::Atom:
        c.atom_items.push_back(static_cast<int>(i));
        break;
      case Kind::Know:
        c.know_items.push_back(static_cast<int>(i));
        break;
      case Kind::Announce:
        c.box_items.push_back(static_cast<int>(i));
        break;
      default:
        break;
    }
  }
  return c;
}

/// Membership bitset over a closure's formula list, representing one
/// propositionally saturated candidate world.
using PhiSetBits = boost::dynamic_bitset<>;

namespace detail {

/// Truth of any closure formula under an assignment to the deciding
/// items (atoms, knowledge formulas, quantified announcements).
struct PartEvaluator {
  const Closure& c;
  const std::vector<bool>& decide;  // indexed by closure formula id

  bool eval(const Formula& f) const {
    switch (f.kind()) {
      case Kind::Top:
        return true;
      case Kind::Atom:
      case Kind::Know:
      case Kind::Announce: {
        int i = c.find(f);
        if (i < 0) throw std::logic_error("formula outside closure");
        return decide[i];
      }
      case Kind::Neg:
        return !eval(f.child());
      case Kind::And:
        return eval(f.left()) && eval(f.right());
      case Kind::Box:
        throw std::logic_error("bare quantifier in closure");
    }
    return false;
  }
};

}  // namespace detail

/// All candidate worlds: assignments to the deciding items, closed under
/// the propositional clauses, with knowledge veridicality (K_a psi in
/// sigma implies psi in sigma) enforced.
inline std::vector<PhiSetBits> enumerate_parts(const Closure& c,
                                               int sigma_cap = 4096) {
  std::vector<int> deciders;
  deciders.insert(deciders.end(), c.atom_items.begin(), c.atom_items.end());
  deciders.insert(deciders.end(), c.know_items.begin(), c.know_items.end());
  deciders.insert(deciders.end(), c.box_items.begin(), c.box_items.end());
  if (deciders.size() >= 31 ||
      (1 << deciders.size()) > sigma_cap)
    throw ResourceError("candidate worlds: 2^" +
                        std::to_string(deciders.size()) +
                        " assignments exceed cap " + std::to_string(sigma_cap));
  std::vector<PhiSetBits> out;
  const int n = static_cast<int>(c.formulas.size());
  for (std::uint32_t mask = 0; mask < (1u << deciders.size()); ++mask) {
    std::vector<bool> decide(n, false);
    for (std::size_t b = 0; b < deciders.size(); ++b)
      decide[deciders[b]] = (mask >> b) & 1;
    detail::PartEvaluator pe{c, decide};
    // veridicality inside the world
    bool ok = true;
    for (int k : c.know_items) {
      if (decide[k] && !pe.eval(c.formulas[k].child())) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    PhiSetBits bits(n);
    for (int i = 0; i < n; ++i)
      if (pe.eval(c.formulas[i])) bits.set(i);
    out.push_back(std::move(bits));
  }
  return out;
}

/// A candidate world together with its palette color (interpreted as a
/// bit pattern over the palette atoms).
struct MaximalPhiSet {
  PhiSetBits part;
  unsigned color = 0;
};

inline std::vector<MaximalPhiSet> enumerate_sigma(const Closure& c,
                                                  int palette = 3,
                                                  int sigma_cap = 4096) {
  auto parts = enumerate_parts(c, sigma_cap);
  std::vector<MaximalPhiSet> out;
  const unsigned patterns = 1u << palette;
  if (parts.size() * patterns > static_cast<std::size_t>(sigma_cap))
    throw ResourceError("maximal set count " +
                        std::to_string(parts.size() * patterns) +
                        " exceeds cap " + std::to_string(sigma_cap));
  for (const auto& p : parts)
    for (unsigned col = 0; col < patterns; ++col)
      out.push_back({p, col});
  return out;
}

}  // namespace bapal
