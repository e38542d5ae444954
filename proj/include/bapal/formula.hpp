#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bapal {

/// Primitive constructors of the language. Everything else (|, ->, <->,
/// Khat, < >, E, F) is sugar and is expanded at construction time.
enum class Kind : std::uint8_t {
  Top,       // the truth constant T
  Atom,      // propositional variable
  Neg,       // ~phi
  And,       // phi & psi
  Know,      // K a phi
  Announce,  // [phi] psi
  Box,       // A phi
};

class Formula;

namespace detail {

struct Node {
  Kind kind;
  std::string name;  // atom name (Atom) or agent name (Know)
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  std::size_t hash = 0;
  int size = 1;         // number of nodes
  int modal_depth = 0;  // d: nesting of K
  int quant_depth = 0;  // D: nesting of A
};

using NodePtr = std::shared_ptr<const Node>;

}  // namespace detail

/// Immutable formula with structural equality. Cheap to copy (shared nodes).
class Formula {
 public:
  Formula() = default;

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  /// Unary child (Neg, Know, Box).
  Formula child() const { return Formula(node_->left); }

  int size() const { return node_->size; }
  int modal_depth() const { return node_->modal_depth; }
  int quant_depth() const { return node_->quant_depth; }
  std::size_t hash() const { return node_->hash; }
  bool valid() const { return node_ != nullptr; }

  const detail::Node* raw() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    return structurally_equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

  // Primitive constructors.
  static Formula top();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula land(Formula a, Formula b);
  static Formula know(std::string agent, Formula f);
  static Formula announce(Formula content, Formula body);
  static Formula box(Formula f);

  // Abbreviations, expanded immediately.
  static Formula bot() { return neg(top()); }
  static Formula lor(Formula a, Formula b) {
    return neg(land(neg(a), neg(b)));
  }
  static Formula imp(Formula a, Formula b) { return neg(land(a, neg(b))); }
  static Formula iff(Formula a, Formula b) {
    return land(imp(a, b), imp(b, a));
  }
  static Formula khat(std::string agent, Formula f) {
    return neg(know(std::move(agent), neg(f)));
  }
  static Formula dia_announce(Formula content, Formula body) {
    return neg(announce(std::move(content), neg(body)));
  }
  static Formula dia(Formula f) { return neg(box(neg(f))); }

 private:
  explicit Formula(detail::NodePtr node) : node_(std::move(node)) {}

  static bool structurally_equal(const detail::Node* a, const detail::Node* b);
  static Formula make(Kind k, std::string name, detail::NodePtr l,
                      detail::NodePtr r);

  detail::NodePtr node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

inline bool Formula::structurally_equal(const detail::Node* a,
                                        const detail::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->name != b->name)
    return false;
  return structurally_equal(a->left.get(), b->left.get()) &&
         structurally_equal(a->right.get(), b->right.get());
}

inline Formula Formula::make(Kind k, std::string name, detail::NodePtr l,
                             detail::NodePtr r) {
  auto n = std::make_shared<detail::Node>();
  n->kind = k;
  n->name = std::move(name);
  n->left = std::move(l);
  n->right = std::move(r);
  std::size_t h = static_cast<std::size_t>(k) * 0x9e3779b97f4a7c15ull;
  for (char c : n->name) h = h * 131 + static_cast<unsigned char>(c);
  if (n->left) h = h * 0x100000001b3ull ^ n->left->hash;
  if (n->right) h = h * 0x100000001b3ull ^ (n->right->hash + 0x5bd1e995);
  n->hash = h;
  n->size = 1 + (n->left ? n->left->size : 0) + (n->right ? n->right->size : 0);
  int dl = n->left ? n->left->modal_depth : 0;
  int dr = n->right ? n->right->modal_depth : 0;
  int Dl = n->left ? n->left->quant_depth : 0;
  int Dr = n->right ? n->right->quant_depth : 0;
  n->modal_depth = std::max(dl, dr) + (k == Kind::Know ? 1 : 0);
  n->quant_depth = std::max(Dl, Dr) + (k == Kind::Box ? 1 : 0);
  return Formula(std::move(n));
}

inline Formula Formula::top() { return make(Kind::Top, "", nullptr, nullptr); }
inline Formula Formula::atom(std::string name) {
  return make(Kind::Atom, std::move(name), nullptr, nullptr);
}
inline Formula Formula::neg(Formula f) {
  return make(Kind::Neg, "", f.node_, nullptr);
}
inline Formula Formula::land(Formula a, Formula b) {
  return make(Kind::And, "", a.node_, b.node_);
}
inline Formula Formula::know(std::string agent, Formula f) {
  return make(Kind::Know, std::move(agent), f.node_, nullptr);
}
inline Formula Formula::announce(Formula content, Formula body) {
  return make(Kind::Announce, "", content.node_, body.node_);
}
inline Formula Formula::box(Formula f) {
  return make(Kind::Box, "", f.node_, nullptr);
}

/// d(phi), D(phi), var(phi) per the standard recursions.
struct Measures {
  int modal_depth;
  int quant_depth;
  std::set<std::string> vars;
};

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Atom:
      out.insert(f.name());
      return;
    case Kind::Neg:
    case Kind::Know:
    case Kind::Box:
      collect_vars(f.child(), out);
      return;
    case Kind::And:
    case Kind::Announce:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
      return;
  }
}

inline Measures measures(const Formula& f) {
  Measures m{f.modal_depth(), f.quant_depth(), {}};
  collect_vars(f, m.vars);
  return m;
}

inline std::set<std::string> vars_of(const Formula& f) {
  std::set<std::string> v;
  collect_vars(f, v);
  return v;
}

inline std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    switch (g.kind()) {
      case Kind::Know:
        out.insert(g.name());
        stack.push_back(g.child());
        break;
      case Kind::Neg:
      case Kind::Box:
        stack.push_back(g.child());
        break;
      case Kind::And:
      case Kind::Announce:
        stack.push_back(g.left());
        stack.push_back(g.right());
        break;
      default:
        break;
    }
  }
  return out;
}

enum class Fragment { Boolean, Epistemic, Aanf, General };

namespace detail {

inline bool is_boolean(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return true;
    case Kind::Neg:
      return is_boolean(f.child());
    case Kind::And:
      return is_boolean(f.left()) && is_boolean(f.right());
    default:
      return false;
  }
}

inline bool is_epistemic(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return true;
    case Kind::Neg:
      return is_epistemic(f.child());
    case Kind::Know:
      return is_epistemic(f.child());
    case Kind::And:
      return is_epistemic(f.left()) && is_epistemic(f.right());
    default:
      return false;
  }
}

// AANF: phi ::= p | T | ~phi | phi & phi | K a phi | [phi] A phi.
// Every A sits directly under an announcement, and announcement bodies
// are exactly A-formulas.
inline bool is_aanf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Atom:
      return true;
    case Kind::Neg:
      return is_aanf(f.child());
    case Kind::Know:
      return is_aanf(f.child());
    case Kind::And:
      return is_aanf(f.left()) && is_aanf(f.right());
    case Kind::Announce:
      return f.right().kind() == Kind::Box && is_aanf(f.left()) &&
             is_aanf(f.right().child());
    case Kind::Box:
      return false;
  }
  return false;
}

}  // namespace detail

inline Fragment fragment_of(const Formula& f) {
  if (detail::is_boolean(f)) return Fragment::Boolean;
  if (detail::is_epistemic(f)) return Fragment::Epistemic;
  if (detail::is_aanf(f)) return Fragment::Aanf;
  return Fragment::General;
}

/// Replaces every occurrence of atom p by atom q.
inline Formula substitute_atom(const Formula& f, const std::string& p,
                               const std::string& q) {
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Atom:
      return f.name() == p ? Formula::atom(q) : f;
    case Kind::Neg:
      return Formula::neg(substitute_atom(f.child(), p, q));
    case Kind::And:
      return Formula::land(substitute_atom(f.left(), p, q),
                           substitute_atom(f.right(), p, q));
    case Kind::Know:
      return Formula::know(f.name(), substitute_atom(f.child(), p, q));
    case Kind::Announce:
      return Formula::announce(substitute_atom(f.left(), p, q),
                               substitute_atom(f.right(), p, q));
    case Kind::Box:
      return Formula::box(substitute_atom(f.child(), p, q));
  }
  return f;
}

/// True if f has the shape of a desugared implication ~(a & ~b).
inline bool match_imp(const Formula& f, Formula& antecedent,
                      Formula& consequent) {
  if (f.kind() != Kind::Neg) return false;
  Formula c = f.child();
  if (c.kind() != Kind::And) return false;
  if (c.right().kind() != Kind::Neg) return false;
  antecedent = c.left();
  consequent = c.right().child();
  return true;
}

}  // namespace bapal
