#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deflog {

/// Thrown when an identifier does not satisfy the atom lexical rule
/// `[a-z][a-zA-Z0-9_]*`.
class MalformedAtom : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_valid_atom_name(std::string_view name);

// Propositional variable. Equality is name equality.
class Atom {
 public:
  explicit Atom(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

using AtomSet = std::set<Atom>;

enum class Connective : std::uint8_t { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies, kIff };

/// Binding strength in the surface syntax; larger binds tighter.
int precedence(Connective c);

/// Immutable propositional formula. Copies share structure; nodes are never
/// mutated after construction so values may be read concurrently.
class Formula {
 public:
  Formula();  // `true`

  static Formula True();
  static Formula False();
  static Formula Var(const Atom& a);
  static Formula Var(std::string_view name) { return Var(Atom(std::string(name))); }
  static Formula Not(Formula f);
  static Formula And(Formula lhs, Formula rhs);
  static Formula Or(Formula lhs, Formula rhs);
  static Formula Implies(Formula lhs, Formula rhs);
  static Formula Iff(Formula lhs, Formula rhs);

  /// Left-nested conjunction; `true` when empty.
  static Formula Conjunction(const std::vector<Formula>& fs);

  Connective connective() const { return node_->op; }
  bool is_atom() const { return node_->op == Connective::kAtom; }
  bool is_binary() const { return node_->op >= Connective::kAnd; }
  const std::string& atom_name() const { return node_->name; }
  // Only valid for kNot (lhs) and binary connectives.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  /// Canonical surface syntax with the minimal parentheses.
  std::string to_string() const;

  /// Flattened operands of nested conjunctions, left to right.
  std::vector<Formula> conjuncts() const;

 private:
  struct Node {
    Connective op;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash;
    std::size_t size;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr n) : node_(std::move(n)) {}
  static Formula make(Connective op, std::string name, NodePtr lhs, NodePtr rhs);

  static bool equal_nodes(const Node* a, const Node* b);

  NodePtr node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

AtomSet atoms_of(const Formula& f);

/// Insertion-ordered collection of formulas with structural duplicates
/// removed. Stands for its deductive closure.
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> fs);
  explicit FormulaSet(const std::vector<Formula>& fs);

  /// Returns false when a structurally equal formula is already present.
  bool insert(const Formula& f);
  bool contains(const Formula& f) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Formula>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const Formula& operator[](std::size_t i) const { return items_[i]; }

  /// Structural, order-sensitive comparison.
  friend bool operator==(const FormulaSet& a, const FormulaSet& b) { return a.items_ == b.items_; }

 private:
  std::vector<Formula> items_;
};

AtomSet atoms_of(const FormulaSet& base);

}  // namespace deflog
