#include "deflog/formula.hpp"

#include <functional>

namespace deflog {

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return name != "true" && name != "false";
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!is_valid_atom_name(name_)) throw MalformedAtom("malformed atom '" + name_ + "'");
}

int precedence(Connective c) {
  switch (c) {
    case Connective::kIff: return 1;
    case Connective::kImplies: return 2;
    case Connective::kOr: return 3;
    case Connective::kAnd: return 4;
    case Connective::kNot: return 5;
    default: return 6;
  }
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Connective op, std::string name, NodePtr lhs, NodePtr rhs) {
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  std::size_t size = 1;
  if (op == Connective::kAtom) h = mix(h, std::hash<std::string>{}(name));
  if (lhs) {
    h = mix(h, lhs->hash);
    size += lhs->size;
  }
  if (rhs) {
    h = mix(h, rhs->hash);
    size += rhs->size;
  }
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(lhs), std::move(rhs), h, size}));
}

Formula::Formula() : Formula(True()) {}

Formula Formula::True() {
  static const Formula t = make(Connective::kTrue, {}, nullptr, nullptr);
  return t;
}

Formula Formula::False() {
  static const Formula f = make(Connective::kFalse, {}, nullptr, nullptr);
  return f;
}

Formula Formula::Var(const Atom& a) { return make(Connective::kAtom, a.name(), nullptr, nullptr); }
Formula Formula::Not(Formula f) { return make(Connective::kNot, {}, std::move(f.node_), nullptr); }
Formula Formula::And(Formula l, Formula r) { return make(Connective::kAnd, {}, std::move(l.node_), std::move(r.node_)); }
Formula Formula::Or(Formula l, Formula r) { return make(Connective::kOr, {}, std::move(l.node_), std::move(r.node_)); }
Formula Formula::Implies(Formula l, Formula r) {
  return make(Connective::kImplies, {}, std::move(l.node_), std::move(r.node_));
}
Formula Formula::Iff(Formula l, Formula r) { return make(Connective::kIff, {}, std::move(l.node_), std::move(r.node_)); }

Formula Formula::Conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return True();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

bool Formula::equal_nodes(const Node* a, const Node* b) {
  // Iterative on the left spine; conjunction chains can be long.
  while (true) {
    if (a == b) return true;
    if (a->hash != b->hash || a->op != b->op || a->size != b->size) return false;
    if (a->op == Connective::kAtom) return a->name == b->name;
    if (a->rhs && !equal_nodes(a->rhs.get(), b->rhs.get())) return false;
    if (!a->lhs) return true;
    a = a->lhs.get();
    b = b->lhs.get();
  }
}

bool operator==(const Formula& a, const Formula& b) { return Formula::equal_nodes(a.node_.get(), b.node_.get()); }

namespace {

const char* symbol(Connective c) {
  switch (c) {
    case Connective::kAnd: return " & ";
    case Connective::kOr: return " | ";
    case Connective::kImplies: return " -> ";
    case Connective::kIff: return " <-> ";
    default: return "";
  }
}

void print(const Formula& f, std::string& out) {
  const Connective op = f.connective();
  switch (op) {
    case Connective::kTrue: out += "true"; return;
    case Connective::kFalse: out += "false"; return;
    case Connective::kAtom: out += f.atom_name(); return;
    case Connective::kNot: {
      out += '!';
      const Formula c = f.lhs();
      if (c.is_binary()) {
        out += '(';
        print(c, out);
        out += ')';
      } else {
        print(c, out);
      }
      return;
    }
    default: break;
  }
  const int p = precedence(op);
  const bool right_assoc = op == Connective::kImplies;
  const Formula l = f.lhs();
  const Formula r = f.rhs();
  const int pl = precedence(l.connective());
  const int pr = precedence(r.connective());
  const bool paren_l = right_assoc ? pl <= p : pl < p;
  const bool paren_r = right_assoc ? pr < p : pr <= p;
  if (paren_l) out += '(';
  print(l, out);
  if (paren_l) out += ')';
  out += symbol(op);
  if (paren_r) out += '(';
  print(r, out);
  if (paren_r) out += ')';
}

void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.connective()) {
    case Connective::kTrue:
    case Connective::kFalse: return;
    case Connective::kAtom: out.insert(Atom(f.atom_name())); return;
    case Connective::kNot: collect_atoms(f.lhs(), out); return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.connective() == Connective::kAnd) {
    collect_conjuncts(f.lhs(), out);
    collect_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

std::vector<Formula> Formula::conjuncts() const {
  std::vector<Formula> out;
  collect_conjuncts(*this, out);
  return out;
}

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

FormulaSet::FormulaSet(std::initializer_list<Formula> fs) {
  for (const auto& f : fs) insert(f);
}

FormulaSet::FormulaSet(const std::vector<Formula>& fs) {
  for (const auto& f : fs) insert(f);
}

bool FormulaSet::insert(const Formula& f) {
  if (contains(f)) return false;
  items_.push_back(f);
  return true;
}

bool FormulaSet::contains(const Formula& f) const {
  for (const auto& g : items_)
    if (g == f) return true;
  return false;
}

AtomSet atoms_of(const FormulaSet& base) {
  AtomSet out;
  for (const auto& f : base) out.merge(atoms_of(f));
  return out;
}

}  // namespace deflog
