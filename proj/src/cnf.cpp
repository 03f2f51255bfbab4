#include "deflog/cnf.hpp"

#include <algorithm>

namespace deflog {

bool is_aux_name(std::string_view name) { return name.starts_with(kAuxPrefix); }

namespace {

Literal negate(Literal l) {
  l.positive = !l.positive;
  return l;
}

// Sorts and deduplicates; returns false for a tautology.
bool normalize(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i].atom == c[i - 1].atom) return false;
  return true;
}

std::size_t sat_add(std::size_t a, std::size_t b, std::size_t cap) { return std::min(cap, a + b); }
std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  return a > cap / b ? cap : std::min(cap, a * b);
}

// Upper bound on the number of clauses the structural expansion yields,
// saturating at `cap`.
std::size_t structural_size(const Formula& f, bool pos, std::size_t cap) {
  switch (f.connective()) {
    case Connective::kTrue:
    case Connective::kFalse:
    case Connective::kAtom: return 1;
    case Connective::kNot: return structural_size(f.lhs(), !pos, cap);
    default: break;
  }
  const Formula a = f.lhs();
  const Formula b = f.rhs();
  auto c = [cap](const Formula& g, bool p) { return structural_size(g, p, cap); };
  switch (f.connective()) {
    case Connective::kAnd: return pos ? sat_add(c(a, true), c(b, true), cap) : sat_mul(c(a, false), c(b, false), cap);
    case Connective::kOr: return pos ? sat_mul(c(a, true), c(b, true), cap) : sat_add(c(a, false), c(b, false), cap);
    case Connective::kImplies:
      return pos ? sat_mul(c(a, false), c(b, true), cap) : sat_add(c(a, true), c(b, false), cap);
    case Connective::kIff:
      if (pos) return sat_add(sat_mul(c(a, false), c(b, true), cap), sat_mul(c(a, true), c(b, false), cap), cap);
      return sat_mul(sat_add(c(a, true), c(b, false), cap), sat_add(c(a, false), c(b, true), cap), cap);
    default: return cap;
  }
}

using Clauses = std::vector<Clause>;

Clauses conj(Clauses a, const Clauses& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Clauses disj(const Clauses& a, const Clauses& b) {
  Clauses out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      Clause c = x;
      c.insert(c.end(), y.begin(), y.end());
      if (normalize(c)) out.push_back(std::move(c));
    }
  }
  return out;
}

// Clauses equivalent to f (pos) or to !f (!pos).
Clauses expand(const Formula& f, bool pos) {
  switch (f.connective()) {
    case Connective::kTrue: return pos ? Clauses{} : Clauses{Clause{}};
    case Connective::kFalse: return pos ? Clauses{Clause{}} : Clauses{};
    case Connective::kAtom: return {Clause{Literal{f.atom_name(), pos}}};
    case Connective::kNot: return expand(f.lhs(), !pos);
    default: break;
  }
  const Formula a = f.lhs();
  const Formula b = f.rhs();
  switch (f.connective()) {
    case Connective::kAnd: return pos ? conj(expand(a, true), expand(b, true)) : disj(expand(a, false), expand(b, false));
    case Connective::kOr: return pos ? disj(expand(a, true), expand(b, true)) : conj(expand(a, false), expand(b, false));
    case Connective::kImplies:
      return pos ? disj(expand(a, false), expand(b, true)) : conj(expand(a, true), expand(b, false));
    case Connective::kIff:
      if (pos) return conj(disj(expand(a, false), expand(b, true)), disj(expand(a, true), expand(b, false)));
      return disj(conj(expand(a, true), expand(b, false)), conj(expand(a, false), expand(b, true)));
    default: return {};
  }
}

class Definitional {
 public:
  explicit Definitional(std::size_t offset) : next_(offset), first_(offset) {}

  Literal encode(const Formula& f) {
    switch (f.connective()) {
      case Connective::kAtom: return Literal{f.atom_name(), true};
      case Connective::kNot: return negate(encode(f.lhs()));
      case Connective::kTrue:
      case Connective::kFalse: {
        Literal x = fresh();
        emit({f.connective() == Connective::kTrue ? x : negate(x)});
        return x;
      }
      default: break;
    }
    const Literal a = encode(f.lhs());
    const Literal b = encode(f.rhs());
    const Literal x = fresh();
    const Literal na = negate(a), nb = negate(b), nx = negate(x);
    switch (f.connective()) {
      case Connective::kAnd:
        emit({nx, a});
        emit({nx, b});
        emit({na, nb, x});
        break;
      case Connective::kOr:
        emit({nx, a, b});
        emit({na, x});
        emit({nb, x});
        break;
      case Connective::kImplies:
        emit({nx, na, b});
        emit({a, x});
        emit({nb, x});
        break;
      case Connective::kIff:
        emit({nx, na, b});
        emit({nx, a, nb});
        emit({x, a, b});
        emit({x, na, nb});
        break;
      default: break;
    }
    return x;
  }

  void emit(Clause c) {
    if (normalize(c)) clauses_.push_back(std::move(c));
  }

  Clauses take() { return std::move(clauses_); }
  std::size_t used() const { return next_ - first_; }

 private:
  Literal fresh() { return Literal{std::string(kAuxPrefix) + std::to_string(next_++), true}; }

  std::size_t next_;
  std::size_t first_;
  Clauses clauses_;
};

}  // namespace

ClauseSet to_cnf(const Formula& f, const CnfOptions& opts) {
  ClauseSet out;
  Clauses raw;
  const std::size_t cap = opts.max_structural_clauses + 1;
  if (!opts.force_definitional && structural_size(f, true, cap) <= opts.max_structural_clauses) {
    raw = expand(f, true);
  } else {
    Definitional enc(opts.aux_offset);
    const Literal root = enc.encode(f);
    enc.emit({root});
    raw = enc.take();
    out.aux_count = enc.used();
  }
  for (auto& c : raw) {
    if (!normalize(c)) continue;
    if (std::find(out.clauses.begin(), out.clauses.end(), c) == out.clauses.end()) out.clauses.push_back(std::move(c));
  }
  return out;
}

std::string to_string(const ClauseSet& cs) {
  std::string out = "{";
  for (std::size_t i = 0; i < cs.clauses.size(); ++i) {
    if (i) out += ", ";
    out += '{';
    for (std::size_t j = 0; j < cs.clauses[i].size(); ++j) {
      if (j) out += ", ";
      if (!cs.clauses[i][j].positive) out += '!';
      out += cs.clauses[i][j].atom;
    }
    out += '}';
  }
  out += '}';
  return out;
}

}  // namespace deflog
