#include "deflog/solver.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "deflog/cnf.hpp"
#include "dpll.hpp"
#include "truth_table.hpp"

namespace deflog {

using detail::TruthTable;

struct Reasoner::Impl {
  std::vector<std::string> vars;
  std::unordered_map<std::string, int> var_index;  // 1-based
  std::optional<TruthTable> table;
  mutable std::unordered_map<Formula, TruthTable::Bits, FormulaHash> bits_cache;
  mutable std::unordered_map<Formula, ClauseSet, FormulaHash> cnf_cache;

  const TruthTable::Bits& bits(const Formula& f) const {
    auto it = bits_cache.find(f);
    if (it == bits_cache.end()) it = bits_cache.emplace(f, table->eval(f)).first;
    return it->second;
  }

  // Appends the clauses of f to `out`, numbering definitional variables from
  // `next_var`; returns the next free variable.
  int encode(const Formula& f, int next_var, std::vector<std::vector<int>>& out) const {
    auto it = cnf_cache.find(f);
    if (it == cnf_cache.end()) it = cnf_cache.emplace(f, to_cnf(f)).first;
    const ClauseSet& cs = it->second;
    for (const Clause& c : cs.clauses) {
      std::vector<int> lits;
      lits.reserve(c.size());
      for (const Literal& l : c) {
        int v;
        if (is_aux_name(l.atom)) {
          v = next_var + std::stoi(l.atom.substr(kAuxPrefix.size()));
        } else {
          const auto vi = var_index.find(l.atom);
          if (vi == var_index.end()) throw std::invalid_argument("atom '" + l.atom + "' outside the reasoning universe");
          v = vi->second;
        }
        lits.push_back(l.positive ? v : -v);
      }
      out.push_back(std::move(lits));
    }
    return next_var + static_cast<int>(cs.aux_count);
  }
};

struct Reasoner::Base::State {
  const Reasoner::Impl* owner = nullptr;  // a Base must not outlive its Reasoner
  // Truth-table mode.
  TruthTable::Bits models;
  // DPLL mode.
  std::vector<std::vector<int>> clauses;
  int next_var = 1;

  bool solve_with(const Formula* extra) const {
    std::vector<std::vector<int>> extra_clauses;
    int top = next_var;
    if (extra) top = owner->encode(*extra, next_var, extra_clauses);
    detail::DpllSolver s(top - 1);
    for (const auto& c : clauses) s.add_clause(c);
    for (const auto& c : extra_clauses) s.add_clause(c);
    return s.solve();
  }
};

Reasoner::Reasoner(const AtomSet& universe, const SolverConfig& cfg) : impl_(std::make_unique<Impl>()) {
  if (universe.size() > cfg.max_atoms) {
    throw LimitError("atom count " + std::to_string(universe.size()) + " exceeds limit " + std::to_string(cfg.max_atoms));
  }
  for (const Atom& a : universe) {
    impl_->vars.push_back(a.name());
    impl_->var_index.emplace(a.name(), static_cast<int>(impl_->vars.size()));
  }
  const std::size_t tt_max = std::min(cfg.truth_table_max_atoms, kMaxTruthTableAtoms);
  if (cfg.strategy == Strategy::kAuto && universe.size() <= tt_max) impl_->table.emplace(impl_->vars);
}

Reasoner::~Reasoner() = default;
Reasoner::Reasoner(Reasoner&&) noexcept = default;
Reasoner& Reasoner::operator=(Reasoner&&) noexcept = default;

bool Reasoner::uses_truth_table() const { return impl_->table.has_value(); }
const std::vector<std::string>& Reasoner::universe() const { return impl_->vars; }

Reasoner::Base Reasoner::prepare(std::span<const Formula> base) const {
  auto st = std::make_shared<Base::State>();
  st->owner = impl_.get();
  if (impl_->table) {
    const auto& k = impl_->table->kernels();
    st->models = impl_->table->all_true();
    for (const Formula& f : base) k.and_words(st->models, st->models, impl_->bits(f));
  } else {
    int next = static_cast<int>(impl_->vars.size()) + 1;
    for (const Formula& f : base) next = impl_->encode(f, next, st->clauses);
    st->next_var = next;
  }
  return Base(std::move(st));
}

bool Reasoner::Base::consistent() const {
  const State& s = *state_;
  if (s.owner->table) return s.owner->table->kernels().intersects(s.models, s.models);
  return s.solve_with(nullptr);
}

bool Reasoner::Base::consistent_with(const Formula& f) const {
  const State& s = *state_;
  if (s.owner->table) return s.owner->table->kernels().intersects(s.models, s.owner->bits(f));
  return s.solve_with(&f);
}

bool Reasoner::Base::entails(const Formula& f) const {
  const State& s = *state_;
  if (s.owner->table) return s.owner->table->kernels().subset_of(s.models, s.owner->bits(f));
  const Formula neg = Formula::Not(f);
  return !s.solve_with(&neg);
}

bool Reasoner::Base::entails_all(std::span<const Formula> fs) const {
  return std::all_of(fs.begin(), fs.end(), [this](const Formula& f) { return entails(f); });
}

bool is_satisfiable(const FormulaSet& base, const SolverConfig& cfg) {
  return Reasoner(atoms_of(base), cfg).prepare(base).consistent();
}

bool entails(const FormulaSet& base, const Formula& query, const SolverConfig& cfg) {
  AtomSet universe = atoms_of(base);
  universe.merge(atoms_of(query));
  return Reasoner(universe, cfg).prepare(base).entails(query);
}

bool bases_equal(const FormulaSet& a, const FormulaSet& b, const SolverConfig& cfg) {
  AtomSet universe = atoms_of(a);
  universe.merge(atoms_of(b));
  const Reasoner r(universe, cfg);
  return r.prepare(a).entails_all(b.items()) && r.prepare(b).entails_all(a.items());
}

}  // namespace deflog
