#include "deflog/engine.hpp"

#include <algorithm>
#include <unordered_set>

#include "engine_internal.hpp"

namespace deflog {

namespace detail {

FormulaSet gamma_with(const Reasoner& r, const DefaultTheory& theory, const FormulaSet& s) {
  const auto& ds = theory.defaults();
  const Reasoner::Base fixed = r.prepare(s);
  std::vector<bool> admissible(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) admissible[i] = fixed.consistent_with(ds[i].justification);

  FormulaSet base = theory.hard();
  std::vector<bool> fired(ds.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    const Reasoner::Base current = r.prepare(base);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (fired[i] || !admissible[i] || !current.entails(ds[i].prerequisite)) continue;
      fired[i] = true;
      base.insert(ds[i].consequent);
      changed = true;
    }
  }
  return base;
}

bool same_closure(const Reasoner& r, const FormulaSet& a, const FormulaSet& b) {
  return r.prepare(a).entails_all(b.items()) && r.prepare(b).entails_all(a.items());
}

bool verify_with(const Reasoner& r, const DefaultTheory& theory, const FormulaSet& candidate) {
  return same_closure(r, gamma_with(r, theory, candidate), candidate);
}

FormulaSet base_of(const DefaultTheory& theory, const std::vector<std::size_t>& order) {
  FormulaSet base = theory.hard();
  for (std::size_t i : order) base.insert(theory.defaults()[i].consequent);
  return base;
}

Extension make_extension(const DefaultTheory& theory, const std::vector<std::size_t>& order) {
  Extension e;
  e.base = base_of(theory, order);
  for (std::size_t i : order) e.applied_order.push_back(theory.defaults()[i].name);
  e.generating = e.applied_order;
  std::sort(e.generating.begin(), e.generating.end());
  return e;
}

Extension trivial_extension(const DefaultTheory& theory) {
  Extension e;
  e.base = theory.hard();
  e.trivial = true;
  return e;
}

void finalize(const Reasoner& r, std::vector<Extension>& exts) {
  std::stable_sort(exts.begin(), exts.end(),
                   [](const Extension& a, const Extension& b) { return a.generating < b.generating; });
  std::vector<Extension> kept;
  for (auto& e : exts) {
    const bool dup = std::any_of(kept.begin(), kept.end(),
                                 [&](const Extension& k) { return same_closure(r, k.base, e.base); });
    if (!dup) kept.push_back(std::move(e));
  }
  exts = std::move(kept);
}

}  // namespace detail

namespace {

AtomSet universe_of(const DefaultTheory& theory, const FormulaSet& extra) {
  AtomSet u = theory.atoms();
  u.merge(atoms_of(extra));
  return u;
}

void check_default_limit(const DefaultTheory& theory, std::size_t limit, const char* what) {
  if (theory.defaults().size() > limit || theory.defaults().size() > 64) {
    throw LimitError(std::string(what) + ": " + std::to_string(theory.defaults().size()) +
                     " defaults exceed limit " + std::to_string(std::min<std::size_t>(limit, 64)));
  }
}

// Depth-first search over application orders. The subtree below a node only
// depends on the set of defaults applied so far, so nodes are memoized on
// that set.
class ProcessSearch {
 public:
  ProcessSearch(const Reasoner& r, const DefaultTheory& t) : r_(r), t_(t) {}

  std::vector<std::vector<std::size_t>> run() {
    visit(0);
    return std::move(closed_);
  }

 private:
  void visit(std::uint64_t applied) {
    if (!seen_.insert(applied).second) return;
    const auto& ds = t_.defaults();
    const Reasoner::Base base = r_.prepare(detail::base_of(t_, order_));
    // A process whose earlier justification has become inconsistent has
    // failed; extending it cannot repair that.
    for (std::size_t i : order_)
      if (!base.consistent_with(ds[i].justification)) return;

    std::vector<std::size_t> applicable;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (applied & (std::uint64_t{1} << i)) continue;
      if (base.entails(ds[i].prerequisite) && base.consistent_with(ds[i].justification)) applicable.push_back(i);
    }
    if (applicable.empty()) {
      closed_.push_back(order_);
      return;
    }
    for (std::size_t i : applicable) {
      order_.push_back(i);
      visit(applied | (std::uint64_t{1} << i));
      order_.pop_back();
    }
  }

  const Reasoner& r_;
  const DefaultTheory& t_;
  std::vector<std::size_t> order_;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<std::vector<std::size_t>> closed_;
};

}  // namespace

FormulaSet gamma(const DefaultTheory& theory, const FormulaSet& s, const EngineConfig& cfg) {
  const Reasoner r(universe_of(theory, s), cfg.solver);
  return detail::gamma_with(r, theory, s);
}

bool verify_extension(const DefaultTheory& theory, const FormulaSet& candidate, const EngineConfig& cfg) {
  const Reasoner r(universe_of(theory, candidate), cfg.solver);
  return detail::verify_with(r, theory, candidate);
}

std::vector<Extension> extensions(const DefaultTheory& theory, const EngineConfig& cfg) {
  check_default_limit(theory, cfg.max_defaults, "enumeration limit");
  const Reasoner r(theory.atoms(), cfg.solver);
  if (!r.prepare(theory.hard()).consistent()) return {detail::trivial_extension(theory)};

  std::vector<Extension> out;
  for (const auto& order : ProcessSearch(r, theory).run()) {
    const FormulaSet base = detail::base_of(theory, order);
    if (detail::verify_with(r, theory, base)) out.push_back(detail::make_extension(theory, order));
  }
  detail::finalize(r, out);
  return out;
}

std::vector<Extension> extensions_bruteforce(const DefaultTheory& theory, const EngineConfig& cfg) {
  check_default_limit(theory, cfg.bruteforce_max_defaults, "brute-force size limit");
  const Reasoner r(theory.atoms(), cfg.solver);
  if (!r.prepare(theory.hard()).consistent()) return {detail::trivial_extension(theory)};

  const auto& ds = theory.defaults();
  const std::size_t n = ds.size();
  std::vector<Extension> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    // Groundedness: entailment is monotone, so applying members greedily
    // finds an order whenever one exists.
    std::vector<std::size_t> order;
    std::uint64_t pending = mask;
    bool progress = true;
    while (pending && progress) {
      progress = false;
      const Reasoner::Base cur = r.prepare(detail::base_of(theory, order));
      for (std::size_t i = 0; i < n; ++i) {
        if (!(pending & (std::uint64_t{1} << i)) || !cur.entails(ds[i].prerequisite)) continue;
        order.push_back(i);
        pending &= ~(std::uint64_t{1} << i);
        progress = true;
      }
    }
    if (pending) continue;

    const FormulaSet base = detail::base_of(theory, order);
    if (!detail::verify_with(r, theory, base)) continue;
    // Only the subset equal to the generating defaults of its own closure is
    // reported, so each extension appears with a canonical witness.
    const Reasoner::Base closure = r.prepare(base);
    bool generating = true;
    for (std::size_t i = 0; i < n && generating; ++i) {
      const bool gd = closure.entails(ds[i].prerequisite) && closure.consistent_with(ds[i].justification);
      generating = gd == static_cast<bool>(mask & (std::uint64_t{1} << i));
    }
    if (generating) out.push_back(detail::make_extension(theory, order));
  }
  detail::finalize(r, out);
  return out;
}

bool is_grounded(const DefaultTheory& theory, const Extension& ext, const EngineConfig& cfg) {
  const Reasoner r(theory.atoms(), cfg.solver);
  FormulaSet base = theory.hard();
  std::vector<std::string> seen;
  for (const std::string& name : ext.applied_order) {
    const Default* d = theory.find(name);
    if (!d || !r.prepare(base).entails(d->prerequisite)) return false;
    base.insert(d->consequent);
    seen.push_back(name);
  }
  std::sort(seen.begin(), seen.end());
  return seen == ext.generating;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "yes";
    case Verdict::kNo: return "no";
    case Verdict::kNoExtension: return "no-extension";
  }
  return "no";
}

Verdict query(const std::vector<Extension>& exts, const Formula& f, QueryMode mode, const SolverConfig& cfg) {
  if (exts.empty()) return Verdict::kNoExtension;
  AtomSet u = atoms_of(f);
  for (const Extension& e : exts) u.merge(atoms_of(e.base));
  const Reasoner r(u, cfg);
  for (const Extension& e : exts) {
    const bool holds = r.prepare(e.base).entails(f);
    if (mode == QueryMode::kSkeptical && !holds) return Verdict::kNo;
    if (mode == QueryMode::kCredulous && holds) return Verdict::kYes;
  }
  return mode == QueryMode::kSkeptical ? Verdict::kYes : Verdict::kNo;
}

Verdict query(const DefaultTheory& theory, const Formula& f, QueryMode mode, const EngineConfig& cfg) {
  return query(extensions(theory, cfg), f, mode, cfg.solver);
}

}  // namespace deflog
