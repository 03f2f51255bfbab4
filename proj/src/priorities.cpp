#include "deflog/engine.hpp"

namespace deflog {

DefaultTheory compile_priorities(const DefaultTheory& theory, const EngineConfig& cfg) {
  check_priorities_acyclic(theory.priorities());
  if (theory.priorities().empty()) return theory;

  const Reasoner r(theory.atoms(), cfg.solver);
  const Reasoner::Base hard = r.prepare(theory.hard());
  std::vector<Default> out = theory.defaults();
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].name == name) return i;
    throw TheoryError("unknown default '" + name + "'");
  };

  for (const Priority& p : theory.priorities()) {
    const Default& hi = *theory.find(p.higher);
    Default& lo = out[index_of(p.lower)];
    const bool conflict = !hard.consistent_with(Formula::And(hi.consequent, lo.consequent));
    if (conflict) {
      lo.justification = Formula::And(lo.justification, Formula::Not(hi.prerequisite));
      lo.blocked_by_prerequisite.push_back(hi.name);
    } else {
      lo.justification = Formula::And(lo.justification, Formula::Not(hi.consequent));
    }
  }
  return DefaultTheory(theory.hard(), std::move(out));
}

}  // namespace deflog
