#include "deflog/engine.hpp"

namespace deflog {

SemiMonoReport check_semi_monotonicity(const DefaultTheory& theory, const std::set<std::string>& subset,
                                       const EngineConfig& cfg) {
  const DefaultTheory sub = theory.restricted_to(subset);
  const std::vector<Extension> full_exts = extensions(theory, cfg);
  const std::vector<Extension> sub_exts = extensions(sub, cfg);

  const Reasoner r(theory.atoms(), cfg.solver);
  std::vector<Reasoner::Base> full_bases;
  for (const Extension& e : full_exts) full_bases.push_back(r.prepare(e.base));

  SemiMonoReport report;
  for (const Extension& se : sub_exts) {
    bool covered = false;
    for (const auto& fb : full_bases) {
      if (fb.entails_all(se.base.items())) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    report.holds = false;
    SemiMonoWitness w;
    w.subtheory_extension = se.base;
    for (const Extension& e : full_exts) w.full_extensions.push_back(e.base);
    report.witness = std::move(w);
    break;
  }
  return report;
}

}  // namespace deflog
