#include "deflog/theory.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace deflog {

DefaultClass classify(const Default& d) {
  if (d.justification == d.consequent) return DefaultClass::kNormal;
  const auto just = d.justification.conjuncts();
  for (const Formula& c : d.consequent.conjuncts()) {
    if (std::find(just.begin(), just.end(), c) == just.end()) return DefaultClass::kGeneral;
  }
  return DefaultClass::kSemiNormal;
}

std::string_view to_string(DefaultClass c) {
  switch (c) {
    case DefaultClass::kNormal: return "normal";
    case DefaultClass::kSemiNormal: return "semi-normal";
    case DefaultClass::kGeneral: return "general";
  }
  return "general";
}

DefaultTheory::DefaultTheory(FormulaSet hard, std::vector<Default> defaults, std::vector<Priority> priorities)
    : hard_(std::move(hard)), defaults_(std::move(defaults)), priorities_(std::move(priorities)) {
  std::set<std::string> seen;
  for (const Default& d : defaults_) {
    if (!seen.insert(d.name).second) throw TheoryError("duplicate default name '" + d.name + "'");
  }
  for (const Priority& p : priorities_) {
    for (const std::string* n : {&p.higher, &p.lower}) {
      if (!seen.contains(*n)) throw TheoryError("priority names unknown default '" + *n + "'");
    }
  }
  check_priorities_acyclic(priorities_);
}

void check_priorities_acyclic(const std::vector<Priority>& priorities) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const Priority& p : priorities) succ[p.higher].push_back(p.lower);
  // 0 unvisited, 1 on stack, 2 done
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    state[n] = 1;
    for (const std::string& m : succ[n]) {
      if (state[m] == 1) throw CyclicPriorityError("priority cycle through '" + m + "'");
      if (state[m] == 0) visit(m);
    }
    state[n] = 2;
  };
  for (const Priority& p : priorities)
    if (state[p.higher] == 0) visit(p.higher);
}

const Default* DefaultTheory::find(std::string_view name) const {
  for (const Default& d : defaults_)
    if (d.name == name) return &d;
  return nullptr;
}

std::vector<std::string> DefaultTheory::default_names() const {
  std::vector<std::string> out;
  out.reserve(defaults_.size());
  for (const Default& d : defaults_) out.push_back(d.name);
  return out;
}

AtomSet DefaultTheory::atoms() const {
  AtomSet out = atoms_of(hard_);
  for (const Default& d : defaults_) {
    out.merge(atoms_of(d.prerequisite));
    out.merge(atoms_of(d.justification));
    out.merge(atoms_of(d.consequent));
  }
  return out;
}

DefaultTheory DefaultTheory::restricted_to(const std::set<std::string>& names) const {
  for (const std::string& n : names) {
    if (!find(n)) throw TheoryError("unknown default '" + n + "'");
  }
  std::vector<Default> kept;
  for (const Default& d : defaults_)
    if (names.contains(d.name)) kept.push_back(d);
  std::vector<Priority> prios;
  for (const Priority& p : priorities_)
    if (names.contains(p.higher) && names.contains(p.lower)) prios.push_back(p);
  return DefaultTheory(hard_, std::move(kept), std::move(prios));
}

}  // namespace deflog
