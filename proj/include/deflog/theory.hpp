#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deflog/formula.hpp"

namespace deflog {

class TheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CyclicPriorityError : public TheoryError {
 public:
  using TheoryError::TheoryError;
};

/// Rule `prerequisite : justification / consequent`.
struct Default {
  std::string name;
  Formula prerequisite;
  Formula justification;
  Formula consequent;
  // Set by compile_priorities: higher-priority defaults whose prerequisite was
  // negated into this justification. Such a default may be blocked even when
  // the higher default is itself blocked. Not part of equality.
  std::vector<std::string> blocked_by_prerequisite;

  friend bool operator==(const Default& a, const Default& b) {
    return a.name == b.name && a.prerequisite == b.prerequisite && a.justification == b.justification &&
           a.consequent == b.consequent;
  }
};

enum class DefaultClass { kNormal, kSemiNormal, kGeneral };

/// Normal when the justification is the consequent; semi-normal when every
/// conjunct of the consequent is also a conjunct of the justification;
/// general otherwise.
DefaultClass classify(const Default& d);
std::string_view to_string(DefaultClass c);

struct Priority {
  std::string higher;
  std::string lower;

  friend bool operator==(const Priority&, const Priority&) = default;
};

/// Throws CyclicPriorityError when the relation has a cycle (including a
/// default preferred over itself).
void check_priorities_acyclic(const std::vector<Priority>& priorities);

/// Hard facts W, defaults D (declaration order kept) and a priority relation
/// over default names.
class DefaultTheory {
 public:
  DefaultTheory() = default;
  /// Throws TheoryError on duplicate default names, priorities naming
  /// undeclared defaults, and CyclicPriorityError on a priority cycle.
  DefaultTheory(FormulaSet hard, std::vector<Default> defaults, std::vector<Priority> priorities = {});

  const FormulaSet& hard() const { return hard_; }
  const std::vector<Default>& defaults() const { return defaults_; }
  const std::vector<Priority>& priorities() const { return priorities_; }

  const Default* find(std::string_view name) const;
  std::vector<std::string> default_names() const;

  /// Atoms of the hard facts and of every default.
  AtomSet atoms() const;

  /// Same hard facts, only the named defaults, priorities among them.
  /// Throws TheoryError for names that are not declared.
  DefaultTheory restricted_to(const std::set<std::string>& names) const;

 private:
  FormulaSet hard_;
  std::vector<Default> defaults_;
  std::vector<Priority> priorities_;
};

}  // namespace deflog
