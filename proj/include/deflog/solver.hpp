#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "deflog/formula.hpp"

namespace deflog {

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { kAuto, kDpll };

struct SolverConfig {
  std::size_t max_atoms = 64;
  Strategy strategy = Strategy::kAuto;
  // kAuto decides with a bit-parallel truth table up to this many atoms and
  // with DPLL above it. Clamped to kMaxTruthTableAtoms.
  std::size_t truth_table_max_atoms = 15;
};

inline constexpr std::size_t kMaxTruthTableAtoms = 15;

/// Decision procedure bound to a fixed atom universe. Formula evaluations are
/// cached, so one instance should serve many queries over the same
/// vocabulary. Not safe for concurrent use; create one per thread.
class Reasoner {
 public:
  /// Throws LimitError when the universe exceeds cfg.max_atoms.
  explicit Reasoner(const AtomSet& universe, const SolverConfig& cfg = {});
  ~Reasoner();
  Reasoner(Reasoner&&) noexcept;
  Reasoner& operator=(Reasoner&&) noexcept;

  class Base;

  /// Pre-processes a base for repeated queries. Atoms outside the universe
  /// raise std::invalid_argument.
  Base prepare(std::span<const Formula> base) const;
  Base prepare(const FormulaSet& base) const;

  bool uses_truth_table() const;
  const std::vector<std::string>& universe() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class Reasoner::Base {
 public:
  bool consistent() const;
  bool consistent_with(const Formula& f) const;
  bool entails(const Formula& f) const;
  bool entails_all(std::span<const Formula> fs) const;

 private:
  friend class Reasoner;
  struct State;
  explicit Base(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

inline Reasoner::Base Reasoner::prepare(const FormulaSet& base) const {
  return prepare(std::span<const Formula>(base.items()));
}

bool is_satisfiable(const FormulaSet& base, const SolverConfig& cfg = {});

/// base |= query, i.e. base U {!query} is unsatisfiable.
bool entails(const FormulaSet& base, const Formula& query, const SolverConfig& cfg = {});

/// Mutual member-wise entailment.
bool bases_equal(const FormulaSet& a, const FormulaSet& b, const SolverConfig& cfg = {});

}  // namespace deflog
