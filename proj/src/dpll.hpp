#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace deflog::detail {

// DPLL with unit propagation over two watched literals and chronological
// backtracking. Literals use the DIMACS convention (+v / -v, v >= 1).
class DpllSolver {
 public:
  explicit DpllSolver(int num_vars);

  void add_clause(std::span<const int> lits);
  bool solve();

  // Value of variable v (1-based) in the last model found.
  bool model_value(int v) const { return assign_[static_cast<std::size_t>(v)] == kTrue; }

 private:
  static constexpr std::int8_t kUnset = 0, kTrue = 1, kFalse = -1;

  std::int8_t value(int lit) const {
    const std::int8_t v = assign_[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit < 0 ? static_cast<std::int8_t>(-v) : v;
  }
  std::size_t watch_index(int lit) const { return 2 * static_cast<std::size_t>(lit < 0 ? -lit : lit) + (lit < 0); }
  void assign(int lit);
  bool propagate();
  int pick_branch_var() const;

  int num_vars_;
  bool trivially_unsat_ = false;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;  // literal -> clauses watching its negation becoming false
  std::vector<std::int8_t> assign_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  std::vector<int> units_;
  std::vector<double> activity_;
};

}  // namespace deflog::detail
