#include "dpll.hpp"

#include <algorithm>
#include <cstdlib>

namespace deflog::detail {

DpllSolver::DpllSolver(int num_vars)
    : num_vars_(num_vars),
      watches_(2 * static_cast<std::size_t>(num_vars) + 2),
      assign_(static_cast<std::size_t>(num_vars) + 1, kUnset),
      activity_(static_cast<std::size_t>(num_vars) + 1, 0.0) {}

void DpllSolver::add_clause(std::span<const int> lits) {
  std::vector<int> c(lits.begin(), lits.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::binary_search(c.begin(), c.end(), -c[i])) return;  // tautology
  for (int l : c) activity_[static_cast<std::size_t>(std::abs(l))] += 1.0;
  if (c.empty()) {
    trivially_unsat_ = true;
  } else if (c.size() == 1) {
    units_.push_back(c[0]);
  } else {
    const std::size_t ci = clauses_.size();
    watches_[watch_index(c[0])].push_back(ci);
    watches_[watch_index(c[1])].push_back(ci);
    clauses_.push_back(std::move(c));
  }
}

void DpllSolver::assign(int lit) {
  assign_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? kTrue : kFalse;
  trail_.push_back(lit);
}

bool DpllSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const int false_lit = -trail_[qhead_++];
    auto& ws = watches_[watch_index(false_lit)];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const std::size_t ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[watch_index(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return false;
      }
      assign(c[0]);
    }
    ws.resize(j);
  }
  return true;
}

int DpllSolver::pick_branch_var() const {
  int best = 0;
  double best_score = -1.0;
  for (int v = 1; v <= num_vars_; ++v) {
    if (assign_[static_cast<std::size_t>(v)] != kUnset) continue;
    if (activity_[static_cast<std::size_t>(v)] > best_score) {
      best = v;
      best_score = activity_[static_cast<std::size_t>(v)];
    }
  }
  return best;
}

bool DpllSolver::solve() {
  if (trivially_unsat_) return false;
  std::fill(assign_.begin(), assign_.end(), kUnset);
  trail_.clear();
  qhead_ = 0;
  for (int u : units_) {
    if (value(u) == kFalse) return false;
    if (value(u) == kUnset) assign(u);
  }

  struct Decision {
    std::size_t trail_pos;
    int lit;
    bool flipped;
  };
  std::vector<Decision> stack;
  auto undo_to = [this](std::size_t pos) {
    for (std::size_t i = trail_.size(); i > pos; --i) assign_[static_cast<std::size_t>(std::abs(trail_[i - 1]))] = kUnset;
    trail_.resize(pos);
    qhead_ = pos;
  };

  while (true) {
    if (propagate()) {
      const int v = pick_branch_var();
      if (v == 0) return true;
      stack.push_back({trail_.size(), -v, false});
      assign(-v);
      continue;
    }
    while (!stack.empty() && stack.back().flipped) {
      undo_to(stack.back().trail_pos);
      stack.pop_back();
    }
    if (stack.empty()) return false;
    Decision& d = stack.back();
    undo_to(d.trail_pos);
    d.flipped = true;
    d.lit = -d.lit;
    assign(d.lit);
  }
}

}  // namespace deflog::detail
