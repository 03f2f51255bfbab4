#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "deflog/formula.hpp"
#include "deflog/kernels/bitops.hpp"

namespace deflog::detail {

// Bit-parallel truth table over a fixed variable list: a formula evaluates to
// the bitset of assignments satisfying it.
class TruthTable {
 public:
  using Bits = std::vector<kernels::Word>;

  explicit TruthTable(std::vector<std::string> vars);

  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_words() const { return words_; }

  Bits eval(const Formula& f) const;
  Bits all_true() const;

  const kernels::BitKernels& kernels() const { return *k_; }

 private:
  void mask_tail(Bits& b) const { b.back() &= tail_mask_; }

  std::vector<std::string> vars_;
  std::unordered_map<std::string, unsigned> index_;
  std::size_t words_;
  kernels::Word tail_mask_;
  const kernels::BitKernels* k_;
};

}  // namespace deflog::detail
