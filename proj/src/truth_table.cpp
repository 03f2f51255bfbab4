#include "truth_table.hpp"

#include <stdexcept>

namespace deflog::detail {

TruthTable::TruthTable(std::vector<std::string> vars) : vars_(std::move(vars)), k_(&kernels::active_kernels()) {
  for (unsigned i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i], i);
  const std::size_t rows = std::size_t{1} << vars_.size();
  words_ = rows < 64 ? 1 : rows / 64;
  tail_mask_ = rows < 64 ? ((kernels::Word{1} << rows) - 1) : ~kernels::Word{0};
}

TruthTable::Bits TruthTable::all_true() const {
  Bits b(words_, ~kernels::Word{0});
  mask_tail(b);
  return b;
}

TruthTable::Bits TruthTable::eval(const Formula& f) const {
  switch (f.connective()) {
    case Connective::kTrue: return all_true();
    case Connective::kFalse: return Bits(words_, 0);
    case Connective::kAtom: {
      const auto it = index_.find(f.atom_name());
      if (it == index_.end()) throw std::invalid_argument("atom '" + f.atom_name() + "' outside the reasoning universe");
      Bits b(words_);
      kernels::fill_variable_column(b, it->second);
      mask_tail(b);
      return b;
    }
    case Connective::kNot: {
      Bits b = eval(f.lhs());
      k_->not_words(b, b);
      mask_tail(b);
      return b;
    }
    default: break;
  }
  Bits a = eval(f.lhs());
  const Bits b = eval(f.rhs());
  switch (f.connective()) {
    case Connective::kAnd: k_->and_words(a, a, b); break;
    case Connective::kOr: k_->or_words(a, a, b); break;
    case Connective::kImplies: k_->implies_words(a, a, b); break;
    case Connective::kIff: k_->iff_words(a, a, b); break;
    default: break;
  }
  mask_tail(a);
  return a;
}

}  // namespace deflog::detail
