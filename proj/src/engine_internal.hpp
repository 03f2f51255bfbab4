#pragma once

#include <cstdint>
#include <vector>

#include "deflog/engine.hpp"

namespace deflog::detail {

FormulaSet gamma_with(const Reasoner& r, const DefaultTheory& theory, const FormulaSet& s);
bool same_closure(const Reasoner& r, const FormulaSet& a, const FormulaSet& b);
bool verify_with(const Reasoner& r, const DefaultTheory& theory, const FormulaSet& candidate);

/// Hard facts followed by the consequents of `order`.
FormulaSet base_of(const DefaultTheory& theory, const std::vector<std::size_t>& order);

Extension make_extension(const DefaultTheory& theory, const std::vector<std::size_t>& order);
Extension trivial_extension(const DefaultTheory& theory);

/// Sorts by generating names and drops later duplicates of equal closure.
void finalize(const Reasoner& r, std::vector<Extension>& exts);

}  // namespace deflog::detail
