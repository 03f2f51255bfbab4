#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "deflog/formula.hpp"

namespace deflog {

/// Definitional (Tseitin) variables are named with this prefix followed by a
/// number. The prefix cannot start a well-formed atom name.
inline constexpr std::string_view kAuxPrefix = "_ts";

bool is_aux_name(std::string_view name);

struct Literal {
  std::string atom;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Sorted by (atom, polarity), no repeated literal, never tautological.
using Clause = std::vector<Literal>;

struct ClauseSet {
  std::vector<Clause> clauses;
  // Number of definitional variables introduced; zero means the clause set is
  // logically equivalent to the input, otherwise only equisatisfiable.
  std::size_t aux_count = 0;

  bool definitional() const { return aux_count != 0; }
};

struct CnfOptions {
  // Above this many clauses the structural expansion is abandoned in favour
  // of the definitional encoding.
  std::size_t max_structural_clauses = 256;
  bool force_definitional = false;
  // First index used for auxiliary names; lets callers encode several
  // formulas into one problem without collisions.
  std::size_t aux_offset = 0;
};

ClauseSet to_cnf(const Formula& f, const CnfOptions& opts = {});

/// Rendering such as `{{!p, q}, {p, !q}}`.
std::string to_string(const ClauseSet& cs);

}  // namespace deflog
