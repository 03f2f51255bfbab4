#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deflog/formula.hpp"
#include "deflog/solver.hpp"
#include "deflog/theory.hpp"

namespace deflog {

struct EngineConfig {
  SolverConfig solver;
  std::size_t max_defaults = 16;
  std::size_t bruteforce_max_defaults = 10;
};

/// A fixpoint of the Γ operator, kept as a finite base rather than a closure.
struct Extension {
  std::vector<std::string> generating;     // sorted
  FormulaSet base;                         // hard facts, then generating consequents
  std::vector<std::string> applied_order;  // groundedness witness
  bool trivial = false;                    // hard facts inconsistent
};

/// Base for Γ(Th(s)): starting from the hard facts, add the consequent of
/// every default whose prerequisite is entailed by the growing base and whose
/// justification is consistent with the fixed argument `s`.
FormulaSet gamma(const DefaultTheory& theory, const FormulaSet& s, const EngineConfig& cfg = {});

/// Γ(candidate) and candidate have the same closure.
bool verify_extension(const DefaultTheory& theory, const FormulaSet& candidate, const EngineConfig& cfg = {});

/// All extensions, found by exploring default-application processes
/// (memoized on the applied set) and re-checking each closed process with
/// verify_extension. Equal bases are reported once. Sorted by generating
/// names. Priorities are ignored here; see compile_priorities.
///
/// Throws LimitError when the theory has more than cfg.max_defaults defaults
/// or more atoms than cfg.solver.max_atoms.
std::vector<Extension> extensions(const DefaultTheory& theory, const EngineConfig& cfg = {});

/// Reference enumeration over every subset of the defaults. Independent of
/// the process search in extensions(); limited to
/// cfg.bruteforce_max_defaults defaults.
std::vector<Extension> extensions_bruteforce(const DefaultTheory& theory, const EngineConfig& cfg = {});

/// Replays `ext.applied_order` and checks each prerequisite is entailed by the
/// hard facts plus strictly earlier consequents.
bool is_grounded(const DefaultTheory& theory, const Extension& ext, const EngineConfig& cfg = {});

enum class QueryMode { kSkeptical, kCredulous };
enum class Verdict { kYes, kNo, kNoExtension };

std::string_view to_string(Verdict v);

Verdict query(const DefaultTheory& theory, const Formula& f, QueryMode mode, const EngineConfig& cfg = {});

/// Same decision over already computed extensions.
Verdict query(const std::vector<Extension>& exts, const Formula& f, QueryMode mode, const SolverConfig& cfg = {});

struct SemiMonoWitness {
  FormulaSet subtheory_extension;
  std::vector<FormulaSet> full_extensions;
};

struct SemiMonoReport {
  bool holds = true;
  std::optional<SemiMonoWitness> witness;  // present iff !holds
};

/// Checks that every extension of (hard, subset) is contained in some
/// extension of the full theory.
SemiMonoReport check_semi_monotonicity(const DefaultTheory& theory, const std::set<std::string>& subset,
                                       const EngineConfig& cfg = {});

/// Removes priorities by strengthening justifications. For each (hi, lo):
/// when hard + {cons(hi), cons(lo)} is unsatisfiable, lo's justification gets
/// `& !prereq(hi)` and lo records hi in blocked_by_prerequisite; otherwise it
/// gets `& !cons(hi)`. Pairs are processed in declaration order.
DefaultTheory compile_priorities(const DefaultTheory& theory, const EngineConfig& cfg = {});

}  // namespace deflog
