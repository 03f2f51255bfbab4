#pragma once

// Lexical interpretation on top of the default engine.
//
// Atom naming:
//   sense_<word>_<sense>    word carries that sense (word has no underscore)
//   cue_<name>              contextual signal asserted by a sentence
//   copresence_cue_<word>   licenses several senses of <word> in one reading
//   excl_<word>_<i>_<j>     exclusivity default between two senses

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deflog/dsl.hpp"
#include "deflog/engine.hpp"

namespace deflog::lexis {

struct SenseEntry {
  std::string word;
  std::string sense_id;
  std::string gloss;
  Atom atom;
};

/// Throws std::invalid_argument unless `word` is `[a-z][a-z0-9]*` and
/// `sense_id` is `[a-z][a-z0-9_]*`.
SenseEntry make_sense(std::string word, std::string sense_id, std::string gloss = {});

std::string sense_atom_name(std::string_view word, std::string_view sense_id);
std::string copresence_cue_name(std::string_view word);

struct SenseRef {
  std::string word;
  std::string sense_id;
};

/// Inverse of sense_atom_name; nullopt for atoms outside the scheme.
std::optional<SenseRef> parse_sense_atom(std::string_view atom);

/// One default per unordered pair of senses, in inventory order:
///   excl_<w>_<i>_<j>: true : !(si & sj) & !copresence_cue_<w> / !(si & sj)
/// Throws std::invalid_argument for fewer than two senses or mixed words.
std::vector<Default> build_exclusivity_defaults(std::string_view word, const std::vector<SenseEntry>& senses);

/// The "examen" inventory: event, process, subject_paper, answer_paper,
/// info_object.
std::vector<SenseEntry> examen_inventory();

struct CorpusEntry {
  std::string id;
  std::string gloss;
  std::string theory_path;
  std::optional<TheoryDocument> theory;  // empty when loading failed
  std::string load_error;
  std::vector<Formula> gold_present;
  std::vector<Formula> gold_absent;
  std::optional<std::size_t> expected_extension_count;
};

/// Reads `<dir>/manifest.txt` and every theory it names. Manifest errors
/// throw ParseError; theory problems are recorded per entry.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// Entry with its theory already in memory.
CorpusEntry make_entry(const ManifestEntry& m, TheoryDocument theory);

struct Reading {
  std::vector<std::string> generating;
  FormulaSet base;
  bool trivial = false;
  std::map<std::string, std::set<std::string>> senses;  // word -> sense ids
  std::vector<std::string> sense_atoms;                 // sorted entailed sense atoms
};

struct InterpretationReport {
  std::string sentence_id;
  std::vector<Reading> extensions;
  bool ambiguous = false;            // more than one distinct sense assignment
  std::vector<std::string> copresent;  // words with several senses in one reading
  bool no_extension = false;
};

/// Compiles priorities, enumerates extensions and projects each onto the
/// sense atoms of the theory. Engine errors propagate; the entry must carry a
/// loaded theory.
InterpretationReport interpret(const CorpusEntry& entry, const EngineConfig& cfg = {});

struct EntryResult {
  std::string id;
  std::string gloss;
  bool pass = false;
  std::vector<std::string> diffs;
  std::optional<InterpretationReport> report;
};

struct CorpusResult {
  std::vector<EntryResult> entries;  // sorted by id

  std::size_t passed() const;
  bool all_passed() const { return passed() == entries.size(); }
};

/// An entry passes when every gold formula holds in every extension, no
/// gold_absent formula holds in any extension and the extension count
/// matches when one is expected. Per-entry problems never abort the run.
CorpusResult run_corpus(const std::vector<CorpusEntry>& entries, const EngineConfig& cfg = {});

EntryResult evaluate_entry(const CorpusEntry& entry, const EngineConfig& cfg = {});

std::string render_table(const CorpusResult& result);
std::string render_report(const EntryResult& result);

}  // namespace deflog::lexis
