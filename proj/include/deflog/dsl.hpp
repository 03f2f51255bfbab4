#pragma once

// Text format for default theories and corpus manifests.
//
//   document := statement*
//   fact     := "fact" formula "."
//   default  := "default" NAME ":" formula ":" formula "/" formula "."
//   prefer   := "prefer" NAME ">" NAME "."
//   meta     := "@" KEY <rest of line>
//
// Formulas use `!`, `&`, `|`, `->` (right associative), `<->`, `true`,
// `false` and parentheses, binding in that order from tightest to loosest.
// `#` starts a comment that runs to the end of the line.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deflog/formula.hpp"
#include "deflog/theory.hpp"

namespace deflog {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class ParseErrorKind { kSyntax, kMalformedAtom, kDuplicateName, kUnknownName, kTooDeep };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourcePos pos, std::string reason);

  ParseErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& reason() const { return reason_; }

 private:
  ParseErrorKind kind_;
  SourcePos pos_;
  std::string reason_;
};

struct MetaEntry {
  std::string key;
  std::string value;

  friend bool operator==(const MetaEntry&, const MetaEntry&) = default;
};

struct TheoryDocument {
  std::vector<MetaEntry> metadata;
  std::vector<Formula> facts;
  std::vector<Default> defaults;
  std::vector<Priority> priorities;

  /// First value recorded under `key`.
  std::optional<std::string> meta(std::string_view key) const;

  friend bool operator==(const TheoryDocument&, const TheoryDocument&) = default;
};

/// Throws ParseError describing the first problem found.
TheoryDocument parse_theory(std::string_view text);

Formula parse_formula(std::string_view text);

/// Canonical text: metadata, facts, defaults, priorities; one statement per
/// line; minimal parentheses.
std::string serialize_theory(const TheoryDocument& doc);

/// Throws TheoryError (CyclicPriorityError for cycles).
DefaultTheory to_theory(const TheoryDocument& doc);
TheoryDocument to_document(const DefaultTheory& theory);

struct ManifestEntry {
  std::string id;
  std::string theory_path;
  std::string gloss;
  std::vector<Formula> gold;
  std::vector<Formula> gold_absent;
  std::optional<std::size_t> expect_extensions;
  SourcePos pos;
};

/// Blocks of `@id`, `@theory`, `@gloss`, `@gold` (one or more),
/// `@gold_absent`, `@expect_extensions`. Paths are not resolved here.
std::vector<ManifestEntry> parse_corpus_manifest(std::string_view text);

}  // namespace deflog
