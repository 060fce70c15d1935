#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narql/database.hpp"
#include "narql/error.hpp"
#include "narql/intent.hpp"
#include "narql/jfa.hpp"
#include "narql/lexicon.hpp"
#include "narql/schema.hpp"
#include "narql/sql.hpp"

namespace narql {

struct ClassifiedToken {
  std::string surface;     ///< word as written
  std::string normalized;  ///< lowercased, punctuation stripped
  std::vector<LexiconEntry> candidates;  ///< empty for irrelevant words
  std::size_t position = 0;

  bool recognized() const noexcept { return !candidates.empty(); }
  bool ambiguous() const noexcept { return candidates.size() > 1; }
};

/// Lowercased, punctuation-trimmed words of `text`; empty words dropped.
std::vector<std::string> preprocess(std::string_view text);

/// Looks every word up. Words are normalised again, so raw surface words
/// may be passed to keep their original spelling in the tokens.
std::vector<ClassifiedToken> classify_stream(std::span<const std::string> words,
                                             const Lexicon& lexicon);

/// Picks one entry per recognised token. A candidate whose operation does not
/// clash with the verbs already recognised wins; when no verb has been seen a
/// verb candidate fills that slot; remaining ties go to lexicon file order.
std::vector<RecognizedSymbol> resolve_symbols(std::span<const ClassifiedToken> tokens);

/// Result of running recognised symbols through the automaton.
struct Recognition {
  std::vector<RecognizedSymbol> symbols;  ///< first occurrence of each symbol id
  jfa::Word word;
  jfa::Machine machine;
  jfa::DerivationTrace derivation;
  QueryIntent intent;
};

/// Throws Error with NoVerb, UnmappedVerb, ConflictingVerbs, NoRelation,
/// MultipleRelations, NoAttribute or Rejected.
Recognition recognize(std::span<const RecognizedSymbol> resolved);

QueryIntent extract_intent(std::span<const ClassifiedToken> tokens);

enum class Stage { Preprocess, Classify, Intent, Generate, Execute };

std::string_view to_string(Stage stage) noexcept;

struct StageError {
  Stage stage = Stage::Intent;
  ErrorCode code = ErrorCode::NoVerb;
  std::string message;
  std::vector<std::size_t> positions;
};

struct TranslationReport {
  std::string text;
  std::vector<ClassifiedToken> tokens;
  std::vector<RecognizedSymbol> resolved;
  std::optional<Recognition> recognition;
  std::optional<sql::SqlQuery> query;
  std::string sql;
  std::optional<StageError> error;

  bool executed = false;
  std::string execution_note;  ///< why execution was skipped, if it was
  std::optional<db::ExecutionResult> result;

  bool ok() const noexcept { return !error.has_value(); }
};

/// preprocess -> classify -> intent -> SQL. Never throws for pipeline
/// failures; they are recorded in `error` with the failing stage.
TranslationReport translate(std::string_view text, const Lexicon& lexicon,
                            const db::SchemaCatalog& schema);

}  // namespace narql
