#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narql {

/// Every failure the engine can report. The names double as the wire codes
/// used in JSON reports.
enum class ErrorCode {
  // lexicon
  ParseError,
  DuplicateEntry,
  // jfa
  InvalidMachine,
  DuplicateSymbol,
  NoDerivation,
  // intent extraction
  NoVerb,
  UnmappedVerb,
  ConflictingVerbs,
  NoRelation,
  NoAttribute,
  MultipleRelations,
  Rejected,
  // sql generation / parsing
  UnknownRelation,
  UnknownColumn,
  SyntaxError,
  // storage / execution
  MissingTableFile,
  HeaderMismatch,
  TypeError,
  DuplicateKey,
  UnboundPlaceholder,
  FullDeleteNotAllowed,
  TableExists,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  /// `positions` carries whatever locates the fault: token indices for
  /// pipeline errors, a line number for file loaders, a byte offset for SQL.
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> positions = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& positions() const noexcept {
    return positions_;
  }

 private:
  ErrorCode code_;
  std::vector<std::size_t> positions_;
};

}  // namespace narql
