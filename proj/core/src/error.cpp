#include "narql/error.hpp"

namespace narql {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::InvalidMachine: return "InvalidMachine";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::NoDerivation: return "NoDerivation";
    case ErrorCode::NoVerb: return "NoVerb";
    case ErrorCode::UnmappedVerb: return "UnmappedVerb";
    case ErrorCode::ConflictingVerbs: return "ConflictingVerbs";
    case ErrorCode::NoRelation: return "NoRelation";
    case ErrorCode::NoAttribute: return "NoAttribute";
    case ErrorCode::MultipleRelations: return "MultipleRelations";
    case ErrorCode::Rejected: return "Rejected";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MissingTableFile: return "MissingTableFile";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::UnboundPlaceholder: return "UnboundPlaceholder";
    case ErrorCode::FullDeleteNotAllowed: return "FullDeleteNotAllowed";
    case ErrorCode::TableExists: return "TableExists";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::size_t> positions)
    : std::runtime_error(message), code_(code), positions_(std::move(positions)) {}

}  // namespace narql
