#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "narql/lexicon.hpp"

namespace narql {

/// A lexicon entry chosen for one narration token.
struct RecognizedSymbol {
  LexiconEntry entry;
  std::size_t position = 0;  ///< token index in the narration

  bool operator==(const RecognizedSymbol&) const = default;
};

/// What a narration asks for: one operation over one relation.
struct QueryIntent {
  QueryOperation operation = QueryOperation::Select;  ///< never All
  std::string relation;                 ///< c-symbol, e.g. "c2"
  bool all_attributes = false;          ///< an ALL word was recognised (or defaulted)
  std::vector<std::string> attributes;  ///< b-symbols, empty when all_attributes
  std::vector<RecognizedSymbol> sources;

  /// Compares what the intent asks for, ignoring where the words were and
  /// the order the attributes were named in.
  bool same_request(const QueryIntent& other) const {
    if (operation != other.operation || relation != other.relation ||
        all_attributes != other.all_attributes)
      return false;
    auto a = attributes, b = other.attributes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }
};

}  // namespace narql
