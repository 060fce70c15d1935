#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace narql {

/// Colour class of a recognised word: query verbs (a-symbols, green),
/// attributes (b-symbols, red) and relations (c-symbols, blue).
enum class SymbolClass { QueryVerb, AttributeTerm, RelationTerm };

enum class QueryOperation { Select, All, Create, Insert, Delete };

std::string_view to_string(SymbolClass cls) noexcept;
std::string_view to_string(QueryOperation op) noexcept;
std::optional<SymbolClass> parse_symbol_class(std::string_view text) noexcept;
std::optional<QueryOperation> parse_query_operation(std::string_view text) noexcept;

/// Symbol-id prefix letter for a class ('a', 'b' or 'c').
char symbol_prefix(SymbolClass cls) noexcept;

struct LexiconEntry {
  std::string surface;    ///< lowercase, no whitespace
  std::string symbol_id;  ///< e.g. "a12", "b23", "c2"
  SymbolClass cls = SymbolClass::QueryVerb;
  std::string language;   ///< ISO-style tag, or "schema-en" for schema words
  std::optional<QueryOperation> operation;

  bool operator==(const LexiconEntry&) const = default;
};

/// Lowercases ASCII and the Latin-1 supplement letters (UTF-8 aware); all
/// other bytes pass through unchanged.
std::string to_lower_utf8(std::string_view text);

/// Immutable keyword table. Lookups are case-insensitive exact matches and
/// return entries in file order.
class Lexicon {
 public:
  Lexicon() = default;

  /// Validates every entry; throws Error(ParseError) on a malformed entry and
  /// Error(DuplicateEntry) on a repeated (surface, symbol_id) pair.
  explicit Lexicon(std::vector<LexiconEntry> entries);

  std::span<const LexiconEntry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  std::vector<LexiconEntry> classify(std::string_view word) const;

  /// Entry count per language tag, sorted by tag.
  std::map<std::string, std::size_t> language_counts() const;

  /// Writes the tab-separated file format accepted by load_lexicon.
  std::string render() const;

  bool operator==(const Lexicon& other) const { return entries_ == other.entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// Parses `surface<TAB>symbol_id<TAB>class<TAB>language<TAB>operation|-`
/// rows. `#` lines and blank lines are skipped.
Lexicon load_lexicon(std::istream& source);
Lexicon load_lexicon(std::string_view text);
Lexicon load_lexicon_file(const std::filesystem::path& path);

std::optional<QueryOperation> operation_of(const LexiconEntry& entry) noexcept;

}  // namespace narql
