#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "narql/schema.hpp"
#include "narql/sql.hpp"

namespace narql::db {

/// NULL, integer, decimal or text.
using Value = std::variant<std::monostate, std::int64_t, double, std::string>;
using Row = std::vector<Value>;

std::string to_string(const Value& value);  // NULL renders as "NULL"

struct Table {
  std::string name;
  std::vector<Row> rows;
};

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;

  bool operator==(const ResultSet&) const = default;
};

struct MutationSummary {
  std::size_t affected = 0;

  bool operator==(const MutationSummary&) const = default;
};

using ExecutionResult = std::variant<ResultSet, MutationSummary>;

struct ExecuteOptions {
  bool allow_full_delete = false;
  /// Values for an INSERT's placeholders, in column order.
  std::optional<std::vector<Value>> bindings;
};

/// Parses one RFC 4180 style CSV document (comma separated, double-quote
/// escaping). Each record keeps whether each field was quoted so an empty
/// quoted field can be told apart from a missing one.
struct CsvField {
  std::string text;
  bool quoted = false;
};
std::vector<std::vector<CsvField>> parse_csv(std::string_view text);

/// Row-major in-memory tables, scanned linearly. Not synchronised: callers
/// provide the readers/single-writer discipline.
class Database {
 public:
  explicit Database(SchemaCatalog schema);

  /// One `<Table>.csv` per schema table. Throws Error(MissingTableFile),
  /// Error(HeaderMismatch), Error(TypeError) or Error(DuplicateKey).
  static Database load_seed(const std::filesystem::path& directory,
                            const SchemaCatalog& schema = SchemaCatalog::chinook());

  const SchemaCatalog& schema() const noexcept { return schema_; }
  const Table& table(std::string_view name) const;

  /// Appends a row after type and key checks.
  void insert(std::string_view table, Row row);

  ResultSet select(const sql::SelectQuery& query) const;

  /// Runs any query kind. Mutations throw Error(UnboundPlaceholder),
  /// Error(FullDeleteNotAllowed) or Error(TableExists) per the options.
  ExecutionResult execute(const sql::SqlQuery& query, const ExecuteOptions& options = {});

 private:
  Table& mutable_table(std::string_view name);
  const TableSchema& table_schema(std::string_view name) const;

  SchemaCatalog schema_;
  std::map<std::string, Table, std::less<>> tables_;
};

/// Converts `text` to the column type; empty text becomes NULL. Returns
/// nullopt when the text is not a valid value of that type.
std::optional<Value> coerce(std::string_view text, ColumnType type);

/// Equality of a stored value with a query literal after coercing the
/// literal to the column type. NULL equals nothing.
bool matches(const Value& stored, const sql::Literal& literal, ColumnType type);

bool evaluate(const sql::Predicate& predicate, const TableSchema& schema, const Row& row);

}  // namespace narql::db
