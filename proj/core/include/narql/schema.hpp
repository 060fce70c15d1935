#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace narql::db {

enum class ColumnType { Integer, Text, Decimal };

std::string_view to_string(ColumnType type) noexcept;

struct Column {
  std::string name;
  ColumnType type = ColumnType::Text;

  bool operator==(const Column&) const = default;
};

struct TableSchema {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::string> primary_key;

  std::optional<std::size_t> column_index(std::string_view column) const;
  /// Case-insensitive column lookup returning the declared spelling.
  std::optional<std::string> resolve_column(std::string_view column) const;

  bool operator==(const TableSchema&) const = default;
};

class SchemaCatalog {
 public:
  SchemaCatalog() = default;
  explicit SchemaCatalog(std::vector<TableSchema> tables) : tables_(std::move(tables)) {}

  /// The eleven-table music store schema the engine ships with.
  static const SchemaCatalog& chinook();

  const std::vector<TableSchema>& tables() const noexcept { return tables_; }
  const TableSchema* find(std::string_view table) const;
  /// Case-insensitive table lookup.
  const TableSchema* resolve(std::string_view table) const;

 private:
  std::vector<TableSchema> tables_;
};

}  // namespace narql::db
