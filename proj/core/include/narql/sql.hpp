#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "narql/intent.hpp"
#include "narql/schema.hpp"

namespace narql::sql {

using Literal = std::variant<std::int64_t, double, std::string>;

struct Comparison {
  std::string column;
  Literal value;

  bool operator==(const Comparison&) const = default;
};

/// Equality comparisons joined by AND / OR. Compare nodes have no operands;
/// And / Or nodes have two or more and never directly nest their own kind.
struct Predicate {
  enum class Kind { Compare, And, Or };

  Kind kind = Kind::Compare;
  Comparison comparison;
  std::vector<Predicate> operands;

  static Predicate compare(std::string column, Literal value);
  static Predicate all_of(std::vector<Predicate> operands);
  static Predicate any_of(std::vector<Predicate> operands);

  bool operator==(const Predicate&) const = default;
};

struct SelectQuery {
  bool distinct = false;
  std::vector<std::string> columns;  ///< empty selects every column (*)
  std::string table;
  std::optional<Predicate> where;

  bool operator==(const SelectQuery&) const = default;
};

/// Values are positional placeholders; narrations carry none.
struct InsertQuery {
  std::string table;
  std::vector<std::string> columns;

  bool operator==(const InsertQuery&) const = default;
};

struct DeleteQuery {
  std::string table;
  std::optional<Predicate> where;

  bool operator==(const DeleteQuery&) const = default;
};

struct CreateQuery {
  std::string table;
  std::vector<db::Column> columns;

  bool operator==(const CreateQuery&) const = default;
};

using SqlQuery = std::variant<SelectQuery, InsertQuery, DeleteQuery, CreateQuery>;

/// Table bound to a relation symbol (c0..c10), if any.
std::optional<std::string_view> relation_table(std::string_view symbol) noexcept;
/// Column name bound to an attribute symbol (b0..b22), if any.
std::optional<std::string_view> attribute_column(std::string_view symbol) noexcept;

/// Throws Error(UnknownRelation) / Error(UnknownColumn).
SqlQuery generate(const QueryIntent& intent, const db::SchemaCatalog& schema);

std::string render(const SqlQuery& query);
std::string render(const Predicate& predicate);
std::string render(const Literal& literal);

/// Parses SELECT [DISTINCT] (* | col, ...) FROM table [WHERE pred] [;] with
/// pred built from col = literal, AND, OR and parentheses. Keywords are
/// case-insensitive; names are resolved to their schema spelling.
/// Throws Error(SyntaxError) carrying the byte offset, or
/// Error(UnknownRelation) / Error(UnknownColumn).
SelectQuery parse_select(std::string_view text, const db::SchemaCatalog& schema);

}  // namespace narql::sql
