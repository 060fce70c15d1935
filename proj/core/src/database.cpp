#include "narql/database.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "narql/error.hpp"

namespace narql::db {

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_decimal(std::string_view text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

bool fits(const Value& v, ColumnType type) {
  if (std::holds_alternative<std::monostate>(v)) return true;
  switch (type) {
    case ColumnType::Integer: return std::holds_alternative<std::int64_t>(v);
    case ColumnType::Decimal: return std::holds_alternative<double>(v);
    case ColumnType::Text: return std::holds_alternative<std::string>(v);
  }
  return false;
}

std::vector<std::size_t> key_indices(const TableSchema& schema) {
  std::vector<std::size_t> idx;
  for (const auto& k : schema.primary_key) idx.push_back(*schema.column_index(k));
  return idx;
}

Row key_of(const Row& row, const std::vector<std::size_t>& idx) {
  Row key;
  for (auto i : idx) key.push_back(row[i]);
  return key;
}

}  // namespace

std::string to_string(const Value& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "NULL";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          std::ostringstream out;
          out << v;
          return out.str();
        } else {
          return std::to_string(v);
        }
      },
      value);
}

std::vector<std::vector<CsvField>> parse_csv(std::string_view text) {
  std::vector<std::vector<CsvField>> records;
  std::vector<CsvField> record;
  CsvField field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field = CsvField{};
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    bool blank = record.size() == 1 && record[0].text.empty() && !record[0].quoted;
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.text += c;
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field.quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
    } else {
      field.text += c;
      field_started = true;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quoted CSV field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::optional<Value> coerce(std::string_view text, ColumnType type) {
  if (text.empty()) return Value{};
  switch (type) {
    case ColumnType::Integer:
      if (auto v = parse_int(text)) return Value{*v};
      return std::nullopt;
    case ColumnType::Decimal:
      if (auto v = parse_decimal(text)) return Value{*v};
      return std::nullopt;
    case ColumnType::Text:
      return Value{std::string(text)};
  }
  return std::nullopt;
}

bool matches(const Value& stored, const sql::Literal& literal, ColumnType type) {
  if (std::holds_alternative<std::monostate>(stored)) return false;
  switch (type) {
    case ColumnType::Integer: {
      auto have = std::get<std::int64_t>(stored);
      if (auto* i = std::get_if<std::int64_t>(&literal)) return have == *i;
      if (auto* d = std::get_if<double>(&literal)) return static_cast<double>(have) == *d;
      auto want = parse_int(std::get<std::string>(literal));
      return want && *want == have;
    }
    case ColumnType::Decimal: {
      auto have = std::get<double>(stored);
      if (auto* i = std::get_if<std::int64_t>(&literal)) return have == static_cast<double>(*i);
      if (auto* d = std::get_if<double>(&literal)) return have == *d;
      auto want = parse_decimal(std::get<std::string>(literal));
      return want && *want == have;
    }
    case ColumnType::Text: {
      auto* s = std::get_if<std::string>(&literal);
      return s && *s == std::get<std::string>(stored);
    }
  }
  return false;
}

bool evaluate(const sql::Predicate& predicate, const TableSchema& schema, const Row& row) {
  using Kind = sql::Predicate::Kind;
  switch (predicate.kind) {
    case Kind::Compare: {
      auto idx = schema.column_index(predicate.comparison.column);
      if (!idx)
        throw Error(ErrorCode::UnknownColumn, "table " + schema.name + " has no column '" +
                                                  predicate.comparison.column + "'");
      return matches(row[*idx], predicate.comparison.value, schema.columns[*idx].type);
    }
    case Kind::And:
      return std::all_of(predicate.operands.begin(), predicate.operands.end(),
                         [&](const sql::Predicate& p) { return evaluate(p, schema, row); });
    case Kind::Or:
      return std::any_of(predicate.operands.begin(), predicate.operands.end(),
                         [&](const sql::Predicate& p) { return evaluate(p, schema, row); });
  }
  return false;
}

Database::Database(SchemaCatalog schema) : schema_(std::move(schema)) {
  for (const auto& t : schema_.tables()) tables_.emplace(t.name, Table{t.name, {}});
}

Database Database::load_seed(const std::filesystem::path& directory,
                             const SchemaCatalog& schema) {
  Database db(schema);
  for (const auto& ts : schema.tables()) {
    auto path = directory / (ts.name + ".csv");
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw Error(ErrorCode::MissingTableFile, "missing seed file for table " + ts.name +
                                                   " (" + path.string() + ")");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<std::vector<CsvField>> records;
    try {
      records = parse_csv(buf.str());
    } catch (const std::runtime_error& e) {
      throw Error(ErrorCode::TypeError, ts.name + ".csv: " + e.what());
    }

    if (records.empty())
      throw Error(ErrorCode::HeaderMismatch, ts.name + ".csv has no header row", {1});
    const auto& header = records.front();
    bool header_ok = header.size() == ts.columns.size();
    for (std::size_t i = 0; header_ok && i < header.size(); ++i)
      header_ok = header[i].text == ts.columns[i].name;
    if (!header_ok) {
      std::string expected;
      for (const auto& c : ts.columns) expected += (expected.empty() ? "" : ",") + c.name;
      throw Error(ErrorCode::HeaderMismatch,
                  ts.name + ".csv header does not match schema (expected " + expected + ")",
                  {1});
    }

    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      auto line = r + 1;
      auto type_error = [&](const std::string& what) {
        return Error(ErrorCode::TypeError,
                     ts.name + ".csv row " + std::to_string(line) + ": " + what, {line});
      };
      if (rec.size() != ts.columns.size())
        throw type_error("expected " + std::to_string(ts.columns.size()) + " fields, found " +
                         std::to_string(rec.size()));
      Row row;
      for (std::size_t c = 0; c < rec.size(); ++c) {
        const auto& col = ts.columns[c];
        if (rec[c].quoted && col.type == ColumnType::Text) {
          row.emplace_back(rec[c].text);
          continue;
        }
        auto value = coerce(rec[c].text, col.type);
        if (!value)
          throw type_error("'" + rec[c].text + "' is not a valid " +
                           std::string(to_string(col.type)) + " for column " + col.name);
        row.push_back(std::move(*value));
      }
      try {
        db.insert(ts.name, std::move(row));
      } catch (const Error& e) {
        throw Error(e.code(), ts.name + ".csv row " + std::to_string(line) + ": " + e.what(),
                    {line});
      }
    }
  }
  return db;
}

const Table& Database::table(std::string_view name) const {
  auto it = tables_.find(name);
  if (it == tables_.end())
    throw Error(ErrorCode::UnknownRelation, "unknown table '" + std::string(name) + "'");
  return it->second;
}

Table& Database::mutable_table(std::string_view name) {
  return const_cast<Table&>(std::as_const(*this).table(name));
}

const TableSchema& Database::table_schema(std::string_view name) const {
  const auto* ts = schema_.find(name);
  if (!ts) throw Error(ErrorCode::UnknownRelation, "unknown table '" + std::string(name) + "'");
  return *ts;
}

void Database::insert(std::string_view table, Row row) {
  const auto& ts = table_schema(table);
  auto& data = mutable_table(table);
  if (row.size() != ts.columns.size())
    throw Error(ErrorCode::TypeError, "expected " + std::to_string(ts.columns.size()) +
                                          " values, got " + std::to_string(row.size()));
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (ts.columns[i].type == ColumnType::Decimal)
      if (auto* n = std::get_if<std::int64_t>(&row[i])) row[i] = static_cast<double>(*n);
    if (!fits(row[i], ts.columns[i].type))
      throw Error(ErrorCode::TypeError, "value '" + to_string(row[i]) + "' is not a valid " +
                                            std::string(to_string(ts.columns[i].type)) +
                                            " for column " + ts.columns[i].name);
  }
  auto keys = key_indices(ts);
  for (auto k : keys)
    if (std::holds_alternative<std::monostate>(row[k]))
      throw Error(ErrorCode::TypeError, "primary key column " + ts.columns[k].name + " is empty");
  auto key = key_of(row, keys);
  for (const auto& existing : data.rows)
    if (key_of(existing, keys) == key)
      throw Error(ErrorCode::DuplicateKey, "duplicate primary key in table " + ts.name);
  data.rows.push_back(std::move(row));
}

ResultSet Database::select(const sql::SelectQuery& query) const {
  const auto& ts = table_schema(query.table);
  const auto& data = table(query.table);

  std::vector<std::size_t> projection;
  ResultSet result;
  if (query.columns.empty()) {
    for (std::size_t i = 0; i < ts.columns.size(); ++i) projection.push_back(i);
  } else {
    for (const auto& c : query.columns) {
      auto idx = ts.column_index(c);
      if (!idx)
        throw Error(ErrorCode::UnknownColumn, "table " + ts.name + " has no column '" + c + "'");
      projection.push_back(*idx);
    }
  }
  for (auto i : projection) result.columns.push_back(ts.columns[i].name);

  std::set<Row> seen;
  for (const auto& row : data.rows) {
    if (query.where && !evaluate(*query.where, ts, row)) continue;
    Row out;
    out.reserve(projection.size());
    for (auto i : projection) out.push_back(row[i]);
    if (query.distinct && !seen.insert(out).second) continue;
    result.rows.push_back(std::move(out));
  }
  return result;
}

ExecutionResult Database::execute(const sql::SqlQuery& query, const ExecuteOptions& options) {
  if (const auto* q = std::get_if<sql::SelectQuery>(&query)) return select(*q);

  if (const auto* q = std::get_if<sql::InsertQuery>(&query)) {
    if (!options.bindings)
      throw Error(ErrorCode::UnboundPlaceholder,
                  "INSERT INTO " + q->table + " has " + std::to_string(q->columns.size()) +
                      " unbound placeholders");
    const auto& ts = table_schema(q->table);
    if (options.bindings->size() != q->columns.size())
      throw Error(ErrorCode::UnboundPlaceholder,
                  "expected " + std::to_string(q->columns.size()) + " bound values, got " +
                      std::to_string(options.bindings->size()));
    Row row(ts.columns.size());
    for (std::size_t i = 0; i < q->columns.size(); ++i) {
      auto idx = ts.column_index(q->columns[i]);
      if (!idx)
        throw Error(ErrorCode::UnknownColumn,
                    "table " + ts.name + " has no column '" + q->columns[i] + "'");
      row[*idx] = (*options.bindings)[i];
    }
    insert(q->table, std::move(row));
    return MutationSummary{1};
  }

  if (const auto* q = std::get_if<sql::DeleteQuery>(&query)) {
    if (!q->where && !options.allow_full_delete)
      throw Error(ErrorCode::FullDeleteNotAllowed,
                  "DELETE FROM " + q->table + " without WHERE needs explicit confirmation");
    const auto& ts = table_schema(q->table);
    auto& rows = mutable_table(q->table).rows;
    auto before = rows.size();
    std::erase_if(rows, [&](const Row& row) { return !q->where || evaluate(*q->where, ts, row); });
    return MutationSummary{before - rows.size()};
  }

  const auto& create = std::get<sql::CreateQuery>(query);
  if (schema_.find(create.table))
    throw Error(ErrorCode::TableExists, "table " + create.table + " already exists");
  throw Error(ErrorCode::UnknownRelation,
              "the catalog is fixed; cannot create table " + create.table);
}

}  // namespace narql::db
