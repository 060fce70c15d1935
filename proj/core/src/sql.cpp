#include "narql/sql.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "narql/error.hpp"
#include "narql/lexicon.hpp"

namespace narql::sql {

namespace {

// c0..c10. The c5, c7 and c8 names in the keyword tables do not exist in the
// music store schema; they bind to its invoice-line, playlist and
// playlist-track tables.
constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kRelations{{
    {"c0", "Employee"},
    {"c1", "Genre"},
    {"c2", "Customer"},
    {"c3", "MediaType"},
    {"c4", "Track"},
    {"c5", "InvoiceLine"},
    {"c6", "Invoice"},
    {"c7", "Playlist"},
    {"c8", "PlaylistTrack"},
    {"c9", "Album"},
    {"c10", "Artist"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 23> kAttributes{{
    {"b0", "EmployeeID"},   {"b1", "LastName"},     {"b2", "FirstName"},
    {"b3", "Title"},        {"b4", "ReportsTo"},    {"b5", "Address"},
    {"b6", "State"},        {"b7", "City"},         {"b8", "PostalCode"},
    {"b9", "Fax"},          {"b10", "Country"},     {"b11", "Email"},
    {"b12", "CustomerID"},  {"b13", "SupportRepID"}, {"b14", "TrackID"},
    {"b15", "ArtistID"},    {"b16", "InvoiceID"},   {"b17", "MediaTypeID"},
    {"b18", "InvoiceLineID"}, {"b19", "Name"},      {"b20", "UnitPrice"},
    {"b21", "Composer"},    {"b22", "Company"},
}};

template <std::size_t N>
std::optional<std::string_view> lookup(
    const std::array<std::pair<std::string_view, std::string_view>, N>& table,
    std::string_view key) {
  for (const auto& [k, v] : table)
    if (k == key) return v;
  return std::nullopt;
}

Predicate combine(Predicate::Kind kind, std::vector<Predicate> operands) {
  if (operands.size() == 1) return std::move(operands.front());
  Predicate p;
  p.kind = kind;
  for (auto& op : operands) {
    if (op.kind == kind) {
      for (auto& inner : op.operands) p.operands.push_back(std::move(inner));
    } else {
      p.operands.push_back(std::move(op));
    }
  }
  return p;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string render_where(const std::optional<Predicate>& where) {
  return where ? " WHERE " + render(*where) : std::string{};
}

// ---------------------------------------------------------------------------
// SELECT parser

enum class Tok { Ident, Number, String, Star, Comma, Equals, LParen, RParen, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

[[noreturn]] void syntax_error(std::size_t offset, const std::string& what) {
  throw Error(ErrorCode::SyntaxError,
              what + " at offset " + std::to_string(offset), {offset});
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_ident_start = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
  auto is_ident = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (is_ident_start(c)) {
      auto start = i;
      while (i < text.size() && is_ident(static_cast<unsigned char>(text[i]))) ++i;
      tokens.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
    } else if (std::isdigit(c) || (c == '-' && i + 1 < text.size() &&
                                   std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      auto start = i++;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      tokens.push_back({Tok::Number, std::string(text.substr(start, i - start)), start});
    } else if (c == '\'') {
      auto start = i++;
      std::string value;
      while (true) {
        if (i >= text.size()) syntax_error(start, "unterminated string literal");
        if (text[i] == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            value += '\'';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        value += text[i++];
      }
      tokens.push_back({Tok::String, std::move(value), start});
    } else {
      Tok kind;
      switch (c) {
        case '*': kind = Tok::Star; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Equals; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ';': kind = Tok::Semicolon; break;
        default: syntax_error(i, std::string("unexpected character '") + text[i] + "'");
      }
      tokens.push_back({kind, std::string(1, static_cast<char>(c)), i++});
    }
  }
  tokens.push_back({Tok::End, "", text.size()});
  return tokens;
}

bool is_keyword(const Token& t) {
  if (t.kind != Tok::Ident) return false;
  auto word = to_lower_utf8(t.text);
  return word == "select" || word == "distinct" || word == "from" ||
         word == "where" || word == "and" || word == "or";
}

class SelectParser {
 public:
  SelectParser(std::string_view text, const db::SchemaCatalog& schema)
      : tokens_(tokenize(text)), schema_(schema) {}

  SelectQuery parse() {
    SelectQuery q;
    expect_keyword("select");
    if (accept_keyword("distinct")) q.distinct = true;

    std::vector<std::pair<std::string, std::size_t>> columns;
    if (peek().kind == Tok::Star) {
      next();
    } else {
      do {
        const auto& t = expect_name("column name");
        columns.emplace_back(t.text, t.offset);
      } while (accept(Tok::Comma));
    }

    expect_keyword("from");
    const auto& table_tok = expect_name("table name");
    table_ = schema_.resolve(table_tok.text);
    if (!table_)
      throw Error(ErrorCode::UnknownRelation, "unknown table '" + table_tok.text + "'",
                  {table_tok.offset});
    q.table = table_->name;
    for (const auto& [name, offset] : columns) q.columns.push_back(resolve_column(name, offset));

    if (accept_keyword("where")) q.where = parse_or();
    accept(Tok::Semicolon);
    if (peek().kind != Tok::End) syntax_error(peek().offset, "unexpected '" + peek().text + "'");
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }

  bool accept_keyword(std::string_view kw) {
    if (peek().kind != Tok::Ident || to_lower_utf8(peek().text) != kw) return false;
    next();
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) {
      std::string upper(kw);
      for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      syntax_error(peek().offset, "expected " + upper);
    }
  }

  const Token& expect_name(const char* what) {
    if (peek().kind != Tok::Ident || is_keyword(peek()))
      syntax_error(peek().offset, std::string("expected ") + what);
    return next();
  }

  std::string resolve_column(const std::string& name, std::size_t offset) const {
    auto resolved = table_->resolve_column(name);
    if (!resolved)
      throw Error(ErrorCode::UnknownColumn,
                  "table " + table_->name + " has no column '" + name + "'", {offset});
    return *resolved;
  }

  Predicate parse_or() {
    std::vector<Predicate> operands{parse_and()};
    while (accept_keyword("or")) operands.push_back(parse_and());
    return combine(Predicate::Kind::Or, std::move(operands));
  }

  Predicate parse_and() {
    std::vector<Predicate> operands{parse_primary()};
    while (accept_keyword("and")) operands.push_back(parse_primary());
    return combine(Predicate::Kind::And, std::move(operands));
  }

  Predicate parse_primary() {
    if (accept(Tok::LParen)) {
      auto inner = parse_or();
      if (!accept(Tok::RParen)) syntax_error(peek().offset, "expected ')'");
      return inner;
    }
    const auto& col = expect_name("column name");
    auto column = resolve_column(col.text, col.offset);
    if (!accept(Tok::Equals)) syntax_error(peek().offset, "expected '='");
    return Predicate::compare(std::move(column), parse_literal());
  }

  Literal parse_literal() {
    const auto& t = peek();
    if (t.kind == Tok::String) return next().text;
    if (t.kind != Tok::Number) syntax_error(t.offset, "expected a literal");
    next();
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (t.text.find('.') == std::string::npos) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last) syntax_error(t.offset, "integer literal out of range");
      return v;
    }
    double d = 0;
    auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec != std::errc{} || ptr != last) syntax_error(t.offset, "malformed decimal literal");
    return d;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const db::SchemaCatalog& schema_;
  const db::TableSchema* table_ = nullptr;
};

std::size_t source_position(const QueryIntent& intent, std::string_view symbol) {
  for (const auto& s : intent.sources)
    if (s.entry.symbol_id == symbol) return s.position;
  return 0;
}

}  // namespace

Predicate Predicate::compare(std::string column, Literal value) {
  Predicate p;
  p.comparison = Comparison{std::move(column), std::move(value)};
  return p;
}

Predicate Predicate::all_of(std::vector<Predicate> operands) {
  if (operands.empty()) throw std::invalid_argument("AND needs at least one operand");
  return combine(Kind::And, std::move(operands));
}

Predicate Predicate::any_of(std::vector<Predicate> operands) {
  if (operands.empty()) throw std::invalid_argument("OR needs at least one operand");
  return combine(Kind::Or, std::move(operands));
}

std::optional<std::string_view> relation_table(std::string_view symbol) noexcept {
  return lookup(kRelations, symbol);
}

std::optional<std::string_view> attribute_column(std::string_view symbol) noexcept {
  return lookup(kAttributes, symbol);
}

SqlQuery generate(const QueryIntent& intent, const db::SchemaCatalog& schema) {
  auto table_name = relation_table(intent.relation);
  const db::TableSchema* table = table_name ? schema.find(*table_name) : nullptr;
  if (!table)
    throw Error(ErrorCode::UnknownRelation,
                "relation symbol '" + intent.relation + "' has no table in the schema",
                {source_position(intent, intent.relation)});

  std::vector<std::string> columns;
  if (!intent.all_attributes) {
    for (const auto& attr : intent.attributes) {
      auto column = attribute_column(attr);
      if (!column || !table->column_index(*column))
        throw Error(ErrorCode::UnknownColumn,
                    "table " + table->name + " has no column for attribute " + attr +
                        (column ? " (" + std::string(*column) + ")" : std::string{}),
                    {source_position(intent, attr)});
      columns.emplace_back(*column);
    }
  }

  switch (intent.operation) {
    case QueryOperation::Select:
      return SelectQuery{false, std::move(columns), table->name, std::nullopt};
    case QueryOperation::Insert: {
      InsertQuery q{table->name, {}};
      for (const auto& c : table->columns) q.columns.push_back(c.name);
      return q;
    }
    case QueryOperation::Delete:
      return DeleteQuery{table->name, std::nullopt};
    case QueryOperation::Create:
      return CreateQuery{table->name, table->columns};
    case QueryOperation::All:
      break;
  }
  throw std::invalid_argument("ALL is not a standalone query operation");
}

std::string render(const Literal& literal) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          std::string out = "'";
          for (char c : v) {
            if (c == '\'') out += '\'';
            out += c;
          }
          return out + "'";
        } else if constexpr (std::is_same_v<T, double>) {
          std::array<char, 512> buf{};
          auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                         std::chars_format::fixed);
          std::string out(buf.data(), ptr);
          if (out.find('.') == std::string::npos) out += ".0";
          return out;
        } else {
          return std::to_string(v);
        }
      },
      literal);
}

std::string render(const Predicate& predicate) {
  switch (predicate.kind) {
    case Predicate::Kind::Compare:
      return predicate.comparison.column + " = " + render(predicate.comparison.value);
    case Predicate::Kind::And: {
      std::string out;
      for (const auto& op : predicate.operands) {
        if (!out.empty()) out += " AND ";
        out += op.kind == Predicate::Kind::Or ? "(" + render(op) + ")" : render(op);
      }
      return out;
    }
    case Predicate::Kind::Or: {
      std::string out;
      for (const auto& op : predicate.operands) {
        if (!out.empty()) out += " OR ";
        out += render(op);
      }
      return out;
    }
  }
  return {};
}

std::string render(const SqlQuery& query) {
  struct Renderer {
    std::string operator()(const SelectQuery& q) const {
      std::string out = "SELECT ";
      if (q.distinct) out += "DISTINCT ";
      out += q.columns.empty() ? std::string("*") : join(q.columns);
      return out + " FROM " + q.table + render_where(q.where) + ";";
    }
    std::string operator()(const InsertQuery& q) const {
      std::vector<std::string> placeholders(q.columns.size(), "?");
      return "INSERT INTO " + q.table + " (" + join(q.columns) + ") VALUES (" +
             join(placeholders) + ");";
    }
    std::string operator()(const DeleteQuery& q) const {
      return "DELETE FROM " + q.table + render_where(q.where) + ";";
    }
    std::string operator()(const CreateQuery& q) const {
      std::vector<std::string> defs;
      for (const auto& c : q.columns) {
        std::string type(db::to_string(c.type));
        for (auto& ch : type) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        defs.push_back(c.name + " " + type);
      }
      return "CREATE TABLE " + q.table + " (" + join(defs) + ");";
    }
  };
  return std::visit(Renderer{}, query);
}

SelectQuery parse_select(std::string_view text, const db::SchemaCatalog& schema) {
  return SelectParser(text, schema).parse();
}

}  // namespace narql::sql
