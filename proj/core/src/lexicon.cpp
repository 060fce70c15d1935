#include "narql/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "narql/error.hpp"

namespace narql {

namespace {

bool is_valid_symbol_id(std::string_view id, SymbolClass cls) {
  if (id.size() < 2 || id.front() != symbol_prefix(cls)) return false;
  return std::all_of(id.begin() + 1, id.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

void validate(const LexiconEntry& entry, std::size_t line) {
  auto fail = [&](const std::string& what) {
    std::string where = line ? "line " + std::to_string(line) + ": " : std::string{};
    throw Error(ErrorCode::ParseError, where + what,
                line ? std::vector<std::size_t>{line} : std::vector<std::size_t>{});
  };
  if (entry.surface.empty()) fail("empty surface word");
  if (std::any_of(entry.surface.begin(), entry.surface.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; }))
    fail("surface word '" + entry.surface + "' contains whitespace");
  if (to_lower_utf8(entry.surface) != entry.surface)
    fail("surface word '" + entry.surface + "' is not lowercase");
  if (!is_valid_symbol_id(entry.symbol_id, entry.cls))
    fail("symbol id '" + entry.symbol_id + "' does not match class " +
         std::string(to_string(entry.cls)));
  if (entry.language.empty()) fail("missing language tag");
  if (entry.operation) {
    bool all_word = entry.cls == SymbolClass::AttributeTerm &&
                    *entry.operation == QueryOperation::All;
    bool verb = entry.cls == SymbolClass::QueryVerb &&
                *entry.operation != QueryOperation::All;
    if (!all_word && !verb)
      fail("operation " + std::string(to_string(*entry.operation)) +
           " not allowed on " + std::string(to_string(entry.cls)));
  }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::vector<LexiconEntry> parse_rows(std::istream& in) {
  std::vector<LexiconEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    auto parse_error = [&](const std::string& what) {
      return Error(ErrorCode::ParseError,
                   "line " + std::to_string(line_no) + ": " + what, {line_no});
    };
    auto fields = split_tabs(line);
    if (fields.size() != 5)
      throw parse_error("expected 5 tab-separated fields, found " +
                        std::to_string(fields.size()));

    LexiconEntry entry;
    entry.surface = std::string(fields[0]);
    entry.symbol_id = std::string(fields[1]);
    auto cls = parse_symbol_class(fields[2]);
    if (!cls) throw parse_error("unknown symbol class '" + std::string(fields[2]) + "'");
    entry.cls = *cls;
    entry.language = std::string(fields[3]);
    if (fields[4] != "-") {
      auto op = parse_query_operation(fields[4]);
      if (!op) throw parse_error("unknown operation '" + std::string(fields[4]) + "'");
      entry.operation = op;
    }
    validate(entry, line_no);
    if (!seen.emplace(entry.surface, entry.symbol_id).second)
      throw Error(ErrorCode::DuplicateEntry,
                  "line " + std::to_string(line_no) + ": duplicate entry '" +
                      entry.surface + "' -> " + entry.symbol_id,
                  {line_no});
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

std::string_view to_string(SymbolClass cls) noexcept {
  switch (cls) {
    case SymbolClass::QueryVerb: return "QueryVerb";
    case SymbolClass::AttributeTerm: return "AttributeTerm";
    case SymbolClass::RelationTerm: return "RelationTerm";
  }
  return "?";
}

std::string_view to_string(QueryOperation op) noexcept {
  switch (op) {
    case QueryOperation::Select: return "Select";
    case QueryOperation::All: return "All";
    case QueryOperation::Create: return "Create";
    case QueryOperation::Insert: return "Insert";
    case QueryOperation::Delete: return "Delete";
  }
  return "?";
}

std::optional<SymbolClass> parse_symbol_class(std::string_view text) noexcept {
  if (text == "QueryVerb") return SymbolClass::QueryVerb;
  if (text == "AttributeTerm") return SymbolClass::AttributeTerm;
  if (text == "RelationTerm") return SymbolClass::RelationTerm;
  return std::nullopt;
}

std::optional<QueryOperation> parse_query_operation(std::string_view text) noexcept {
  if (text == "Select") return QueryOperation::Select;
  if (text == "All") return QueryOperation::All;
  if (text == "Create") return QueryOperation::Create;
  if (text == "Insert") return QueryOperation::Insert;
  if (text == "Delete") return QueryOperation::Delete;
  return std::nullopt;
}

char symbol_prefix(SymbolClass cls) noexcept {
  switch (cls) {
    case SymbolClass::QueryVerb: return 'a';
    case SymbolClass::AttributeTerm: return 'b';
    case SymbolClass::RelationTerm: return 'c';
  }
  return '?';
}

std::string to_lower_utf8(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + ('a' - 'A'));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE map to U+00E0..U+00FE, except U+00D7 (multiplication sign).
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97)
        out[i + 1] = static_cast<char>(next + 0x20);
      ++i;
    }
  }
  return out;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    validate(e, 0);
    if (!seen.emplace(e.surface, e.symbol_id).second)
      throw Error(ErrorCode::DuplicateEntry,
                  "duplicate entry '" + e.surface + "' -> " + e.symbol_id);
    index_[e.surface].push_back(i);
  }
}

std::vector<LexiconEntry> Lexicon::classify(std::string_view word) const {
  std::vector<LexiconEntry> found;
  auto it = index_.find(to_lower_utf8(word));
  if (it == index_.end()) return found;
  found.reserve(it->second.size());
  for (auto i : it->second) found.push_back(entries_[i]);
  return found;
}

std::map<std::string, std::size_t> Lexicon::language_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : entries_) ++counts[e.language];
  return counts;
}

std::string Lexicon::render() const {
  std::string out = "# surface\tsymbol\tclass\tlanguage\toperation\n";
  for (const auto& e : entries_) {
    out += e.surface;
    out += '\t';
    out += e.symbol_id;
    out += '\t';
    out += to_string(e.cls);
    out += '\t';
    out += e.language;
    out += '\t';
    out += e.operation ? std::string(to_string(*e.operation)) : std::string("-");
    out += '\n';
  }
  return out;
}

Lexicon load_lexicon(std::istream& source) { return Lexicon(parse_rows(source)); }

Lexicon load_lexicon(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_lexicon(in);
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon file " + path.string());
  return load_lexicon(in);
}

std::optional<QueryOperation> operation_of(const LexiconEntry& entry) noexcept {
  return entry.operation;
}

}  // namespace narql
