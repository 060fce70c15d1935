#include "narql/schema.hpp"

#include <algorithm>

#include "narql/lexicon.hpp"

namespace narql::db {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && to_lower_utf8(a) == to_lower_utf8(b);
}

TableSchema table(std::string name, std::vector<Column> columns,
                  std::vector<std::string> key) {
  return TableSchema{std::move(name), std::move(columns), std::move(key)};
}

constexpr auto Int = ColumnType::Integer;
constexpr auto Text = ColumnType::Text;
constexpr auto Dec = ColumnType::Decimal;

}  // namespace

std::string_view to_string(ColumnType type) noexcept {
  switch (type) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Text: return "text";
    case ColumnType::Decimal: return "decimal";
  }
  return "?";
}

std::optional<std::size_t> TableSchema::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == column) return i;
  return std::nullopt;
}

std::optional<std::string> TableSchema::resolve_column(std::string_view column) const {
  for (const auto& c : columns)
    if (iequals(c.name, column)) return c.name;
  return std::nullopt;
}

const TableSchema* SchemaCatalog::find(std::string_view name) const {
  auto it = std::find_if(tables_.begin(), tables_.end(),
                         [&](const TableSchema& t) { return t.name == name; });
  return it == tables_.end() ? nullptr : &*it;
}

const TableSchema* SchemaCatalog::resolve(std::string_view name) const {
  auto it = std::find_if(tables_.begin(), tables_.end(),
                         [&](const TableSchema& t) { return iequals(t.name, name); });
  return it == tables_.end() ? nullptr : &*it;
}

const SchemaCatalog& SchemaCatalog::chinook() {
  static const SchemaCatalog catalog({
      table("Employee",
            {{"EmployeeID", Int}, {"LastName", Text}, {"FirstName", Text},
             {"Title", Text}, {"ReportsTo", Int}, {"BirthDate", Text},
             {"HireDate", Text}, {"Address", Text}, {"City", Text},
             {"State", Text}, {"Country", Text}, {"PostalCode", Text},
             {"Phone", Text}, {"Fax", Text}, {"Email", Text}},
            {"EmployeeID"}),
      table("Genre", {{"GenreID", Int}, {"Name", Text}}, {"GenreID"}),
      table("Customer",
            {{"CustomerID", Int}, {"FirstName", Text}, {"LastName", Text},
             {"Company", Text}, {"Address", Text}, {"City", Text},
             {"State", Text}, {"Country", Text}, {"PostalCode", Text},
             {"Phone", Text}, {"Fax", Text}, {"Email", Text},
             {"SupportRepID", Int}},
            {"CustomerID"}),
      table("MediaType", {{"MediaTypeID", Int}, {"Name", Text}}, {"MediaTypeID"}),
      table("Track",
            {{"TrackID", Int}, {"Name", Text}, {"AlbumID", Int},
             {"MediaTypeID", Int}, {"GenreID", Int}, {"Composer", Text},
             {"Milliseconds", Int}, {"Bytes", Int}, {"UnitPrice", Dec}},
            {"TrackID"}),
      table("InvoiceLine",
            {{"InvoiceLineID", Int}, {"InvoiceID", Int}, {"TrackID", Int},
             {"UnitPrice", Dec}, {"Quantity", Int}},
            {"InvoiceLineID"}),
      table("Invoice",
            {{"InvoiceID", Int}, {"CustomerID", Int}, {"InvoiceDate", Text},
             {"BillingAddress", Text}, {"BillingCity", Text},
             {"BillingState", Text}, {"BillingCountry", Text},
             {"BillingPostalCode", Text}, {"Total", Dec}},
            {"InvoiceID"}),
      table("Playlist", {{"PlaylistID", Int}, {"Name", Text}}, {"PlaylistID"}),
      table("PlaylistTrack", {{"PlaylistID", Int}, {"TrackID", Int}},
            {"PlaylistID", "TrackID"}),
      table("Album", {{"AlbumID", Int}, {"Title", Text}, {"ArtistID", Int}},
            {"AlbumID"}),
      table("Artist", {{"ArtistID", Int}, {"Name", Text}}, {"ArtistID"}),
  });
  return catalog;
}

}  // namespace narql::db
