#include "narql/json.hpp"

#include <json.hpp>

namespace narql::json {

namespace {

using nlohmann::ordered_json;

// Narrations may carry invalid UTF-8; replace it rather than fail.
std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

ordered_json value_json(const db::Value& v) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return x;
      },
      v);
}

ordered_json literal_json(const sql::Literal& v) {
  return std::visit([](const auto& x) -> ordered_json { return x; }, v);
}

ordered_json predicate_json(const sql::Predicate& p) {
  using Kind = sql::Predicate::Kind;
  if (p.kind == Kind::Compare)
    return {{"op", "="},
            {"column", p.comparison.column},
            {"value", literal_json(p.comparison.value)}};
  ordered_json operands = ordered_json::array();
  for (const auto& op : p.operands) operands.push_back(predicate_json(op));
  return {{"op", p.kind == Kind::And ? "AND" : "OR"}, {"operands", std::move(operands)}};
}

ordered_json optional_predicate(const std::optional<sql::Predicate>& p) {
  return p ? predicate_json(*p) : ordered_json(nullptr);
}

ordered_json query_json(const sql::SqlQuery& query) {
  struct Visitor {
    ordered_json operator()(const sql::SelectQuery& q) const {
      return {{"type", "select"},
              {"distinct", q.distinct},
              {"columns", q.columns.empty() ? ordered_json("*") : ordered_json(q.columns)},
              {"table", q.table},
              {"where", optional_predicate(q.where)}};
    }
    ordered_json operator()(const sql::InsertQuery& q) const {
      return {{"type", "insert"}, {"table", q.table}, {"columns", q.columns}};
    }
    ordered_json operator()(const sql::DeleteQuery& q) const {
      return {{"type", "delete"}, {"table", q.table}, {"where", optional_predicate(q.where)}};
    }
    ordered_json operator()(const sql::CreateQuery& q) const {
      ordered_json cols = ordered_json::array();
      for (const auto& c : q.columns)
        cols.push_back({{"name", c.name}, {"type", db::to_string(c.type)}});
      return {{"type", "create"}, {"table", q.table}, {"columns", std::move(cols)}};
    }
  };
  return std::visit(Visitor{}, query);
}

ordered_json result_object(const db::ExecutionResult& result) {
  if (const auto* m = std::get_if<db::MutationSummary>(&result))
    return {{"affected", m->affected}};
  const auto& rs = std::get<db::ResultSet>(result);
  ordered_json rows = ordered_json::array();
  for (const auto& row : rs.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(value_json(v));
    rows.push_back(std::move(r));
  }
  return {{"columns", rs.columns}, {"row_count", rs.rows.size()}, {"rows", std::move(rows)}};
}

ordered_json token_json(const ClassifiedToken& t, const std::vector<RecognizedSymbol>& resolved) {
  const LexiconEntry* entry = nullptr;
  for (const auto& r : resolved)
    if (r.position == t.position) entry = &r.entry;
  if (!entry && !t.candidates.empty()) entry = &t.candidates.front();

  ordered_json candidates = ordered_json::array();
  for (const auto& c : t.candidates) candidates.push_back(c.symbol_id);
  ordered_json j{{"position", t.position},
                 {"surface", t.surface},
                 {"normalized", t.normalized}};
  if (entry) {
    j["symbol"] = entry->symbol_id;
    j["class"] = to_string(entry->cls);
    j["language"] = entry->language;
    j["operation"] = entry->operation ? ordered_json(to_string(*entry->operation)) : nullptr;
  } else {
    j["symbol"] = nullptr;
    j["class"] = nullptr;
    j["language"] = nullptr;
    j["operation"] = nullptr;
  }
  j["candidates"] = std::move(candidates);
  return j;
}

ordered_json machine_json(const jfa::Machine& m) {
  ordered_json rules = ordered_json::array();
  for (const auto& r : m.rules())
    rules.push_back({{"from", r.from}, {"symbol", r.symbol}, {"to", r.to}});
  return {{"states", m.states()},
          {"alphabet", m.alphabet()},
          {"rules", std::move(rules)},
          {"start", m.start()},
          {"finals", m.finals()}};
}

ordered_json intent_json(const QueryIntent& intent) {
  ordered_json attrs = ordered_json::array();
  ordered_json columns = ordered_json::array();
  if (intent.all_attributes) {
    attrs.push_back("ALL");
    columns.push_back("*");
  }
  for (const auto& a : intent.attributes) {
    attrs.push_back(a);
    auto col = sql::attribute_column(a);
    columns.push_back(col ? ordered_json(std::string(*col)) : ordered_json(nullptr));
  }
  auto table = sql::relation_table(intent.relation);
  return {{"operation", to_string(intent.operation)},
          {"relation", intent.relation},
          {"table", table ? ordered_json(std::string(*table)) : ordered_json(nullptr)},
          {"attributes", std::move(attrs)},
          {"columns", std::move(columns)}};
}

}  // namespace

std::string report(const TranslationReport& r) {
  ordered_json j;
  j["text"] = r.text;

  ordered_json tokens = ordered_json::array();
  for (const auto& t : r.tokens) tokens.push_back(token_json(t, r.resolved));
  j["tokens"] = std::move(tokens);

  ordered_json derivation = ordered_json::array();
  if (r.recognition) {
    const auto& rec = *r.recognition;
    j["word"] = rec.word;
    j["machine"] = machine_json(rec.machine);
    j["machine_dot"] = jfa::to_dot(rec.machine);
    derivation.push_back({{"rule", nullptr},
                          {"configuration", jfa::to_string(rec.derivation.initial)}});
    for (const auto& step : rec.derivation.steps)
      derivation.push_back({{"rule", jfa::to_string(step.rule)},
                            {"configuration", jfa::to_string(step.config)}});
  } else {
    j["word"] = ordered_json::array();
    j["machine"] = nullptr;
    j["machine_dot"] = "";
  }
  j["derivation"] = std::move(derivation);
  j["intent"] = r.recognition ? intent_json(r.recognition->intent) : ordered_json(nullptr);
  j["query"] = r.query ? query_json(*r.query) : ordered_json(nullptr);
  j["sql"] = r.query ? ordered_json(r.sql) : ordered_json(nullptr);

  if (r.error) {
    j["error"] = {{"stage", to_string(r.error->stage)},
                  {"code", to_string(r.error->code)},
                  {"message", r.error->message},
                  {"language", "en"},
                  {"positions", r.error->positions}};
  } else {
    j["error"] = nullptr;
  }
  j["executed"] = r.executed;
  j["execution_note"] = r.execution_note;
  j["result"] = r.result ? result_object(*r.result) : ordered_json(nullptr);
  return dump(j);
}

std::string schema(const db::SchemaCatalog& catalog) {
  ordered_json tables = ordered_json::array();
  for (const auto& t : catalog.tables()) {
    ordered_json cols = ordered_json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", db::to_string(c.type)}});
    tables.push_back({{"name", t.name}, {"primary_key", t.primary_key}, {"columns", std::move(cols)}});
  }
  return dump(ordered_json{{"tables", std::move(tables)}});
}

std::string languages(const Lexicon& lexicon) {
  ordered_json out = ordered_json::array();
  for (const auto& [tag, count] : lexicon.language_counts())
    out.push_back({{"tag", tag}, {"word_count", count}});
  return dump(out);
}

std::string result(const db::ExecutionResult& r) { return dump(result_object(r)); }

}  // namespace narql::json
