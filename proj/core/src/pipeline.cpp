#include "narql/pipeline.hpp"

#include <algorithm>
#include <set>

namespace narql {

namespace {

constexpr std::string_view kPunctuation = ".,;:!?'\"()";

std::string normalize(std::string_view word) {
  auto first = word.find_first_not_of(kPunctuation);
  if (first == std::string_view::npos) return {};
  auto last = word.find_last_not_of(kPunctuation);
  return to_lower_utf8(word.substr(first, last - first + 1));
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> words;
  constexpr std::string_view ws = " \t\r\n\f\v";
  std::size_t i = 0;
  while (true) {
    i = text.find_first_not_of(ws, i);
    if (i == std::string_view::npos) break;
    auto end = text.find_first_of(ws, i);
    words.push_back(text.substr(i, end == std::string_view::npos ? end : end - i));
    if (end == std::string_view::npos) break;
    i = end;
  }
  return words;
}

bool is_verb(const LexiconEntry& e) { return e.cls == SymbolClass::QueryVerb; }

std::vector<std::size_t> positions_of(const std::vector<RecognizedSymbol>& symbols,
                                      SymbolClass cls) {
  std::vector<std::size_t> out;
  for (const auto& s : symbols)
    if (s.entry.cls == cls) out.push_back(s.position);
  return out;
}

}  // namespace

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Preprocess: return "preprocess";
    case Stage::Classify: return "classify";
    case Stage::Intent: return "intent";
    case Stage::Generate: return "generate";
    case Stage::Execute: return "execute";
  }
  return "?";
}

std::vector<std::string> preprocess(std::string_view text) {
  std::vector<std::string> words;
  for (auto raw : split_whitespace(text))
    if (auto w = normalize(raw); !w.empty()) words.push_back(std::move(w));
  return words;
}

std::vector<ClassifiedToken> classify_stream(std::span<const std::string> words,
                                             const Lexicon& lexicon) {
  std::vector<ClassifiedToken> tokens;
  tokens.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    ClassifiedToken t;
    t.surface = words[i];
    t.normalized = normalize(words[i]);
    if (!t.normalized.empty()) t.candidates = lexicon.classify(t.normalized);
    t.position = i;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<RecognizedSymbol> resolve_symbols(std::span<const ClassifiedToken> tokens) {
  std::vector<std::optional<LexiconEntry>> chosen(tokens.size());
  std::set<QueryOperation> verb_ops;
  bool verb_seen = false;
  auto note = [&](const LexiconEntry& e) {
    if (!is_verb(e)) return;
    verb_seen = true;
    if (e.operation) verb_ops.insert(*e.operation);
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].candidates.size() == 1) {
      chosen[i] = tokens[i].candidates.front();
      note(*chosen[i]);
    }
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].ambiguous()) continue;
    std::vector<const LexiconEntry*> consistent;
    for (const auto& c : tokens[i].candidates) {
      bool clashes = is_verb(c) && c.operation && !verb_ops.empty() &&
                     !verb_ops.contains(*c.operation);
      if (!clashes) consistent.push_back(&c);
    }
    if (consistent.empty())
      for (const auto& c : tokens[i].candidates) consistent.push_back(&c);

    const LexiconEntry* pick = consistent.front();
    if (!verb_seen) {
      auto verb = std::find_if(consistent.begin(), consistent.end(),
                               [](const LexiconEntry* e) { return is_verb(*e); });
      if (verb != consistent.end()) pick = *verb;
    }
    chosen[i] = *pick;
    note(*pick);
  }

  std::vector<RecognizedSymbol> out;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (chosen[i]) out.push_back(RecognizedSymbol{*chosen[i], tokens[i].position});
  return out;
}

Recognition recognize(std::span<const RecognizedSymbol> resolved) {
  std::vector<RecognizedSymbol> symbols;
  for (const auto& s : resolved) {
    bool seen = std::any_of(symbols.begin(), symbols.end(), [&](const RecognizedSymbol& o) {
      return o.entry.symbol_id == s.entry.symbol_id;
    });
    if (!seen) symbols.push_back(s);
  }

  std::vector<const RecognizedSymbol*> verbs, relations;
  for (const auto& s : symbols) {
    if (s.entry.cls == SymbolClass::QueryVerb) verbs.push_back(&s);
    if (s.entry.cls == SymbolClass::RelationTerm) relations.push_back(&s);
  }

  if (verbs.empty()) throw Error(ErrorCode::NoVerb, "no query verb recognised");
  std::vector<QueryOperation> ops;
  for (const auto* v : verbs)
    if (v->entry.operation && std::find(ops.begin(), ops.end(), *v->entry.operation) == ops.end())
      ops.push_back(*v->entry.operation);
  if (ops.empty())
    throw Error(ErrorCode::UnmappedVerb,
                "query verb '" + verbs.front()->entry.surface + "' has no query operation",
                positions_of(symbols, SymbolClass::QueryVerb));
  if (ops.size() > 1)
    throw Error(ErrorCode::ConflictingVerbs,
                "query verbs ask for different operations (" + std::string(to_string(ops[0])) +
                    ", " + std::string(to_string(ops[1])) + ")",
                positions_of(symbols, SymbolClass::QueryVerb));

  if (relations.empty()) throw Error(ErrorCode::NoRelation, "no relation recognised");
  if (relations.size() > 1)
    throw Error(ErrorCode::MultipleRelations,
                "only a single relation is supported, found " + std::to_string(relations.size()),
                positions_of(symbols, SymbolClass::RelationTerm));

  QueryIntent intent;
  intent.operation = ops.front();
  intent.relation = relations.front()->entry.symbol_id;
  for (const auto& s : symbols) {
    if (s.entry.cls != SymbolClass::AttributeTerm) continue;
    if (s.entry.operation == QueryOperation::All)
      intent.all_attributes = true;
    else
      intent.attributes.push_back(s.entry.symbol_id);
  }
  if (intent.all_attributes) {
    intent.attributes.clear();
  } else if (intent.attributes.empty()) {
    if (intent.operation == QueryOperation::Select)
      throw Error(ErrorCode::NoAttribute, "no attribute or ALL word recognised");
    intent.all_attributes = true;
  }
  intent.sources = symbols;

  jfa::Word word;
  for (const auto& s : symbols) word.push_back(s.entry.symbol_id);
  auto machine = jfa::chain_machine(word);
  if (!jfa::accepts(machine, word))
    throw Error(ErrorCode::Rejected, "the automaton rejects the recognised symbols");
  auto derivation = jfa::derive(machine, word);

  return Recognition{std::move(symbols), std::move(word), std::move(machine),
                     std::move(derivation), std::move(intent)};
}

QueryIntent extract_intent(std::span<const ClassifiedToken> tokens) {
  auto resolved = resolve_symbols(tokens);
  return recognize(resolved).intent;
}

TranslationReport translate(std::string_view text, const Lexicon& lexicon,
                            const db::SchemaCatalog& schema) {
  TranslationReport report;
  report.text = std::string(text);

  std::vector<std::string> words;
  for (auto raw : split_whitespace(text))
    if (!normalize(raw).empty()) words.emplace_back(raw);
  report.tokens = classify_stream(words, lexicon);
  report.resolved = resolve_symbols(report.tokens);

  try {
    report.recognition = recognize(report.resolved);
  } catch (const Error& e) {
    report.error = StageError{Stage::Intent, e.code(), e.what(), e.positions()};
    return report;
  }

  try {
    report.query = sql::generate(report.recognition->intent, schema);
    report.sql = sql::render(*report.query);
  } catch (const Error& e) {
    report.error = StageError{Stage::Generate, e.code(), e.what(), e.positions()};
  }
  return report;
}

}  // namespace narql
