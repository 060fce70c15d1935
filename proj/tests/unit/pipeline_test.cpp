#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "narql/error.hpp"
#include "narql/pipeline.hpp"
#include "narql/schema.hpp"

using namespace narql;
using narql::testing::bundled_lexicon;

namespace {

const char* const kAfrikaans = "Ek will al die customer besonderhede vind";
const char* const kZulu = "Ngifuna ukuthola yonke imininingwane ya ma customer";

using Words = std::vector<std::string>;

QueryIntent intent_of(const Words& words) {
  auto tokens = classify_stream(words, bundled_lexicon());
  return extract_intent(tokens);
}

ErrorCode failure_of(const std::string& text) {
  auto r = translate(text, bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(r.error.has_value());
  return r.error->code;
}

std::vector<std::pair<std::string, std::string>> recognised(const std::vector<ClassifiedToken>& tokens) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& t : tokens)
    if (t.recognized()) out.emplace_back(t.normalized, t.candidates.front().symbol_id);
  return out;
}

}  // namespace

TEST_CASE("preprocess examples") {
  CHECK(preprocess(kAfrikaans) == Words{"ek", "will", "al", "die", "customer", "besonderhede", "vind"});
  CHECK(preprocess(kZulu) == Words{"ngifuna", "ukuthola", "yonke", "imininingwane", "ya", "ma", "customer"});
  CHECK(preprocess("").empty());
  CHECK(preprocess("   \t\n ").empty());
}

TEST_CASE("preprocess trims punctuation and keeps diacritics") {
  CHECK(preprocess("\"Vind\" al, die (customer)!") == Words{"vind", "al", "die", "customer"});
  CHECK(preprocess("Wys  my   ... rekords?") == Words{"wys", "my", "rekords"});
  CHECK(preprocess("Vertoon ÈÉN rëkord") == Words{"vertoon", "èén", "rëkord"});
  CHECK(preprocess("invoice_item's") == Words{"invoice_item's"});
  CHECK(preprocess("'customer'") == Words{"customer"});
}

TEST_CASE("classify_stream marks the lexicon words") {
  auto af = classify_stream(preprocess(kAfrikaans), bundled_lexicon());
  CHECK(af.size() == 7);
  CHECK(recognised(af) == std::vector<std::pair<std::string, std::string>>{
                              {"al", "b23"}, {"customer", "c2"}, {"vind", "a12"}});
  auto zu = classify_stream(preprocess(kZulu), bundled_lexicon());
  CHECK(recognised(zu) == std::vector<std::pair<std::string, std::string>>{
                              {"ukuthola", "a3"}, {"yonke", "b24"}, {"customer", "c2"}});
  for (std::size_t i = 0; i < zu.size(); ++i) CHECK(zu[i].position == i);

  auto none = classify_stream(Words{"hello", "world"}, bundled_lexicon());
  CHECK(none.size() == 2);
  CHECK(std::none_of(none.begin(), none.end(), [](const auto& t) { return t.recognized(); }));
}

TEST_CASE("classify_stream keeps every candidate of an ambiguous word") {
  auto t = classify_stream(Words{"vhothe"}, bundled_lexicon());
  REQUIRE(t.size() == 1);
  CHECK(t[0].ambiguous());
  CHECK(t[0].candidates.size() == 2);
}

TEST_CASE("intents of the two narrations") {
  for (const char* text : {kAfrikaans, kZulu}) {
    auto intent = intent_of(preprocess(text));
    CHECK(intent.operation == QueryOperation::Select);
    CHECK(intent.relation == "c2");
    CHECK(intent.all_attributes);
    CHECK(intent.attributes.empty());
  }
}

TEST_CASE("insert without attributes defaults to ALL") {
  auto intent = intent_of(Words{"faka", "customer"});
  CHECK(intent.operation == QueryOperation::Insert);
  CHECK(intent.relation == "c2");
  CHECK(intent.all_attributes);
  auto del = intent_of(Words{"susa", "album"});
  CHECK(del.operation == QueryOperation::Delete);
  CHECK(del.all_attributes);
  auto create = intent_of(Words{"skep", "artist"});
  CHECK(create.operation == QueryOperation::Create);
}

TEST_CASE("named attributes") {
  auto intent = intent_of(Words{"vind", "lastname", "firstname", "employee"});
  CHECK_FALSE(intent.all_attributes);
  CHECK(intent.attributes == std::vector<std::string>{"b1", "b2"});
  auto all = intent_of(Words{"vind", "lastname", "alle", "employee"});
  CHECK(all.all_attributes);
  CHECK(all.attributes.empty());
}

TEST_CASE("duplicate symbols collapse to their first occurrence") {
  auto r = translate("ukuthola yonke customer yonke customer ukuthola", bundled_lexicon(),
                     db::SchemaCatalog::chinook());
  REQUIRE(r.ok());
  CHECK(r.recognition->word == jfa::Word{"a3", "b24", "c2"});
  CHECK(r.recognition->symbols.size() == 3);
  CHECK(r.recognition->symbols[2].position == 2);
}

TEST_CASE("the chain follows narration order") {
  auto r = translate(kAfrikaans, bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(r.ok());
  CHECK(r.recognition->word == jfa::Word{"b23", "c2", "a12"});
  CHECK(r.recognition->machine.rules() ==
        std::vector<jfa::Rule>{{"I", "b23", "J"}, {"J", "c2", "K"}, {"K", "a12", "L"}});
  auto z = translate(kZulu, bundled_lexicon(), db::SchemaCatalog::chinook());
  CHECK(z.recognition->machine.rules() ==
        std::vector<jfa::Rule>{{"I", "a3", "J"}, {"J", "b24", "K"}, {"K", "c2", "L"}});
}

TEST_CASE("ambiguity resolution") {
  // susa is a9 and a22, both Delete: file order picks a9
  auto r = translate("susa customer", bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(r.ok());
  CHECK(r.resolved.at(0).entry.symbol_id == "a9");

  // vhothe after a Select verb is the ALL word
  auto sel = translate("vind vhothe customer", bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(sel.ok());
  CHECK(sel.recognition->intent.operation == QueryOperation::Select);
  CHECK(sel.recognition->intent.all_attributes);

  // on its own with a relation, vhothe fills the verb slot
  auto del = translate("vhothe album", bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(del.ok());
  CHECK(del.recognition->intent.operation == QueryOperation::Delete);
}

TEST_CASE("pipeline error codes") {
  CHECK(failure_of("hello world") == ErrorCode::NoVerb);
  CHECK(failure_of("") == ErrorCode::NoVerb);
  CHECK(failure_of("al customer") == ErrorCode::NoVerb);
  CHECK(failure_of("wys al customer") == ErrorCode::UnmappedVerb);
  CHECK(failure_of("opdateer customer") == ErrorCode::UnmappedVerb);
  CHECK(failure_of("vind faka al customer") == ErrorCode::ConflictingVerbs);
  CHECK(failure_of("vind al") == ErrorCode::NoRelation);
  CHECK(failure_of("vind al customer employee") == ErrorCode::MultipleRelations);
  CHECK(failure_of("vind customer") == ErrorCode::NoAttribute);
  CHECK(failure_of("vind trackid customer") == ErrorCode::UnknownColumn);
}

TEST_CASE("error stages and positions") {
  auto r = translate("vind trackid customer", bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(r.error);
  CHECK(r.error->stage == Stage::Generate);
  CHECK(r.error->positions == std::vector<std::size_t>{1});
  CHECK(r.sql.empty());

  auto m = translate("vind al customer employee", bundled_lexicon(), db::SchemaCatalog::chinook());
  REQUIRE(m.error);
  CHECK(m.error->stage == Stage::Intent);
  CHECK(m.error->positions == std::vector<std::size_t>{2, 3});
}

TEST_CASE("translate produces SQL for both narrations") {
  for (const char* text : {kAfrikaans, kZulu}) {
    auto r = translate(text, bundled_lexicon(), db::SchemaCatalog::chinook());
    CHECK(r.ok());
    CHECK(r.sql == "SELECT * FROM Customer;");
    CHECK(r.recognition->derivation.steps.size() == 3);
    CHECK(r.tokens.front().surface == std::string(text).substr(0, r.tokens.front().surface.size()));
  }
}

TEST_CASE("translate is deterministic") {
  auto a = translate(kAfrikaans, bundled_lexicon(), db::SchemaCatalog::chinook());
  auto b = translate(kAfrikaans, bundled_lexicon(), db::SchemaCatalog::chinook());
  CHECK(a.sql == b.sql);
  CHECK(a.recognition->word == b.recognition->word);
}

TEST_CASE("permuting the narration never changes the request") {
  for (const char* text : {kAfrikaans, kZulu, "vind lastname firstname city employee"}) {
    auto words = preprocess(text);
    auto base = intent_of(words);
    std::sort(words.begin(), words.end());
    int n = 0;
    do {
      CHECK(intent_of(words).same_request(base));
      ++n;
    } while (std::next_permutation(words.begin(), words.end()) && n < 5040);
    CHECK(n > 1);
  }
}

TEST_CASE("irrelevant words never change the request") {
  std::mt19937 rng(3);
  const Words noise{"ek", "die", "asseblief", "ngicela", "ya", "ma", "lo", "please", "the"};
  for (const char* text : {kAfrikaans, kZulu, "plaas track", "vind city country customer"}) {
    auto words = preprocess(text);
    auto base = intent_of(words);
    for (int trial = 0; trial < 50; ++trial) {
      auto w = words;
      int extra = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < extra; ++i) {
        auto at = w.begin() + static_cast<long>(rng() % (w.size() + 1));
        w.insert(at, noise[rng() % noise.size()]);
      }
      CHECK(intent_of(w).same_request(base));
    }
  }
}

TEST_CASE("accepted intents come from accepted words") {
  for (const char* text : {kAfrikaans, kZulu, "faka customer", "vind title lastname employee"}) {
    auto r = translate(text, bundled_lexicon(), db::SchemaCatalog::chinook());
    REQUIRE(r.ok());
    CHECK(jfa::accepts(r.recognition->machine, r.recognition->word));
    CHECK(jfa::parikh_accepts(r.recognition->machine, r.recognition->word));
  }
}

TEST_CASE("recognize rejects an empty symbol list") {
  std::vector<RecognizedSymbol> none;
  CHECK_THROWS_AS(recognize(none), Error);
}
