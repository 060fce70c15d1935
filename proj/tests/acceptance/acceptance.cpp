// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "select_fixture.hpp"
#include "narql/database.hpp"
#include "narql/jfa.hpp"
#include "narql/pipeline.hpp"
#include "narql/sql.hpp"

using namespace narql;
using Clock = std::chrono::steady_clock;

namespace {

const char* const kAfrikaans = "Ek will al die customer besonderhede vind";
const char* const kZulu = "Ngifuna ukuthola yonke imininingwane ya ma customer";

struct Verdict {
  bool pass;
  std::string detail;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::map<std::string, std::string> classified(const TranslationReport& r) {
  std::map<std::string, std::string> out;
  for (const auto& s : r.resolved) out[r.tokens.at(s.position).normalized] = s.entry.symbol_id;
  return out;
}

Verdict golden(const char* text, const std::map<std::string, std::string>& expected) {
  const auto& lex = testing::bundled_lexicon();
  const auto& schema = db::SchemaCatalog::chinook();
  translate(text, lex, schema);  // warm-up
  double worst = 0;
  TranslationReport r;
  for (int i = 0; i < 50; ++i) {
    auto t0 = Clock::now();
    r = translate(text, lex, schema);
    worst = std::max(worst, ms_since(t0));
  }
  std::ostringstream d;
  auto got = classified(r);
  d << "symbols=" << got.size() << " sql=\"" << r.sql << "\" worst=" << worst << "ms";
  bool ok = r.ok() && got == expected && r.sql == "SELECT * FROM Customer;" && worst < 10.0;
  return {ok, d.str()};
}

Verdict chain_structure() {
  std::vector<jfa::Symbol> w{"b23", "c2", "a12"};
  auto m = jfa::chain_machine(w);
  jfa::Machine expected({"I", "J", "K", "L"}, {"b23", "c2", "a12"},
                        {{"I", "b23", "J"}, {"J", "c2", "K"}, {"K", "a12", "L"}}, "I", {"L"});
  return {m == expected, "rules=" + std::to_string(m.rules().size()) + " start=" + m.start() +
                             " finals=" + m.finals().front()};
}

Verdict permutations() {
  const auto& lex = testing::bundled_lexicon();
  const auto& schema = db::SchemaCatalog::chinook();
  int accepted = 0, same = 0, total = 0;
  for (const char* text : {kAfrikaans, kZulu}) {
    auto base = translate(text, lex, schema);
    if (!base.ok()) return {false, std::string("baseline failed for ") + text};
    auto word = base.recognition->word;
    // surfaces of the recognised words, in the same order as `word`
    std::vector<std::string> surfaces;
    for (const auto& s : base.recognition->symbols) surfaces.push_back(base.tokens[s.position].normalized);
    std::vector<std::size_t> idx{0, 1, 2};
    do {
      ++total;
      jfa::Word permuted;
      std::string narration;
      for (auto i : idx) {
        permuted.push_back(word[i]);
        narration += surfaces[i] + " ";
      }
      accepted += jfa::accepts(base.recognition->machine, permuted);
      auto r = translate(narration, lex, schema);
      same += r.ok() && r.recognition->intent.same_request(base.recognition->intent) && r.sql == base.sql;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return {total == 12 && accepted == 12 && same == 12,
          "accepted=" + std::to_string(accepted) + "/12 identical_intent=" + std::to_string(same) + "/12"};
}

jfa::Machine random_machine(std::mt19937& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::size_t nq = 1 + pick(5), na = 1 + pick(4), nr = 1 + pick(6);
  std::vector<jfa::State> q;
  for (std::size_t i = 0; i < nq; ++i) q.push_back("q" + std::to_string(i));
  std::vector<jfa::Symbol> sigma;
  for (std::size_t i = 0; i < na; ++i) sigma.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<jfa::Rule> rules;
  for (std::size_t i = 0; i < nr; ++i) rules.push_back({q[pick(nq)], sigma[pick(na)], q[pick(nq)]});
  std::vector<jfa::State> finals;
  for (const auto& s : q)
    if (pick(2) == 0) finals.push_back(s);
  return jfa::Machine(q, sigma, rules, q[0], finals);
}

Verdict oracle_equivalence() {
  std::mt19937 rng(500);
  auto t0 = Clock::now();
  std::size_t words = 0, disagreements = 0, accepted = 0;
  for (int i = 0; i < 500; ++i) {
    auto m = random_machine(rng);
    std::vector<jfa::Word> layer{{}};
    for (std::size_t len = 0; len <= 5; ++len) {
      for (const auto& w : layer) {
        bool a = jfa::accepts(m, w);
        disagreements += a != jfa::parikh_accepts(m, w);
        accepted += a;
        ++words;
      }
      std::vector<jfa::Word> next;
      for (const auto& w : layer)
        for (const auto& s : m.alphabet()) {
          auto x = w;
          x.push_back(s);
          next.push_back(std::move(x));
        }
      layer = std::move(next);
    }
  }
  double secs = ms_since(t0) / 1000.0;
  std::ostringstream d;
  d << "machines=500 words=" << words << " accepted=" << accepted << " disagreements=" << disagreements
    << " time=" << secs << "s";
  return {disagreements == 0 && secs < 60.0, d.str()};
}

Verdict keyword_table() {
  const std::vector<std::pair<QueryOperation, std::vector<const char*>>> table{
      {QueryOperation::Select, {"Ukuthola", "Thola", "Ngtholele", "Fumana", "Ngitholela", "Vind", "Kies"}},
      {QueryOperation::All, {"Al", "Alle", "Alles", "Konke", "Yonke", "Yothe", "Vhothe"}},
      {QueryOperation::Create, {"Skep", "Usika", "Dala"}},
      {QueryOperation::Insert, {"Faka", "Plaas", "Ulonga"}},
      {QueryOperation::Delete, {"Susa", "Lees", "Verywyder", "Utomola", "Ubvisa", "Vhothe"}},
  };
  int total = 0;
  std::string misses;
  for (const auto& [op, words] : table)
    for (const char* w : words) {
      ++total;
      auto found = testing::bundled_lexicon().classify(w);
      bool hit = std::any_of(found.begin(), found.end(),
                             [&](const LexiconEntry& e) { return operation_of(e) == op; });
      if (!hit) misses += std::string(" ") + w + "->" + std::string(to_string(op));
    }
  return {misses.empty(), "keywords=" + std::to_string(total) + " misses=" + (misses.empty() ? "0" : misses)};
}

Verdict executor_oracle() {
  std::mt19937 rng(200);
  testing::TempDir dir;
  auto people = testing::random_people(rng, 200);
  dir.write("People.csv", testing::people_csv(people));
  auto db = db::Database::load_seed(dir.path(), testing::people_schema());
  if (db.table("People").rows.size() != 200) return {false, "fixture did not load 200 rows"};
  int agree = 0, total = 0;
  std::map<int, int> per_form;
  for (int i = 0; i < 400; ++i) {
    auto form = static_cast<testing::SelectForm>(i % 4);
    auto c = testing::draw_case(rng, form, people);
    auto rs = db.select(sql::parse_select(c.sql, db.schema()));
    ++total;
    if (rs.columns == c.columns && rs.rows == c.expected) {
      ++agree;
      ++per_form[i % 4];
    }
  }
  std::ostringstream d;
  d << "rows=200 queries=" << total << " agree=" << agree << " (star=" << per_form[0]
    << " distinct=" << per_form[1] << " and=" << per_form[2] << " or=" << per_form[3] << ")";
  return {agree == total, d.str()};
}

#ifdef NARQL_CLI_BINARY
std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(NARQL_CLI_BINARY) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Verdict end_to_end() {
  auto expected = testing::csv_data_lines(testing::seed_dir() / "Customer.csv");
  std::string args = std::string("--translate '") + kAfrikaans + "' --output json";
  auto [code1, out1] = run_cli(args);
  auto [code2, out2] = run_cli(args);
  auto j = nlohmann::json::parse(out1, nullptr, false);
  if (j.is_discarded() || !j["result"].is_object()) return {false, "no JSON result (exit " + std::to_string(code1) + ")"};
  auto rows = j["result"]["row_count"].get<std::size_t>();
  std::ostringstream d;
  d << "exit=" << code1 << " rows=" << rows << " csv_lines=" << expected
    << " byte_stable=" << (out1 == out2 ? "yes" : "no");
  return {code1 == 0 && code2 == 0 && rows == expected && j["result"]["rows"].size() == expected && out1 == out2,
          d.str()};
}
#endif

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Verdict()> check;
  };
  std::vector<Criterion> criteria{
      {"AC1", "afrikaans narration: classification, SQL, < 10 ms",
       [] { return golden(kAfrikaans, {{"al", "b23"}, {"customer", "c2"}, {"vind", "a12"}}); }},
      {"AC2", "zulu narration: classification, SQL, < 10 ms",
       [] { return golden(kZulu, {{"ukuthola", "a3"}, {"yonke", "b24"}, {"customer", "c2"}}); }},
      {"AC3", "chain machine structure for [b23, c2, a12]", chain_structure},
      {"AC4", "all 6 permutations accepted with identical intent", permutations},
      {"AC5", "accepts == parikh_accepts on 500 random machines, < 60 s", oracle_equivalence},
      {"AC6", "operation keyword table fully mapped", keyword_table},
      {"AC7", "select forms agree with brute-force rescan on 200 rows", executor_oracle},
#ifdef NARQL_CLI_BINARY
      {"AC8", "CLI --translate row count == Customer.csv data lines, JSON byte-stable", end_to_end},
#endif
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << "  " << c.name << "  [" << v.detail << "]\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
