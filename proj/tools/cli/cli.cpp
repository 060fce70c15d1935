#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "narql/json.hpp"
#include "narql/paths.hpp"

namespace narql::cli {

namespace {

constexpr const char* kReset = "\033[0m";

const char* class_color(SymbolClass cls) {
  switch (cls) {
    case SymbolClass::QueryVerb: return "\033[32m";      // green
    case SymbolClass::AttributeTerm: return "\033[31m";  // red
    case SymbolClass::RelationTerm: return "\033[34m";   // blue
  }
  return "";
}

std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string joined(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += sep;
    out += i;
  }
  return out;
}

void print_schema(const db::SchemaCatalog& schema, std::ostream& out) {
  for (const auto& t : schema.tables()) {
    std::vector<std::string> cols;
    for (const auto& c : t.columns) cols.push_back(c.name + " " + std::string(db::to_string(c.type)));
    out << t.name << " (" << joined(cols, ", ") << ")\n";
  }
}

void print_languages(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& [tag, count] : lexicon.language_counts())
    out << tag << '\t' << count << " words\n";
}

RunOptions run_options(const CliConfig& config, ExecutionPolicy policy) {
  RunOptions options;
  options.policy = policy;
  options.execute.allow_full_delete = config.allow_full_delete;
  return options;
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv,
                        const std::optional<std::string>& lexicon_env, std::ostream& out,
                        std::ostream& err) {
  CLI::App app{"Translate local-language narrations into SQL and run them", "narql"};
  CliConfig config;
  std::string lexicon, seed, output = "text", batch;
  app.add_option("--lexicon", lexicon, "Lexicon file (default: bundled lexicon/za.tsv)");
  app.add_option("--seed", seed, "Seed directory with one CSV per table (default: bundled seed/)");
  auto* translate = app.add_option("--translate", config.text, "Translate one narration and exit");
  auto* batch_opt = app.add_option("--batch", batch, "Translate one narration per line, emit JSONL");
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--allow-full-delete", config.allow_full_delete,
               "Permit DELETE statements without WHERE to run");
  translate->excludes(batch_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (!lexicon.empty())
    config.lexicon_path = lexicon;
  else if (lexicon_env && !lexicon_env->empty())
    config.lexicon_path = *lexicon_env;
  else
    config.lexicon_path = default_lexicon_path();
  config.seed_path = seed.empty() ? default_seed_dir() : std::filesystem::path(seed);
  config.output = output == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (translate->count() > 0) {
    config.mode = Mode::Translate;
  } else if (batch_opt->count() > 0) {
    config.mode = Mode::Batch;
    config.batch_file = batch;
  }
  return config;
}

std::unique_ptr<Engine> load_engine(const CliConfig& config, std::ostream& err) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(config.lexicon_path, ec)) {
    err << "narql: lexicon file not found: " << config.lexicon_path.string() << '\n';
    return nullptr;
  }
  if (!std::filesystem::is_directory(config.seed_path, ec)) {
    err << "narql: seed directory not found: " << config.seed_path.string() << '\n';
    return nullptr;
  }
  try {
    auto lexicon = load_lexicon_file(config.lexicon_path);
    auto database = db::Database::load_seed(config.seed_path);
    return std::make_unique<Engine>(std::move(lexicon), std::move(database));
  } catch (const Error& e) {
    err << "narql: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "narql: " << e.what() << '\n';
  }
  return nullptr;
}

void print_result(const db::ExecutionResult& result, std::ostream& out) {
  if (const auto* m = std::get_if<db::MutationSummary>(&result)) {
    out << m->affected << " row(s) affected\n";
    return;
  }
  const auto& rs = std::get<db::ResultSet>(result);
  std::vector<std::size_t> width(rs.columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < rs.columns.size(); ++c) width[c] = display_width(rs.columns[c]);
  for (const auto& row : rs.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(db::to_string(row[c]));
      width[c] = std::max(width[c], display_width(line.back()));
    }
  }
  auto emit = [&](const std::vector<std::string>& values) {
    for (std::size_t c = 0; c < values.size(); ++c) {
      out << (c ? " | " : "") << values[c];
      if (c + 1 < values.size()) out << std::string(width[c] - display_width(values[c]), ' ');
    }
    out << '\n';
  };
  emit(rs.columns);
  for (std::size_t c = 0; c < width.size(); ++c)
    out << (c ? "-+-" : "") << std::string(width[c], '-');
  out << '\n';
  for (const auto& line : cells) emit(line);
  out << '(' << rs.rows.size() << (rs.rows.size() == 1 ? " row)\n" : " rows)\n");
}

void print_report(const TranslationReport& report, std::ostream& out, bool color) {
  out << "tokens:";
  for (const auto& t : report.tokens) {
    const LexiconEntry* entry = nullptr;
    for (const auto& r : report.resolved)
      if (r.position == t.position) entry = &r.entry;
    out << ' ';
    if (!entry) {
      out << t.surface;
    } else if (color) {
      out << class_color(entry->cls) << t.surface << kReset << '[' << entry->symbol_id << ']';
    } else {
      out << t.surface << '[' << entry->symbol_id << ']';
    }
  }
  out << '\n';

  if (report.recognition) {
    const auto& m = report.recognition->machine;
    std::vector<std::string> rules;
    for (const auto& r : m.rules()) rules.push_back(jfa::to_string(r));
    out << "machine: M = ({" << joined(m.states(), ", ") << "}, {" << joined(m.alphabet(), ", ")
        << "}, R, " << m.start() << ", {" << joined(m.finals(), ", ") << "})\n";
    out << "rules:   " << joined(rules, ", ") << '\n';
    out << "derivation:\n  " << jfa::to_string(report.recognition->derivation.initial) << '\n';
    for (const auto& step : report.recognition->derivation.steps)
      out << "  ~> " << jfa::to_string(step.config) << "   [" << jfa::to_string(step.rule)
          << "]\n";
  }
  if (report.query) out << "sql:     " << report.sql << '\n';
  if (report.error) {
    out << "error:   [" << to_string(report.error->stage) << "] "
        << to_string(report.error->code) << ": " << report.error->message << '\n';
  }
  if (!report.execution_note.empty()) out << "note:    " << report.execution_note << '\n';
  if (report.result) print_result(*report.result, out);
}

int run_translate(const CliConfig& config, Engine& engine, std::ostream& out) {
  auto report = engine.run(config.text, run_options(config, ExecutionPolicy::Always));
  if (config.output == OutputFormat::Json)
    out << json::report(report) << '\n';
  else
    print_report(report, out, config.color);
  return report.ok() ? kExitOk : kExitPipelineError;
}

int run_batch(const CliConfig& config, Engine& engine, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.batch_file, std::ios::binary);
  if (!in) {
    err << "narql: cannot read batch file " << config.batch_file.string() << '\n';
    return kExitFailure;
  }
  int status = kExitOk;
  std::string line;
  auto options = run_options(config, ExecutionPolicy::SkipDelete);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto report = engine.run(line, options);
    out << json::report(report) << '\n';
    if (!report.ok()) status = kExitPipelineError;
  }
  return status;
}

int run_repl(const CliConfig& config, Engine& engine, std::istream& in, std::ostream& out,
             bool interactive) {
  auto options = run_options(config, ExecutionPolicy::Always);
  if (interactive)
    out << "narql: type a narration, or :schema, :lang, :help, :quit\n";
  std::string line;
  while (true) {
    if (interactive) out << "narql> " << std::flush;
    if (!std::getline(in, line)) break;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string cmd = line.substr(first, last - first + 1);

    if (cmd == ":quit" || cmd == ":q") break;
    if (cmd == ":schema") {
      print_schema(engine.schema(), out);
    } else if (cmd == ":lang") {
      print_languages(engine.lexicon(), out);
    } else if (cmd == ":help") {
      out << ":schema  list tables and columns\n:lang    list lexicon languages\n"
             ":quit    leave\nanything else is translated as a narration\n";
    } else if (cmd.front() == ':') {
      out << "unknown command " << cmd << " (try :help)\n";
    } else {
      auto report = engine.run(cmd, options);
      if (config.output == OutputFormat::Json)
        out << json::report(report) << '\n';
      else
        print_report(report, out, config.color);
    }
  }
  return kExitOk;
}

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive) {
  auto engine = load_engine(config, err);
  if (!engine) return kExitFailure;
  switch (config.mode) {
    case Mode::Translate: return run_translate(config, *engine, out);
    case Mode::Batch: return run_batch(config, *engine, out, err);
    case Mode::Repl: return run_repl(config, *engine, in, out, interactive);
  }
  return kExitFailure;
}

}  // namespace narql::cli
