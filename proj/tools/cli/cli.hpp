#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "narql/engine.hpp"

namespace narql::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;        ///< I/O or configuration problem
inline constexpr int kExitPipelineError = 2;  ///< a narration failed to translate or run

enum class Mode { Repl, Translate, Batch };
enum class OutputFormat { Text, Json };

struct CliConfig {
  std::filesystem::path lexicon_path;
  std::filesystem::path seed_path;
  Mode mode = Mode::Repl;
  OutputFormat output = OutputFormat::Text;
  bool allow_full_delete = false;
  bool color = false;
  std::string text;                  ///< --translate
  std::filesystem::path batch_file;  ///< --batch
};

/// Either a config or the exit code to stop with (help, usage error).
using ParseOutcome = std::variant<CliConfig, int>;

/// `lexicon_env` is the value of NARQL_LEXICON, if set.
ParseOutcome parse_args(int argc, const char* const* argv,
                        const std::optional<std::string>& lexicon_env, std::ostream& out,
                        std::ostream& err);

/// Loads lexicon and seed; on failure prints to `err` and returns null.
std::unique_ptr<Engine> load_engine(const CliConfig& config, std::ostream& err);

int run_translate(const CliConfig& config, Engine& engine, std::ostream& out);
int run_batch(const CliConfig& config, Engine& engine, std::ostream& out, std::ostream& err);
int run_repl(const CliConfig& config, Engine& engine, std::istream& in, std::ostream& out,
             bool interactive);

/// Loads the engine and dispatches on config.mode.
int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive);

/// Human-readable rendering of a report: tokens, automaton, SQL, result.
void print_report(const TranslationReport& report, std::ostream& out, bool color);

void print_result(const db::ExecutionResult& result, std::ostream& out);

}  // namespace narql::cli
