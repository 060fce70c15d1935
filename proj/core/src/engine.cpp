#include "narql/engine.hpp"

#include <mutex>

namespace narql {

Engine::Engine(Lexicon lexicon, db::Database database)
    : lexicon_(std::move(lexicon)), database_(std::move(database)) {}

TranslationReport Engine::run(std::string_view text, const RunOptions& options) {
  auto report = translate(text, lexicon_, database_.schema());
  if (!report.ok() || !report.query || options.policy == ExecutionPolicy::Never) return report;

  const auto& query = *report.query;
  if (options.policy == ExecutionPolicy::SkipDelete &&
      std::holds_alternative<sql::DeleteQuery>(query)) {
    report.execution_note = "DELETE statements are not executed in this mode";
    return report;
  }

  try {
    if (const auto* select = std::get_if<sql::SelectQuery>(&query)) {
      std::shared_lock lock(mutex_);
      report.result = database_.select(*select);
    } else {
      std::unique_lock lock(mutex_);
      report.result = database_.execute(query, options.execute);
    }
    report.executed = true;
  } catch (const Error& e) {
    report.error = StageError{Stage::Execute, e.code(), e.what(), e.positions()};
  }
  return report;
}

db::ResultSet Engine::select(const sql::SelectQuery& query) const {
  std::shared_lock lock(mutex_);
  return database_.select(query);
}

std::size_t Engine::row_count(std::string_view table) const {
  std::shared_lock lock(mutex_);
  return database_.table(table).rows.size();
}

}  // namespace narql
