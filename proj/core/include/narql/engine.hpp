#pragma once

#include <shared_mutex>
#include <string_view>

#include "narql/database.hpp"
#include "narql/lexicon.hpp"
#include "narql/pipeline.hpp"

namespace narql {

enum class ExecutionPolicy {
  Never,       ///< translate only
  Always,      ///< execute whatever was generated
  SkipDelete,  ///< execute everything except DELETE
};

struct RunOptions {
  ExecutionPolicy policy = ExecutionPolicy::Always;
  db::ExecuteOptions execute;
};

/// Lexicon plus database behind a readers/single-writer lock. SELECTs run
/// under a shared lock; mutations take the exclusive lock, so readers never
/// see a partial mutation.
class Engine {
 public:
  Engine(Lexicon lexicon, db::Database database);

  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const db::SchemaCatalog& schema() const noexcept { return database_.schema(); }

  /// Translates `text` and, per the policy, executes the generated query.
  /// Execution failures land in the report with Stage::Execute.
  TranslationReport run(std::string_view text, const RunOptions& options = {});

  db::ResultSet select(const sql::SelectQuery& query) const;
  std::size_t row_count(std::string_view table) const;

 private:
  Lexicon lexicon_;
  db::Database database_;
  mutable std::shared_mutex mutex_;
};

}  // namespace narql
