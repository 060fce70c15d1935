#include "narql/paths.hpp"

namespace narql {

std::filesystem::path default_data_dir() {
  std::filesystem::path source{NARQL_SOURCE_DATA_DIR};
  std::error_code ec;
  if (std::filesystem::exists(source / "lexicon" / "za.tsv", ec)) return source;
  return std::filesystem::path{NARQL_INSTALL_DATA_DIR};
}

std::filesystem::path default_lexicon_path() { return default_data_dir() / "lexicon" / "za.tsv"; }

std::filesystem::path default_seed_dir() { return default_data_dir() / "seed"; }

}  // namespace narql
