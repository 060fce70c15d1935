#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "narql/lexicon.hpp"

namespace narql::testing {

inline std::filesystem::path source_dir() { return NARQL_TEST_SOURCE_DIR; }
inline std::filesystem::path lexicon_path() { return source_dir() / "lexicon" / "za.tsv"; }
inline std::filesystem::path seed_dir() { return source_dir() / "seed"; }

inline const Lexicon& bundled_lexicon() {
  static const Lexicon lexicon = load_lexicon_file(lexicon_path());
  return lexicon;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Data lines of a CSV file (all lines after the header that are not blank).
/// Assumes no quoted field spans a line break, which holds for the seed.
inline std::size_t csv_data_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::size_t n = 0;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.find_first_not_of(" \r") != std::string::npos) ++n;
  }
  return n;
}

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("narql-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace narql::testing
