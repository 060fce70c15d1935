#pragma once

#include <filesystem>

namespace narql {

/// Bundled data: the source tree when running from a build directory,
/// otherwise the install prefix's share/narql.
std::filesystem::path default_data_dir();
std::filesystem::path default_lexicon_path();  // <data>/lexicon/za.tsv
std::filesystem::path default_seed_dir();      // <data>/seed

}  // namespace narql
