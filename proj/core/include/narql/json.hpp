#pragma once

#include <string>

#include "narql/lexicon.hpp"
#include "narql/pipeline.hpp"
#include "narql/schema.hpp"

// Wire formats shared by the CLI and the HTTP service. All documents are
// single-line JSON with a fixed key order, so equal inputs give equal bytes.
namespace narql::json {

std::string report(const TranslationReport& report);

/// {"tables":[{"name","primary_key","columns":[{"name","type"}]}]}
std::string schema(const db::SchemaCatalog& catalog);

/// [{"tag","word_count"}] sorted by tag.
std::string languages(const Lexicon& lexicon);

std::string result(const db::ExecutionResult& result);

}  // namespace narql::json
