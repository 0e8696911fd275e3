#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "folk/digest.hpp"
#include "folk/lexicon.hpp"

namespace folk::testing {

inline std::filesystem::path source_dir() { return FOLK_SOURCE_DIR; }
inline std::filesystem::path fixture_dir() { return source_dir() / "data" / "fixture"; }
inline std::filesystem::path test_data_dir() { return source_dir() / "tests" / "data"; }

inline std::string fixture_text(const std::string& name) { return read_file((fixture_dir() / name).string()); }

/// The bundled fixture lexicon and tables; `min_count` overrides the rollup threshold.
inline Lexicon fixture_lexicon(long min_count = 5) {
  std::istringstream lex(fixture_text("lexicon.tsv"));
  std::istringstream aliases(fixture_text("aliases.tsv"));
  std::istringstream exclusions(fixture_text("exclusions.txt"));
  std::istringstream targets(fixture_text("rollup_targets.txt"));
  LexiconTables tables;
  tables.aliases = load_alias_table(aliases);
  tables.exclusions = load_word_list(exclusions);
  tables.rollup_targets = load_word_list(targets);
  tables.min_count = min_count;
  return Lexicon(load_lexicon_tsv(lex), "animal.n.01", std::move(tables));
}

}  // namespace folk::testing
