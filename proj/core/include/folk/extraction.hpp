#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folk/corpus.hpp"
#include "folk/lexicon.hpp"

namespace folk {

struct Token {
  /// Lowercased surface form ("plays", "mice").
  std::string text;
  /// Singular form after suffix rules and the irregulars table ("play", "mouse").
  std::string lemma;
  /// Parenthesis nesting depth, 0 outside parentheses.
  int depth = 0;
  /// Ordinal of the innermost parenthetical group holding the token; -1 at depth 0.
  int group = -1;
};

/// Lowercase singularization: irregulars table, then -ies -> -y, -(x|ch|sh|ss|zz)es -> stem,
/// then a plain trailing -s (not after s, u or i, and never on words of three letters or fewer).
std::string singularize(std::string_view word);

/// Word tokens (letters/digits with internal apostrophes, possessive 's dropped);
/// punctuation only drives the parenthesis annotations.
std::vector<Token> tokenize(std::string_view text);

/// Unordered pair of canonical names, stored with first < second.
using NamePair = std::pair<std::string, std::string>;
NamePair make_pair_sorted(std::string a, std::string b);

/// Maps a token to a canonical animal name, or "" when the token is not an animal.
using MentionResolver = std::function<std::string(const Token&)>;

/// Parenthetical alternatives: an animal at depth 0 followed, with at most one token in
/// between, by a depth-1 group made only of animals and separator words yields one pair per
/// (outer, inner) combination. Self-pairs are dropped. Result is sorted.
std::vector<NamePair> detect_substitutions(const std::vector<Token>& tokens, const MentionResolver& resolve);
/// Same, resolving through `lex` (aliases only, no rollup).
std::vector<NamePair> detect_substitutions(const std::vector<Token>& tokens, const Lexicon& lex);

/// Resolves a token against the lexicon: the singular lemma if it is an animal, otherwise the
/// surface form; stopwords never match. Returns the alias-canonical name or "".
std::string resolve_token(const Token& token, const Lexicon& lex);

enum class CountMode { kOccurrences, kTalePresence };
std::string_view count_mode_key(CountMode m);
CountMode count_mode_from_key(std::string_view key);

struct ExtractionOptions {
  /// Unit of the counts the low-frequency rollup threshold is compared against.
  CountMode count_mode = CountMode::kOccurrences;
  bool detect_substitutions = true;
};

struct Mention {
  AtuId tale_id;
  /// Matched lexicon lemma.
  std::string lemma;
  /// Name after aliasing and rollup.
  std::string canonical;
  std::size_t token_index = 0;
  bool in_parenthetical = false;

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct MentionTable {
  std::vector<Mention> mentions;
  /// Every analyzable tale has an entry, possibly empty.
  std::map<AtuId, std::set<std::string>> per_tale_sets;
  /// Sorted multiset of substitution pairs per tale (after rollup).
  std::map<AtuId, std::vector<NamePair>> substitution_pairs;
  /// Corpus-wide mention count per canonical name (multiplicity counted).
  std::map<std::string, long> counts;
  /// Rollup applied on top of the alias stage.
  RollupMap rollup;

  friend bool operator==(const MentionTable&, const MentionTable&) = default;
};

MentionTable extract_mentions(const Corpus& corpus, const Lexicon& lex, const ExtractionOptions& options = {});

std::string mentions_to_json(const MentionTable& table);
MentionTable mentions_from_json(std::string_view json);

}  // namespace folk
