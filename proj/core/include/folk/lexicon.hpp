#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "folk/error.hpp"

namespace folk {

struct Synset {
  /// WordNet byte offset ("00015388") or a symbolic name ("animal.n.01").
  std::string id;
  /// Lowercase lemmas; WordNet underscores become spaces.
  std::vector<std::string> words;
  std::vector<std::string> hypernyms;

  friend bool operator==(const Synset&, const Synset&) = default;
};

using SynsetMap = std::map<std::string, Synset>;

/// Rejects dangling hypernym references and hypernym cycles (ValidationError).
void validate_synsets(const SynsetMap& synsets);

/// Reads the WordNet 3.0 noun database (index.noun + data.noun). Hypernym edges come
/// from `@` and `@i` pointers; every other pointer is ignored. Lines starting with
/// two spaces are the license preamble.
SynsetMap load_wordnet_nouns(std::istream& index, std::istream& data);

/// `lemma<TAB>synset_id<TAB>hypernym_id` rows; an empty or "-" hypernym marks a root.
/// Repeated synset ids accumulate lemmas and hypernyms. '#' starts a comment line.
SynsetMap load_lexicon_tsv(std::istream& in);

/// `variant<TAB>canonical` rows.
std::map<std::string, std::string> load_alias_table(std::istream& in);
/// One lowercase entry per line (exclusions, rollup targets).
std::set<std::string> load_word_list(std::istream& in);

/// The hand-curated parts of animal canonicalization.
struct LexiconTables {
  std::map<std::string, std::string> aliases;
  std::set<std::string> rollup_targets;
  std::set<std::string> exclusions;
  long min_count = 5;
};

/// canonical name -> name it is reported under after low-frequency rollup.
using RollupMap = std::map<std::string, std::string>;

/// Immutable animal classifier over a hypernym graph.
class Lexicon {
 public:
  /// `root` is a synset id, or a lemma naming exactly one synset (e.g. "animal").
  Lexicon(SynsetMap synsets, std::string_view root, LexiconTables tables);

  /// Not excluded, and some synset of `lemma` reaches the root through hypernym edges
  /// (the root itself included).
  bool is_animal(std::string_view lemma) const;

  /// Alias lookup; unmapped lemmas are their own canonical name. Throws DomainError
  /// when `lemma` is not an animal.
  std::string canonicalize(std::string_view lemma) const;

  /// Names counted fewer than min_count times map to their nearest hypernym ancestor
  /// listed in rollup_targets (BFS by depth, ties to the smallest name); everything
  /// else, rollup targets included, maps to itself.
  RollupMap apply_rollup(const std::map<std::string, long>& counts) const;

  const SynsetMap& synsets() const { return synsets_; }
  const std::string& root_id() const { return root_; }
  const LexiconTables& tables() const { return tables_; }
  /// Synset ids containing `lemma`, in id order.
  const std::vector<std::string>& synsets_of(std::string_view lemma) const;

 private:
  bool reaches_root(const std::string& lemma) const;
  std::string nearest_target(const std::string& name) const;

  SynsetMap synsets_;
  std::string root_;
  LexiconTables tables_;
  std::unordered_map<std::string, std::vector<std::string>> lemma_index_;
  std::set<std::string> animal_synsets_;
};

}  // namespace folk
