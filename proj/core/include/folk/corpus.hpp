#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "folk/error.hpp"

namespace folk {

/// Index of one tale type in the animal-tale range, e.g. 60, 111A, 201D*.
struct AtuId {
  int number = 1;
  /// Empty, or one uppercase letter optionally followed by '*', or a bare '*'.
  std::string variant;

  /// Throws DomainError when the number or variant is malformed.
  static AtuId make(int number, std::string variant = {});
  /// Parses "60", "111A", "201D*" (no "ATU" prefix).
  static AtuId parse(std::string_view text);

  std::string str() const { return std::to_string(number) + variant; }

  friend auto operator<=>(const AtuId&, const AtuId&) = default;
  friend bool operator==(const AtuId&, const AtuId&) = default;
};

enum class Category {
  kWildAnimals,
  kWildAndDomestic,
  kWildAndHumans,
  kDomesticAnimals,
  kOtherAnimalsAndObjects,
};

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::kWildAnimals, Category::kWildAndDomestic, Category::kWildAndHumans,
    Category::kDomesticAnimals, Category::kOtherAnimalsAndObjects};

/// Range lookup over the five animal-tale subcategories (1-99, 100-149, 150-199,
/// 200-219, 220-299). Throws DomainError outside 1..299.
Category category_of(int number);

/// Stable machine key, e.g. "wild_and_domestic".
std::string_view category_key(Category c);
/// Human-readable label used in tables and plots.
std::string_view category_label(Category c);
Category category_from_key(std::string_view key);

/// The 23 Thompson divisions, in column order.
inline constexpr std::array<char, 23> kMotifLetters = {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H',
                                                       'J', 'K', 'L', 'M', 'N', 'P', 'Q', 'R',
                                                       'S', 'T', 'U', 'V', 'W', 'X', 'Z'};

bool is_motif_letter(char c);
/// Column of `c` in kMotifLetters; -1 if not a motif letter.
int motif_letter_index(char c);

/// One TMI tag: letter, leading number, optional dotted sub-path or numeric range.
/// K371.1 -> {K, 371, {1}}; K1700-2099 -> {K, 1700, {}, 2099}.
struct MotifCode {
  char letter = 'A';
  int major = 0;
  std::vector<int> sub;
  std::optional<int> range_end;

  std::string str() const;

  friend bool operator==(const MotifCode&, const MotifCode&) = default;
};

/// Scans free text for motif tokens, in order of appearance, duplicates kept.
/// Near-misses (letters I/O/Y, reversed ranges) are skipped and reported in
/// `diagnostics` when non-null; `line` is the line number the text starts on.
std::vector<MotifCode> extract_motif_codes(std::string_view text, Diagnostics* diagnostics = nullptr,
                                           std::size_t line = 0);

/// Trailing "Combinations:", "Remarks:" or "Literature:" block, kept verbatim.
struct Section {
  std::string name;
  std::string text;

  friend bool operator==(const Section&, const Section&) = default;
};

struct TaleType {
  AtuId id;
  std::string title;
  Category category = Category::kWildAnimals;
  /// Content lines joined by '\n'; never includes the trailing sections.
  std::string description;
  std::vector<MotifCode> motifs;
  std::vector<Section> sections;
  /// The record has no tale content of its own (a bare "See ATU xx" or an empty body).
  bool is_reference_only = false;

  /// Title and description, the text every analysis scans.
  std::string analysis_text() const { return title + "\n" + description; }

  friend bool operator==(const TaleType&, const TaleType&) = default;
};

struct Corpus {
  std::vector<TaleType> tales;
  /// Hex SHA-256 of the bytes the corpus was parsed from.
  std::string source_digest;

  std::vector<const TaleType*> analyzable() const;
  std::size_t analyzable_count() const;
};

/// True when `body`, whitespace-normalized, is only "see ATU <id>" plus optional punctuation.
bool is_cross_reference(std::string_view body);

Corpus parse_corpus(std::istream& in, Diagnostics* diagnostics = nullptr);
Corpus parse_corpus(std::string_view text, Diagnostics* diagnostics = nullptr);

/// Canonical catalogue text: one record per block, single blank-line separators.
std::string serialize_corpus(const Corpus& corpus);

/// Tales are the corpus content; the digest depends on the source bytes and is
/// compared separately.
bool same_tales(const Corpus& a, const Corpus& b);

std::string corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(std::string_view json);

}  // namespace folk
