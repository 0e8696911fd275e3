#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "folk/corpus.hpp"
#include "folk/extraction.hpp"
#include "folk/matrix.hpp"

namespace folk {

enum class MatrixKind { kRawCounts, kRelative, kCentered };

/// Occurrences: a tale tagged K twice adds 2 to K. PerTale: letter presence per tale.
enum class MotifUnit { kOccurrences, kPerTale };
std::string_view motif_unit_key(MotifUnit u);
MotifUnit motif_unit_from_key(std::string_view key);

/// Rows are categories or animals; columns are always the 23 letters of kMotifLetters.
struct MotifMatrix {
  std::vector<std::string> row_labels;
  Matrix values;
  MatrixKind kind = MatrixKind::kRawCounts;

  friend bool operator==(const MotifMatrix&, const MotifMatrix&) = default;
};

/// All 23 letters are present as keys, zero when unused.
std::map<char, long> motif_letter_counts(const Corpus& corpus, MotifUnit unit = MotifUnit::kOccurrences);

/// Five rows in category order, labelled with category_label().
MotifMatrix category_motif_matrix(const Corpus& corpus, MotifUnit unit = MotifUnit::kOccurrences);

/// Each row divided by its sum; all-zero rows stay zero.
MotifMatrix to_relative(const MotifMatrix& m);

/// Subtracts each column's mean over rows. Accepts relative or already centered input.
MotifMatrix center_columns(const MotifMatrix& m);

/// Row per animal whose corpus-wide mention count exceeds `min_freq` (sorted by name).
/// A tale's motifs are credited to every animal present in it.
MotifMatrix animal_motif_matrix(const Corpus& corpus, const MentionTable& table, long min_freq,
                                MotifUnit unit = MotifUnit::kOccurrences);

std::string motif_matrix_to_csv(const MotifMatrix& m);
/// Header must be `label,A,B,...,Z` in the fixed letter order.
MotifMatrix motif_matrix_from_csv(std::string_view csv, MatrixKind kind);

/// Single-row CSV ("total") of motif_letter_counts.
std::string letter_counts_to_csv(const std::map<char, long>& counts);

}  // namespace folk
