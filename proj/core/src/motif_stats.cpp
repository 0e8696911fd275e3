#include "folk/motif_stats.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "folk/csv.hpp"

namespace folk {

namespace {

constexpr std::size_t kLetters = kMotifLetters.size();

std::array<long, kLetters> tale_letters(const TaleType& tale, MotifUnit unit) {
  std::array<long, kLetters> counts{};
  for (const auto& m : tale.motifs) {
    int idx = motif_letter_index(m.letter);
    if (idx < 0) throw InvariantError("motif " + m.str() + " has a letter outside the index");
    if (unit == MotifUnit::kOccurrences) {
      ++counts[static_cast<std::size_t>(idx)];
    } else {
      counts[static_cast<std::size_t>(idx)] = 1;
    }
  }
  return counts;
}

std::vector<std::string> letter_header() {
  std::vector<std::string> header{"label"};
  for (char c : kMotifLetters) header.emplace_back(1, c);
  return header;
}

}  // namespace

std::string_view motif_unit_key(MotifUnit u) { return u == MotifUnit::kOccurrences ? "occurrences" : "per-tale"; }

MotifUnit motif_unit_from_key(std::string_view key) {
  if (key == "occurrences") return MotifUnit::kOccurrences;
  if (key == "per-tale") return MotifUnit::kPerTale;
  throw ValidationError("motif unit must be 'occurrences' or 'per-tale', got '" + std::string(key) + "'");
}

std::map<char, long> motif_letter_counts(const Corpus& corpus, MotifUnit unit) {
  std::map<char, long> out;
  for (char c : kMotifLetters) out[c] = 0;
  for (const TaleType* t : corpus.analyzable()) {
    auto counts = tale_letters(*t, unit);
    for (std::size_t i = 0; i < kLetters; ++i) out[kMotifLetters[i]] += counts[i];
  }
  return out;
}

MotifMatrix category_motif_matrix(const Corpus& corpus, MotifUnit unit) {
  MotifMatrix m;
  m.kind = MatrixKind::kRawCounts;
  m.values = Matrix(kAllCategories.size(), kLetters);
  for (Category c : kAllCategories) m.row_labels.emplace_back(category_label(c));
  for (const TaleType* t : corpus.analyzable()) {
    auto row = static_cast<std::size_t>(t->category);
    auto counts = tale_letters(*t, unit);
    for (std::size_t i = 0; i < kLetters; ++i) m.values(row, i) += static_cast<double>(counts[i]);
  }
  return m;
}

MotifMatrix to_relative(const MotifMatrix& m) {
  if (m.kind != MatrixKind::kRawCounts) throw DomainError("to_relative expects a raw-count matrix");
  MotifMatrix out = m;
  out.kind = MatrixKind::kRelative;
  for (std::size_t r = 0; r < out.values.rows(); ++r) {
    double sum = 0;
    for (double v : out.values.row(r)) sum += v;
    if (sum == 0) continue;
    for (double& v : out.values.row(r)) v /= sum;
  }
  return out;
}

MotifMatrix center_columns(const MotifMatrix& m) {
  if (m.kind == MatrixKind::kRawCounts) throw DomainError("center_columns expects a relative matrix");
  MotifMatrix out = m;
  out.kind = MatrixKind::kCentered;
  const std::size_t rows = out.values.rows();
  if (rows == 0) return out;
  for (std::size_t c = 0; c < out.values.cols(); ++c) {
    double mean = 0;
    for (std::size_t r = 0; r < rows; ++r) mean += out.values(r, c);
    mean /= static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) out.values(r, c) -= mean;
  }
  return out;
}

MotifMatrix animal_motif_matrix(const Corpus& corpus, const MentionTable& table, long min_freq, MotifUnit unit) {
  if (min_freq < 0) throw DomainError("min_freq must be >= 0");
  MotifMatrix m;
  m.kind = MatrixKind::kRawCounts;
  std::map<std::string, std::size_t> row_of;
  for (const auto& [name, count] : table.counts) {
    if (count > min_freq) {
      row_of[name] = m.row_labels.size();
      m.row_labels.push_back(name);
    }
  }
  m.values = Matrix(m.row_labels.size(), kLetters);
  for (const TaleType* t : corpus.analyzable()) {
    auto it = table.per_tale_sets.find(t->id);
    if (it == table.per_tale_sets.end()) continue;
    auto counts = tale_letters(*t, unit);
    for (const auto& name : it->second) {
      auto row = row_of.find(name);
      if (row == row_of.end()) continue;
      for (std::size_t i = 0; i < kLetters; ++i) m.values(row->second, i) += static_cast<double>(counts[i]);
    }
  }
  return m;
}

std::string motif_matrix_to_csv(const MotifMatrix& m) {
  return write_labeled_csv({letter_header(), m.row_labels, m.values});
}

MotifMatrix motif_matrix_from_csv(std::string_view csv, MatrixKind kind) {
  LabeledTable t = read_labeled_csv(csv);
  auto expected = letter_header();
  if (t.header.size() != expected.size() ||
      !std::equal(t.header.begin() + 1, t.header.end(), expected.begin() + 1)) {
    throw ValidationError("motif matrix CSV header must list the 23 motif letters in order");
  }
  return MotifMatrix{std::move(t.row_labels), std::move(t.values), kind};
}

std::string letter_counts_to_csv(const std::map<char, long>& counts) {
  Matrix row(1, kLetters);
  for (std::size_t i = 0; i < kLetters; ++i) {
    auto it = counts.find(kMotifLetters[i]);
    row(0, i) = it == counts.end() ? 0.0 : static_cast<double>(it->second);
  }
  return write_labeled_csv({letter_header(), {"total"}, row});
}

}  // namespace folk
