#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "folk/matrix.hpp"
#include "folk/motif_stats.hpp"

namespace folk {

struct PcaOptions {
  /// Divide centered columns by their sample standard deviation (zero-variance columns stay 0).
  bool standardize = false;
  /// Sweep limit for the Jacobi iteration.
  int max_sweeps = 100;
};

struct PcaResult {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  /// rows x k: left singular vectors scaled by the singular values.
  Matrix scores;
  /// cols x k: right singular vectors, orthonormal columns.
  Matrix loadings;
  /// Non-increasing, length k.
  std::vector<double> singular_values;
  std::vector<double> explained_ratio;
  std::vector<double> cumulative_ratio;
  std::size_t k = 0;
  /// Sum of squares of the centered (and optionally standardized) matrix.
  double total_variance = 0;
  int sweeps = 0;
};

/// Largest number of components a rows x cols input supports: min(rows - 1, cols).
std::size_t max_components(std::size_t rows, std::size_t cols);

/// PCA of `data` after column centering, via cyclic one-sided Jacobi SVD.
/// Sign convention: the largest-magnitude entry of each loading column is non-negative
/// (ties go to the lowest row index).
/// Throws DomainError for fewer than 2 rows, k outside [1, max_components], or a matrix with
/// no variance; NumericalError if the sweep limit is hit.
PcaResult pca(const Matrix& data, std::size_t k, const PcaOptions& options = {});
PcaResult pca(const MotifMatrix& m, std::size_t k, const PcaOptions& options = {});

struct BiplotPoint {
  std::string label;
  double x = 0;
  double y = 0;
};

struct Biplot {
  std::vector<BiplotPoint> points;
  std::vector<BiplotPoint> arrows;
  double loading_scale = 0;
};

/// Row points are the first two score columns; arrows are the first two loading columns times
/// `loading_scale`. The default scale makes the longest arrow 80% of the largest point radius.
Biplot biplot_coordinates(const PcaResult& r, std::optional<double> loading_scale = std::nullopt);

/// CSV emitters: scores (label,PC1..PCk), loadings (letter,PC1..PCk) and
/// ratios (component,singular_value,explained_ratio,cumulative_ratio).
std::string scores_to_csv(const PcaResult& r);
std::string loadings_to_csv(const PcaResult& r);
std::string ratios_to_csv(const PcaResult& r);

/// Rebuilds the biplot from persisted scores and loadings CSVs with the same scaling rule
/// as biplot_coordinates.
Biplot biplot_from_csv(std::string_view scores_csv, std::string_view loadings_csv,
                       std::optional<double> loading_scale = std::nullopt);

}  // namespace folk
