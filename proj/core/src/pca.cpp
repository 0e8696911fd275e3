#include "folk/pca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "folk/csv.hpp"

namespace folk {

namespace {

constexpr double kConvergence = 1e-12;

// Center (and optionally scale) columns in place.
void prepare(Matrix& a, bool standardize) {
  const std::size_t m = a.rows();
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double mean = 0;
    for (std::size_t r = 0; r < m; ++r) mean += a(r, c);
    mean /= static_cast<double>(m);
    double ss = 0;
    for (std::size_t r = 0; r < m; ++r) {
      a(r, c) -= mean;
      ss += a(r, c) * a(r, c);
    }
    if (standardize) {
      double sd = std::sqrt(ss / static_cast<double>(m - 1));
      for (std::size_t r = 0; r < m; ++r) a(r, c) = sd > 0 ? a(r, c) / sd : 0.0;
    }
  }
}

// Hestenes one-sided Jacobi: rotates column pairs of `a` until they are mutually orthogonal,
// accumulating the rotations in `v`. Returns the number of sweeps.
int one_sided_jacobi(Matrix& a, Matrix& v, int max_sweeps) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  const double rotate_floor = static_cast<double>(std::max<std::size_t>(m, 1)) * eps;
  // Columns of a rank-deficient input shrink to rounding noise whose direction never settles;
  // below this norm a column counts as zero. Rotations preserve the Frobenius norm.
  double frobenius_sq = 0;
  for (double x : a.data()) frobenius_sq += x * x;
  const double noise = 64.0 * static_cast<double>(std::max(m, n)) * eps;
  const double negligible = frobenius_sq * noise * noise;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double worst = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        const double off = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, off);
        if (off <= rotate_floor) continue;
        const double zeta = (beta - alpha) / (2 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (worst < kConvergence) return sweep;
  }
  throw NumericalError("Jacobi SVD did not converge in " + std::to_string(max_sweeps) + " sweeps");
}

std::vector<std::string> pc_header(std::string first, std::size_t k) {
  std::vector<std::string> header{std::move(first)};
  for (std::size_t j = 1; j <= k; ++j) header.push_back("PC" + std::to_string(j));
  return header;
}

std::vector<std::string> default_labels(std::string_view prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace

std::size_t max_components(std::size_t rows, std::size_t cols) {
  return rows == 0 ? 0 : std::min(rows - 1, cols);
}

PcaResult pca(const Matrix& data, std::size_t k, const PcaOptions& options) {
  const std::size_t m = data.rows();
  const std::size_t n = data.cols();
  if (m < 2) throw DomainError("PCA needs at least 2 rows");
  if (k < 1 || k > max_components(m, n)) {
    throw DomainError("k = " + std::to_string(k) + " outside [1, " + std::to_string(max_components(m, n)) + "]");
  }
  for (double x : data.data()) {
    if (!std::isfinite(x)) throw DomainError("PCA input contains a non-finite value");
  }

  Matrix a = data;
  prepare(a, options.standardize);
  double total = 0;
  for (double x : a.data()) total += x * x;
  if (total == 0) throw DomainError("PCA input has zero variance after centering");

  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1;
  PcaResult r;
  r.sweeps = one_sided_jacobi(a, v, options.max_sweeps);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) ss += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(ss);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  double spectrum = 0;
  for (double s : sigma) spectrum += s * s;

  r.k = k;
  r.total_variance = total;
  r.scores = Matrix(m, k);
  r.loadings = Matrix(n, k);
  double cumulative = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = order[j];
    std::size_t pivot = 0;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v(i, src)) > best + 1e-9) {
        best = std::abs(v(i, src));
        pivot = i;
      }
    }
    const double sign = v(pivot, src) < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) r.loadings(i, j) = sign * v(i, src);
    for (std::size_t i = 0; i < m; ++i) r.scores(i, j) = sign * a(i, src);
    r.singular_values.push_back(sigma[src]);
    const double ratio = sigma[src] * sigma[src] / spectrum;
    cumulative += ratio;
    r.explained_ratio.push_back(ratio);
    r.cumulative_ratio.push_back(cumulative);
  }
  r.row_labels = default_labels("row", m);
  r.column_labels = default_labels("col", n);
  return r;
}

PcaResult pca(const MotifMatrix& mm, std::size_t k, const PcaOptions& options) {
  PcaResult r = pca(mm.values, k, options);
  r.row_labels = mm.row_labels;
  r.column_labels.clear();
  for (char c : kMotifLetters) r.column_labels.emplace_back(1, c);
  if (r.column_labels.size() != mm.values.cols()) r.column_labels = default_labels("col", mm.values.cols());
  return r;
}

namespace {

Biplot make_biplot(const std::vector<std::string>& row_labels, const Matrix& scores,
                   const std::vector<std::string>& column_labels, const Matrix& loadings,
                   std::optional<double> loading_scale) {
  if (scores.cols() < 2 || loadings.cols() < 2) throw DomainError("a biplot needs at least 2 components");
  Biplot b;
  double radius = 0;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    b.points.push_back({row_labels.at(i), scores(i, 0), scores(i, 1)});
    radius = std::max(radius, std::hypot(scores(i, 0), scores(i, 1)));
  }
  double longest = 0;
  for (std::size_t i = 0; i < loadings.rows(); ++i) {
    longest = std::max(longest, std::hypot(loadings(i, 0), loadings(i, 1)));
  }
  b.loading_scale = loading_scale ? *loading_scale : (longest > 0 ? 0.8 * radius / longest : 0.0);
  for (std::size_t i = 0; i < loadings.rows(); ++i) {
    b.arrows.push_back({column_labels.at(i), b.loading_scale * loadings(i, 0), b.loading_scale * loadings(i, 1)});
  }
  return b;
}

}  // namespace

Biplot biplot_coordinates(const PcaResult& r, std::optional<double> loading_scale) {
  return make_biplot(r.row_labels, r.scores, r.column_labels, r.loadings, loading_scale);
}

Biplot biplot_from_csv(std::string_view scores_csv, std::string_view loadings_csv,
                       std::optional<double> loading_scale) {
  LabeledTable s = read_labeled_csv(scores_csv);
  LabeledTable l = read_labeled_csv(loadings_csv);
  if (s.values.cols() != l.values.cols()) {
    throw ValidationError("scores and loadings CSVs disagree on the number of components");
  }
  return make_biplot(s.row_labels, s.values, l.row_labels, l.values, loading_scale);
}

std::string scores_to_csv(const PcaResult& r) {
  return write_labeled_csv({pc_header("label", r.k), r.row_labels, r.scores});
}

std::string loadings_to_csv(const PcaResult& r) {
  return write_labeled_csv({pc_header("letter", r.k), r.column_labels, r.loadings});
}

std::string ratios_to_csv(const PcaResult& r) {
  Matrix m(r.k, 3);
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < r.k; ++j) {
    labels.push_back("PC" + std::to_string(j + 1));
    m(j, 0) = r.singular_values[j];
    m(j, 1) = r.explained_ratio[j];
    m(j, 2) = r.cumulative_ratio[j];
  }
  return write_labeled_csv({{"component", "singular_value", "explained_ratio", "cumulative_ratio"}, labels, m});
}

}  // namespace folk
