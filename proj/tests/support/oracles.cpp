#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace folk::testing {

std::map<NamePair, long> naive_cooccurrence(const std::vector<TaleTruth>& tales, PairCounting counting) {
  std::set<std::string> names;
  for (const auto& t : tales) names.insert(t.animals.begin(), t.animals.end());
  std::map<NamePair, long> out;
  for (auto a = names.begin(); a != names.end(); ++a) {
    for (auto b = std::next(a); b != names.end(); ++b) {
      long together = 0;
      long substituted = 0;
      for (const auto& t : tales) {
        const bool both = t.animals.count(*a) && t.animals.count(*b);
        const long subs = static_cast<long>(std::count(t.substitutions.begin(), t.substitutions.end(), NamePair{*a, *b}));
        if (counting == PairCounting::kSet) {
          together += both ? 1 : 0;
          substituted += subs > 0 ? 1 : 0;
        } else {
          if (both) together += t.mentions.at(*a) * t.mentions.at(*b);
          substituted += subs;
        }
      }
      if (together > 0) out[{*a, *b}] = together - substituted;
    }
  }
  return out;
}

OracleSvd oracle_centered_svd(const Matrix& x) {
  using ld = long double;
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  std::vector<long long> sums(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) sums[j] += static_cast<long long>(x(i, j));
  }
  // Exact integers: m * X'X - s s'.
  std::vector<std::vector<ld>> c(n, std::vector<ld>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      long long dot = 0;
      for (std::size_t i = 0; i < m; ++i) dot += static_cast<long long>(x(i, p)) * static_cast<long long>(x(i, q));
      c[p][q] = static_cast<ld>(static_cast<long long>(m) * dot - sums[p] * sums[q]);
    }
  }
  std::vector<std::vector<ld>> v(n, std::vector<ld>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  ld scale = 0;
  for (const auto& row : c) {
    for (ld e : row) scale += e * e;
  }
  for (int sweep = 0; sweep < 200; ++sweep) {
    ld off = 0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += c[p][q] * c[p][q];
    }
    if (off <= scale * 1e-40L) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (c[p][q] == 0) continue;
        const ld theta = (c[q][q] - c[p][p]) / (2 * c[p][q]);
        const ld t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const ld cs = 1 / std::sqrt(t * t + 1);
        const ld sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const ld ckp = c[k][p], ckq = c[k][q];
          c[k][p] = cs * ckp - sn * ckq;
          c[k][q] = sn * ckp + cs * ckq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const ld cpk = c[p][k], cqk = c[q][k];
          c[p][k] = cs * cpk - sn * cqk;
          c[q][k] = sn * cpk + cs * cqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const ld vkp = v[k][p], vkq = v[k][q];
          v[k][p] = cs * vkp - sn * vkq;
          v[k][q] = sn * vkp + cs * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a][a] > c[b][b]; });

  OracleSvd out;
  out.right_vectors.assign(n, std::vector<ld>(n));
  const std::size_t keep = std::min(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    for (std::size_t k = 0; k < n; ++k) out.right_vectors[k][j] = v[k][src];
    if (j >= keep) continue;
    ld ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
      ld dot = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const ld centered = static_cast<ld>(x(i, k)) - static_cast<ld>(sums[k]) / static_cast<ld>(m);
        dot += centered * v[k][src];
      }
      ss += dot * dot;
    }
    out.singular_values.push_back(std::sqrt(ss));
  }
  std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<>());
  return out;
}

}  // namespace folk::testing
