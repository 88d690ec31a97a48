#pragma once

#include <random>
#include <vector>

#include "fairdpp/dataset.hpp"
#include "fairdpp/linalg.hpp"
#include "fairdpp/rng.hpp"

namespace testhelp {

inline fairdpp::Matrix randomMatrix(int m, int n, std::uint64_t seed, double lo = -1.0,
                                    double hi = 1.0) {
  fairdpp::Rng rng(seed);
  fairdpp::Matrix a(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = lo + (hi - lo) * rng.uniform01();
  return a;
}

inline fairdpp::Matrix gaussianMatrix(int m, int n, std::uint64_t seed) {
  fairdpp::Rng rng(seed);
  fairdpp::Matrix a(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = rng.gaussian();
  return a;
}

inline std::vector<fairdpp::Vector> rowsOf(const fairdpp::Matrix& a) {
  std::vector<fairdpp::Vector> rows;
  for (int r = 0; r < a.rows(); ++r) rows.push_back(a.row(r).transpose());
  return rows;
}

inline fairdpp::Matrix fromRows(const std::vector<std::vector<double>>& rows) {
  fairdpp::Matrix a(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) a(r, c) = rows[r][c];
  return a;
}

/// Independent oracle: det(V_S V_S^T) straight from Eigen's determinant,
/// no log-domain machinery.
inline double plainGramDet(const fairdpp::Matrix& features, const std::vector<int>& rows) {
  Eigen::MatrixXd sub(rows.size(), features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) sub.row(i) = features.row(rows[i]);
  const Eigen::MatrixXd gram = sub * sub.transpose();
  return gram.determinant();
}

/// Oracle: sum of det(V_S V_S^T) over all k-subsets of the rows, by
/// exhaustive enumeration.
inline double sumDetOverKSubsets(const fairdpp::Matrix& features, int k) {
  const int m = static_cast<int>(features.rows());
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  double total = 0.0;
  if (k == 0) return 1.0;
  while (true) {
    total += plainGramDet(features, combo);
    int i = k - 1;
    while (i >= 0 && combo[i] == m - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return total;
}

/// Oracle: e_k by exhaustive enumeration of all k-subsets.
inline double bruteForceElementarySymmetric(const std::vector<double>& values, int k) {
  const int n = static_cast<int>(values.size());
  if (k == 0) return 1.0;
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  double total = 0.0;
  while (true) {
    double prod = 1.0;
    for (int i : combo) prod *= values[i];
    total += prod;
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return total;
}

/// Chi-square critical values at significance 0.01 (upper tail), by
/// Wilson-Hilferty; within a fraction of a percent for df >= 3.
inline double chiSquareCritical01(int df) {
  // Frozen exact values for small df, where the approximation is weakest.
  switch (df) {
    case 1: return 6.6349;
    case 2: return 9.2103;
    case 3: return 11.3449;
    case 4: return 13.2767;
  }
  const double z = 2.3263478740408408;  // Phi^{-1}(0.99)
  const double d = static_cast<double>(df);
  const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
  return d * t * t * t;
}

}  // namespace testhelp
