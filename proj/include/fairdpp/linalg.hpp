#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fairdpp/log_value.hpp"

namespace fairdpp {

/// Row-major matrix of row feature vectors; rows index items.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Residual squared norms below relTol * (largest initial squared row
/// norm) count as zero. Scale-relative, so it survives global rescaling.
constexpr double kRankRelTol = 1e-12;

/// Residual norms that fall below this fraction of the original trigger
/// one re-projection pass against the accumulated basis.
constexpr double kReorthTrigger = 1e-6;

/// Non-increasing, non-negative singular values.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Values padded with zeros to length n (or truncated, never needed here).
  std::vector<double> paddedTo(std::size_t n) const {
    std::vector<double> out(values.begin(), values.end());
    out.resize(n, 0.0);
    return out;
  }

  std::vector<double> squared() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * values[i];
    return out;
  }
};

/// Component of w orthogonal to v. Throws std::domain_error on zero v.
Vector projectOrthogonal(const Vector& w, const Vector& v);

/// log det(W W^T) for the given rows, computed by sequential
/// orthogonalization: the product of squared residual norms of each row
/// against the span of its predecessors. Linearly dependent rows give
/// sign 0. More rows than columns is dependent by construction.
LogValue logVolumeDet(const std::vector<Vector>& rows);

/// log det(W W^T) by the direct Gram-matrix route (eigenvalues of W W^T).
/// Independent of logVolumeDet; the two agree on full-row-rank input.
LogValue gramLogDet(const std::vector<Vector>& rows);

/// Convenience overloads over a subset of matrix rows.
LogValue logVolumeDet(const Matrix& features, const std::vector<int>& rows);
LogValue gramLogDet(const Matrix& features, const std::vector<int>& rows);

/// Singular values of A, descending, count min(m, n).
Spectrum singularValues(const Matrix& a);

/// e_k of the given non-negative values: the sum over all k-subsets of
/// their products. e_0 = 1. Runs the degree-by-degree recurrence over
/// values in descending order with log-domain accumulation, so n near
/// 1000 cannot overflow.
LogValue elementarySymmetric(std::vector<double> values, std::size_t k);

/// Reconstructs A from its SVD with singular values beyond `keep`
/// multiplied by `factor`. keep >= min(m, n) returns A unchanged.
Matrix scaleTailSingularValues(const Matrix& a, std::size_t keep, double factor);

}  // namespace fairdpp
