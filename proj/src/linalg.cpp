#include "fairdpp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

namespace fairdpp {

Vector projectOrthogonal(const Vector& w, const Vector& v) {
  const double nv2 = v.squaredNorm();
  if (nv2 <= 0.0) throw std::domain_error("projectOrthogonal: zero direction vector");
  return w - (w.dot(v) / nv2) * v;
}

namespace {

double maxSquaredRowNorm(const std::vector<Vector>& rows) {
  double s = 0.0;
  for (const auto& r : rows) s = std::max(s, r.squaredNorm());
  return s;
}

}  // namespace

LogValue logVolumeDet(const std::vector<Vector>& rows) {
  if (rows.empty()) return LogValue::one();
  const std::size_t n = static_cast<std::size_t>(rows.front().size());
  const double zeroFloor = kRankRelTol * maxSquaredRowNorm(rows);
  if (zeroFloor == 0.0) return LogValue::zero();
  if (rows.size() > n) return LogValue::zero();

  std::vector<Vector> basis;  // orthonormal
  basis.reserve(rows.size());
  double logAcc = 0.0;
  for (const auto& row : rows) {
    if (static_cast<std::size_t>(row.size()) != n)
      throw std::invalid_argument("logVolumeDet: inconsistent row dimensions");
    Vector r = row;
    for (const auto& b : basis) r -= r.dot(b) * b;
    if (r.norm() < kReorthTrigger * row.norm()) {
      // Selective reorthogonalization: one extra pass keeps the residual
      // accurate when the row is nearly in the accumulated span.
      for (const auto& b : basis) r -= r.dot(b) * b;
    }
    const double r2 = r.squaredNorm();
    if (r2 <= zeroFloor) return LogValue::zero();
    logAcc += std::log(r2);
    basis.push_back(r / std::sqrt(r2));
  }
  return LogValue::fromLog(logAcc);
}

LogValue gramLogDet(const std::vector<Vector>& rows) {
  if (rows.empty()) return LogValue::one();
  const std::size_t k = rows.size();
  const double zeroFloor = kRankRelTol * maxSquaredRowNorm(rows);
  if (zeroFloor == 0.0) return LogValue::zero();

  Eigen::MatrixXd gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) gram(i, j) = gram(j, i) = rows[i].dot(rows[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double logAcc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= zeroFloor) return LogValue::zero();
    logAcc += std::log(lambda);
  }
  return LogValue::fromLog(logAcc);
}

namespace {

std::vector<Vector> gatherRows(const Matrix& features, const std::vector<int>& rows) {
  std::vector<Vector> out;
  out.reserve(rows.size());
  for (int r : rows) {
    if (r < 0 || r >= features.rows()) throw std::out_of_range("row index out of range");
    out.push_back(features.row(r).transpose());
  }
  return out;
}

}  // namespace

LogValue logVolumeDet(const Matrix& features, const std::vector<int>& rows) {
  return logVolumeDet(gatherRows(features, rows));
}

LogValue gramLogDet(const Matrix& features, const std::vector<int>& rows) {
  return gramLogDet(gatherRows(features, rows));
}

Spectrum singularValues(const Matrix& a) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  Spectrum s;
  s.values.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  for (double& v : s.values) v = std::max(v, 0.0);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

LogValue elementarySymmetric(std::vector<double> values, std::size_t k) {
  if (k > values.size())
    throw std::domain_error("elementarySymmetric: k exceeds the number of values");
  for (double v : values)
    if (v < 0.0) throw std::domain_error("elementarySymmetric: negative value");
  if (k == 0) return LogValue::one();
  std::sort(values.begin(), values.end(), std::greater<>());

  // e[j] after processing i values holds e_j(values[0..i)).
  std::vector<LogValue> e(k + 1, LogValue::zero());
  e[0] = LogValue::one();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const LogValue x = LogValue::fromValue(values[i]);
    const std::size_t top = std::min(k, i + 1);
    for (std::size_t j = top; j >= 1; --j) e[j] += x * e[j - 1];
  }
  return e[k];
}

Matrix scaleTailSingularValues(const Matrix& a, std::size_t keep, double factor) {
  if (factor < 0.0) throw std::domain_error("scaleTailSingularValues: negative factor");
  const std::size_t minDim = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  if (keep >= minDim) return a;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sv = svd.singularValues();
  for (Eigen::Index j = static_cast<Eigen::Index>(keep); j < sv.size(); ++j) sv(j) *= factor;
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

}  // namespace fairdpp
