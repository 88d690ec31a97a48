#include "fairdpp/diagnostics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdpp/errors.hpp"
#include "fairdpp/samplers.hpp"

namespace fairdpp {

namespace {

Matrix partMatrix(const PartitionedDataset& ds, int partId) {
  const auto& rows = ds.partRows(partId);
  Matrix sub(rows.size(), ds.featureDim());
  for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = ds.features().row(rows[r]);
  return sub;
}

}  // namespace

BalanceReport balanceReport(const PartitionedDataset& ds) {
  const std::size_t n = static_cast<std::size_t>(ds.featureDim());
  BalanceReport rep;
  rep.fullSpectrum = singularValues(ds.features());
  const auto full = rep.fullSpectrum.paddedTo(n);
  const double zeroTol = kSpectrumRelTol * (full.empty() ? 0.0 : full.front());

  rep.perPartRatios.resize(ds.partCount(), 1.0);
  for (int i = 0; i < ds.partCount(); ++i) {
    Spectrum ps = singularValues(partMatrix(ds, i + 1));
    ps.values = ps.paddedTo(n);
    double worst = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool fullAbsent = full[j] <= zeroTol;
      const bool partAbsent = ps.values[j] <= zeroTol;
      if (fullAbsent) continue;  // both directions absent, or part has spurious excess
      if (partAbsent) {
        worst = std::numeric_limits<double>::infinity();
        break;
      }
      // Row-submatrix singular values never exceed the full ones, so the
      // ratio is >= 1 up to roundoff.
      worst = std::max(worst, full[j] / ps.values[j]);
    }
    rep.perPartRatios[i] = worst;
    rep.partSpectra.push_back(std::move(ps));
  }
  rep.minimalBeta = *std::max_element(rep.perPartRatios.begin(), rep.perPartRatios.end());
  return rep;
}

DropReport dropReport(const PartitionedDataset& ds, const QuotaVector& q) {
  const std::size_t n = static_cast<std::size_t>(ds.featureDim());
  DropReport rep;
  rep.perPartDelta.resize(ds.partCount(), 0.0);
  for (int i = 0; i < ds.partCount(); ++i) {
    const int ki = q[i];
    if (ki < 1)
      throw std::invalid_argument("dropReport: part " + std::to_string(i + 1) +
                                  " has quota 0; the drop ratio needs k_i >= 1");
    const auto sv = singularValues(partMatrix(ds, i + 1)).paddedTo(std::max(n, static_cast<std::size_t>(ki) + 1));
    const double zeroTol = kSpectrumRelTol * sv.front();
    const double atQuota = sv[ki - 1];
    const double pastQuota = sv[ki];
    if (atQuota <= zeroTol)
      throw DegenerateInstanceError("dropReport: part " + std::to_string(i + 1) +
                                    " has fewer than k_i significant directions");
    rep.perPartDelta[i] = pastQuota <= zeroTol ? 0.0 : pastQuota / atQuota;
  }
  rep.minimalDelta = *std::max_element(rep.perPartDelta.begin(), rep.perPartDelta.end());
  return rep;
}

std::vector<double> leverageScores(const Matrix& features) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(features, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double tol = sv.size() ? kRankRelTol * sv(0) * sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv(j) * sv(j) > tol) ++rank;
  std::vector<double> scores(features.rows(), 0.0);
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    double s = 0.0;
    for (int j = 0; j < rank; ++j) s += svd.matrixU()(r, j) * svd.matrixU()(r, j);
    scores[r] = std::clamp(s, 0.0, 1.0);
  }
  return scores;
}

LeverageCheck theorem3HypothesisHolds(const Matrix& features, int p, double delta) {
  if (p < 1) throw ConfigurationError("leverage check: need p >= 1");
  if (delta <= 0.0) throw ConfigurationError("leverage check: need delta > 0");
  LeverageCheck check;
  const auto scores = leverageScores(features);
  check.maxLeverage = *std::max_element(scores.begin(), scores.end());
  const double n = static_cast<double>(features.cols());
  check.threshold = delta * delta / (8.0 * p * std::log(n * p));
  check.margin = check.threshold - check.maxLeverage;
  check.holds = check.margin >= 0.0;
  return check;
}

LogValue approximationBoundFactor(double beta, const QuotaVector& q) {
  if (beta < 1.0) throw ConfigurationError("bound factor: beta must be >= 1");
  double logFactor = 2.0 * q.total() * std::log(beta);
  for (std::size_t i = 0; i < q.parts(); ++i) logFactor += std::lgamma(q[i] + 1.0);
  return LogValue::fromLog(logFactor);
}

namespace {

double binomialDouble(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

PriceOfFairnessReport priceOfFairnessExact(const PartitionedDataset& ds, const QuotaVector& q,
                                           std::optional<double> epsilon, std::uint64_t cap) {
  PriceOfFairnessReport rep;
  const int k = q.total();
  const int n = ds.featureDim();
  const Spectrum full = singularValues(ds.features());

  rep.logNormalizerAll = elementarySymmetric(full.squared(), static_cast<std::size_t>(k));
  rep.logNormalizerFair = constrainedLogVolumeSum(ds, q, cap);
  if (rep.logNormalizerFair.isZero())
    throw DegenerateInstanceError("price of fairness: the fair family carries zero volume");

  rep.exactKL = std::max(0.0, rep.logNormalizerAll.logMagnitude - rep.logNormalizerFair.logMagnitude);
  // Fair mass fraction under the unconstrained distribution.
  const double massEpsilon = -std::expm1(-rep.exactKL);  // 1 - exp(-KL)
  rep.lemma7Bound = -std::log1p(-massEpsilon);

  Theorem4Hypothesis& hyp = rep.theorem4Hypothesis;
  hyp.epsilon = epsilon.value_or(massEpsilon);
  hyp.n0 = binomialDouble(k + ds.partCount() - 1, ds.partCount() - 1);
  double gamma = 0.0;
  for (int i = 0; i < ds.partCount(); ++i) {
    const auto sv = singularValues(partMatrix(ds, i + 1));
    if (sv.size() > 0) gamma = std::max(gamma, sv[0]);
  }
  hyp.gamma = gamma;
  const double zeroTol = full.size() ? kSpectrumRelTol * full[0] : 0.0;
  double sigmaN = 0.0;
  for (double s : full.values)
    if (s > zeroTol) sigmaN = s;  // values descend; keep the last above tolerance
  hyp.sigmaN = sigmaN;
  hyp.deltaThreshold = hyp.epsilon / (static_cast<double>(n) * hyp.n0);
  hyp.nThreshold = sigmaN > 0.0
                       ? std::sqrt(2.0) * k * (gamma / sigmaN) * (gamma / sigmaN)
                       : std::numeric_limits<double>::infinity();

  hyp.computable = std::all_of(q.quotas().begin(), q.quotas().end(), [](int ki) { return ki >= 1; });
  if (hyp.computable) {
    try {
      hyp.minimalDelta = dropReport(ds, q).minimalDelta;
    } catch (const DegenerateInstanceError&) {
      hyp.computable = false;
    }
  }
  hyp.holds = hyp.computable && hyp.epsilon > 0.0 && hyp.epsilon < 1.0 &&
              hyp.minimalDelta <= hyp.deltaThreshold && static_cast<double>(n) >= hyp.nThreshold;
  return rep;
}

}  // namespace fairdpp
