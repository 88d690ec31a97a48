#pragma once

#include <optional>
#include <vector>

#include "fairdpp/dataset.hpp"
#include "fairdpp/linalg.hpp"
#include "fairdpp/log_value.hpp"

namespace fairdpp {

/// Singular values at or below this fraction of the leading one are
/// treated as absent when forming spectral ratios.
constexpr double kSpectrumRelTol = 1e-9;

/// How well each part's spectrum tracks the full matrix's: the partition
/// is beta-balanced iff sigma_{i,j} >= sigma_j / beta for all i, j.
struct BalanceReport {
  /// Least beta for which the partition is beta-balanced; infinity when
  /// some part misses a direction the full matrix has.
  double minimalBeta = 1.0;
  /// Worst ratio sigma_j / sigma_{i,j} per part.
  std::vector<double> perPartRatios;
  Spectrum fullSpectrum;
  std::vector<Spectrum> partSpectra;  // each padded with zeros to length n
};

/// Per-part spectral drop past the quota: sigma_{i,k_i+1} / sigma_{i,k_i}.
struct DropReport {
  std::vector<double> perPartDelta;
  double minimalDelta = 0.0;  // max over parts: the least delta satisfying the drop condition
};

struct Theorem4Hypothesis {
  double epsilon = 0.0;
  double n0 = 0.0;             // C(k+p-1, p-1)
  double gamma = 0.0;          // max_i sigma_{i,1}
  double sigmaN = 0.0;         // smallest non-zero singular value of V
  double deltaThreshold = 0.0; // epsilon / (n * N0)
  double nThreshold = 0.0;     // sqrt(2) * k * (gamma / sigmaN)^2
  bool computable = false;     // drop report available (all k_i >= 1)
  double minimalDelta = 0.0;
  bool holds = false;
};

struct PriceOfFairnessReport {
  double exactKL = 0.0;  // nats
  LogValue logNormalizerAll;
  LogValue logNormalizerFair;
  Theorem4Hypothesis theorem4Hypothesis;
  double lemma7Bound = 0.0;  // log 1/(1-eps*) at the mass-ratio epsilon
};

BalanceReport balanceReport(const PartitionedDataset& ds);

/// Requires k_i >= 1 and sigma_{i,k_i} above the spectrum tolerance for
/// every part; a vanished sigma_{i,k_i} is a degenerate instance.
DropReport dropReport(const PartitionedDataset& ds, const QuotaVector& q);

/// v_j^T (V^T V)^+ v_j per row; each in [0, 1], summing to rank(V).
std::vector<double> leverageScores(const Matrix& features);

struct LeverageCheck {
  bool holds = false;
  double margin = 0.0;  // threshold - max leverage
  double maxLeverage = 0.0;
  double threshold = 0.0;
};

/// True iff every leverage score is at most delta^2 / (8 p ln(np)).
LeverageCheck theorem3HypothesisHolds(const Matrix& features, int p, double delta);

/// log(prod k_i! * beta^{2k}): the factor by which the greedy sampler
/// may overshoot any fair set's exact probability.
LogValue approximationBoundFactor(double beta, const QuotaVector& q);

/// Exact KL divergence from the constrained to the unconstrained
/// distribution, as a log-space difference of normalizers. The optional
/// epsilon feeds the hypothesis record; by default the mass-ratio
/// epsilon implied by the normalizers is used.
PriceOfFairnessReport priceOfFairnessExact(const PartitionedDataset& ds, const QuotaVector& q,
                                           std::optional<double> epsilon = std::nullopt,
                                           std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fairdpp
