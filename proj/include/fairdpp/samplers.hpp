#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairdpp/dataset.hpp"
#include "fairdpp/linalg.hpp"
#include "fairdpp/log_value.hpp"

namespace fairdpp {

/// Explicit distribution over subsets; oracle scale only.
struct DistributionTable {
  std::map<SampleSet, double> entries;
  std::string support;  // description of the declared family

  double probabilityOf(const SampleSet& s) const {
    auto it = entries.find(s);
    return it == entries.end() ? 0.0 : it->second;
  }
};

enum class PartSchedule {
  Consecutive,  // fill part 1 completely, then part 2, ...
  RoundRobin,   // cycle through unfilled parts one draw at a time
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  /// Order in which parts are processed (0-based part indices).
  /// Empty means ascending part id.
  std::vector<int> partitionOrder;
  PartSchedule schedule = PartSchedule::Consecutive;
  /// A part whose total working squared norm falls at or below
  /// zeroTolerance times the largest initial squared row norm is
  /// degenerate.
  double zeroTolerance = 1e-12;
};

/// Greedy fair sampler: repeatedly draws a row of the active part with
/// probability proportional to its working squared norm, then projects
/// every working vector orthogonal to the drawn one. Always returns a
/// member of the fair family; O(mnk) per draw.
SampleSet sampleAndProject(const PartitionedDataset& ds, const QuotaVector& q,
                           const SamplerConfig& cfg);

/// Unconstrained k-subset sampler: the single-part special case of
/// sampleAndProject.
SampleSet sampleKDpp(const Matrix& features, int k, const SamplerConfig& cfg);

/// Independent per-part k_i-subset samplers on each V_{X_i}; the union
/// of the per-part draws.
SampleSet sampleKiDpp(const PartitionedDataset& ds, const QuotaVector& q,
                      const SamplerConfig& cfg);

/// Uniform over the fair family (independent uniform k_i-subsets per part).
SampleSet sampleUniformConstrained(const PartitionedDataset& ds, const QuotaVector& q,
                                   std::uint64_t seed);

/// Uniform over all k-subsets of {0..m-1}.
SampleSet sampleUniform(int m, int k, std::uint64_t seed);

/// Shrinks each part's singular values beyond its quota by `factor`
/// (default 1/n) and returns the reassembled feature matrix.
Matrix scaleTailPerPart(const PartitionedDataset& ds, const QuotaVector& q, double factor);

/// Tail-scales each part's spectrum, then draws an unconstrained
/// k-subset from the scaled matrix. No membership guarantee; fairness
/// is probabilistic.
SampleSet scaleAndSample(const PartitionedDataset& ds, const QuotaVector& q,
                         const SamplerConfig& cfg);

/// Exact constrained distribution by brute-force enumeration of the fair
/// family with log-domain determinant weights. Zero-volume sets carry
/// probability 0.
DistributionTable exactPDppDistribution(const PartitionedDataset& ds, const QuotaVector& q,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// log of the exact constrained normalizer: the sum of det(V_T V_T^T)
/// over the fair family. Uses enumeration under the cap, otherwise the
/// coefficient-extraction route (p <= 4).
LogValue constrainedLogVolumeSum(const PartitionedDataset& ds, const QuotaVector& q,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// The two routes behind constrainedLogVolumeSum, exposed for cross-checks.
LogValue constrainedLogVolumeSumEnumerated(const PartitionedDataset& ds, const QuotaVector& q,
                                           std::uint64_t cap = kDefaultEnumerationCap);
LogValue constrainedLogVolumeSumByCoefficient(const PartitionedDataset& ds, const QuotaVector& q);

}  // namespace fairdpp
