#pragma once

#include <vector>

#include "fairdpp/dataset.hpp"
#include "fairdpp/samplers.hpp"

namespace fairdpp {

/// Desired frequency vector over the p parts: uniform, dataset
/// proportions, or explicit. Entries are non-negative and sum to 1.
struct TargetFrequency {
  std::vector<double> q;

  static TargetFrequency uniform(int p);
  static TargetFrequency proportional(const PartitionedDataset& ds);
  static TargetFrequency explicitVector(std::vector<double> q);
};

/// mean, sample standard deviation (n-1 denominator), and standard
/// error of the mean.
struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;
  double sem = 0.0;
  std::size_t count = 0;
};

/// D^q(S) = KL(q || s) in nats, where s holds the realized per-part
/// frequencies of S. Returns +infinity when the sample misses a part
/// the target requires. Throws std::domain_error on an empty sample.
double unfairness(const TargetFrequency& target, const SampleSet& s, const PartitionedDataset& ds);

/// log det(V_S V_S^T); sign 0 for linearly dependent selections.
LogValue logGeometricDiversity(const PartitionedDataset& ds, const SampleSet& s);

/// KL(a || b) in nats over explicit tables; +infinity when a puts mass
/// where b has none. 0 log(0/x) counts as 0.
double klDivergence(const DistributionTable& a, const DistributionTable& b);

/// Half the L1 distance between two tables, in [0, 1].
double totalVariation(const DistributionTable& a, const DistributionTable& b);

/// Normalized counts of the drawn sets.
DistributionTable empiricalDistribution(const std::vector<SampleSet>& samples);

SummaryStats summaryStats(const std::vector<double>& values);

}  // namespace fairdpp
