#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fairdpp/linalg.hpp"

namespace fairdpp {

class PartitionedDataset;

/// Per-part target counts (k_1, ..., k_p). Validity against a dataset
/// (k_i <= |X_i|, total k <= n) is checked at construction.
class QuotaVector {
 public:
  QuotaVector(std::vector<int> quotas, const PartitionedDataset& ds);

  const std::vector<int>& quotas() const { return quotas_; }
  int operator[](std::size_t part) const { return quotas_[part]; }  // part is 0-based
  std::size_t parts() const { return quotas_.size(); }
  int total() const { return total_; }

 private:
  std::vector<int> quotas_;
  int total_ = 0;
};

/// A set of dataset row indices (0-based, sorted, distinct).
struct SampleSet {
  std::vector<int> indices;

  SampleSet() = default;
  explicit SampleSet(std::vector<int> idx);

  std::size_t size() const { return indices.size(); }
  bool operator==(const SampleSet& o) const { return indices == o.indices; }
  bool operator<(const SampleSet& o) const { return indices < o.indices; }

  /// |S intersect X_i| for each part, indexed by part id - 1.
  std::vector<int> perPartCounts(const PartitionedDataset& ds) const;
};

/// Feature matrix plus a partition of the rows into parts 1..p.
/// Immutable after construction; reads are concurrency-safe.
class PartitionedDataset {
 public:
  /// labels[r] is the part id of row r, a dense integer in 1..p.
  PartitionedDataset(Matrix features, std::vector<int> labels);

  /// Single-part dataset over the given features.
  static PartitionedDataset trivial(Matrix features);

  const Matrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  int rowCount() const { return static_cast<int>(features_.rows()); }
  int featureDim() const { return static_cast<int>(features_.cols()); }
  int partCount() const { return partCount_; }

  /// Row indices of part id (1-based), ascending.
  const std::vector<int>& partRows(int partId) const { return partRows_.at(partId - 1); }
  int partSize(int partId) const { return static_cast<int>(partRows(partId).size()); }
  std::vector<int> partSizes() const;

  /// Dataset with the same partition over transformed features.
  PartitionedDataset withFeatures(Matrix features) const;

 private:
  Matrix features_;
  std::vector<int> labels_;
  int partCount_ = 0;
  std::vector<std::vector<int>> partRows_;
};

/// Default ceiling on explicit fair-family enumeration.
constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Product over parts of C(|X_i|, k_i); saturates at uint64 max.
std::uint64_t fairFamilySize(const PartitionedDataset& ds, const QuotaVector& q);

/// Visits every member of the fair family exactly once: lexicographic
/// within each part, parts in index order. Throws EnumerationCapError
/// when the family is larger than `cap`.
void enumerateFairFamily(const PartitionedDataset& ds, const QuotaVector& q,
                         const std::function<void(const SampleSet&)>& visit,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// All members as a vector (same order and cap as the streaming form).
std::vector<SampleSet> fairFamily(const PartitionedDataset& ds, const QuotaVector& q,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// i.i.d. uniform part labels in 1..p, redrawn whole until every part is
/// non-empty. Deterministic given the seed.
std::vector<int> randomPartition(int m, int p, std::uint64_t seed);

}  // namespace fairdpp
