#include "fairdpp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairdpp/errors.hpp"
#include "fairdpp/rng.hpp"

namespace fairdpp {

SampleSet::SampleSet(std::vector<int> idx) : indices(std::move(idx)) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw std::invalid_argument("SampleSet: duplicate row index");
}

std::vector<int> SampleSet::perPartCounts(const PartitionedDataset& ds) const {
  std::vector<int> counts(ds.partCount(), 0);
  for (int r : indices) {
    if (r < 0 || r >= ds.rowCount()) throw std::out_of_range("SampleSet: row index out of range");
    ++counts[ds.labels()[r] - 1];
  }
  return counts;
}

PartitionedDataset::PartitionedDataset(Matrix features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() < 1 || features_.cols() < 1)
    throw DataError("dataset: feature matrix must be at least 1x1");
  if (!features_.allFinite()) throw DataError("dataset: non-finite feature entry");
  if (static_cast<int>(labels_.size()) != features_.rows())
    throw DataError("dataset: label count does not match row count");

  partCount_ = *std::max_element(labels_.begin(), labels_.end());
  if (partCount_ < 1 || *std::min_element(labels_.begin(), labels_.end()) < 1)
    throw DataError("dataset: part ids must be dense integers 1..p");
  partRows_.assign(partCount_, {});
  for (int r = 0; r < static_cast<int>(labels_.size()); ++r)
    partRows_[labels_[r] - 1].push_back(r);
  for (int i = 0; i < partCount_; ++i)
    if (partRows_[i].empty())
      throw DataError("dataset: part " + std::to_string(i + 1) + " is empty");
}

PartitionedDataset PartitionedDataset::trivial(Matrix features) {
  std::vector<int> labels(features.rows(), 1);
  return PartitionedDataset(std::move(features), std::move(labels));
}

std::vector<int> PartitionedDataset::partSizes() const {
  std::vector<int> sizes(partCount_);
  for (int i = 0; i < partCount_; ++i) sizes[i] = static_cast<int>(partRows_[i].size());
  return sizes;
}

PartitionedDataset PartitionedDataset::withFeatures(Matrix features) const {
  if (features.rows() != features_.rows())
    throw DataError("withFeatures: row count changed");
  return PartitionedDataset(std::move(features), labels_);
}

QuotaVector::QuotaVector(std::vector<int> quotas, const PartitionedDataset& ds)
    : quotas_(std::move(quotas)) {
  if (static_cast<int>(quotas_.size()) != ds.partCount())
    throw ConfigurationError("quotas: expected one entry per part (" +
                             std::to_string(ds.partCount()) + " parts)");
  for (std::size_t i = 0; i < quotas_.size(); ++i) {
    if (quotas_[i] < 0) throw ConfigurationError("quotas: negative quota for part " + std::to_string(i + 1));
    if (quotas_[i] > ds.partSize(static_cast<int>(i) + 1))
      throw ConfigurationError("quotas: quota " + std::to_string(quotas_[i]) + " for part " +
                               std::to_string(i + 1) + " exceeds its size " +
                               std::to_string(ds.partSize(static_cast<int>(i) + 1)));
    total_ += quotas_[i];
  }
  if (total_ > ds.featureDim())
    throw ConfigurationError("quotas: total " + std::to_string(total_) +
                             " exceeds the feature dimension " + std::to_string(ds.featureDim()) +
                             "; every such subset has zero volume");
}

namespace {

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t binomialSaturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is always integral at each step
    const std::uint64_t num = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    result = result * num / i;
  }
  return result;
}

}  // namespace

std::uint64_t fairFamilySize(const PartitionedDataset& ds, const QuotaVector& q) {
  std::uint64_t total = 1;
  for (int i = 0; i < ds.partCount(); ++i)
    total = saturatingMul(total, binomialSaturating(ds.partSize(i + 1), q[i]));
  return total;
}

namespace {

// Advances a k-combination over {0..n-1} in lexicographic order.
bool nextCombination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void enumerateFairFamily(const PartitionedDataset& ds, const QuotaVector& q,
                         const std::function<void(const SampleSet&)>& visit,
                         std::uint64_t cap) {
  const std::uint64_t size = fairFamilySize(ds, q);
  if (size > cap) throw EnumerationCapError(size, cap);

  const int p = ds.partCount();
  std::vector<std::vector<int>> combos(p);
  for (int i = 0; i < p; ++i) {
    combos[i].resize(q[i]);
    std::iota(combos[i].begin(), combos[i].end(), 0);
  }

  std::vector<int> indices;
  indices.reserve(q.total());
  while (true) {
    indices.clear();
    for (int i = 0; i < p; ++i)
      for (int pos : combos[i]) indices.push_back(ds.partRows(i + 1)[pos]);
    SampleSet s;
    s.indices = indices;
    std::sort(s.indices.begin(), s.indices.end());
    visit(s);

    // Odometer over parts, last part fastest.
    int part = p - 1;
    while (part >= 0 && !nextCombination(combos[part], ds.partSize(part + 1))) {
      std::iota(combos[part].begin(), combos[part].end(), 0);
      --part;
    }
    if (part < 0) break;
  }
}

std::vector<SampleSet> fairFamily(const PartitionedDataset& ds, const QuotaVector& q,
                                  std::uint64_t cap) {
  std::vector<SampleSet> out;
  enumerateFairFamily(ds, q, [&](const SampleSet& s) { out.push_back(s); }, cap);
  return out;
}

std::vector<int> randomPartition(int m, int p, std::uint64_t seed) {
  if (p < 1 || m < p) throw std::invalid_argument("randomPartition: need m >= p >= 1");
  Rng rng(seed);
  std::vector<int> labels(m);
  while (true) {
    std::vector<char> seen(p, 0);
    for (int r = 0; r < m; ++r) {
      labels[r] = static_cast<int>(rng.below(static_cast<std::uint64_t>(p))) + 1;
      seen[labels[r] - 1] = 1;
    }
    if (std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) return labels;
  }
}

}  // namespace fairdpp
