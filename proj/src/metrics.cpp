#include "fairdpp/metrics.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fairdpp/errors.hpp"

namespace fairdpp {

namespace {

void validateFrequencies(const std::vector<double>& q) {
  double sum = 0.0;
  for (double x : q) {
    if (x < 0.0) throw ConfigurationError("target frequency: negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw ConfigurationError("target frequency: entries must sum to 1");
}

}  // namespace

TargetFrequency TargetFrequency::uniform(int p) {
  if (p < 1) throw ConfigurationError("target frequency: need at least one part");
  TargetFrequency t;
  t.q.assign(p, 1.0 / p);
  return t;
}

TargetFrequency TargetFrequency::proportional(const PartitionedDataset& ds) {
  TargetFrequency t;
  t.q.resize(ds.partCount());
  for (int i = 0; i < ds.partCount(); ++i)
    t.q[i] = static_cast<double>(ds.partSize(i + 1)) / ds.rowCount();
  return t;
}

TargetFrequency TargetFrequency::explicitVector(std::vector<double> q) {
  validateFrequencies(q);
  TargetFrequency t;
  t.q = std::move(q);
  return t;
}

double unfairness(const TargetFrequency& target, const SampleSet& s,
                  const PartitionedDataset& ds) {
  if (s.size() == 0) throw std::domain_error("unfairness: empty sample");
  if (static_cast<int>(target.q.size()) != ds.partCount())
    throw ConfigurationError("unfairness: target length does not match part count");
  const auto counts = s.perPartCounts(ds);
  double kl = 0.0;
  for (int i = 0; i < ds.partCount(); ++i) {
    const double qi = target.q[i];
    if (qi == 0.0) continue;
    const double si = static_cast<double>(counts[i]) / static_cast<double>(s.size());
    if (si == 0.0) return std::numeric_limits<double>::infinity();
    kl += qi * std::log(qi / si);
  }
  return std::max(kl, 0.0);
}

LogValue logGeometricDiversity(const PartitionedDataset& ds, const SampleSet& s) {
  if (s.size() == 0) throw std::domain_error("logGeometricDiversity: empty sample");
  return gramLogDet(ds.features(), s.indices);
}

double klDivergence(const DistributionTable& a, const DistributionTable& b) {
  double kl = 0.0;
  for (const auto& [s, pa] : a.entries) {
    if (pa == 0.0) continue;
    const double pb = b.probabilityOf(s);
    if (pb == 0.0) return std::numeric_limits<double>::infinity();
    kl += pa * std::log(pa / pb);
  }
  return std::max(kl, 0.0);
}

double totalVariation(const DistributionTable& a, const DistributionTable& b) {
  std::set<SampleSet> keys;
  for (const auto& [s, _] : a.entries) keys.insert(s);
  for (const auto& [s, _] : b.entries) keys.insert(s);
  double l1 = 0.0;
  for (const auto& s : keys) l1 += std::fabs(a.probabilityOf(s) - b.probabilityOf(s));
  return 0.5 * l1;
}

DistributionTable empiricalDistribution(const std::vector<SampleSet>& samples) {
  if (samples.empty()) throw std::domain_error("empiricalDistribution: no samples");
  DistributionTable t;
  t.support = "empirical (" + std::to_string(samples.size()) + " draws)";
  for (const auto& s : samples) t.entries[s] += 1.0;
  for (auto& [_, p] : t.entries) p /= static_cast<double>(samples.size());
  return t;
}

SummaryStats summaryStats(const std::vector<double>& values) {
  SummaryStats st;
  st.count = values.size();
  if (values.empty()) return st;
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    st.sem = st.std / std::sqrt(static_cast<double>(values.size()));
  }
  return st;
}

}  // namespace fairdpp
