#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairdpp/dataset.hpp"
#include "fairdpp/diagnostics.hpp"
#include "fairdpp/metrics.hpp"
#include "fairdpp/samplers.hpp"

namespace fairdpp {

enum class SamplerKind { Unif, KDpp, KiUnif, KiDpp, PDpp, ScaleAndSample };

std::string samplerName(SamplerKind kind);
SamplerKind samplerFromName(const std::string& name);

enum class QuotaPolicy { Equal, Proportional, Explicit };

/// Quotas under a policy: equal (k/p each) or proportional (k m_i / m),
/// both with largest-remainder rounding and ties to the lower part index.
QuotaVector quotasFor(QuotaPolicy policy, const PartitionedDataset& ds, int k,
                      const std::vector<int>& explicitQuotas = {});

struct NamedTarget {
  std::string name;  // "un", "prop", or a user label
  TargetFrequency target;
};

struct ExperimentConfig {
  std::vector<SamplerKind> samplerSet;
  QuotaPolicy quotaPolicy = QuotaPolicy::Equal;
  std::vector<int> explicitQuotas;
  int repetitions = 1;
  int k = 0;
  std::vector<std::string> targetNames = {"un", "prop"};
  std::uint64_t seed = 0;
  PartSchedule schedule = PartSchedule::Consecutive;
  int threads = 1;
  bool emitRaw = false;
};

struct ReportRow {
  std::string sampler;
  std::string target;  // "-" for target-free metrics
  std::string metric;  // "D" or "logG"
  SummaryStats stats;
};

struct RawValue {
  std::string sampler;
  std::string target;
  std::string metric;
  int repetition = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  bool excluded = false;
  std::string note;  // reason when excluded
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<RawValue> raw;
  std::map<std::string, int> excludedPerSampler;
  std::string configHash;
  std::uint64_t masterSeed = 0;
};

/// Runs every configured sampler for the configured repetitions and
/// aggregates the fairness and diversity metrics. Per-repetition seeds
/// derive from (master seed, sampler, repetition), so results do not
/// depend on execution order or parallelism. Degenerate repetitions are
/// excluded from the statistics and counted.
ExperimentReport runExperiment(const PartitionedDataset& ds, const ExperimentConfig& cfg);

struct PofStudySpec {
  int m = 200;
  int n = 150;
  std::vector<int> partSizes;  // defaults to m/3, m - m/3
  std::vector<int> quotas;     // defaults to k/2, k/2 with k = 100
  int repetitions = 100;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct PofStudyReport {
  std::vector<ReportRow> rows;  // sampler names carry @before / @after
  DropReport dropBefore;
  DropReport dropAfter;
  std::map<std::string, int> excludedPerSampler;
  std::string configHash;
  std::uint64_t masterSeed = 0;
};

/// Synthetic Gaussian study of tail scaling: every sampler runs on the
/// original features and (except scale-and-sample, which already embeds
/// the scaling) on features whose per-part spectral tails are shrunk by
/// 1/n.
PofStudyReport priceOfFairnessStudy(const PofStudySpec& spec);

/// Gaussian feature matrix with i.i.d. N(0,1) entries, deterministic in
/// the seed.
Matrix gaussianMatrix(int m, int n, std::uint64_t seed);

/// Dataset with the first partSizes[0] rows in part 1, the next block in
/// part 2, and so on.
PartitionedDataset blockDataset(Matrix features, const std::vector<int>& partSizes);

/// FNV-1a hex digest of a canonical serialization; report sidecars carry
/// it so any row can be traced to the exact configuration.
std::string configDigest(const std::string& canonical);

std::string writeReportCsv(const std::vector<ReportRow>& rows);
std::string writeRawCsv(const std::vector<RawValue>& raw);

}  // namespace fairdpp
