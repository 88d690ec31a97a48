#include "fairdpp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include "fairdpp/errors.hpp"
#include "fairdpp/rng.hpp"

namespace fairdpp {

std::string samplerName(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Unif: return "UNIF";
    case SamplerKind::KDpp: return "k-DPP";
    case SamplerKind::KiUnif: return "k_i-UNIF";
    case SamplerKind::KiDpp: return "k_i-DPP";
    case SamplerKind::PDpp: return "P-DPP";
    case SamplerKind::ScaleAndSample: return "Scale-and-Sample";
  }
  return "?";
}

SamplerKind samplerFromName(const std::string& name) {
  for (SamplerKind k : {SamplerKind::Unif, SamplerKind::KDpp, SamplerKind::KiUnif,
                        SamplerKind::KiDpp, SamplerKind::PDpp, SamplerKind::ScaleAndSample})
    if (samplerName(k) == name) return k;
  throw ConfigurationError("unknown sampler '" + name + "'");
}

QuotaVector quotasFor(QuotaPolicy policy, const PartitionedDataset& ds, int k,
                      const std::vector<int>& explicitQuotas) {
  if (policy == QuotaPolicy::Explicit) return QuotaVector(explicitQuotas, ds);
  const int p = ds.partCount();
  if (k < 0) throw ConfigurationError("quotas: negative k");
  if (policy == QuotaPolicy::Equal && k < p)
    throw ConfigurationError("quotas: equal policy needs k >= p");

  std::vector<double> ideal(p);
  for (int i = 0; i < p; ++i) {
    ideal[i] = policy == QuotaPolicy::Equal
                   ? static_cast<double>(k) / p
                   : static_cast<double>(k) * ds.partSize(i + 1) / ds.rowCount();
  }
  // Largest-remainder rounding, ties to the lower part index.
  std::vector<int> quotas(p);
  int assigned = 0;
  for (int i = 0; i < p; ++i) {
    quotas[i] = static_cast<int>(std::floor(ideal[i]));
    assigned += quotas[i];
  }
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ideal[a] - std::floor(ideal[a]) > ideal[b] - std::floor(ideal[b]);
  });
  for (int i = 0; assigned < k; ++i) {
    ++quotas[order[static_cast<std::size_t>(i) % order.size()]];
    ++assigned;
  }
  return QuotaVector(quotas, ds);
}

namespace {

struct RepOutcome {
  bool degenerate = false;
  std::string note;
  std::map<std::string, double> metrics;  // key: target|metric
  std::uint64_t seed = 0;
};

std::string metricKey(const std::string& target, const std::string& metric) {
  return target + "|" + metric;
}

/// One repetition of one sampler: draw, then measure.
RepOutcome runOnce(const PartitionedDataset& ds, const QuotaVector& q, SamplerKind kind,
                   const std::vector<NamedTarget>& targets, std::uint64_t seed,
                   PartSchedule schedule) {
  RepOutcome out;
  out.seed = seed;
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.schedule = schedule;
  SampleSet s;
  try {
    switch (kind) {
      case SamplerKind::Unif: s = sampleUniform(ds.rowCount(), q.total(), seed); break;
      case SamplerKind::KDpp: s = sampleKDpp(ds.features(), q.total(), cfg); break;
      case SamplerKind::KiUnif: s = sampleUniformConstrained(ds, q, seed); break;
      case SamplerKind::KiDpp: s = sampleKiDpp(ds, q, cfg); break;
      case SamplerKind::PDpp: s = sampleAndProject(ds, q, cfg); break;
      case SamplerKind::ScaleAndSample: s = scaleAndSample(ds, q, cfg); break;
    }
  } catch (const DegenerateInstanceError& e) {
    out.degenerate = true;
    out.note = e.what();
    return out;
  }
  for (const auto& t : targets)
    out.metrics[metricKey(t.name, "D")] = unfairness(t.target, s, ds);
  const LogValue g = logGeometricDiversity(ds, s);
  out.metrics[metricKey("-", "logG")] =
      g.isZero() ? -std::numeric_limits<double>::infinity() : g.logMagnitude;
  return out;
}

std::vector<NamedTarget> resolveTargets(const PartitionedDataset& ds, const QuotaVector& q,
                                        const std::vector<std::string>& names) {
  std::vector<NamedTarget> out;
  for (const auto& name : names) {
    if (name == "un") {
      out.push_back({"un", TargetFrequency::uniform(ds.partCount())});
    } else if (name == "prop") {
      out.push_back({"prop", TargetFrequency::proportional(ds)});
    } else if (name == "quota") {
      // The frequencies the quotas themselves encode: k_i / k.
      std::vector<double> t(q.parts());
      if (q.total() == 0) throw ConfigurationError("quota target needs a positive total quota");
      for (std::size_t i = 0; i < q.parts(); ++i)
        t[i] = static_cast<double>(q[i]) / q.total();
      out.push_back({"quota", TargetFrequency::explicitVector(std::move(t))});
    } else {
      throw ConfigurationError("unknown target '" + name + "' (expected un, prop, or quota)");
    }
  }
  return out;
}

void runRepetitions(const PartitionedDataset& ds, const QuotaVector& q, SamplerKind kind,
                    const std::vector<NamedTarget>& targets, std::uint64_t masterSeed,
                    int repetitions, PartSchedule schedule, int threads,
                    std::vector<RepOutcome>& outcomes) {
  outcomes.resize(repetitions);
  const std::uint64_t tag = hashTag(samplerName(kind));
  auto worker = [&](int begin, int end) {
    for (int r = begin; r < end; ++r)
      outcomes[r] = runOnce(ds, q, kind, targets, deriveSeed(masterSeed, tag, r), schedule);
  };
  if (threads <= 1 || repetitions < 2) {
    worker(0, repetitions);
    return;
  }
  const int nThreads = std::min(threads, repetitions);
  std::vector<std::thread> pool;
  const int chunk = (repetitions + nThreads - 1) / nThreads;
  for (int t = 0; t < nThreads; ++t)
    pool.emplace_back(worker, t * chunk, std::min(repetitions, (t + 1) * chunk));
  for (auto& th : pool) th.join();
}

/// Aggregates outcomes into report rows; non-finite metric values are
/// excluded from the statistics alongside degenerate repetitions.
void aggregate(const std::string& sampler, const std::vector<RepOutcome>& outcomes,
               const std::vector<NamedTarget>& targets, std::vector<ReportRow>& rows,
               std::vector<RawValue>& raw, std::map<std::string, int>& excluded, bool emitRaw) {
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& t : targets) keys.emplace_back(t.name, "D");
  keys.emplace_back("-", "logG");

  int degenerateCount = 0;
  for (const auto& o : outcomes)
    if (o.degenerate) ++degenerateCount;
  if (degenerateCount > 0) excluded[sampler] += degenerateCount;

  for (const auto& [target, metric] : keys) {
    std::vector<double> values;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      const auto& o = outcomes[r];
      RawValue rv;
      rv.sampler = sampler;
      rv.target = target;
      rv.metric = metric;
      rv.repetition = static_cast<int>(r);
      rv.seed = o.seed;
      if (o.degenerate) {
        rv.excluded = true;
        rv.note = "degenerate";
      } else {
        const double v = o.metrics.at(metricKey(target, metric));
        rv.value = v;
        if (!std::isfinite(v)) {
          rv.excluded = true;
          rv.note = "non-finite";
          excluded[sampler] += 1;
        } else {
          values.push_back(v);
        }
      }
      if (emitRaw) raw.push_back(std::move(rv));
    }
    rows.push_back({sampler, target, metric, summaryStats(values)});
  }
}

}  // namespace

ExperimentReport runExperiment(const PartitionedDataset& ds, const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1) throw ConfigurationError("experiment: repetitions must be >= 1");
  if (cfg.samplerSet.empty()) throw ConfigurationError("experiment: no samplers configured");
  const QuotaVector q = quotasFor(cfg.quotaPolicy, ds, cfg.k, cfg.explicitQuotas);
  const auto targets = resolveTargets(ds, q, cfg.targetNames);

  ExperimentReport report;
  report.masterSeed = cfg.seed;
  for (SamplerKind kind : cfg.samplerSet) {
    std::vector<RepOutcome> outcomes;
    runRepetitions(ds, q, kind, targets, cfg.seed, cfg.repetitions, cfg.schedule, cfg.threads,
                   outcomes);
    aggregate(samplerName(kind), outcomes, targets, report.rows, report.raw,
              report.excludedPerSampler, cfg.emitRaw);
  }
  return report;
}

Matrix gaussianMatrix(int m, int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = rng.gaussian();
  return a;
}

PartitionedDataset blockDataset(Matrix features, const std::vector<int>& partSizes) {
  std::vector<int> labels;
  for (std::size_t i = 0; i < partSizes.size(); ++i)
    labels.insert(labels.end(), partSizes[i], static_cast<int>(i) + 1);
  if (static_cast<Eigen::Index>(labels.size()) != features.rows())
    throw ConfigurationError("blockDataset: part sizes do not sum to the row count");
  return PartitionedDataset(std::move(features), std::move(labels));
}

PofStudyReport priceOfFairnessStudy(const PofStudySpec& spec) {
  PofStudySpec s = spec;
  if (s.partSizes.empty()) s.partSizes = {s.m / 3, s.m - s.m / 3};
  if (s.quotas.empty()) s.quotas = {50, 50};
  if (std::accumulate(s.partSizes.begin(), s.partSizes.end(), 0) != s.m)
    throw ConfigurationError("pof study: part sizes must sum to m");

  PartitionedDataset before = blockDataset(gaussianMatrix(s.m, s.n, s.seed), s.partSizes);
  const QuotaVector q(s.quotas, before);
  PartitionedDataset after = before.withFeatures(scaleTailPerPart(before, q, 1.0 / s.n));

  PofStudyReport report;
  report.masterSeed = s.seed;
  report.dropBefore = dropReport(before, q);
  report.dropAfter = dropReport(after, q);

  const std::vector<NamedTarget> targets = {{"un", TargetFrequency::uniform(before.partCount())}};
  struct Phase {
    const char* name;
    const PartitionedDataset* ds;
    std::vector<SamplerKind> kinds;
  };
  const Phase phases[] = {
      {"before", &before,
       {SamplerKind::Unif, SamplerKind::KDpp, SamplerKind::ScaleAndSample, SamplerKind::KiUnif,
        SamplerKind::PDpp}},
      // Scale-and-sample already embeds the scaling, so the after phase
      // omits it.
      {"after", &after,
       {SamplerKind::Unif, SamplerKind::KDpp, SamplerKind::KiUnif, SamplerKind::PDpp}},
  };
  for (const auto& phase : phases) {
    for (SamplerKind kind : phase.kinds) {
      std::vector<RepOutcome> outcomes;
      runRepetitions(*phase.ds, q, kind, targets, s.seed, s.repetitions,
                     PartSchedule::Consecutive, s.threads, outcomes);
      std::vector<RawValue> raw;
      aggregate(samplerName(kind) + "@" + phase.name, outcomes, targets, report.rows, raw,
                report.excludedPerSampler, false);
    }
  }
  return report;
}

std::string configDigest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string formatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string writeReportCsv(const std::vector<ReportRow>& rows) {
  std::string out = "sampler,target,metric,mean,std,sem,n\n";
  for (const auto& r : rows) {
    out += r.sampler + "," + r.target + "," + r.metric + "," + formatDouble(r.stats.mean) + "," +
           formatDouble(r.stats.std) + "," + formatDouble(r.stats.sem) + "," +
           std::to_string(r.stats.count) + "\n";
  }
  return out;
}

std::string writeRawCsv(const std::vector<RawValue>& raw) {
  std::string out = "sampler,target,metric,repetition,seed,value,excluded,note\n";
  for (const auto& r : raw) {
    out += r.sampler + "," + r.target + "," + r.metric + "," + std::to_string(r.repetition) + "," +
           std::to_string(r.seed) + "," + formatDouble(r.value) + "," +
           (r.excluded ? "1" : "0") + "," + r.note + "\n";
  }
  return out;
}

}  // namespace fairdpp
