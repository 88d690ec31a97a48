#include "fairdpp/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairdpp/errors.hpp"
#include "fairdpp/rng.hpp"

namespace fairdpp {

namespace {

/// Core of sample-and-project over explicit part row lists. partRows is
/// indexed by 0-based part index; quotas likewise.
///
/// The working vectors w_x are kept implicit: an orthonormal basis B of
/// the chosen directions is grown and each row's residual squared norm
/// is downdated by its coefficient against the newest basis vector,
/// since w_x = v_x - sum_j <v_x, b_j> b_j. One pass over the feature
/// matrix per draw, so a full sample costs O(mnk).
std::vector<int> sampleAndProjectImpl(const Matrix& features,
                                      const std::vector<std::vector<int>>& partRows,
                                      const std::vector<int>& quotas, const SamplerConfig& cfg) {
  const int m = static_cast<int>(features.rows());
  const int p = static_cast<int>(partRows.size());
  if (cfg.zeroTolerance <= 0.0) throw ConfigurationError("sampler: zeroTolerance must be positive");

  std::vector<int> order(p);
  if (cfg.partitionOrder.empty()) {
    std::iota(order.begin(), order.end(), 0);
  } else {
    order = cfg.partitionOrder;
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(p);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw ConfigurationError("sampler: partitionOrder must be a permutation of the parts");
  }

  Eigen::VectorXd normsSq = features.rowwise().squaredNorm();
  const double degenerateFloor = cfg.zeroTolerance * normsSq.maxCoeff();
  std::vector<Vector> basis;  // orthonormal span of the chosen vectors
  std::vector<char> selected(m, 0);
  std::vector<int> chosen;
  chosen.reserve(std::accumulate(quotas.begin(), quotas.end(), 0));
  Rng rng(cfg.seed);

  auto drawFromPart = [&](int part) {
    const auto& rows = partRows[part];
    double total = 0.0;
    for (int r : rows)
      if (!selected[r]) total += normsSq(r);
    if (total <= degenerateFloor)
      throw DegenerateInstanceError("sample-and-project: all working norms of part " +
                                    std::to_string(part + 1) + " vanished");

    // One uniform variate against the cumulative prefix sums; boundary
    // ties resolve to the lower index and zero-weight rows are skipped.
    const double target = rng.uniform01() * total;
    int pick = -1;
    double cum = 0.0;
    for (int r : rows) {
      if (selected[r]) continue;
      const double w = normsSq(r);
      if (w <= 0.0) continue;
      cum += w;
      pick = r;
      if (cum >= target) break;
    }
    if (pick < 0)
      throw DegenerateInstanceError("sample-and-project: no selectable row in part " +
                                    std::to_string(part + 1));

    // Materialize the picked row's residual and extend the basis.
    Vector r = features.row(pick).transpose();
    for (const auto& b : basis) r -= r.dot(b) * b;
    if (r.norm() < kReorthTrigger * features.row(pick).norm()) {
      for (const auto& b : basis) r -= r.dot(b) * b;
    }
    const double r2 = r.squaredNorm();
    if (r2 <= 0.0)
      throw DegenerateInstanceError("sample-and-project: picked row of part " +
                                    std::to_string(part + 1) + " has no residual");
    const Vector bNew = r / std::sqrt(r2);

    // w_x is orthogonal to the old basis, so <w_x, bNew> = <v_x, bNew>;
    // every residual norm, the selected rows' included, drops by the
    // squared coefficient.
    Eigen::VectorXd coef = features * bNew;
    normsSq -= coef.cwiseProduct(coef);
    normsSq = normsSq.cwiseMax(0.0);
    basis.push_back(bNew);
    selected[pick] = 1;
    normsSq(pick) = 0.0;
    chosen.push_back(pick);
  };

  if (cfg.schedule == PartSchedule::Consecutive) {
    for (int part : order)
      for (int t = 0; t < quotas[part]; ++t) drawFromPart(part);
  } else {
    std::vector<int> remaining = quotas;
    int left = std::accumulate(quotas.begin(), quotas.end(), 0);
    while (left > 0) {
      for (int part : order) {
        if (remaining[part] == 0) continue;
        drawFromPart(part);
        --remaining[part];
        --left;
      }
    }
  }
  return chosen;
}

}  // namespace

SampleSet sampleAndProject(const PartitionedDataset& ds, const QuotaVector& q,
                           const SamplerConfig& cfg) {
  std::vector<std::vector<int>> rows(ds.partCount());
  for (int i = 0; i < ds.partCount(); ++i) rows[i] = ds.partRows(i + 1);
  return SampleSet(sampleAndProjectImpl(ds.features(), rows, q.quotas(), cfg));
}

SampleSet sampleKDpp(const Matrix& features, int k, const SamplerConfig& cfg) {
  if (k < 0 || k > features.cols())
    throw ConfigurationError("sampleKDpp: k must satisfy 0 <= k <= n");
  if (k > features.rows())
    throw ConfigurationError("sampleKDpp: k exceeds the number of rows");
  std::vector<int> all(features.rows());
  std::iota(all.begin(), all.end(), 0);
  return SampleSet(sampleAndProjectImpl(features, {all}, {k}, cfg));
}

SampleSet sampleKiDpp(const PartitionedDataset& ds, const QuotaVector& q,
                      const SamplerConfig& cfg) {
  std::vector<int> combined;
  for (int i = 0; i < ds.partCount(); ++i) {
    const auto& rows = ds.partRows(i + 1);
    Matrix sub(rows.size(), ds.featureDim());
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = ds.features().row(rows[r]);
    SamplerConfig partCfg = cfg;
    partCfg.seed = deriveSeed(cfg.seed, hashTag("ki-dpp-part"), static_cast<std::uint64_t>(i));
    partCfg.partitionOrder.clear();
    std::vector<int> local;
    try {
      local = sampleAndProjectImpl(sub, {[&] {
                                     std::vector<int> a(rows.size());
                                     std::iota(a.begin(), a.end(), 0);
                                     return a;
                                   }()},
                                   {q[i]}, partCfg);
    } catch (const DegenerateInstanceError&) {
      throw DegenerateInstanceError("ki-dpp: part " + std::to_string(i + 1) +
                                    " is rank deficient for its quota");
    }
    for (int r : local) combined.push_back(rows[r]);
  }
  return SampleSet(std::move(combined));
}

namespace {

/// Uniform k-subset of `rows` by partial Fisher-Yates.
std::vector<int> uniformSubset(const std::vector<int>& rows, int k, Rng& rng) {
  std::vector<int> pool = rows;
  const int n = static_cast<int>(pool.size());
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

SampleSet sampleUniformConstrained(const PartitionedDataset& ds, const QuotaVector& q,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> combined;
  for (int i = 0; i < ds.partCount(); ++i) {
    auto part = uniformSubset(ds.partRows(i + 1), q[i], rng);
    combined.insert(combined.end(), part.begin(), part.end());
  }
  return SampleSet(std::move(combined));
}

SampleSet sampleUniform(int m, int k, std::uint64_t seed) {
  if (k < 0 || k > m) throw ConfigurationError("sampleUniform: need 0 <= k <= m");
  Rng rng(seed);
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  return SampleSet(uniformSubset(all, k, rng));
}

Matrix scaleTailPerPart(const PartitionedDataset& ds, const QuotaVector& q, double factor) {
  Matrix out = ds.features();
  for (int i = 0; i < ds.partCount(); ++i) {
    const auto& rows = ds.partRows(i + 1);
    Matrix sub(rows.size(), ds.featureDim());
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = ds.features().row(rows[r]);
    Matrix scaled = scaleTailSingularValues(sub, static_cast<std::size_t>(q[i]), factor);
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(rows[r]) = scaled.row(r);
  }
  return out;
}

SampleSet scaleAndSample(const PartitionedDataset& ds, const QuotaVector& q,
                         const SamplerConfig& cfg) {
  const double factor = 1.0 / static_cast<double>(ds.featureDim());
  Matrix scaled = scaleTailPerPart(ds, q, factor);
  return sampleKDpp(scaled, q.total(), cfg);
}

DistributionTable exactPDppDistribution(const PartitionedDataset& ds, const QuotaVector& q,
                                        std::uint64_t cap) {
  DistributionTable table;
  table.support = "fair family (per-part counts " + [&] {
    std::string s;
    for (std::size_t i = 0; i < q.parts(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
    return s;
  }() + ")";

  std::vector<std::pair<SampleSet, LogValue>> weights;
  enumerateFairFamily(ds, q, [&](const SampleSet& s) {
    weights.emplace_back(s, gramLogDet(ds.features(), s.indices));
  }, cap);

  LogValue normalizer = LogValue::zero();
  for (const auto& [s, w] : weights) normalizer += w;
  if (normalizer.isZero())
    throw DegenerateInstanceError("exact distribution: every fair set has zero volume");

  for (const auto& [s, w] : weights)
    table.entries[s] = w.isZero() ? 0.0 : std::exp(w.logMagnitude - normalizer.logMagnitude);
  return table;
}

LogValue constrainedLogVolumeSumEnumerated(const PartitionedDataset& ds, const QuotaVector& q,
                                           std::uint64_t cap) {
  LogValue total = LogValue::zero();
  enumerateFairFamily(ds, q, [&](const SampleSet& s) {
    total += gramLogDet(ds.features(), s.indices);
  }, cap);
  return total;
}

namespace {

/// Coefficients c_0..c_d of the Lagrange basis polynomial through the
/// given nodes that passes 1 at nodes[j] and 0 elsewhere.
std::vector<double> lagrangeBasisCoefficients(const std::vector<double>& nodes, std::size_t j) {
  const std::size_t d = nodes.size() - 1;
  std::vector<double> coeff{1.0};
  coeff.reserve(d + 1);
  double denom = 1.0;
  for (std::size_t l = 0; l <= d; ++l) {
    if (l == j) continue;
    denom *= nodes[j] - nodes[l];
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t t = 0; t < coeff.size(); ++t) {
      next[t + 1] += coeff[t];
      next[t] -= nodes[l] * coeff[t];
    }
    coeff = std::move(next);
  }
  for (double& c : coeff) c /= denom;
  return coeff;
}

/// Weights w_j such that sum_j w_j * P(nodes[j]) equals the coefficient
/// of x^k of any polynomial P of degree <= nodes.size() - 1.
std::vector<double> coefficientExtractionWeights(const std::vector<double>& nodes, int k) {
  std::vector<double> w(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    w[j] = lagrangeBasisCoefficients(nodes, j)[static_cast<std::size_t>(k)];
  return w;
}

}  // namespace

LogValue constrainedLogVolumeSumByCoefficient(const PartitionedDataset& ds, const QuotaVector& q) {
  const int p = ds.partCount();
  const int n = ds.featureDim();
  if (p > 4)
    throw ConfigurationError("constrained normalizer: coefficient route supports at most 4 parts");

  // The generating determinant det(I + sum_i y_i A_i) with A_i the part
  // Grams has per-variable degree min(|X_i|, n); the target coefficient
  // of prod y_i^{k_i} is the constrained normalizer. Each variable is
  // scaled so terms near degree k_i are O(1), which keeps the Lagrange
  // extraction numerically viable.
  std::vector<Eigen::MatrixXd> grams(p);
  std::vector<int> degree(p);
  std::vector<double> scale(p, 1.0);
  for (int i = 0; i < p; ++i) {
    const auto& rows = ds.partRows(i + 1);
    Matrix sub(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = ds.features().row(rows[r]);
    grams[i] = sub.transpose() * sub;
    degree[i] = std::min<int>(static_cast<int>(rows.size()), n);
    if (q[i] > 0) {
      const Spectrum sv = singularValues(sub);
      const double pivot = sv.paddedTo(static_cast<std::size_t>(q[i]))[q[i] - 1];
      if (pivot > 0.0) scale[i] = 1.0 / (pivot * pivot);
    }
  }

  std::vector<std::vector<double>> nodes(p);
  std::vector<std::vector<double>> weights(p);
  for (int i = 0; i < p; ++i) {
    nodes[i].resize(degree[i] + 1);
    for (int t = 0; t <= degree[i]; ++t) nodes[i][t] = t + 1.0;
    weights[i] = coefficientExtractionWeights(nodes[i], q[i]);
  }

  // Tensor grid over all node combinations; signed log-domain sum of
  // weight products times det values.
  std::vector<int> idx(p, 0);
  LogValue acc = LogValue::zero();
  Eigen::MatrixXd mat(n, n);
  while (true) {
    mat = Eigen::MatrixXd::Identity(n, n);
    double wprod = 1.0;
    for (int i = 0; i < p; ++i) {
      mat += (scale[i] * nodes[i][idx[i]]) * grams[i];
      wprod *= weights[i][idx[i]];
    }
    if (wprod != 0.0) {
      const Eigen::LLT<Eigen::MatrixXd> llt(mat);
      if (llt.info() != Eigen::Success)
        throw DegenerateInstanceError("constrained normalizer: generating matrix not positive definite");
      double logDet = 0.0;
      for (int r = 0; r < n; ++r) logDet += std::log(llt.matrixL()(r, r));
      logDet *= 2.0;
      acc += LogValue::fromValue(wprod) * LogValue::fromLog(logDet);
    }

    int pos = p - 1;
    while (pos >= 0 && ++idx[pos] > degree[pos]) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  // Undo the per-variable scaling: coefficient in y = coefficient in t
  // divided by prod scale_i^{k_i}.
  for (int i = 0; i < p; ++i)
    if (q[i] > 0) acc = acc / pow(LogValue::fromValue(scale[i]), static_cast<double>(q[i]));

  if (acc.sign < 0) {
    // The normalizer is a sum of determinants of PSD Grams; a negative
    // result can only be cancellation noise.
    return LogValue::zero();
  }
  return acc;
}

LogValue constrainedLogVolumeSum(const PartitionedDataset& ds, const QuotaVector& q,
                                 std::uint64_t cap) {
  if (fairFamilySize(ds, q) <= cap) return constrainedLogVolumeSumEnumerated(ds, q, cap);
  if (ds.partCount() <= 4) return constrainedLogVolumeSumByCoefficient(ds, q);
  throw ConfigurationError(
      "constrained normalizer: instance exceeds the enumeration cap and has more than 4 parts");
}

}  // namespace fairdpp
