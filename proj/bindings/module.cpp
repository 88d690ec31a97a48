#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairdpp/diagnostics.hpp"
#include "fairdpp/errors.hpp"
#include "fairdpp/experiment.hpp"
#include "fairdpp/metrics.hpp"
#include "fairdpp/samplers.hpp"

namespace py = pybind11;
using namespace fairdpp;

namespace {

PartitionedDataset makeDataset(const Matrix& features, const std::vector<int>& labels) {
  return PartitionedDataset(features, labels);
}

SamplerConfig makeConfig(std::uint64_t seed, const std::string& schedule) {
  SamplerConfig cfg;
  cfg.seed = seed;
  if (schedule == "roundrobin")
    cfg.schedule = PartSchedule::RoundRobin;
  else if (schedule != "consecutive")
    throw ConfigurationError("schedule must be 'consecutive' or 'roundrobin'");
  return cfg;
}

py::tuple logValueTuple(const LogValue& v) { return py::make_tuple(v.sign, v.logMagnitude); }

py::dict tableDict(const DistributionTable& table) {
  py::dict out;
  for (const auto& [s, p] : table.entries) out[py::tuple(py::cast(s.indices))] = p;
  return out;
}

DistributionTable tableFromDict(const py::dict& d) {
  DistributionTable t;
  for (const auto& item : d) {
    std::vector<int> idx = item.first.cast<std::vector<int>>();
    t.entries[SampleSet(std::move(idx))] = item.second.cast<double>();
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(fairdpp, m) {
  m.doc() = "Fairness-constrained determinantal sampling toolkit";

  py::register_exception<DegenerateInstanceError>(m, "DegenerateInstanceError");
  py::register_exception<ConfigurationError>(m, "ConfigError");
  py::register_exception<DataError>(m, "DataError");

  // Samplers. Labels are dense part ids 1..p, one per row; returned
  // indices are 0-based dataset rows.
  m.def(
      "sample_and_project",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::uint64_t seed, const std::string& schedule) {
        const auto ds = makeDataset(features, labels);
        return sampleAndProject(ds, QuotaVector(quotas, ds), makeConfig(seed, schedule)).indices;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"), py::arg("seed"),
      py::arg("schedule") = "consecutive",
      "Greedy fair sampler: norm-proportional draws with orthogonal projection");
  m.def(
      "sample_kdpp",
      [](const Matrix& features, int k, std::uint64_t seed) {
        return sampleKDpp(features, k, makeConfig(seed, "consecutive")).indices;
      },
      py::arg("features"), py::arg("k"), py::arg("seed"));
  m.def(
      "sample_ki_dpp",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::uint64_t seed) {
        const auto ds = makeDataset(features, labels);
        return sampleKiDpp(ds, QuotaVector(quotas, ds), makeConfig(seed, "consecutive")).indices;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"), py::arg("seed"));
  m.def(
      "sample_uniform",
      [](int m_, int k, std::uint64_t seed) { return sampleUniform(m_, k, seed).indices; },
      py::arg("m"), py::arg("k"), py::arg("seed"));
  m.def(
      "sample_uniform_constrained",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::uint64_t seed) {
        const auto ds = makeDataset(features, labels);
        return sampleUniformConstrained(ds, QuotaVector(quotas, ds), seed).indices;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"), py::arg("seed"));
  m.def(
      "scale_and_sample",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::uint64_t seed) {
        const auto ds = makeDataset(features, labels);
        return scaleAndSample(ds, QuotaVector(quotas, ds), makeConfig(seed, "consecutive"))
            .indices;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"), py::arg("seed"));

  // Exact oracle machinery.
  m.def(
      "exact_pdpp_distribution",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::uint64_t cap) {
        const auto ds = makeDataset(features, labels);
        return tableDict(exactPDppDistribution(ds, QuotaVector(quotas, ds), cap));
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"),
      py::arg("cap") = kDefaultEnumerationCap,
      "Exact constrained distribution as {tuple(indices): probability}");
  m.def(
      "constrained_log_volume_sum",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas) {
        const auto ds = makeDataset(features, labels);
        return logValueTuple(constrainedLogVolumeSum(ds, QuotaVector(quotas, ds)));
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"),
      "log of the exact fair-family normalizer as (sign, log_magnitude)");
  m.def(
      "fair_family_size",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas) {
        const auto ds = makeDataset(features, labels);
        return fairFamilySize(ds, QuotaVector(quotas, ds));
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"));
  m.def("random_partition", &randomPartition, py::arg("m"), py::arg("p"), py::arg("seed"));

  // Linear-algebra primitives.
  m.def("singular_values",
        [](const Matrix& a) { return singularValues(a).values; }, py::arg("a"));
  m.def(
      "log_volume_det",
      [](const Matrix& rows) {
        std::vector<Vector> v;
        for (int r = 0; r < rows.rows(); ++r) v.push_back(rows.row(r).transpose());
        return logValueTuple(logVolumeDet(v));
      },
      py::arg("rows"), "(sign, log det(W W^T)) by sequential orthogonalization");
  m.def(
      "gram_log_det",
      [](const Matrix& rows) {
        std::vector<Vector> v;
        for (int r = 0; r < rows.rows(); ++r) v.push_back(rows.row(r).transpose());
        return logValueTuple(gramLogDet(v));
      },
      py::arg("rows"), "(sign, log det(W W^T)) by the Gram-eigenvalue route");
  m.def(
      "project_orthogonal",
      [](const Vector& w, const Vector& v) { return projectOrthogonal(w, v); }, py::arg("w"),
      py::arg("v"));
  m.def(
      "elementary_symmetric",
      [](const std::vector<double>& values, std::size_t k) {
        return logValueTuple(elementarySymmetric(values, k));
      },
      py::arg("values"), py::arg("k"), "(sign, log e_k(values))");
  m.def("scale_tail_singular_values", &scaleTailSingularValues, py::arg("a"), py::arg("keep"),
        py::arg("factor"));

  // Diagnostics.
  m.def(
      "balance_report",
      [](const Matrix& features, const std::vector<int>& labels) {
        const auto rep = balanceReport(makeDataset(features, labels));
        py::dict d;
        d["minimalBeta"] = rep.minimalBeta;
        d["perPartRatios"] = rep.perPartRatios;
        d["fullSpectrum"] = rep.fullSpectrum.values;
        py::list spectra;
        for (const auto& s : rep.partSpectra) spectra.append(s.values);
        d["partSpectra"] = spectra;
        return d;
      },
      py::arg("features"), py::arg("labels"));
  m.def(
      "drop_report",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas) {
        const auto ds = makeDataset(features, labels);
        const auto rep = dropReport(ds, QuotaVector(quotas, ds));
        py::dict d;
        d["perPartDelta"] = rep.perPartDelta;
        d["minimalDelta"] = rep.minimalDelta;
        return d;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"));
  m.def("leverage_scores", &leverageScores, py::arg("features"));
  m.def(
      "theorem_hypothesis_margin",
      [](const Matrix& features, int p, double delta) {
        const auto check = theorem3HypothesisHolds(features, p, delta);
        return py::make_tuple(check.holds, check.margin);
      },
      py::arg("features"), py::arg("p"), py::arg("delta"),
      "(holds, threshold - max leverage) for the random-partition balance hypothesis");
  m.def(
      "price_of_fairness_exact",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& quotas,
         std::optional<double> epsilon) {
        const auto ds = makeDataset(features, labels);
        const auto rep = priceOfFairnessExact(ds, QuotaVector(quotas, ds), epsilon);
        py::dict d;
        d["exactKL"] = rep.exactKL;
        d["logNormalizerAll"] = logValueTuple(rep.logNormalizerAll);
        d["logNormalizerFair"] = logValueTuple(rep.logNormalizerFair);
        d["lemma7Bound"] = rep.lemma7Bound;
        py::dict h;
        h["epsilon"] = rep.theorem4Hypothesis.epsilon;
        h["N0"] = rep.theorem4Hypothesis.n0;
        h["gamma"] = rep.theorem4Hypothesis.gamma;
        h["sigma_n"] = rep.theorem4Hypothesis.sigmaN;
        h["deltaThreshold"] = rep.theorem4Hypothesis.deltaThreshold;
        h["nThreshold"] = rep.theorem4Hypothesis.nThreshold;
        h["minimalDelta"] = rep.theorem4Hypothesis.minimalDelta;
        h["holds"] = rep.theorem4Hypothesis.holds;
        d["theorem4Hypothesis"] = h;
        return d;
      },
      py::arg("features"), py::arg("labels"), py::arg("quotas"),
      py::arg("epsilon") = std::nullopt);

  // Metrics.
  m.def(
      "unfairness",
      [](const std::vector<double>& target, const std::vector<int>& indices,
         const Matrix& features, const std::vector<int>& labels) {
        const auto ds = makeDataset(features, labels);
        return unfairness(TargetFrequency::explicitVector(target), SampleSet(indices), ds);
      },
      py::arg("target"), py::arg("indices"), py::arg("features"), py::arg("labels"),
      "KL(target || realized per-part frequencies) in nats");
  m.def(
      "log_geometric_diversity",
      [](const Matrix& features, const std::vector<int>& labels, const std::vector<int>& indices) {
        const auto ds = makeDataset(features, labels);
        return logValueTuple(logGeometricDiversity(ds, SampleSet(indices)));
      },
      py::arg("features"), py::arg("labels"), py::arg("indices"));
  m.def(
      "kl_divergence",
      [](const py::dict& a, const py::dict& b) {
        return klDivergence(tableFromDict(a), tableFromDict(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "total_variation",
      [](const py::dict& a, const py::dict& b) {
        return totalVariation(tableFromDict(a), tableFromDict(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "quotas_for",
      [](const std::string& policy, const Matrix& features, const std::vector<int>& labels,
         int k) {
        const auto ds = makeDataset(features, labels);
        if (policy == "equal") return quotasFor(QuotaPolicy::Equal, ds, k).quotas();
        if (policy == "proportional") return quotasFor(QuotaPolicy::Proportional, ds, k).quotas();
        throw ConfigurationError("policy must be 'equal' or 'proportional'");
      },
      py::arg("policy"), py::arg("features"), py::arg("labels"), py::arg("k"));
}
