#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include "fairdpp/diagnostics.hpp"
#include "fairdpp/errors.hpp"
#include "fairdpp/experiment.hpp"
#include "fairdpp/ingest.hpp"
#include "fairdpp/metrics.hpp"
#include "fairdpp/samplers.hpp"
#include "fairdpp/serialize.hpp"

namespace {

using namespace fairdpp;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDegenerate = 4;

std::vector<std::string> splitNames(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parseQuotas(const std::string& csv) {
  std::vector<int> out;
  for (const auto& tok : splitNames(csv)) out.push_back(std::stoi(tok));
  return out;
}

void emit(const Json& j, const std::string& output) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    writeTextFile(output, text);
}

QuotaVector resolveQuotas(const PartitionedDataset& ds, const std::string& quotaCsv,
                          const std::string& policy, int k) {
  if (!quotaCsv.empty()) return QuotaVector(parseQuotas(quotaCsv), ds);
  if (policy == "equal") return quotasFor(QuotaPolicy::Equal, ds, k);
  if (policy == "proportional") return quotasFor(QuotaPolicy::Proportional, ds, k);
  throw ConfigurationError("either --quotas or --quota-policy equal|proportional with --k");
}

int runCli(int argc, char** argv) {
  CLI::App app{"Fairness-constrained determinantal sampling toolkit"};
  app.require_subcommand(1);

  // ---- ingest ----------------------------------------------------------
  IngestionConfig ingCfg;
  std::string ingDelimiter = ",";
  std::string ingCategorical;
  int ingSubsample = 0;
  std::string ingOutput;
  auto* ingestCmd = app.add_subcommand("ingest", "Vectorize a delimited text file into a dataset");
  ingestCmd->add_option("--input", ingCfg.path, "Delimited input file with a header row")
      ->required();
  ingestCmd->add_option("--label-column", ingCfg.labelColumn,
                        "Column holding the sensitive attribute")
      ->required();
  ingestCmd->add_option("--categorical", ingCategorical,
                        "Comma-separated names of categorical columns");
  ingestCmd->add_option("--delimiter", ingDelimiter, "Field delimiter (default ,)");
  ingestCmd->add_flag("--pairwise-products", ingCfg.pairwiseProducts,
                      "Append products of all distinct column pairs");
  bool keepRedundant = false;
  ingestCmd->add_flag("--keep-redundant", keepRedundant,
                      "Keep exact-duplicate and all-zero columns");
  auto* subsampleOpt =
      ingestCmd->add_option("--subsample", ingSubsample, "Deterministic row subsample size");
  auto* ingestSeedOpt = ingestCmd->add_option("--seed", ingCfg.seed, "Subsample seed");
  subsampleOpt->needs(ingestSeedOpt);
  ingestCmd->add_option("--output", ingOutput, "Dataset JSON path (stdout when omitted)");

  // ---- sample ----------------------------------------------------------
  std::string samDataset, samQuotas, samPolicy, samOutput, samSchedule = "consecutive";
  std::string samName = "P-DPP";
  int samK = 0;
  std::uint64_t samSeed = 0;
  auto* sampleCmd = app.add_subcommand("sample", "Draw one subset with a chosen sampler");
  sampleCmd->add_option("--dataset", samDataset, "Dataset JSON from ingest")->required();
  sampleCmd->add_option("--sampler", samName,
                        "UNIF | k-DPP | k_i-UNIF | k_i-DPP | P-DPP | Scale-and-Sample");
  sampleCmd->add_option("--quotas", samQuotas, "Explicit per-part quotas, e.g. 3,2");
  sampleCmd->add_option("--quota-policy", samPolicy, "equal | proportional");
  sampleCmd->add_option("--k", samK, "Total subset size for a quota policy");
  sampleCmd->add_option("--seed", samSeed, "Random seed")->required();
  sampleCmd->add_option("--part-schedule", samSchedule, "consecutive | roundrobin");
  sampleCmd->add_option("--output", samOutput, "Output JSON path (stdout when omitted)");

  // ---- diagnose --------------------------------------------------------
  std::string diaDataset, diaQuotas, diaPolicy, diaOutput;
  int diaK = 0;
  double diaEpsilon = -1.0;
  bool diaSkipPrice = false;
  auto* diagnoseCmd =
      app.add_subcommand("diagnose", "Spectral balance, drop, leverage, and price reports");
  diagnoseCmd->add_option("--dataset", diaDataset, "Dataset JSON from ingest")->required();
  diagnoseCmd->add_option("--quotas", diaQuotas, "Explicit per-part quotas");
  diagnoseCmd->add_option("--quota-policy", diaPolicy, "equal | proportional");
  diagnoseCmd->add_option("--k", diaK, "Total subset size for a quota policy");
  diagnoseCmd->add_option("--epsilon", diaEpsilon, "Epsilon for the drop-hypothesis record");
  diagnoseCmd->add_flag("--skip-price", diaSkipPrice, "Skip the exact price of fairness");
  diagnoseCmd->add_option("--output", diaOutput, "Output JSON path (stdout when omitted)");

  // ---- oracle ----------------------------------------------------------
  std::string oraDataset, oraQuotas, oraPolicy, oraOutput;
  int oraK = 0;
  std::uint64_t oracleCap = kDefaultEnumerationCap;
  auto* oracleCmd = app.add_subcommand("oracle", "Exact constrained distribution by enumeration");
  oracleCmd->add_option("--dataset", oraDataset, "Dataset JSON from ingest")->required();
  oracleCmd->add_option("--quotas", oraQuotas, "Explicit per-part quotas");
  oracleCmd->add_option("--quota-policy", oraPolicy, "equal | proportional");
  oracleCmd->add_option("--k", oraK, "Total subset size for a quota policy");
  oracleCmd->add_option("--cap", oracleCap, "Enumeration cap (default 1e7)");
  oracleCmd->add_option("--output", oraOutput, "Output JSON path (stdout when omitted)");

  // ---- experiment ------------------------------------------------------
  std::string expDataset, expQuotas, expPolicy, expOutput, expSchedule = "consecutive";
  std::string expSamplers = "UNIF,k-DPP,k_i-UNIF,k_i-DPP,P-DPP";
  std::string expTargets = "un,prop";
  int expK = 0, expRepetitions = 100, expThreads = 1;
  std::uint64_t expSeed = 0;
  bool expEmitRaw = false;
  auto* expCmd =
      app.add_subcommand("experiment", "Repeated sampling with fairness/diversity metrics");
  expCmd->add_option("--dataset", expDataset, "Dataset JSON from ingest")->required();
  expCmd->add_option("--samplers", expSamplers, "Comma-separated sampler names");
  expCmd->add_option("--quotas", expQuotas, "Explicit per-part quotas");
  expCmd->add_option("--quota-policy", expPolicy, "equal | proportional");
  expCmd->add_option("--k", expK, "Total subset size");
  expCmd->add_option("--targets", expTargets, "Comma-separated targets: un,prop,quota");
  expCmd->add_option("--repetitions", expRepetitions, "Repetitions per sampler");
  expCmd->add_option("--seed", expSeed, "Master seed")->required();
  expCmd->add_option("--part-schedule", expSchedule, "consecutive | roundrobin");
  expCmd->add_option("--threads", expThreads, "Worker threads (results are identical)");
  expCmd->add_flag("--emit-raw", expEmitRaw, "Also write per-repetition raw values");
  expCmd->add_option("--output", expOutput, "Report CSV path (sidecar JSON alongside)")
      ->required();

  // ---- pof-study -------------------------------------------------------
  PofStudySpec pof;
  std::string pofPartSizes, pofQuotas, pofOutput;
  auto* pofCmd = app.add_subcommand("pof-study", "Synthetic before/after tail-scaling study");
  pofCmd->add_option("--m", pof.m, "Rows (default 200)");
  pofCmd->add_option("--n", pof.n, "Columns (default 150)");
  pofCmd->add_option("--part-sizes", pofPartSizes, "Comma-separated part sizes (default m/3 rest)");
  pofCmd->add_option("--quotas", pofQuotas, "Comma-separated quotas (default 50,50)");
  pofCmd->add_option("--repetitions", pof.repetitions, "Repetitions per sampler (default 100)");
  pofCmd->add_option("--seed", pof.seed, "Master seed")->required();
  pofCmd->add_option("--threads", pof.threads, "Worker threads");
  pofCmd->add_option("--output", pofOutput, "Report CSV path (sidecar JSON alongside)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (ingestCmd->parsed()) {
    ingCfg.categoricalColumns = splitNames(ingCategorical);
    ingCfg.dropRedundantColumns = !keepRedundant;
    if (ingDelimiter.size() != 1) throw ConfigurationError("--delimiter must be one character");
    ingCfg.delimiter = ingDelimiter[0];
    if (subsampleOpt->count() > 0) ingCfg.subsampleSize = ingSubsample;
    const auto out = ingest(ingCfg);
    Json j = datasetToJson(out.dataset, out.columnNames, out.partNames);
    j["rowsDropped"] = out.rowsDropped;
    emit(j, ingOutput);
    std::cerr << "ingested " << out.dataset.rowCount() << " rows x " << out.dataset.featureDim()
              << " features, " << out.dataset.partCount() << " parts\n";
    return kExitOk;
  }

  if (sampleCmd->parsed()) {
    const auto ds = loadDatasetFile(samDataset);
    const auto q = resolveQuotas(ds, samQuotas, samPolicy, samK);
    SamplerConfig cfg;
    cfg.seed = samSeed;
    if (samSchedule == "roundrobin")
      cfg.schedule = PartSchedule::RoundRobin;
    else if (samSchedule != "consecutive")
      throw ConfigurationError("--part-schedule must be consecutive or roundrobin");
    SampleSet s;
    switch (samplerFromName(samName)) {
      case SamplerKind::Unif: s = sampleUniform(ds.rowCount(), q.total(), samSeed); break;
      case SamplerKind::KDpp: s = sampleKDpp(ds.features(), q.total(), cfg); break;
      case SamplerKind::KiUnif: s = sampleUniformConstrained(ds, q, samSeed); break;
      case SamplerKind::KiDpp: s = sampleKiDpp(ds, q, cfg); break;
      case SamplerKind::PDpp: s = sampleAndProject(ds, q, cfg); break;
      case SamplerKind::ScaleAndSample: s = scaleAndSample(ds, q, cfg); break;
    }
    Json j;
    j["sampler"] = samName;
    j["indices"] = s.indices;  // 0-based dataset rows
    j["perPartCounts"] = s.perPartCounts(ds);
    j["logGeometricDiversity"] = toJson(logGeometricDiversity(ds, s));
    j["seed"] = samSeed;
    j["schedule"] = samSchedule;
    emit(j, samOutput);
    return kExitOk;
  }

  if (diagnoseCmd->parsed()) {
    const auto ds = loadDatasetFile(diaDataset);
    Json j;
    j["balanceReport"] = toJson(balanceReport(ds));
    if (!diaQuotas.empty() || !diaPolicy.empty()) {
      const auto q = resolveQuotas(ds, diaQuotas, diaPolicy, diaK);
      j["quotas"] = q.quotas();
      j["dropReport"] = toJson(dropReport(ds, q));
      if (!diaSkipPrice) {
        std::optional<double> eps;
        if (diaEpsilon > 0.0) eps = diaEpsilon;
        j["priceOfFairness"] = toJson(priceOfFairnessExact(ds, q, eps));
      }
    }
    const auto scores = leverageScores(ds.features());
    j["leverage"] = Json{{"max", *std::max_element(scores.begin(), scores.end())},
                         {"sum", std::accumulate(scores.begin(), scores.end(), 0.0)},
                         {"scores", scores}};
    emit(j, diaOutput);
    return kExitOk;
  }

  if (oracleCmd->parsed()) {
    const auto ds = loadDatasetFile(oraDataset);
    const auto q = resolveQuotas(ds, oraQuotas, oraPolicy, oraK);
    Json j;
    j["fairFamilySize"] = fairFamilySize(ds, q);
    j["table"] = toJson(exactPDppDistribution(ds, q, oracleCap));
    j["logNormalizerFair"] = toJson(constrainedLogVolumeSum(ds, q, oracleCap));
    emit(j, oraOutput);
    return kExitOk;
  }

  if (expCmd->parsed()) {
    const auto ds = loadDatasetFile(expDataset);
    ExperimentConfig cfg;
    for (const auto& name : splitNames(expSamplers))
      cfg.samplerSet.push_back(samplerFromName(name));
    if (!expQuotas.empty()) {
      cfg.quotaPolicy = QuotaPolicy::Explicit;
      cfg.explicitQuotas = parseQuotas(expQuotas);
    } else if (expPolicy == "equal") {
      cfg.quotaPolicy = QuotaPolicy::Equal;
    } else if (expPolicy == "proportional") {
      cfg.quotaPolicy = QuotaPolicy::Proportional;
    } else {
      throw ConfigurationError("either --quotas or --quota-policy equal|proportional");
    }
    cfg.k = expK;
    cfg.repetitions = expRepetitions;
    cfg.targetNames = splitNames(expTargets);
    cfg.seed = expSeed;
    cfg.threads = expThreads;
    cfg.emitRaw = expEmitRaw;
    if (expSchedule == "roundrobin") cfg.schedule = PartSchedule::RoundRobin;

    Json configJson{{"command", "experiment"},
                    {"dataset", expDataset},
                    {"samplers", expSamplers},
                    {"quotas", expQuotas},
                    {"quotaPolicy", expPolicy},
                    {"k", cfg.k},
                    {"targets", expTargets},
                    {"repetitions", expRepetitions},
                    {"seed", expSeed},
                    {"schedule", expSchedule}};
    auto report = runExperiment(ds, cfg);
    report.configHash = configDigest(configJson.dump());

    writeTextFile(expOutput, writeReportCsv(report.rows));
    Json sidecar{{"config", configJson},
                 {"configHash", report.configHash},
                 {"masterSeed", report.masterSeed},
                 {"seedDerivation", "splitmix64(master, samplerName, repetition)"},
                 {"excludedPerSampler", report.excludedPerSampler}};
    writeTextFile(expOutput + ".json", sidecar.dump(2) + "\n");
    if (expEmitRaw) writeTextFile(expOutput + ".raw.csv", writeRawCsv(report.raw));
    std::cerr << "wrote " << expOutput << " and sidecar\n";
    return kExitOk;
  }

  if (pofCmd->parsed()) {
    if (!pofPartSizes.empty()) pof.partSizes = parseQuotas(pofPartSizes);
    if (!pofQuotas.empty()) pof.quotas = parseQuotas(pofQuotas);
    Json configJson{{"command", "pof-study"}, {"m", pof.m},
                    {"n", pof.n},             {"partSizes", pof.partSizes},
                    {"quotas", pof.quotas},   {"repetitions", pof.repetitions},
                    {"seed", pof.seed}};
    auto report = priceOfFairnessStudy(pof);
    report.configHash = configDigest(configJson.dump());
    writeTextFile(pofOutput, writeReportCsv(report.rows));
    Json sidecar{{"config", configJson},
                 {"configHash", report.configHash},
                 {"masterSeed", report.masterSeed},
                 {"dropReportBefore", toJson(report.dropBefore)},
                 {"dropReportAfter", toJson(report.dropAfter)},
                 {"excludedPerSampler", report.excludedPerSampler}};
    writeTextFile(pofOutput + ".json", sidecar.dump(2) + "\n");
    std::cerr << "wrote " << pofOutput << " and sidecar\n";
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return runCli(argc, argv);
  } catch (const fairdpp::DegenerateInstanceError& e) {
    std::cerr << "degenerate instance: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const fairdpp::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const fairdpp::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
