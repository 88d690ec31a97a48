#include "fairdpp/serialize.hpp"

#include <cmath>
#include <fstream>

#include "fairdpp/errors.hpp"

namespace fairdpp {

Json toJson(const LogValue& v) {
  Json j;
  j["sign"] = v.sign;
  if (v.isZero())
    j["logMagnitude"] = nullptr;
  else
    j["logMagnitude"] = v.logMagnitude;
  return j;
}

namespace {

Json finiteOrString(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

Json toJson(const BalanceReport& rep) {
  Json j;
  j["minimalBeta"] = finiteOrString(rep.minimalBeta);
  j["perPartRatios"] = Json::array();
  for (double r : rep.perPartRatios) j["perPartRatios"].push_back(finiteOrString(r));
  j["fullSpectrum"] = rep.fullSpectrum.values;
  j["partSpectra"] = Json::array();
  for (const auto& s : rep.partSpectra) j["partSpectra"].push_back(s.values);
  return j;
}

Json toJson(const DropReport& rep) {
  Json j;
  j["perPartDelta"] = rep.perPartDelta;
  j["minimalDelta"] = rep.minimalDelta;
  return j;
}

Json toJson(const PriceOfFairnessReport& rep) {
  Json j;
  j["exactKL"] = rep.exactKL;
  j["logNormalizerAll"] = toJson(rep.logNormalizerAll);
  j["logNormalizerFair"] = toJson(rep.logNormalizerFair);
  j["lemma7Bound"] = rep.lemma7Bound;
  const auto& h = rep.theorem4Hypothesis;
  j["theorem4Hypothesis"] = Json{{"epsilon", h.epsilon},
                                 {"N0", h.n0},
                                 {"gamma", h.gamma},
                                 {"sigma_n", h.sigmaN},
                                 {"deltaThreshold", h.deltaThreshold},
                                 {"nThreshold", h.nThreshold},
                                 {"computable", h.computable},
                                 {"minimalDelta", h.minimalDelta},
                                 {"holds", h.holds}};
  return j;
}

Json toJson(const DistributionTable& table) {
  Json j;
  j["support"] = table.support;
  j["entries"] = Json::array();
  for (const auto& [s, p] : table.entries)
    j["entries"].push_back(Json{{"indices", s.indices}, {"probability", p}});
  return j;
}

Json datasetToJson(const PartitionedDataset& ds, const std::vector<std::string>& columnNames,
                   const std::vector<std::string>& partNames) {
  Json j;
  j["m"] = ds.rowCount();
  j["n"] = ds.featureDim();
  j["p"] = ds.partCount();
  j["labels"] = ds.labels();
  Json rows = Json::array();
  for (int r = 0; r < ds.rowCount(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < ds.featureDim(); ++c) row.push_back(ds.features()(r, c));
    rows.push_back(std::move(row));
  }
  j["features"] = std::move(rows);
  if (!columnNames.empty()) j["columns"] = columnNames;
  if (!partNames.empty()) j["partNames"] = partNames;
  return j;
}

PartitionedDataset datasetFromJson(const Json& j) {
  try {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("features");
    if (static_cast<int>(rows.size()) != m) throw DataError("dataset file: row count mismatch");
    Matrix features(m, n);
    for (int r = 0; r < m; ++r) {
      const auto& row = rows.at(r);
      if (static_cast<int>(row.size()) != n) throw DataError("dataset file: column count mismatch");
      for (int c = 0; c < n; ++c) features(r, c) = row.at(c).get<double>();
    }
    std::vector<int> labels = j.at("labels").get<std::vector<int>>();
    return PartitionedDataset(std::move(features), std::move(labels));
  } catch (const Json::exception& e) {
    throw DataError(std::string("dataset file: ") + e.what());
  }
}

PartitionedDataset loadDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw DataError("dataset file '" + path + "': " + e.what());
  }
  return datasetFromJson(j);
}

void saveDatasetFile(const std::string& path, const PartitionedDataset& ds,
                     const std::vector<std::string>& columnNames,
                     const std::vector<std::string>& partNames) {
  writeTextFile(path, datasetToJson(ds, columnNames, partNames).dump(2) + "\n");
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
}

}  // namespace fairdpp
