#pragma once

#include <string>

#include <json.hpp>

#include "fairdpp/diagnostics.hpp"
#include "fairdpp/experiment.hpp"
#include "fairdpp/ingest.hpp"
#include "fairdpp/samplers.hpp"

namespace fairdpp {

using Json = nlohmann::json;

/// LogValue as {"sign": s, "logMagnitude": x}; logMagnitude is null for
/// the zero value (JSON has no -infinity).
Json toJson(const LogValue& v);

Json toJson(const BalanceReport& rep);
Json toJson(const DropReport& rep);
Json toJson(const PriceOfFairnessReport& rep);
Json toJson(const DistributionTable& table);

/// Dataset file schema: {"m", "n", "p", "labels" (part ids 1..p),
/// "features" (row-major nested arrays), "columns"?, "partNames"?}.
Json datasetToJson(const PartitionedDataset& ds,
                   const std::vector<std::string>& columnNames = {},
                   const std::vector<std::string>& partNames = {});
PartitionedDataset datasetFromJson(const Json& j);

PartitionedDataset loadDatasetFile(const std::string& path);
void saveDatasetFile(const std::string& path, const PartitionedDataset& ds,
                     const std::vector<std::string>& columnNames = {},
                     const std::vector<std::string>& partNames = {});

void writeTextFile(const std::string& path, const std::string& content);

}  // namespace fairdpp
