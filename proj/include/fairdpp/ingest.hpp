#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdpp/dataset.hpp"

namespace fairdpp {

struct IngestionConfig {
  std::string path;
  char delimiter = ',';
  std::vector<std::string> categoricalColumns;
  std::string labelColumn;
  bool pairwiseProducts = false;
  bool dropRedundantColumns = true;
  std::optional<int> subsampleSize;
  std::uint64_t seed = 0;
};

struct IngestedDataset {
  PartitionedDataset dataset;
  std::vector<std::string> columnNames;  // after expansion/products/dedup
  std::vector<std::string> partNames;    // partNames[i] is the label value of part i+1
  int rowsDropped = 0;                   // incomplete rows removed
};

/// Reads a delimited text file with a header row into a partitioned
/// dataset. Rows with missing fields (empty or "?") are dropped, an
/// optional deterministic subsample is taken, categorical columns are
/// one-hot expanded, numeric columns pass through, and the label column
/// becomes dense part ids. With pairwiseProducts, products of all
/// distinct column pairs are appended and exact-duplicate and all-zero
/// columns dropped.
IngestedDataset ingest(const IngestionConfig& cfg);

/// Parses an in-memory table (header + rows) with the same rules; the
/// file-reading wrapper above delegates here.
IngestedDataset ingestRows(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows,
                           const IngestionConfig& cfg);

}  // namespace fairdpp
