#include "fairdpp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fairdpp/errors.hpp"
#include "fairdpp/rng.hpp"

namespace fairdpp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> splitLine(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delim)) fields.push_back(trim(field));
  if (!line.empty() && line.back() == delim) fields.push_back("");
  return fields;
}

bool isMissing(const std::string& field) { return field.empty() || field == "?"; }

double parseNumeric(const std::string& field, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DataError("ingest: non-numeric value '" + field + "' in numeric column '" + column +
                    "' at data row " + std::to_string(row + 1));
  return value;
}

}  // namespace

IngestedDataset ingestRows(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rawRows,
                           const IngestionConfig& cfg) {
  const std::size_t nCols = header.size();
  if (nCols == 0) throw DataError("ingest: empty header");

  auto columnIndex = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("ingest: unknown column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t labelIdx = columnIndex(cfg.labelColumn);
  std::set<std::size_t> categorical;
  for (const auto& name : cfg.categoricalColumns) categorical.insert(columnIndex(name));

  // Drop incomplete rows first, then subsample, then vectorize; the
  // category sets therefore come from the subsample actually used.
  std::vector<std::vector<std::string>> rows;
  int dropped = 0;
  for (const auto& row : rawRows) {
    if (row.size() != nCols)
      throw DataError("ingest: data row " + std::to_string(&row - rawRows.data() + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected " + std::to_string(nCols));
    const bool incomplete = std::any_of(row.begin(), row.end(),
                                        [](const std::string& f) { return isMissing(f); });
    if (incomplete) {
      ++dropped;
      continue;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw DataError("ingest: no complete rows after filtering");

  if (cfg.subsampleSize) {
    const int want = *cfg.subsampleSize;
    if (want < 1 || want > static_cast<int>(rows.size()))
      throw DataError("ingest: subsample size " + std::to_string(want) +
                      " outside 1.." + std::to_string(rows.size()));
    Rng rng(cfg.seed);
    std::vector<int> picks(rows.size());
    std::iota(picks.begin(), picks.end(), 0);
    for (int i = 0; i < want; ++i) {
      const int j = i + static_cast<int>(rng.below(picks.size() - i));
      std::swap(picks[i], picks[j]);
    }
    picks.resize(want);
    std::sort(picks.begin(), picks.end());  // keep original row order
    std::vector<std::vector<std::string>> sub;
    sub.reserve(want);
    for (int r : picks) sub.push_back(std::move(rows[r]));
    rows = std::move(sub);
  }

  const std::size_t m = rows.size();

  // Labels: dense ids over sorted distinct values of the label column.
  std::map<std::string, int> partIds;
  for (const auto& row : rows) partIds.emplace(row[labelIdx], 0);
  {
    int next = 1;
    for (auto& [_, id] : partIds) id = next++;
  }
  std::vector<int> labels(m);
  std::vector<std::string> partNames(partIds.size());
  for (const auto& [value, id] : partIds) partNames[id - 1] = value;
  for (std::size_t r = 0; r < m; ++r) labels[r] = partIds[rows[r][labelIdx]];

  // Base feature columns in header order: one-hot blocks (categories in
  // sorted order) for categorical columns, single columns otherwise. The
  // label column contributes features only when listed as categorical.
  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < nCols; ++c) {
    const bool isCat = categorical.count(c) > 0;
    if (c == labelIdx && !isCat) continue;
    if (isCat) {
      std::set<std::string> values;
      for (const auto& row : rows) values.insert(row[c]);
      for (const auto& v : values) {
        std::vector<double> col(m, 0.0);
        for (std::size_t r = 0; r < m; ++r) col[r] = rows[r][c] == v ? 1.0 : 0.0;
        columns.push_back(std::move(col));
        names.push_back(header[c] + "=" + v);
      }
    } else {
      std::vector<double> col(m);
      for (std::size_t r = 0; r < m; ++r) col[r] = parseNumeric(rows[r][c], r, header[c]);
      columns.push_back(std::move(col));
      names.push_back(header[c]);
    }
  }

  if (cfg.pairwiseProducts) {
    const std::size_t base = columns.size();
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = i + 1; j < base; ++j) {
        std::vector<double> col(m);
        for (std::size_t r = 0; r < m; ++r) col[r] = columns[i][r] * columns[j][r];
        columns.push_back(std::move(col));
        names.push_back(names[i] + "*" + names[j]);
      }
  }

  if (cfg.dropRedundantColumns) {
    std::vector<std::vector<double>> kept;
    std::vector<std::string> keptNames;
    std::set<std::vector<double>> seen;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const bool allZero = std::all_of(columns[c].begin(), columns[c].end(),
                                       [](double v) { return v == 0.0; });
      if (allZero) continue;
      if (!seen.insert(columns[c]).second) continue;  // exact duplicate, keep first
      kept.push_back(std::move(columns[c]));
      keptNames.push_back(std::move(names[c]));
    }
    columns = std::move(kept);
    names = std::move(keptNames);
  }
  if (columns.empty()) throw DataError("ingest: no feature columns survived");

  Matrix features(m, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) features(r, c) = columns[c][r];

  return IngestedDataset{PartitionedDataset(std::move(features), std::move(labels)),
                         std::move(names), std::move(partNames), dropped};
}

IngestedDataset ingest(const IngestionConfig& cfg) {
  std::ifstream in(cfg.path);
  if (!in) throw DataError("ingest: cannot open '" + cfg.path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("ingest: missing header row in '" + cfg.path + "'");
  const auto header = splitLine(line, cfg.delimiter);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(splitLine(line, cfg.delimiter));
  }
  return ingestRows(header, rows, cfg);
}

}  // namespace fairdpp
