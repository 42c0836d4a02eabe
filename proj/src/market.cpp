#include "houp/market.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace houp {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto r = std::from_chars(first, last, out);
  return r.ec == std::errc() && r.ptr == last;
}

}  // namespace

Market load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::runtime_error("load_csv: '" + path + "' is empty");

  const auto first_row = split_csv_row(lines[0]);
  bool has_header;
  if (options.has_header.has_value()) {
    has_header = *options.has_header;
  } else {
    double ignored;
    has_header = !std::all_of(first_row.begin(), first_row.end(),
                              [&](const std::string& c) { return parse_double(c, ignored); });
  }

  std::vector<std::string> labels;
  std::size_t data_begin = 0;
  if (has_header) {
    for (const auto& cell : first_row) labels.push_back(trim(cell));
    data_begin = 1;
  } else {
    for (std::size_t k = 0; k < first_row.size(); ++k) labels.push_back("asset" + std::to_string(k + 1));
  }
  const Index columns = static_cast<Index>(labels.size());
  const Index rows = static_cast<Index>(lines.size() - data_begin);
  if (rows < 1) throw std::runtime_error("load_csv: '" + path + "' has no data rows");

  Market market;
  market.labels = labels;
  market.relatives.resize(rows, columns);
  for (Index t = 0; t < rows; ++t) {
    const auto cells = split_csv_row(lines[data_begin + t]);
    if (static_cast<Index>(cells.size()) != columns)
      throw std::runtime_error("load_csv: row " + std::to_string(t + 1) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(columns));
    for (Index k = 0; k < columns; ++k) {
      double value;
      if (!parse_double(cells[k], value))
        throw std::runtime_error("load_csv: non-numeric cell '" + trim(cells[k]) + "' at row " +
                                 std::to_string(t + 1) + ", column " + std::to_string(k + 1) +
                                 " (" + labels[k] + ")");
      if (!(value > 0.0))
        throw std::runtime_error("load_csv: non-positive price relative '" + trim(cells[k]) +
                                 "' at row " + std::to_string(t + 1) + ", column " +
                                 std::to_string(k + 1) + " (" + labels[k] + ")");
      market.relatives(t, k) = value;
    }
  }

  if (!options.select.empty()) {
    Market selected;
    selected.relatives.resize(rows, static_cast<Index>(options.select.size()));
    for (std::size_t i = 0; i < options.select.size(); ++i) {
      const auto it = std::find(labels.begin(), labels.end(), options.select[i]);
      if (it == labels.end())
        throw std::runtime_error("load_csv: unknown asset label '" + options.select[i] + "'");
      selected.labels.push_back(options.select[i]);
      selected.relatives.col(static_cast<Index>(i)) =
          market.relatives.col(static_cast<Index>(it - labels.begin()));
    }
    market = std::move(selected);
  }

  validate(market);
  return market;
}

void save_csv(const Market& market, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open '" + path + "' for writing");
  for (Index k = 0; k < market.assets(); ++k)
    out << (k ? "," : "") << market.labels[static_cast<std::size_t>(k)];
  out << '\n';
  char buffer[64];
  for (Index t = 0; t < market.periods(); ++t) {
    for (Index k = 0; k < market.assets(); ++k) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", market.relatives(t, k));
      out << (k ? "," : "") << buffer;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_csv: write to '" + path + "' failed");
}

}  // namespace houp
