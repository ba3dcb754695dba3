#include "ncsim/report.hpp"

#include <cmath>
#include <cstdio>

#include "ncsim/errors.hpp"
#include "ncsim/serialize.hpp"

namespace ncsim {

std::string CsvReport::fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void CsvReport::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw BadConfig("csv row width mismatch");
  rows_.push_back(cells);
}

void CsvReport::add_aggregates(const std::string& label_column) {
  const std::size_t count = rows_.size();
  std::vector<double> mean(columns_.size(), 0), m2(columns_.size(), 0);
  std::vector<bool> numeric(columns_.size(), count > 0);
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(row[c].c_str(), &end);
      if (end == row[c].c_str() || *end != '\0') {
        numeric[c] = false;
        continue;
      }
      mean[c] += v;
    }
  }
  for (auto& v : mean) v /= count ? count : 1;
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (!numeric[c]) continue;
      const double v = std::strtod(row[c].c_str(), nullptr) - mean[c];
      m2[c] += v * v;
    }
  }
  std::vector<std::string> mrow(columns_.size()), srow(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c] == label_column) {
      mrow[c] = "mean";
      srow[c] = "stddev";
    } else if (numeric[c]) {
      mrow[c] = fmt(mean[c]);
      srow[c] = fmt(count > 1 ? std::sqrt(m2[c] / double(count - 1)) : 0.0);
    }
  }
  rows_.push_back(std::move(mrow));
  rows_.push_back(std::move(srow));
}

std::string CsvReport::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

nlohmann::json CsvReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json jr;
    for (std::size_t c = 0; c < columns_.size(); ++c) jr[columns_[c]] = row[c];
    rows.push_back(std::move(jr));
  }
  return {{"columns", columns_}, {"rows", rows}};
}

void CsvReport::write(const std::string& csv_path, const std::string& json_path) const {
  write_file(csv_path, to_csv());
  if (!json_path.empty()) write_file(json_path, to_json().dump(2) + "\n");
}

}  // namespace ncsim
