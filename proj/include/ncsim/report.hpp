#pragma once

#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace ncsim {

// Deterministic CSV assembly: fixed column order, stable float formatting,
// identical bytes for identical inputs.
class CsvReport {
 public:
  explicit CsvReport(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(const std::vector<std::string>& cells);
  // Appends mean and stddev rows computed over the numeric cells added so
  // far; non-numeric columns carry the label.
  void add_aggregates(const std::string& label_column);

  std::string to_csv() const;
  nlohmann::json to_json() const;  // mirrors the CSV content
  void write(const std::string& csv_path, const std::string& json_path) const;

  static std::string fmt(double v);
  static std::string fmt(long long v) { return std::to_string(v); }
  static std::string fmt(int v) { return std::to_string(v); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ncsim
