#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace amenalab {

/// Shortest round-trip decimal form of a double.
inline std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

struct ReportRow {
  long index = 0;
  std::vector<double> values;
};

/// Labeled table (index -> measured quantities) with named pass/fail verdicts.
///
/// Rows are kept sorted by strictly increasing index. The first `csv_width`
/// value columns form the CSV table; all columns appear in the JSON form.
class ConvergenceReport {
 public:
  ConvergenceReport() = default;
  ConvergenceReport(std::string name, std::string index_column, std::vector<std::string> columns,
                    std::size_t csv_width, double tolerance)
      : name_(std::move(name)),
        index_column_(std::move(index_column)),
        columns_(std::move(columns)),
        csv_width_(csv_width),
        tolerance_(tolerance) {
    if (csv_width_ > columns_.size()) throw std::invalid_argument("csv width exceeds column count");
  }

  const std::string& name() const { return name_; }
  const std::string& index_column() const { return index_column_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<ReportRow>& rows() const { return rows_; }
  double tolerance() const { return tolerance_; }
  bool empty() const { return rows_.empty(); }

  void add_row(long index, std::vector<double> values) {
    if (values.size() != columns_.size()) throw std::invalid_argument("row width does not match columns");
    if (!rows_.empty() && index <= rows_.back().index)
      throw std::invalid_argument("report rows must have strictly increasing indices");
    rows_.push_back(ReportRow{index, std::move(values)});
  }

  std::size_t column(const std::string& label) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == label) return i;
    throw std::out_of_range("no report column '" + label + "'");
  }

  std::vector<double> column_values(const std::string& label) const {
    const std::size_t c = column(label);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.values[c]);
    return out;
  }

  void set_verdict(const std::string& label, bool value) {
    for (auto& [k, v] : verdicts_)
      if (k == label) {
        v = value;
        return;
      }
    verdicts_.emplace_back(label, value);
  }

  bool verdict(const std::string& label) const {
    for (const auto& [k, v] : verdicts_)
      if (k == label) return v;
    throw std::out_of_range("no verdict '" + label + "'");
  }

  const std::vector<std::pair<std::string, bool>>& verdicts() const { return verdicts_; }

  /// Informational quantity carried into the JSON form; does not affect `passed()`.
  void set_annotation(const std::string& label, double value) {
    for (auto& [k, v] : annotations_)
      if (k == label) {
        v = value;
        return;
      }
    annotations_.emplace_back(label, value);
  }
  const std::vector<std::pair<std::string, double>>& annotations() const { return annotations_; }

  bool passed() const {
    for (const auto& [k, v] : verdicts_)
      if (!v) return false;
    return true;
  }

  /// CSV with a leading `# amenalab <command> <config-hash>` comment line.
  std::string to_csv(const std::string& command, const std::string& config_hash) const {
    std::string out = "# amenalab " + command + " " + config_hash + "\n" + index_column_;
    for (std::size_t c = 0; c < csv_width_; ++c) out += "," + columns_[c];
    out += "\n";
    for (const auto& r : rows_) {
      out += std::to_string(r.index);
      for (std::size_t c = 0; c < csv_width_; ++c) out += "," + format_number(r.values[c]);
      out += "\n";
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    nlohmann::json cols = nlohmann::json::array({index_column_});
    for (const auto& c : columns_) cols.push_back(c);
    j["columns"] = cols;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rows_) {
      nlohmann::json row = nlohmann::json::array({r.index});
      for (double v : r.values) row.push_back(v);
      rows.push_back(row);
    }
    j["rows"] = rows;
    for (const auto& [k, v] : verdicts_) j[k] = v;
    j["tolerance"] = tolerance_;
    for (const auto& [k, v] : annotations_) j["annotations"][k] = v;
    j["passed"] = passed();
    return j;
  }

 private:
  std::string name_;
  std::string index_column_ = "index";
  std::vector<std::string> columns_;
  std::size_t csv_width_ = 0;
  double tolerance_ = 0.0;
  std::vector<ReportRow> rows_;
  std::vector<std::pair<std::string, bool>> verdicts_;
  std::vector<std::pair<std::string, double>> annotations_;
};

}  // namespace amenalab
