#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace esslab {

// Numeric table with a header row. Values are stored at 6 significant
// digits, the precision written to CSV, so a table read back from its CSV
// compares equal to the one that produced it.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  void add_row(std::vector<double> values);
  std::size_t column_index(const std::string& name) const;  // throws ColumnMissing
  bool has_column(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const;

  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  void write_csv(std::ostream& out) const;
  // Parses a header row plus numeric rows; "." decimal separator, comma
  // delimited. Metadata is left empty.
  static Table read_csv(std::istream& in);
  static Table read_csv_file(const std::filesystem::path& path);

  bool operator==(const Table& other) const {
    return columns_ == other.columns_ && rows_ == other.rows_;
  }

  static double quantize(double value);
  static std::string format(double value);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

// Writes the CSV and a <stem>.json metadata sidecar, each through a
// temporary file renamed into place.
void write_table_files(const Table& table, const std::filesystem::path& csv_path);

}  // namespace esslab
