#include "esslab/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "esslab/error.hpp"

namespace esslab {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
  if (text == "nan" || text == "NaN" || text == "NA" || text.empty()) return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return v;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

double Table::quantize(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format(value).c_str(), nullptr);
}

std::string Table::format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void Table::add_row(std::vector<double> values) {
  require(values.size() == columns_.size(), "row",
          "has " + std::to_string(values.size()) + " values for " +
              std::to_string(columns_.size()) + " columns");
  for (double& v : values) v = quantize(v);
  rows_.push_back(std::move(values));
}

bool Table::has_column(const std::string& name) const {
  for (const auto& c : columns_) {
    if (c == name) return true;
  }
  return false;
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  fail(ErrorCode::ColumnMissing, "no column named '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[idx]);
  return out;
}

double Table::at(std::size_t row, const std::string& name) const {
  return rows_.at(row)[column_index(name)];
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << (i ? "," : "") << columns_[i];
  }
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format(r[i]);
    out << '\n';
  }
}

Table Table::read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) fail(ErrorCode::ParseError, "missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  Table table(split(trim(line)));
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line));
    if (cells.size() != table.columns_.size()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + " has " +
                                      std::to_string(cells.size()) + " fields, expected " +
                                      std::to_string(table.columns_.size()));
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& c : cells) values.push_back(parse_number(c, line_no));
    table.add_row(std::move(values));
  }
  return table;
}

Table Table::read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return read_csv(in);
}

void write_table_files(const Table& table, const std::filesystem::path& csv_path) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  std::ostringstream csv;
  table.write_csv(csv);
  atomic_write(csv_path, csv.str());
  std::filesystem::path sidecar = csv_path;
  sidecar.replace_extension(".json");
  atomic_write(sidecar, table.metadata().dump(2) + "\n");
}

}  // namespace esslab
