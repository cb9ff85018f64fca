#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "esslab/error.hpp"
#include "esslab/table.hpp"

using namespace esslab;

TEST_SUITE("table") {

TEST_CASE("CSV round trip is exact") {
  Table t({"a", "b", "c"});
  t.add_row({1.0, -0.000123456789, 1e10 / 3});
  t.add_row({std::nan(""), 2.5, -17});
  t.metadata()["note"] = "x";
  std::stringstream ss;
  t.write_csv(ss);
  const Table back = Table::read_csv(ss);
  CHECK(back.columns() == t.columns());
  REQUIRE(back.row_count() == 2);
  CHECK(back.at(0, "b") == t.at(0, "b"));
  CHECK(back.at(0, "c") == t.at(0, "c"));
  CHECK(std::isnan(back.at(1, "a")));
}

TEST_CASE("six significant digits") {
  CHECK(Table::format(16.666666666) == "16.6667");
  CHECK(Table::quantize(0.123456789) == 0.123457);
}

TEST_CASE("parse errors and missing columns") {
  std::stringstream bad("a,b\n1,2,3\n");
  CHECK_THROWS_AS(Table::read_csv(bad), Error);
  std::stringstream word("a\nhello\n");
  CHECK_THROWS_AS(Table::read_csv(word), Error);
  std::stringstream empty("");
  CHECK_THROWS_AS(Table::read_csv(empty), Error);
  Table t({"x"});
  try {
    t.column("y");
    FAIL("expected ColumnMissing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ColumnMissing);
  }
  CHECK_THROWS_AS(t.add_row({1.0, 2.0}), Error);
}

TEST_CASE("files with a JSON sidecar") {
  const auto dir = std::filesystem::temp_directory_path() / "esslab_table_test";
  std::filesystem::remove_all(dir);
  Table t({"x", "y"});
  t.add_row({1, 2});
  t.metadata()["id"] = "demo";
  write_table_files(t, dir / "demo.csv");
  CHECK(Table::read_csv_file(dir / "demo.csv") == t);
  std::ifstream side(dir / "demo.json");
  std::string text((std::istreambuf_iterator<char>(side)), {});
  CHECK(text.find("\"demo\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}

}
