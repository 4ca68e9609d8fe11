#include <catch2/catch_amalgamated.hpp>

#include "resev/csv.hpp"
#include "test_util.hpp"

using resev::LoadError;
namespace csv = resev::csv;

TEST_CASE("csv reads header and rows") {
  testutil::TempDir dir;
  testutil::write_file(dir.path() / "t.csv",
                       "a,b,c\n1,2,3\nx,\"y,z\",\"q\"\"q\"\n");
  const csv::Table t = csv::read_file(dir.path() / "t.csv");
  REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(t.rows[1] == std::vector<std::string>{"x", "y,z", "q\"q"});
  CHECK(t.row_lines[1] == 3);
}

TEST_CASE("csv accepts crlf and blank lines") {
  testutil::TempDir dir;
  testutil::write_file(dir.path() / "t.csv", "a,b\r\n\r\n1,2\r\n");
  const csv::Table t = csv::read_file(dir.path() / "t.csv");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2"});
}

TEST_CASE("csv reports malformed rows with file and line") {
  testutil::TempDir dir;
  testutil::write_file(dir.path() / "t.csv", "a,b\n1,2,3\n");
  try {
    csv::read_file(dir.path() / "t.csv");
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("t.csv:2") != std::string::npos);
  }
}

TEST_CASE("csv missing file and missing column") {
  testutil::TempDir dir;
  CHECK_THROWS_AS(csv::read_file(dir.path() / "absent.csv"), LoadError);
  testutil::write_file(dir.path() / "t.csv", "a,b\n1,2\n");
  const csv::Table t = csv::read_file(dir.path() / "t.csv");
  CHECK_THROWS_AS(t.column("missing"), LoadError);
}

TEST_CASE("csv numeric parsers are strict and report the column") {
  testutil::TempDir dir;
  testutil::write_file(dir.path() / "t.csv", "a,b\n12,3.5\nx7,1e2\n");
  const csv::Table t = csv::read_file(dir.path() / "t.csv");
  CHECK(csv::parse_long(t, 0, 0) == 12);
  CHECK(csv::parse_double(t, 0, 1) == 3.5);
  try {
    csv::parse_long(t, 1, 0);
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
  }
  CHECK(csv::parse_double(t, 1, 1) == 100.0);
}

TEST_CASE("csv render round-trips through read") {
  testutil::TempDir dir;
  const std::vector<std::string> header{"id", "name"};
  const std::vector<std::vector<std::string>> rows{{"1", "plain"},
                                                   {"2", "with,comma"},
                                                   {"3", "with\"quote"}};
  testutil::write_file(dir.path() / "t.csv", csv::render(header, rows));
  const csv::Table t = csv::read_file(dir.path() / "t.csv");
  CHECK(t.header == header);
  CHECK(t.rows == rows);
}

TEST_CASE("split_list") {
  CHECK(csv::split_list("") == std::vector<std::string>{});
  CHECK(csv::split_list("a") == std::vector<std::string>{"a"});
  CHECK(csv::split_list("a|b|c") == std::vector<std::string>{"a", "b", "c"});
}
