#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>
#include <sstream>

#include "fastlight/table.hpp"

using namespace fastlight;

TEST_CASE("format_double: 17 significant digits, scientific") {
  REQUIRE(format_double(1.0) == "1.0000000000000000e+00");
  REQUIRE(format_double(-2.43e15) == "-2.4300000000000000e+15");
  REQUIRE(format_double(4.1e-38) == "4.0999999999999998e-38");
}

TEST_CASE("emit_csv: comment block, header, rows, flagged section") {
  ResultTable t;
  t.columns = {"x", "y"};
  t.rows = {{1.0, 2.0}};
  t.provenance = {{"tool", "fastlight"}, {"axis", "x"}};
  t.flagged = {{3.0, "stage: boom"}};

  const std::string csv = to_csv(t);
  REQUIRE(csv ==
          "# tool: fastlight\n"
          "# axis: x\n"
          "x,y\n"
          "1.0000000000000000e+00,2.0000000000000000e+00\n"
          "# flagged,3.0000000000000000e+00,stage: boom\n");
}

TEST_CASE("emit_csv: header-only table") {
  ResultTable t;
  t.columns = {"only"};
  t.provenance = {{"tool", "fastlight"}};
  REQUIRE(to_csv(t) == "# tool: fastlight\nonly\n");
}

TEST_CASE("emit_csv: rejects non-finite and ragged rows") {
  ResultTable t;
  t.columns = {"x"};
  t.rows = {{std::numeric_limits<double>::quiet_NaN()}};
  std::ostringstream sink;
  REQUIRE_THROWS_AS(emit_csv(t, sink), ConfigError);
  t.rows = {{1.0, 2.0}};
  REQUIRE_THROWS_AS(emit_csv(t, sink), ConfigError);
}

TEST_CASE("csv round trip is bit-exact on random tables") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  std::uniform_int_distribution<int> shape(1, 6);

  for (int trial = 0; trial < 25; ++trial) {
    ResultTable t;
    const int cols = shape(rng);
    for (int c = 0; c < cols; ++c) t.columns.push_back("c" + std::to_string(c));
    const int rows = shape(rng) * 3;
    for (int r = 0; r < rows; ++r) {
      std::vector<double> row;
      for (int c = 0; c < cols; ++c) {
        row.push_back(mant(rng) * std::pow(10.0, expo(rng)));
      }
      t.rows.push_back(row);
    }
    t.provenance = {{"tool", "fastlight"}, {"config_hash", "deadbeef"}};
    t.flagged = {{0.5, "stage: reason"}};

    const ResultTable back = parse_csv(to_csv(t));
    REQUIRE(back == t);
  }
}

TEST_CASE("parse_csv: malformed input") {
  REQUIRE_THROWS_AS(parse_csv(std::string("# tool: x\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_csv(std::string("a,b\n1.0,zzz\n")), ConfigError);
}
