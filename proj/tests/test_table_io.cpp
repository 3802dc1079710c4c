#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ramancf/errors.hpp"
#include "ramancf/table_io.hpp"

using namespace ramancf;

namespace {

SweepTable sample() {
  SweepTable t{"delta", {0.0, 0.1, 0.2}, "energy", {}, {{"branch", "MinusExp"}}};
  t.series.push_back({"E_eta_0p2_omega_2", {{"eta", 0.2}, {"omega", 2.0}},
                      {{-1.0 / 3.0, CellStatus::ok, 1e-12},
                       {0.1 + 0.2, CellStatus::ok, 0.0},
                       {1e-300, CellStatus::ok, 0.0}}});
  t.series.push_back({"E_eta_0p4_omega_2", {{"eta", 0.4}, {"omega", 2.0}},
                      {{1.25, CellStatus::ok, 0.0},
                       {1.5, CellStatus::non_converged, 0.0},
                       {}}});
  return t;
}

}  // namespace

TEST_CASE("CSV layout") {
  const std::string csv = to_csv(sample());
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "delta,E_eta_0p2_omega_2,E_eta_0p4_omega_2,E_eta_0p4_omega_2_flag");
  std::getline(in, row);
  CHECK(row == "0,-0.33333333333333331,1.25,ok");
  std::getline(in, row);
  CHECK(row == "0.10000000000000001,0.30000000000000004,,non_converged");
  std::getline(in, row);
  CHECK(row == "0.20000000000000001,1e-300,,continuation_lost");
}

TEST_CASE("CSV round trip") {
  const auto t = sample();
  const auto back = from_csv(to_csv(t));
  CHECK(csv_equivalent(t, back));
  CHECK(back.quantity == "energy");
  CHECK(back.series[1].fixed.at("eta") == 0.4);
  CHECK(back.series[1].cells[1].status == CellStatus::non_converged);
  CHECK(std::isnan(back.series[1].cells[2].value));
  CHECK(to_csv(back) == to_csv(t));
}

TEST_CASE("series names decode") {
  const auto a = parse_series_name("omega_E_3_eta_0p4");
  CHECK(a.at("energy") == 3.0);
  CHECK(a.at("eta") == 0.4);
  const auto b = parse_series_name("E_delta_m1p5_omega_2");
  CHECK(b.at("delta") == -1.5);
  CHECK(parse_series_name("E_minus_2").at("n") == 2.0);
}

TEST_CASE("JSON round trip") {
  const auto t = sample();
  const auto j = to_json(t);
  CHECK(j.at("schema_version") == kSchemaVersion);
  const auto back = table_from_json(j);
  CHECK(csv_equivalent(t, back));
  CHECK(back.metadata == t.metadata);
  CHECK(back.series[0].cells[0].residual == 1e-12);
  CHECK(back.series[0].fixed == t.series[0].fixed);
}

TEST_CASE("malformed CSV") {
  CHECK_THROWS_AS(from_csv(""), InvalidArgument);
  CHECK_THROWS_AS(from_csv("delta,E_eta_0p2_omega_2\n0,abc\n"), InvalidArgument);
  CHECK_THROWS_AS(from_csv("delta,E_eta_0p2_omega_2\n0,1,2\n"), InvalidArgument);
  CHECK_THROWS_AS(from_csv("delta,E_eta_0p2_omega_2,E_eta_0p2_omega_2_flag\n0,1,bogus\n"),
                  InvalidArgument);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
