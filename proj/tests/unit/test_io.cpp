#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <limits>

#include "rigged/error.hpp"
#include "rigged/io.hpp"

using namespace rigged;
using nlohmann::json;

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 2.2250738585072014e-308, 0.99738807658774130}) {
    EXPECT_EQ(std::stod(io::format_double(x)), x) << x;
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Io, SurvivalCsvLayout) {
  SurvivalSeries s;
  s.times = {0.0, 0.5};
  s.amplitude = {{1.0, 0.0}, {0.5, -0.25}};
  s.pole_part = {{0.9, 0.0}, {0.45, -0.2}};
  s.background_part = {{0.1, 0.0}, {0.05, -0.05}};
  const std::string csv = io::survival_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,re_A,im_A,re_pole,im_pole,re_bg,im_bg");
  EXPECT_NE(csv.find("0.5,0.5,-0.25,0.45,-0.2,0.05,-0.05"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Io, DeviationJsonHasNullCrossover) {
  DeviationReport r;
  r.gamma_fit = 0.02;
  r.short_time_exponent = 2.0;
  const json j = json::parse(io::deviation_json(r));
  EXPECT_TRUE(j.at("crossover_time").is_null());
  EXPECT_DOUBLE_EQ(j.at("gamma_fit").get<double>(), 0.02);
  r.crossover_time = 95.0;
  EXPECT_DOUBLE_EQ(json::parse(io::deviation_json(r)).at("crossover_time").get<double>(), 95.0);
}

TEST(Io, ConventionAndHardyJson) {
  const json c = json::parse(io::convention_json(compare_conventions(ComplexPole{1.0, 0.1, {1.0, 0.0}})));
  EXPECT_EQ(c.at("conventions").size(), 2u);
  EXPECT_EQ(c.at("conventions")[0].at("convention"), "BOHM");
  EXPECT_TRUE(c.at("roles_reversed").get<bool>());

  HardyScores h;
  h.upper_fraction = 0.25;
  h.lower_fraction = 0.75;
  const json j = json::parse(io::hardy_json(h));
  EXPECT_EQ(j.at("classification"), "mixed");
  EXPECT_DOUBLE_EQ(j.at("lower_fraction").get<double>(), 0.75);
}

TEST(Io, ParsesStatesAndFunctionals) {
  const HermiteState s = io::parse_hermite_state("[[1, 0], [0.5, -0.5]]");
  ASSERT_EQ(s.coeffs.size(), 2u);
  EXPECT_EQ(s.coeffs[1], cplx(0.5, -0.5));
  EXPECT_THROW(io::parse_hermite_state("[]"), InvalidArgument);
  EXPECT_THROW(io::parse_hermite_state("[[1]]"), InvalidArgument);
  EXPECT_THROW(io::parse_hermite_state("{not json"), InvalidArgument);

  const DualFunctional p = io::parse_dual_functional(R"({"type": "polynomial", "order": 2})");
  EXPECT_EQ(p.coeffs[3], cplx(16.0));
  const DualFunctional e = io::parse_dual_functional("[[0, 1]]");
  EXPECT_EQ(e.coeffs[0], cplx(0.0, 1.0));
  EXPECT_THROW(io::parse_dual_functional(R"({"type": "gaussian"})"), InvalidArgument);
}
