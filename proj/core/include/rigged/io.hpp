#pragma once

// Text serialization of results. Numbers are written with 17 significant
// digits so outputs round-trip and repeated runs are byte-identical.

#include <string>
#include <string_view>

#include "rigged/hardy.hpp"
#include "rigged/nelson.hpp"
#include "rigged/semigroup.hpp"
#include "rigged/spectral.hpp"

namespace rigged::io {

/// Header `t,re_A,im_A,re_pole,im_pole,re_bg,im_bg`, one row per time.
std::string survival_csv(const SurvivalSeries& series);

/// {gamma_fit, short_time_exponent, background_fraction, crossover_time}
/// with crossover_time null when none was found in range.
std::string deviation_json(const DeviationReport& report);

/// {convention, branches[], roles_reversed, gamma_decaying_future} per
/// convention, wrapped with the shared pole and the comparison verdict.
std::string convention_json(const ConventionComparison& comparison);

/// {upper_fraction, lower_fraction, classification}.
std::string hardy_json(const HardyScores& scores);

/// A state as a JSON array of [re, im] pairs. Throws InvalidArgument.
HermiteState parse_hermite_state(std::string_view json);

/// Either an array of [re, im] pairs or {"type": "polynomial", "order": p}.
DualFunctional parse_dual_functional(std::string_view json);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace rigged::io
