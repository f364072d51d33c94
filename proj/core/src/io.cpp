#include "rigged/io.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "rigged/error.hpp"

namespace rigged::io {

using nlohmann::ordered_json;

namespace {

// Non-finite values have no JSON literal; they are written as null.
ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

std::vector<cplx> parse_pairs(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidArgument(std::string(what) + " must be a non-empty array");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InvalidArgument(std::string(what) + " entries must be [re, im] number pairs");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

ordered_json parse(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string survival_csv(const SurvivalSeries& series) {
  std::ostringstream out;
  out << "t,re_A,im_A,re_pole,im_pole,re_bg,im_bg\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.amplitude[i].real()) << ','
        << format_double(series.amplitude[i].imag()) << ',' << format_double(series.pole_part[i].real()) << ','
        << format_double(series.pole_part[i].imag()) << ',' << format_double(series.background_part[i].real())
        << ',' << format_double(series.background_part[i].imag()) << '\n';
  }
  return out.str();
}

std::string deviation_json(const DeviationReport& report) {
  ordered_json j;
  j["gamma_fit"] = number(report.gamma_fit);
  j["short_time_exponent"] = number(report.short_time_exponent);
  j["background_fraction"] = number(report.background_fraction);
  j["crossover_time"] = report.crossover_time ? number(*report.crossover_time) : ordered_json(nullptr);
  j["gamma_fit_rms"] = number(report.gamma_fit_rms);
  j["gamma_reference"] = number(report.gamma_reference);
  return j.dump(2) + "\n";
}

std::string convention_json(const ConventionComparison& comparison) {
  ordered_json j;
  j["pole"] = {{"e_r", number(comparison.pole.e_r)}, {"gamma", number(comparison.pole.gamma)}};
  j["conventions"] = ordered_json::array();
  for (const ConventionReport& r : comparison.conventions) {
    ordered_json c;
    c["convention"] = to_string(r.convention);
    c["branches"] = ordered_json::array();
    for (const BranchReport& b : r.branches) {
      c["branches"].push_back({{"kind", to_string(b.kind)},
                               {"domain", b.domain},
                               {"direction_label", b.direction_label},
                               {"hardy_space", b.hardy_space}});
    }
    c["roles_reversed"] = comparison.roles_reversed;
    c["gamma_decaying_future"] = number(r.gamma_decaying_future);
    j["conventions"].push_back(std::move(c));
  }
  j["roles_reversed"] = comparison.roles_reversed;
  j["gamma_agrees"] = comparison.gamma_agrees;
  j["rationale"] = comparison.rationale;
  return j.dump(2) + "\n";
}

std::string hardy_json(const HardyScores& scores) {
  ordered_json j;
  j["upper_fraction"] = number(scores.upper_fraction);
  j["lower_fraction"] = number(scores.lower_fraction);
  j["classification"] = to_string(scores.classification());
  j["padded_samples"] = scores.padded_samples;
  return j.dump(2) + "\n";
}

HermiteState parse_hermite_state(std::string_view json) {
  HermiteState s{parse_pairs(parse(json), "Hermite state")};
  s.validate();
  return s;
}

DualFunctional parse_dual_functional(std::string_view json) {
  const ordered_json j = parse(json);
  if (j.is_array()) return DualFunctional::explicit_coeffs(parse_pairs(j, "dual functional"));
  if (j.is_object() && j.value("type", "") == "polynomial" && j.contains("order") && j["order"].is_number()) {
    return DualFunctional::polynomial(j["order"].get<double>());
  }
  throw InvalidArgument(R"(dual functional must be [[re, im], ...] or {"type": "polynomial", "order": p})");
}

}  // namespace rigged::io
