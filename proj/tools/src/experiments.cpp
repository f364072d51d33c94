#include "rigged_cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>

#include "rigged/fit.hpp"
#include "rigged/friedrichs.hpp"
#include "rigged/hardy.hpp"
#include "rigged/io.hpp"
#include "rigged/nelson.hpp"
#include "rigged/oracle.hpp"
#include "rigged/semigroup.hpp"
#include "rigged/spectral.hpp"

#ifndef RIGGED_VERSION
#define RIGGED_VERSION "unknown"
#endif

namespace rigged::cli {

namespace {

using json = nlohmann::ordered_json;
using io::format_double;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json pole_json(const ComplexPole& p) {
  return {{"e_r", number(p.e_r)},
          {"gamma", number(p.gamma)},
          {"residue_re", number(p.residue.real())},
          {"residue_im", number(p.residue.imag())}};
}

std::size_t positive_count(const Config& c, const std::string& key, long long minimum = 1) {
  const long long n = c.integer(key);
  if (n < minimum) throw ConfigInvalid("key '" + key + "' must be >= " + std::to_string(minimum));
  return static_cast<std::size_t>(n);
}

double positive(const Config& c, const std::string& key) {
  const double x = c.number(key);
  if (!(x > 0.0)) throw ConfigInvalid("key '" + key + "' must be > 0");
  return x;
}

FriedrichsModel model_from(const Config& c) {
  FriedrichsModel m;
  m.omega0 = c.number("model.omega0");
  m.lambda = c.number("model.lambda");
  m.form_factor.family = form_factor_family_from_string(c.text("model.form_factor.family"));
  m.form_factor.scale = c.number("model.form_factor.scale");
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigInvalid(std::string("model block: ") + e.what());
  }
  return m;
}

std::vector<double> state_grid(const Config& c, const FriedrichsModel& m, const ComplexPole& p) {
  return resonance_grid(m, p, positive(c, "grid.background_step"), positive_count(c, "grid.resonance_nodes", 16),
                        positive(c, "grid.half_width_gamma"));
}

EnergyWavefunction gaussian_state(std::span<const double> grid, double center, double width) {
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = (grid[i] - center) / width;
    v[i] = std::exp(-0.25 * x * x);
  }
  EnergyWavefunction phi(std::vector<double>(grid.begin(), grid.end()), std::move(v));
  return phi.scaled(1.0 / std::sqrt(phi.norm_squared()));
}

EnergyWavefunction prepared_state(const Config& c, const FriedrichsModel& m, const ComplexPole& p) {
  const std::vector<double> grid = state_grid(c, m, p);
  if (c.text("state.source") == "DISCRETE_STATE") return discrete_state_wavefunction(m, grid);
  const double center = c.has("state.center") ? c.number("state.center") : p.e_r;
  const double width = c.has("state.width") ? positive(c, "state.width") : p.gamma;
  const double lo = std::max(0.0, center - 10.0 * width);
  const double hi = std::min(m.form_factor.cutoff(), center + 10.0 * width);
  if (!(hi > lo)) throw ConfigInvalid("GAUSSIAN state lies outside the energy range [0, cutoff]");
  const std::vector<double> merged = merge_grids(grid, uniform_grid(lo, hi, 4001));
  return gaussian_state(merged, center, width);
}

// ---------------------------------------------------------------------------

RunResult decay_law(const Config& c) {
  const FriedrichsModel m = model_from(c);
  const ComplexPole pole = find_resonance_pole(m);
  const EnergyWavefunction phi = prepared_state(c, m, pole);
  const GamowDecomposition dec = decompose(m, phi);
  const std::vector<double> times =
      decay_time_grid(pole.gamma, positive(c, "time.t_max_gamma") / pole.gamma, positive_count(c, "time.points", 2),
                      positive_count(c, "time.cluster", 0));
  SurvivalOptions so;
  so.allow_negative_time = c.flag("time.allow_negative");
  const SurvivalSeries series = survival_decomposed(dec, phi, times, so);
  const DeviationReport report = deviation_metrics(series);

  RunResult r;
  r.files = {{"survival.csv", io::survival_csv(series)}, {"deviation.json", io::deviation_json(report)}};
  json d;
  d["pole"] = pole_json(pole);
  d["gamow_coefficient"] = {number(dec.gamow_coefficient.real()), number(dec.gamow_coefficient.imag())};
  d["reconstruction_residual"] = number(series.reconstruction_residual());
  d["gamma_fit"] = number(report.gamma_fit);
  d["gamma_fit_rms"] = number(report.gamma_fit_rms);
  d["short_time_exponent"] = number(report.short_time_exponent);
  d["energy_samples"] = phi.size();
  r.derived_json = d.dump();
  return r;
}

RunResult breit_wigner(const Config& c) {
  const FriedrichsModel m = model_from(c);
  const ComplexPole pole = find_resonance_pole(m);
  const double hw = positive(c, "breit_wigner.half_width_gamma") * pole.gamma;
  const std::vector<double> e =
      uniform_grid(std::max(0.0, pole.e_r - hw), pole.e_r + hw, positive_count(c, "breit_wigner.points", 8));
  std::vector<double> rho(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) rho[i] = spectral_density(m, e[i]);
  const fit::LorentzianFit lf = fit::lorentzian(e, rho);

  std::string csv = "E,density,lorentzian\n";
  const double h2 = 0.25 * lf.fwhm * lf.fwhm;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double dx = e[i] - lf.center;
    csv += format_double(e[i]) + ',' + format_double(rho[i]) + ',' + format_double(lf.peak * h2 / (dx * dx + h2)) +
           '\n';
  }
  json j;
  j["center"] = number(lf.center);
  j["fwhm"] = number(lf.fwhm);
  j["peak"] = number(lf.peak);
  j["rms_residual"] = number(lf.rms_residual);
  j["pole"] = pole_json(pole);
  j["center_rel_error"] = number(std::abs(lf.center - pole.e_r) / pole.e_r);
  j["fwhm_rel_error"] = number(std::abs(lf.fwhm - pole.gamma) / pole.gamma);

  RunResult r;
  r.files = {{"breit_wigner.csv", csv}, {"breit_wigner.json", j.dump(2) + "\n"}};
  r.derived_json = j.dump();
  return r;
}

RunResult semigroup_check(const Config& c) {
  const FriedrichsModel m = model_from(c);
  const ComplexPole pole = find_resonance_pole(m);
  const GamowKind kind = gamow_kind_from_string(c.text("semigroup.kind"));
  const ArrowConvention conv = arrow_convention_from_string(c.text("semigroup.convention"));
  const double t1 = c.number("semigroup.t1");
  const double t2 = c.number("semigroup.t2");
  const double residual = semigroup_residual(pole, conv, kind, t1, t2);

  const double span = positive(c, "semigroup.t_span_gamma") / pole.gamma;
  const std::size_t n = positive_count(c, "semigroup.points", 2);
  const double sign = kind == GamowKind::kDecaying ? 1.0 : -1.0;
  const GamowFunctional g{pole, kind, {1.0, 0.0}};
  std::string csv = "t,re_amplitude,im_amplitude,modulus_sq,exp_law\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sign * span * static_cast<double>(i) / static_cast<double>(n - 1);
    const cplx a = evolve_gamow(g, t, conv).amplitude;
    const double law = std::exp(-pole.gamma * std::abs(t));
    worst = std::max(worst, std::abs(std::norm(a) - law) / law);
    csv += format_double(t) + ',' + format_double(a.real()) + ',' + format_double(a.imag()) + ',' +
           format_double(std::norm(a)) + ',' + format_double(law) + '\n';
  }
  json j;
  j["kind"] = to_string(kind);
  j["convention"] = to_string(conv);
  j["t1"] = t1;
  j["t2"] = t2;
  j["composition_residual"] = number(residual);
  j["modulus_law_max_rel_error"] = number(worst);
  j["pole"] = pole_json(pole);

  RunResult r;
  r.files = {{"semigroup.csv", csv}, {"semigroup.json", j.dump(2) + "\n"}};
  r.derived_json = j.dump();
  return r;
}

RunResult arrow_compare(const Config& c) {
  const ConventionComparison cmp = compare_conventions(model_from(c));
  RunResult r;
  r.files = {{"conventions.json", io::convention_json(cmp)}};
  json d;
  d["pole"] = pole_json(cmp.pole);
  d["roles_reversed"] = cmp.roles_reversed;
  d["gamma_agrees"] = cmp.gamma_agrees;
  r.derived_json = d.dump();
  return r;
}

RunResult hardy_classify(const Config& c) {
  const std::string source = c.text("hardy.source");
  const std::size_t n = positive_count(c, "hardy.points", 8);
  EnergyWavefunction phi;
  json d;
  if (source == "DISCRETE_STATE") {
    const FriedrichsModel m = model_from(c);
    const ComplexPole pole = find_resonance_pole(m);
    const EnergyWavefunction fine = discrete_state_wavefunction(m, state_grid(c, m, pole));
    phi = resample_uniform(fine, 0.0, m.form_factor.cutoff(), n);
    d["pole"] = pole_json(pole);
  } else {
    const double lo = c.number("hardy.e_min");
    const double hi = c.number("hardy.e_max");
    if (!(hi > lo)) throw ConfigInvalid("hardy.e_max must exceed hardy.e_min");
    const double center = c.number("hardy.center");
    const double width = positive(c, "hardy.width");
    const std::vector<double> grid = uniform_grid(lo, hi, n);
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid[i] - center;
      if (source == "LOWER_LORENTZIAN") v[i] = 1.0 / cplx(x, -width);
      else if (source == "UPPER_LORENTZIAN") v[i] = 1.0 / cplx(x, width);
      else v[i] = std::exp(-0.5 * (x / width) * (x / width));
    }
    phi = EnergyWavefunction(grid, std::move(v));
  }
  const HardyScores scores = hardy_scores(phi);

  RunResult r;
  r.files = {{"hardy.json", io::hardy_json(scores)}};
  if (c.flag("hardy.write_split")) {
    const HardySplit split = hardy_split(phi);
    const EnergyWavefunction padded = pad_symmetric(phi);
    std::string csv = "E,re_phi,im_phi,re_upper,im_upper,re_lower,im_lower\n";
    for (std::size_t i = 0; i < padded.size(); ++i) {
      csv += format_double(padded.grid()[i]) + ',' + format_double(padded.values()[i].real()) + ',' +
             format_double(padded.values()[i].imag()) + ',' + format_double(split.upper.values()[i].real()) + ',' +
             format_double(split.upper.values()[i].imag()) + ',' + format_double(split.lower.values()[i].real()) +
             ',' + format_double(split.lower.values()[i].imag()) + '\n';
    }
    r.files.push_back({"hardy_split.csv", csv});
  }
  d["source"] = source;
  d["upper_fraction"] = number(scores.upper_fraction);
  d["lower_fraction"] = number(scores.lower_fraction);
  d["classification"] = to_string(scores.classification());
  d["padded_samples"] = scores.padded_samples;
  r.derived_json = d.dump();
  return r;
}

Sequence triplet_sequence(const Config& c) {
  const std::string source = c.text("triplet.source");
  if (source == "COHERENT") return coherent_sequence(c.number("triplet.alpha"));
  if (source == "INVERSE") {
    return Sequence::rule([](std::size_t k) { return cplx(1.0 / (static_cast<double>(k) + 1.0), 0.0); }, "1/(k+1)");
  }
  if (source == "ONES") return Sequence::rule([](std::size_t) { return cplx(1.0, 0.0); }, "ones");
  const std::string path = c.text("triplet.file");
  if (path.empty()) throw ConfigInvalid("triplet.source = FILE needs triplet.file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read triplet.file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return io::parse_dual_functional(text).coeffs;
  } catch (const InvalidArgument& e) {
    throw ConfigInvalid(path + ": " + e.what());
  }
}

RunResult triplet_classify(const Config& c) {
  ClassifyOptions opts;
  opts.n_max = static_cast<unsigned>(positive_count(c, "triplet.n_max", 3));
  opts.k_sweep.clear();
  for (double k : c.numbers("triplet.k_sweep")) {
    if (!(k >= 1.0) || k != std::floor(k)) throw ConfigInvalid("triplet.k_sweep entries must be positive integers");
    opts.k_sweep.push_back(static_cast<std::size_t>(k));
  }
  const Sequence seq = triplet_sequence(c);
  const Classification cls = classify_vector(seq, opts);

  json j;
  j["source"] = c.text("triplet.source");
  j["classification"] = to_string(cls.kind);
  j["k_sweep"] = opts.k_sweep;
  j["sweeps"] = json::array();
  for (const NormSweep& s : cls.sweeps) {
    json e;
    e["n"] = s.n;
    e["partial_sums"] = json::array();
    for (double x : s.partial_sums) e["partial_sums"].push_back(number(x));
    e["increment_ratio"] = number(s.increment_ratio);
    e["converges"] = s.converges;
    j["sweeps"].push_back(std::move(e));
  }
  j["probe_pairings"] = json::array();
  for (cplx p : cls.probe_pairings) j["probe_pairings"].push_back({number(p.real()), number(p.imag())});
  if (cls.kind == TripletClass::kPhi) {
    const HermiteState s{seq.head(opts.k_sweep.back())};
    j["norms"] = json::array();
    for (unsigned n = 0; n <= opts.n_max; ++n) j["norms"].push_back(number(nelson_norm(s, n)));
  }

  RunResult r;
  r.files = {{"triplet.json", j.dump(2) + "\n"}};
  r.derived_json = json{{"classification", to_string(cls.kind)}}.dump();
  return r;
}

RunResult oracle_validate(const Config& c) {
  const FriedrichsModel m = model_from(c);
  const ComplexPole pole = find_resonance_pole(m);
  const oracle::DiscretizedModel dm =
      oracle::discretize(m, positive_count(c, "oracle.n_levels", 256), positive(c, "oracle.omega_max"));
  const oracle::Spectrum spec = oracle::diagonalize(dm);
  // Comparisons stop short of the Heisenberg time, where revivals start.
  const double t_cap = 0.9 * dm.heisenberg_time();
  const double t_max = std::min(positive(c, "oracle.t_max_gamma") / pole.gamma, t_cap);
  const std::vector<double> times = uniform_grid(0.0, t_max, positive_count(c, "oracle.points", 8));

  const EnergyWavefunction phi = discrete_state_wavefunction(m, state_grid(c, m, pole));
  const std::vector<cplx> exact = survival_amplitude_exact(phi, times);
  const std::vector<cplx> brute = oracle::survival(spec, times);
  double worst = 0.0;
  std::string csv = "t,re_exact,im_exact,re_oracle,im_oracle\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    worst = std::max(worst, std::abs(exact[i] - brute[i]) / std::abs(exact[i]));
    csv += format_double(times[i]) + ',' + format_double(exact[i].real()) + ',' + format_double(exact[i].imag()) +
           ',' + format_double(brute[i].real()) + ',' + format_double(brute[i].imag()) + '\n';
  }

  const double lo = positive(c, "oracle.fit_lo_gamma") / pole.gamma;
  const double hi = std::min(positive(c, "oracle.fit_hi_gamma") / pole.gamma, t_cap);
  const std::vector<double> fit_times = uniform_grid(lo, hi, 400);
  const oracle::PoleFit pf = oracle::oracle_pole_fit(fit_times, oracle::survival(spec, fit_times), lo, hi);

  json j;
  j["n_levels"] = dm.n_levels;
  j["omega_max"] = number(dm.omega_max);
  j["heisenberg_time"] = number(dm.heisenberg_time());
  j["comparison_t_max"] = number(t_max);
  j["max_relative_difference"] = number(worst);
  j["weight_sum"] = number(spec.weight_sum);
  j["pole"] = pole_json(pole);
  j["fit"] = {{"e_r", number(pf.pole.e_r)},
              {"gamma", number(pf.pole.gamma)},
              {"relative_residual", number(pf.relative_residual)},
              {"window", {number(lo), number(hi)}}};
  j["gamma_rel_error"] = number(std::abs(pf.pole.gamma - pole.gamma) / pole.gamma);
  j["e_r_rel_error"] = number(std::abs(pf.pole.e_r - pole.e_r) / pole.e_r);

  RunResult r;
  r.files = {{"oracle.csv", csv}, {"oracle.json", j.dump(2) + "\n"}};
  r.derived_json = j.dump();
  return r;
}

std::string prefix_of(const Config& c) { return c.text("output.prefix"); }

}  // namespace

RunResult run_experiment(const Config& config) {
  config.validate();
  const std::string e = config.text("experiment");
  RunResult r;
  if (e == "DECAY_LAW") r = decay_law(config);
  else if (e == "BREIT_WIGNER") r = breit_wigner(config);
  else if (e == "SEMIGROUP_CHECK") r = semigroup_check(config);
  else if (e == "ARROW_COMPARE") r = arrow_compare(config);
  else if (e == "HARDY_CLASSIFY") r = hardy_classify(config);
  else if (e == "TRIPLET_CLASSIFY") r = triplet_classify(config);
  else r = oracle_validate(config);
  r.experiment = e;
  const std::string prefix = prefix_of(config);
  for (OutputFile& f : r.files) f.name = prefix + f.name;
  return r;
}

std::string manifest_json(const Config& config, const RunResult& result) {
  json j;
  j["tool"] = "rigged";
  j["version"] = RIGGED_VERSION;
  j["experiment"] = result.experiment;
  j["config_hash"] = config.hash();
  json cfg = json::object();
  const std::string eff = config.effective();
  std::size_t pos = 0;
  while (pos < eff.size()) {
    const std::size_t nl = eff.find('\n', pos);
    const std::string line = eff.substr(pos, nl - pos);
    const std::size_t eq = line.find(" = ");
    cfg[line.substr(0, eq)] = line.substr(eq + 3);
    pos = nl + 1;
  }
  j["config"] = std::move(cfg);
  j["outputs"] = json::array();
  for (const OutputFile& f : result.files) {
    j["outputs"].push_back({{"file", f.name}, {"bytes", f.content.size()}, {"fnv1a64", fnv1a_hex(f.content)}});
  }
  j["derived"] = json::parse(result.derived_json);
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const Config& config, const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir = config.text("output.dir");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigInvalid("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::vector<OutputFile> all = result.files;
  all.push_back({prefix_of(config) + "manifest.json", manifest_json(config, result)});
  std::vector<std::string> paths;
  for (const OutputFile& f : all) {
    const fs::path p = dir / f.name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()))) {
      throw ConfigInvalid("cannot write '" + p.string() + "'");
    }
    paths.push_back(p.string());
  }
  return paths;
}

int exit_code(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->category()) {
      case ErrorCategory::kConfig:
        return 2;
      case ErrorCategory::kNumerical:
        return 3;
      case ErrorCategory::kDomain:
        return 4;
    }
  }
  return 3;
}

}  // namespace rigged::cli
