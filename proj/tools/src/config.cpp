#include "rigged_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace rigged::cli {

namespace {

using V = ValueType;

std::vector<KeySpec> build_schema() {
  const std::vector<std::string> experiments{"DECAY_LAW",     "BREIT_WIGNER",     "SEMIGROUP_CHECK", "ARROW_COMPARE",
                                             "HARDY_CLASSIFY", "TRIPLET_CLASSIFY", "ORACLE_VALIDATE"};
  return {
      {"experiment", V::kChoice, "", "experiment to run", experiments, true},
      {"output.dir", V::kText, "out", "directory receiving all output files", {}},
      {"output.prefix", V::kText, "", "prefix prepended to every output file name", {}},

      {"model.omega0", V::kNumber, "1", "discrete level energy (> 0)", {}},
      {"model.lambda", V::kNumber, "0.1", "coupling strength (>= 0)", {}},
      {"model.form_factor.family", V::kChoice, "EXP", "coupling profile family", {"EXP", "RATIONAL"}},
      {"model.form_factor.scale", V::kNumber, "1", "form-factor energy scale (> 0)", {}},

      {"state.source", V::kChoice, "DISCRETE_STATE", "prepared state for DECAY_LAW",
       {"DISCRETE_STATE", "GAUSSIAN"}},
      {"state.center", V::kNumber, "", "GAUSSIAN centre (default: E_R)", {}},
      {"state.width", V::kNumber, "", "GAUSSIAN width (default: Gamma)", {}},

      {"grid.background_step", V::kNumber, "0.0025", "uniform energy step away from the resonance", {}},
      {"grid.resonance_nodes", V::kInteger, "16000", "nodes concentrated around E_R", {}},
      {"grid.half_width_gamma", V::kNumber, "200", "half-width of the resonance cluster in units of Gamma", {}},

      {"time.t_max_gamma", V::kNumber, "5", "last time in units of 1/Gamma", {}},
      {"time.points", V::kInteger, "200", "uniform time samples on [0, t_max]", {}},
      {"time.cluster", V::kInteger, "40", "extra log-spaced samples on [1e-4, 1e-2]/Gamma", {}},
      {"time.allow_negative", V::kBool, "false", "permit t < 0 in exact evolution", {}},

      {"breit_wigner.half_width_gamma", V::kNumber, "10", "fit window half-width in units of Gamma", {}},
      {"breit_wigner.points", V::kInteger, "801", "density samples in the fit window", {}},

      {"semigroup.kind", V::kChoice, "DECAYING", "Gamow branch to evolve", {"DECAYING", "GROWING"}},
      {"semigroup.convention", V::kChoice, "BOHM", "arrow convention", {"BOHM", "BRUSSELS_AUSTIN"}},
      {"semigroup.t1", V::kNumber, "1.3", "first composition time", {}},
      {"semigroup.t2", V::kNumber, "2.9", "second composition time", {}},
      {"semigroup.t_span_gamma", V::kNumber, "10", "evolution series length in units of 1/Gamma", {}},
      {"semigroup.points", V::kInteger, "101", "evolution series samples", {}},

      {"hardy.source", V::kChoice, "DISCRETE_STATE", "function to classify",
       {"DISCRETE_STATE", "LOWER_LORENTZIAN", "UPPER_LORENTZIAN", "GAUSSIAN"}},
      {"hardy.e_min", V::kNumber, "-200", "grid start for analytic test functions", {}},
      {"hardy.e_max", V::kNumber, "200", "grid end for analytic test functions", {}},
      {"hardy.points", V::kInteger, "40001", "uniform energy samples", {}},
      {"hardy.center", V::kNumber, "0", "centre of the test function", {}},
      {"hardy.width", V::kNumber, "1", "width of the test function", {}},
      {"hardy.write_split", V::kBool, "false", "also write the split parts as CSV", {}},

      {"triplet.source", V::kChoice, "COHERENT", "coefficient sequence to classify",
       {"COHERENT", "INVERSE", "ONES", "FILE"}},
      {"triplet.alpha", V::kNumber, "1", "coherent-state amplitude", {}},
      {"triplet.file", V::kText, "", "JSON [[re, im], ...] or {\"type\": \"polynomial\", \"order\": p}", {}},
      {"triplet.n_max", V::kInteger, "3", "highest norm index tested (>= 3)", {}},
      {"triplet.k_sweep", V::kNumberList, "16,32,64,128", "increasing truncation cutoffs", {}},

      {"oracle.n_levels", V::kInteger, "2000", "continuum levels of the discretized model (>= 256)", {}},
      {"oracle.omega_max", V::kNumber, "40", "upper edge of the discretized continuum", {}},
      {"oracle.t_max_gamma", V::kNumber, "5", "comparison window end in units of 1/Gamma", {}},
      {"oracle.points", V::kInteger, "200", "comparison samples", {}},
      {"oracle.fit_lo_gamma", V::kNumber, "0.5", "pole-fit window start in units of 1/Gamma", {}},
      {"oracle.fit_hi_gamma", V::kNumber, "3", "pole-fit window end in units of 1/Gamma", {}},
  };
}

const KeySpec* find_spec(const std::string& key) {
  const auto& s = schema();
  const auto it = std::find_if(s.begin(), s.end(), [&](const KeySpec& k) { return k.key == key; });
  return it == s.end() ? nullptr : &*it;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
}

bool parse_integer(const std::string& s, long long& out) {
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    double x = 0.0;
    if (!parse_double(trim(item), x)) return false;
    out.push_back(x);
  }
  return !out.empty();
}

std::string type_name(ValueType t) {
  switch (t) {
    case V::kNumber:
      return "number";
    case V::kInteger:
      return "integer";
    case V::kBool:
      return "bool";
    case V::kText:
      return "text";
    case V::kChoice:
      return "choice";
    case V::kNumberList:
      break;
  }
  return "number_list";
}

void check_value(const KeySpec& spec, const std::string& value) {
  const auto bad = [&](const std::string& what) {
    throw ConfigInvalid("key '" + spec.key + "': '" + value + "' is not " + what);
  };
  double d = 0.0;
  long long i = 0;
  bool b = false;
  std::vector<double> list;
  switch (spec.type) {
    case V::kNumber:
      if (!parse_double(value, d)) bad("a finite number");
      break;
    case V::kInteger:
      if (!parse_integer(value, i)) bad("an integer");
      break;
    case V::kBool:
      if (!parse_bool(value, b)) bad("a boolean");
      break;
    case V::kChoice:
      if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
        std::string opts;
        for (const auto& c : spec.choices) opts += (opts.empty() ? "" : ", ") + c;
        bad("one of {" + opts + "}");
      }
      break;
    case V::kNumberList:
      if (!parse_list(value, list)) bad("a comma-separated list of numbers");
      break;
    case V::kText:
      break;
  }
}

}  // namespace

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> s = build_schema();
  return s;
}

std::string schema_json() {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const KeySpec& k : schema()) {
    nlohmann::ordered_json e;
    e["key"] = k.key;
    e["type"] = type_name(k.type);
    e["default"] = k.default_value.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(k.default_value);
    e["required"] = k.required;
    if (!k.choices.empty()) e["choices"] = k.choices;
    e["help"] = k.help;
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

Config Config::parse(std::string_view text, std::string_view origin) {
  Config c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigInvalid(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    if (c.values_.count(key)) {
      throw ConfigInvalid(std::string(origin) + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      c.set(key, trim(std::string_view(stripped).substr(eq + 1)));
    } catch (const ConfigInvalid& e) {
      throw ConfigInvalid(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigInvalid("override '" + std::string(assignment) + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_spec(key);
  if (!spec) throw ConfigInvalid("unknown key '" + key + "' (see print-schema)");
  check_value(*spec, value);
  values_[key] = value;
}

void Config::validate() const {
  for (const KeySpec& k : schema()) {
    if (k.required && !values_.count(k.key)) throw ConfigInvalid("missing required key '" + k.key + "'");
  }
  for (const auto& [key, value] : values_) check_value(*find_spec(key), value);
}

bool Config::has(const std::string& key) const {
  if (values_.count(key)) return true;
  const KeySpec* spec = find_spec(key);
  return spec && !spec->default_value.empty();
}

std::string Config::text(const std::string& key) const {
  if (const auto it = values_.find(key); it != values_.end()) return it->second;
  const KeySpec* spec = find_spec(key);
  if (!spec) throw ConfigInvalid("unknown key '" + key + "'");
  if (spec->default_value.empty() && spec->required) throw ConfigInvalid("missing required key '" + key + "'");
  return spec->default_value;
}

double Config::number(const std::string& key) const {
  const std::string v = text(key);
  double d = 0.0;
  if (!parse_double(v, d)) throw ConfigInvalid("key '" + key + "' has no numeric value");
  return d;
}

long long Config::integer(const std::string& key) const {
  const std::string v = text(key);
  long long i = 0;
  if (!parse_integer(v, i)) throw ConfigInvalid("key '" + key + "' has no integer value");
  return i;
}

bool Config::flag(const std::string& key) const {
  bool b = false;
  if (!parse_bool(text(key), b)) throw ConfigInvalid("key '" + key + "' has no boolean value");
  return b;
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  if (!parse_list(text(key), out)) throw ConfigInvalid("key '" + key + "' has no list value");
  return out;
}

std::string Config::effective() const {
  std::string out;
  for (const KeySpec& k : schema()) {
    const auto it = values_.find(k.key);
    const std::string v = it != values_.end() ? it->second : k.default_value;
    if (v.empty()) continue;
    out += k.key + " = " + v + "\n";
  }
  return out;
}

std::string Config::hash() const { return fnv1a_hex(effective()); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rigged::cli
