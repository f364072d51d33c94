#pragma once

// Experiment configuration: a flat text file of `section.key = value`
// lines ('#' starts a comment). Every key is declared in the schema with a
// type and a default; unknown keys and malformed values are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rigged/error.hpp"

namespace rigged::cli {

class ConfigInvalid : public Error {
 public:
  explicit ConfigInvalid(const std::string& detail) : Error(ErrorCategory::kConfig, "cli", "ConfigInvalid", detail) {}
};

enum class ValueType { kNumber, kInteger, kBool, kText, kChoice, kNumberList };

struct KeySpec {
  std::string key;
  ValueType type;
  std::string default_value;  ///< empty: no default (optional or required)
  std::string help;
  std::vector<std::string> choices;  ///< for kChoice
  bool required = false;
};

const std::vector<KeySpec>& schema();
/// The schema as JSON, for `print-schema`.
std::string schema_json();

class Config {
 public:
  /// Parses file text; `origin` names the source in error messages.
  static Config parse(std::string_view text, std::string_view origin = "<config>");
  static Config load(const std::string& path);

  /// Applies a `key=value` override (command-line --set).
  void set(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  /// Checks every key against the schema. Throws ConfigInvalid.
  void validate() const;

  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  bool has(const std::string& key) const;

  /// Every schema key with its effective value, one `key = value` per line
  /// in schema order; keys without a value are omitted.
  std::string effective() const;
  /// 16 hex digits of the 64-bit FNV-1a hash of effective().
  std::string hash() const;

 private:
  std::map<std::string, std::string> values_;
};

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace rigged::cli
