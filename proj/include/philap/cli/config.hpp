#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "philap/errors.hpp"
#include "philap/ivp.hpp"
#include "philap/nonlinearity.hpp"

namespace philap::cli {

/// Bad config text or flag value. line is 0 when the value came from a flag.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Every accepted key; flags are the same names with '_' spelled '-'.
const std::vector<std::string>& known_keys();
bool is_known_key(std::string_view key);

/// Flat key-value settings. Later sources override earlier ones.
class RunConfig {
 public:
  /// `key = value` lines, `#` starts a comment. Duplicate or unknown keys and
  /// lines without '=' fail with the line number.
  static RunConfig parse(std::istream& in, const std::string& source_name = "<config>");
  static RunConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// Values of other win.
  void merge(const RunConfig& other);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback = false) const;
  /// Whitespace- or comma-separated reals.
  std::vector<double> get_doubles(const std::string& key) const;
  /// `lo:hi:n` (inclusive, n >= 2) or a comma list.
  std::vector<double> get_grid(const std::string& key) const;

  /// `tol` if set, else PHILAP_TOL, else fallback. Must be positive.
  double tolerance(double fallback) const;

  /// f from family, p, shift.
  Nonlinearity f() const;
  /// g from g_family, g_p, g_shift; identity when g_family is absent.
  Nonlinearity g() const;
  bool g_given() const { return has("g_family") || has("g_p") || has("g_shift"); }

  /// Particular problem when `c` is set (c1, c2, g keys then rejected);
  /// otherwise the general problem from c1, c2 and g.
  IVPSpec ivp() const;
  bool particular() const { return has("c"); }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& key, const std::string& text);

}  // namespace philap::cli
