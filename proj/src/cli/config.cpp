#include "philap/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace philap::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "family",    "p",          "shift",       "g_family",    "g_p",       "g_shift",
      "a",         "b",          "c",           "c1",          "c2",        "lambda",
      "method",    "t_start",    "t_end",       "samples",     "oracle",    "oracle_step",
      "c_grid",    "lambda_grid", "assert_monotone", "bracket",  "scan",      "scan_min",
      "scan_max",  "scan_points", "closed_form", "curve_out",  "arcsin",    "sensitivity",
      "tol",       "output",
  };
  return keys;
}

bool is_known_key(std::string_view key) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("key '" + key + "': not a number: '" + text + "'");
  }
  return v;
}

RunConfig RunConfig::parse(std::istream& in, const std::string& source_name) {
  RunConfig config;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto where = source_name + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected 'key = value', got '" + line + "'", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!is_known_key(key)) throw ConfigError(where + "unknown key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'", line_no);
    if (config.has(key)) throw ConfigError(where + "duplicate key '" + key + "'", line_no);
    config.values_[key] = value;
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!is_known_key(key)) throw ConfigError("unknown key '" + key + "'");
  values_[key] = value;
}

void RunConfig::merge(const RunConfig& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

std::optional<double> RunConfig::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return parse_real(key, *v);
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return get_double(key).value_or(fallback);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  int out = 0;
  const std::string t = trim(*v);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("key '" + key + "': not an integer: '" + *v + "'");
  }
  return out;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::string t = trim(*v);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + *v + "'");
}

std::vector<double> RunConfig::get_doubles(const std::string& key) const {
  const auto v = get(key);
  if (!v) return {};
  std::vector<double> out;
  for (const auto& tok : split_tokens(*v)) out.push_back(parse_real(key, tok));
  return out;
}

std::vector<double> RunConfig::get_grid(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw ConfigError("missing grid '" + key + "'");
  const std::string text = trim(*v);
  if (text.find(':') == std::string::npos) {
    auto list = get_doubles(key);
    if (list.empty()) throw ConfigError("key '" + key + "': empty grid");
    return list;
  }
  std::vector<std::string> parts;
  std::istringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ConfigError("key '" + key + "': expected lo:hi:n, got '" + text + "'");
  const double lo = parse_real(key, parts[0]);
  const double hi = parse_real(key, parts[1]);
  RunConfig tmp;
  tmp.values_["samples"] = parts[2];
  const int n = tmp.get_int("samples", 0);
  if (n < 2) throw ConfigError("key '" + key + "': grid needs n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

double RunConfig::tolerance(double fallback) const {
  double tol = fallback;
  if (const char* env = std::getenv("PHILAP_TOL"); env != nullptr && *env != '\0') {
    tol = parse_real("PHILAP_TOL", env);
  }
  tol = get_double("tol", tol);
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  return tol;
}

Nonlinearity RunConfig::f() const {
  NonlinearityConfig nc;
  nc.family = get_string("family", "power");
  nc.p = get_double("p", 2.0);
  nc.shift = get_double("shift", 0.0);
  return make_nonlinearity(nc);
}

Nonlinearity RunConfig::g() const {
  NonlinearityConfig nc;
  nc.family = get_string("g_family", "power");
  nc.p = get_double("g_p", 2.0);
  nc.shift = get_double("g_shift", 0.0);
  return make_nonlinearity(nc);
}

IVPSpec RunConfig::ivp() const {
  const double lambda = get_double("lambda", 1.0);
  const double a = get_double("a", 0.0);
  if (particular()) {
    if (has("c1") || has("c2") || g_given()) {
      throw ConfigError("'c' selects g = f^-1; do not combine it with c1, c2 or g_* keys");
    }
    return IVPSpec::particular_case(f(), get_double("c", 0.0), lambda, a);
  }
  if (!has("c1") || !has("c2")) {
    throw ConfigError("give either 'c' (particular problem) or both 'c1' and 'c2'");
  }
  IVPSpec spec;
  spec.f_part = f();
  spec.g_part = g();
  spec.a = a;
  spec.c1 = get_double("c1", 0.0);
  spec.c2 = get_double("c2", 0.0);
  spec.lambda = lambda;
  return spec;
}

}  // namespace philap::cli
