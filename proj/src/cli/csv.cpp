#include "philap/cli/csv.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "philap/cli/config.hpp"

namespace philap::cli {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_real(const std::string& s) {
  if (s.empty()) return false;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CsvSummary validate_csv(std::istream& in, const std::string& source_name) {
  static const std::set<std::string> words = {"ok", "infeasible", "error", "nan", "inf", "-inf"};
  CsvSummary summary;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto where = source_name + ":" + std::to_string(line_no) + ": ";
    if (line.empty()) throw ConfigError(where + "empty line", line_no);
    if (line.front() == '#') {
      ++summary.comments;
      continue;
    }
    const auto fields = split_fields(line);
    if (!have_header) {
      std::set<std::string> seen;
      for (const auto& name : fields) {
        if (name.empty() || is_real(name)) {
          throw ConfigError(where + "header field '" + name + "' is not a column name", line_no);
        }
        if (!seen.insert(name).second) {
          throw ConfigError(where + "duplicate column '" + name + "'", line_no);
        }
      }
      summary.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != summary.header.size()) {
      throw ConfigError(where + "expected " + std::to_string(summary.header.size()) +
                            " fields, got " + std::to_string(fields.size()),
                        line_no);
    }
    for (const auto& f : fields) {
      if (!is_real(f) && words.count(f) == 0) {
        throw ConfigError(where + "field '" + f + "' is neither a number nor a status word",
                          line_no);
      }
    }
    ++summary.rows;
  }
  if (!have_header) throw ConfigError(source_name + ": no header line");
  return summary;
}

}  // namespace philap::cli
