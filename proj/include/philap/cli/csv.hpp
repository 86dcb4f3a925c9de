#pragma once

#include <istream>
#include <string>
#include <vector>

namespace philap::cli {

/// 17 significant digits, locale independent.
std::string fmt(double v);

struct CsvSummary {
  std::vector<std::string> header;
  std::size_t rows = 0;
  std::size_t comments = 0;
};

/// Checks a CSV emitted by the tool: header of distinct names, then rows of
/// equal width whose fields are reals or one of the sweep status words.
/// Lines starting with '#' are comments. Failures raise ConfigError with the
/// line number.
CsvSummary validate_csv(std::istream& in, const std::string& source_name = "<csv>");

}  // namespace philap::cli
