#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloudmcdm::detail {

/// Rows of trimmed cells. Blank lines and lines starting with '#' are skipped;
/// a UTF-8 BOM is ignored. No quoting: cells never contain commas.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

std::vector<CsvRow> parse_csv(std::string_view text);

/// Strict decimal parse of the whole token.
std::optional<double> parse_double(std::string_view token);

}  // namespace cloudmcdm::detail
