#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qenc::csv {

/// 17 significant digits; round-trips every double.
std::string format_double(double v);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Header plus rows, CRLF line endings.
std::string write(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace qenc::csv
