#pragma once

#include <string>
#include <vector>

namespace fuzzyf {

// 17 significant digits: enough to round-trip any double, so equal runs
// produce byte-identical files.
std::string format_g17(double v);

// Rows of preformatted cells under a header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// One real per line; blank lines and '#' comments are skipped. Throws
// std::runtime_error with the offending path/line on parse failure.
std::vector<double> read_points_file(const std::string& path);

}  // namespace fuzzyf
