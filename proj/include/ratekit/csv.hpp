#pragma once

#include <string>
#include <vector>

namespace ratekit {

struct CsvRow {
    std::vector<std::string> fields;
    int line_number = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

/// Reads a comma-separated file with a header line. No quoting support;
/// the file formats emitted by this project never embed commas.
CsvTable read_csv(const std::string& path);

/// Shortest round-trip decimal rendering of a double ("" for NaN so that
/// missing values show as empty cells).
std::string format_cell(double value);

std::string join_csv(const std::vector<std::string>& fields);

} // namespace ratekit
