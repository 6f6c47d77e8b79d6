#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace skdv {

/// 17 significant digits, so every double survives a text round trip.  nan and
/// inf print as "nan", "inf", "-inf".
std::string csv_number(double v);

/// Single-writer CSV file with a fixed header.
class CsvWriter {
public:
    CsvWriter(const std::string& path, std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    /// Row of preformatted cells (labels mixed with numbers).
    void row_text(const std::vector<std::string>& cells);
    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::ofstream out_;
    std::vector<std::string> columns_;
};

}  // namespace skdv
