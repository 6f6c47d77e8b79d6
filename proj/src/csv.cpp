#include "skdv/csv.hpp"

#include <cmath>
#include <cstdio>

#include "skdv/errors.hpp"

namespace skdv {

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> columns)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(std::move(columns)) {
    if (!out_) throw Error("cannot write " + path);
    row_text(columns_);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(csv_number(v));
    row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw InternalError("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns_.size()));
    for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    out_.flush();
}

}  // namespace skdv
