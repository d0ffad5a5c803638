#pragma once

#include <string>
#include <vector>

#include "ctap/grid.hpp"

namespace ctap {

// Deterministic CSV emitter: comma separators, LF endings, numbers at 12
// significant digits, NaN spelled "nan". One header row up front.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    // Numeric row, optionally followed by a trailing status cell (commas
    // in the status are replaced so the column count stays fixed).
    void row(const std::vector<double>& values, const std::string& status = "");
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string buffer_;
    size_t columns_;
    void flush_row(const std::string& line);
};

std::string format_csv_number(double v);

// |psi|^2 and arg(psi) matrices (nx rows, ny columns, row-major) with a
// leading "# nx=..,ny=..,lx=..,ly=.." metadata line.
void write_density_csv(const std::string& path, const GridField& f);
void write_phase_csv(const std::string& path, const GridField& f);

}  // namespace ctap
