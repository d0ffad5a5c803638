#include "ctap/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ctap {

namespace {

void append_file(const std::string& path, const std::string& text, bool truncate) {
    std::ofstream out(path, truncate ? std::ios::trunc : std::ios::app);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string sanitize_status(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

}  // namespace

std::string format_csv_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    if (header.empty()) {
        throw std::invalid_argument("CSV header must not be empty");
    }
    std::string line;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    line += '\n';
    append_file(path_, line, true);
}

void CsvWriter::row(const std::vector<double>& values, const std::string& status) {
    const size_t expect = status.empty() ? columns_ : columns_ - 1;
    if (values.size() != expect) {
        throw std::invalid_argument("CSV row width does not match header");
    }
    std::string line;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_csv_number(values[i]);
    }
    if (!status.empty()) {
        line += ',';
        line += sanitize_status(status);
    }
    line += '\n';
    append_file(path_, line, false);
}

void CsvWriter::flush_row(const std::string& line) { append_file(path_, line, false); }

namespace {

void write_matrix(const std::string& path, const GridField& f,
                  double (*cell)(const std::complex<double>&)) {
    const Grid2D& g = f.grid;
    char meta[128];
    std::snprintf(meta, sizeof(meta), "# nx=%d,ny=%d,lx=%.12g,ly=%.12g\n",
                  g.nx, g.ny, g.lx, g.ly);
    std::string text(meta);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            if (j) text += ',';
            text += format_csv_number(cell(f.amplitudes[static_cast<size_t>(i) * g.ny + j]));
        }
        text += '\n';
    }
    append_file(path, text, true);
}

}  // namespace

void write_density_csv(const std::string& path, const GridField& f) {
    write_matrix(path, f, [](const std::complex<double>& a) { return std::norm(a); });
}

void write_phase_csv(const std::string& path, const GridField& f) {
    write_matrix(path, f, [](const std::complex<double>& a) { return std::arg(a); });
}

}  // namespace ctap
