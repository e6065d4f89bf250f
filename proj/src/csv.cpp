#include "dyadlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dyadlab {

std::string format_value(double v) {
    char buf[64];
    if (v == 0.0) return "0";
    if (std::abs(v) < 1e-4) {
        std::snprintf(buf, sizeof(buf), "%.12e", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
    }
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& config_hash,
                     const std::string& bound_formula, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    out_ << "meta,version=" << kVersion << ",config=" << config_hash
         << ",bound=" << bound_formula << "\r\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ",";
        out_ << columns[i];
    }
    out_ << "\r\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ",";
        out_ << fields[i];
    }
    out_ << "\r\n";
}

void CsvWriter::row_values(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(format_value(v));
    row(fields);
}

} // namespace dyadlab
