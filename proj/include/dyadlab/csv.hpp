#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace dyadlab {

inline constexpr const char* kVersion = "0.1.0";

// RFC-4180 output: CRLF records, '.' decimal separator, exponent notation for
// small magnitudes.
std::string format_value(double v);
std::uint64_t fnv1a(const std::string& s);

// Every table starts with a meta record (library version, config hash, the
// bound formula the table is checked against) followed by the column header.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& config_hash,
              const std::string& bound_formula, const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& fields);
    void row_values(const std::vector<double>& values);

  private:
    std::ofstream out_;
};

} // namespace dyadlab
