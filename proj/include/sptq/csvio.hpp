#pragma once

// The sweep CSV is the single interchange format between the sweep,
// analyze, and plot commands. Header and column order are normative:
// voltage_V,phase_rad,counts_d1,counts_d2 with LF line endings, numbers
// printed with 9 significant digits and counts as integers.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sptq/labsim.hpp"

namespace sptq {

inline constexpr std::string_view kSweepCsvHeader =
    "voltage_V,phase_rad,counts_d1,counts_d2";

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(std::string message, int row_number)
      : std::runtime_error(std::move(message)), row(row_number) {}
  int row;  // 1-based, counting the header as row 1
};

std::string sweep_to_csv(const std::vector<DetectionRecord>& records);

/// Parses a sweep CSV; throws CsvParseError naming the offending row.
/// A header-only file parses to an empty vector.
std::vector<DetectionRecord> sweep_from_csv(std::string_view text);

/// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

/// Writes bytes exactly as given (binary mode, so LF stays LF); throws
/// std::runtime_error when the path is unwritable.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace sptq
