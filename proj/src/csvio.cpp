#include "sptq/csvio.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sptq {

std::string sweep_to_csv(const std::vector<DetectionRecord>& records) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  char buf[128];
  for (const DetectionRecord& rec : records) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%" PRIu64 ",%" PRIu64 "\n",
                  rec.voltage, rec.phase, rec.counts_d1, rec.counts_d2);
    out += buf;
  }
  return out;
}

namespace {

std::optional<double> parse_double_field(std::string_view field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> parse_count_field(std::string_view field) {
  std::uint64_t value = 0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::vector<DetectionRecord> sweep_from_csv(std::string_view text) {
  std::vector<DetectionRecord> records;
  int row = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++row;
    if (row == 1) {
      if (line != kSweepCsvHeader) {
        throw CsvParseError("row 1: expected header '" + std::string(kSweepCsvHeader) +
                                "', got '" + std::string(line) + "'",
                            row);
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    std::array<std::string_view, 4> fields;
    std::size_t field_count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field = line.substr(
          start, comma == std::string_view::npos ? line.size() - start : comma - start);
      if (field_count < fields.size()) fields[field_count] = field;
      ++field_count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (field_count != 4) {
      throw CsvParseError("row " + std::to_string(row) + ": expected 4 fields, got " +
                              std::to_string(field_count),
                          row);
    }
    const auto voltage = parse_double_field(fields[0]);
    const auto phase = parse_double_field(fields[1]);
    const auto c1 = parse_count_field(fields[2]);
    const auto c2 = parse_count_field(fields[3]);
    if (!voltage || !phase || !c1 || !c2) {
      throw CsvParseError("row " + std::to_string(row) + ": malformed numeric field",
                          row);
    }
    records.push_back({*voltage, *phase, *c1, *c2});
  }
  if (!saw_header) {
    throw CsvParseError("row 1: missing header", 1);
  }
  return records;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

}  // namespace sptq
