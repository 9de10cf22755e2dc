#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace branchpoint::io {

inline constexpr std::string_view kVersion = "0.1.0";

std::string header_line(std::string_view command);

/// Shortest round-trip form, always '.' as decimal separator.
std::string format_double(double x);
double parse_double(std::string_view text);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view command, std::vector<std::string> columns);

  void row(const std::vector<double>& values);
  std::size_t rows_written() const noexcept { return rows_; }

 private:
  std::ostream& out_;
  std::size_t width_;
  std::size_t rows_ = 0;
};

struct CsvTable {
  std::string command;
  std::string version;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

void write_json(std::ostream& out, std::string_view command, const nlohmann::json& doc);

struct JsonDocument {
  std::string command;
  std::string version;
  nlohmann::json doc;
};

/// Leading '#' lines are skipped; the first one is taken as the header.
JsonDocument read_json(std::istream& in);

}  // namespace branchpoint::io
