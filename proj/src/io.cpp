#include "branchpoint/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "branchpoint/errors.hpp"

namespace branchpoint::io {

namespace {

constexpr std::string_view kTool = "branchpoint-lab";

struct Header {
  std::string version;
  std::string command;
};

Header parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string hash, tool, version, command;
  ss >> hash >> tool >> version >> command;
  if (hash != "#" || tool != kTool || version.size() < 2 || version[0] != 'v' || command.empty())
    throw ValidationError("malformed header line: " + line);
  return {version.substr(1), command};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string header_line(std::string_view command) {
  std::string s = "# ";
  s += kTool;
  s += " v";
  s += kVersion;
  s += ' ';
  s += command;
  return s;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double x = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError("not a number: '" + std::string(text) + "'");
  return x;
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view command, std::vector<std::string> columns)
    : out_(out), width_(columns.size()) {
  out_ << header_line(command) << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw ValidationError("row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
  out_.flush();
  ++rows_;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ValidationError("no column named " + std::string(name));
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV input");
  auto h = parse_header(line);
  t.version = h.version;
  t.command = h.command;
  if (!std::getline(in, line)) throw ValidationError("CSV input has no column line");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.columns.size()) throw ValidationError("ragged CSV row: " + line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(std::ostream& out, std::string_view command, const nlohmann::json& doc) {
  out << header_line(command) << '\n' << doc.dump(2) << '\n';
}

JsonDocument read_json(std::istream& in) {
  JsonDocument d;
  std::string line, body;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#' && body.empty()) {
      if (!header_seen) {
        auto h = parse_header(line);
        d.version = h.version;
        d.command = h.command;
        header_seen = true;
      }
      continue;
    }
    body += line;
    body += '\n';
  }
  try {
    d.doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return d;
}

}  // namespace branchpoint::io
