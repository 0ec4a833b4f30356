#include "gme/tsv.hpp"

#include "gme/errors.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

namespace gme {

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

namespace {

std::string strip_comment(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  // tolerate CRLF files
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::string normalized = line;
  for (char& c : normalized)
    if (c == ',' || c == '\t') c = ' ';
  std::istringstream fields(normalized);
  std::vector<std::string> out;
  for (std::string tok; fields >> tok;) out.push_back(tok);
  return out;
}

bool parse_number(const std::string& tok, double& value) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_label_pairs(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw FormatError("label file line " + std::to_string(line_no) + ": expected '<node_id> <label>'");
    out.emplace_back(tokens[0], tokens[1]);
  }
  return out;
}

DataTable read_data_table(std::istream& in, bool id_column) {
  DataTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(strip_comment(line));
    if (fields.empty()) continue;
    std::string id;
    if (id_column) {
      id = fields.front();
      fields.erase(fields.begin());
    }
    std::vector<double> row(fields.size());
    bool numeric = !fields.empty();
    for (std::size_t j = 0; j < fields.size() && numeric; ++j) numeric = parse_number(fields[j], row[j]);
    if (!numeric) {
      if (rows.empty() && !header_skipped) {
        header_skipped = true;
        continue;
      }
      throw FormatError("data file line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (rows.empty()) width = row.size();
    if (row.size() != width)
      throw FormatError("data file line " + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " values");
    table.ids.push_back(id_column ? id : std::to_string(rows.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("data file contains no rows");
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) table.values(i, j) = rows[i][j];
  return table;
}

}  // namespace gme
