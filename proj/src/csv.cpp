#include "bootcorr/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bootcorr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

bool is_numeric(std::string_view field) {
  double v;
  return parse_double(field, v);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view field, double& value) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  return res.ec == std::errc() && res.ptr == field.data() + field.size() && std::isfinite(value);
}

CsvMatrixFile parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<std::string_view>> lines;
  std::vector<std::size_t> line_numbers;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    ++line_no;
    if (!trim(line).empty()) {
      lines.push_back(split_fields(line));
      line_numbers.push_back(line_no);
    }
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw CsvFormatError("CSV input is empty");

  const std::size_t width = lines.front().size();
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].size() != width)
      throw CsvFormatError("line " + std::to_string(line_numbers[i]) + " has " +
                           std::to_string(lines[i].size()) + " fields, expected " +
                           std::to_string(width));

  const bool labelled =
      lines.size() >= 2 && width >= 2 &&
      std::all_of(lines.begin() + 1, lines.end(), [](const auto& f) { return !is_numeric(f[0]); });
  const std::size_t first_col = labelled ? 1 : 0;
  const bool has_header = std::any_of(lines.front().begin() + static_cast<std::ptrdiff_t>(first_col),
                                      lines.front().end(), [](auto f) { return !is_numeric(f); });

  CsvMatrixFile file;
  const std::size_t first_row = has_header ? 1 : 0;
  if (has_header)
    for (std::size_t j = first_col; j < width; ++j) file.header.emplace_back(lines.front()[j]);
  file.values = Matrix(lines.size() - first_row, width - first_col);
  for (std::size_t i = first_row; i < lines.size(); ++i) {
    if (labelled) file.row_labels.emplace_back(lines[i][0]);
    for (std::size_t j = first_col; j < width; ++j) {
      if (!parse_double(lines[i][j], file.values(i - first_row, j - first_col)))
        throw CsvFormatError("line " + std::to_string(line_numbers[i]) + ", field " +
                             std::to_string(j + 1) + ": '" + std::string(lines[i][j]) +
                             "' is not a finite number");
    }
  }
  return file;
}

CsvMatrixFile read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return parse_csv_matrix(buf.str());
}

void write_csv_matrix(std::ostream& out, const CsvMatrixFile& file) {
  const bool labelled = !file.row_labels.empty();
  if (!file.header.empty()) {
    if (labelled) out << ',';
    for (std::size_t j = 0; j < file.header.size(); ++j) out << (j ? "," : "") << file.header[j];
    out << '\n';
  }
  for (std::size_t i = 0; i < file.values.rows(); ++i) {
    if (labelled) out << file.row_labels[i] << ',';
    const auto row = file.values.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

void write_csv_matrix(const std::filesystem::path& path, const CsvMatrixFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv_matrix(out, file);
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace bootcorr
