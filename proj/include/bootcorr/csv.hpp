#pragma once

// CSV matrix files: one object per line, comma-separated decimals, LF line
// endings. An optional header line and an optional leading label column are
// recognised by their non-numeric fields.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bootcorr/error.hpp"
#include "bootcorr/matrix.hpp"

namespace bootcorr {

class CsvFormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvMatrixFile {
  std::vector<std::string> header;
  std::vector<std::string> row_labels;
  Matrix values;
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a complete field as a finite double.
bool parse_double(std::string_view field, double& value);

CsvMatrixFile parse_csv_matrix(std::string_view text);
CsvMatrixFile read_csv_matrix(const std::filesystem::path& path);

void write_csv_matrix(std::ostream& out, const CsvMatrixFile& file);
void write_csv_matrix(const std::filesystem::path& path, const CsvMatrixFile& file);

}  // namespace bootcorr
