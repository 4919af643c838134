#include "csv.hpp"

#include <cmath>
#include <cstdio>

namespace spinrel_cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw UsageError("cannot open output file: " + path);
  out_ << header << '\n';
}

CsvWriter::~CsvWriter() { out_.flush(); }

void CsvWriter::begin_row() { first_in_row_ = true; }

void CsvWriter::sep() {
  if (!first_in_row_) out_ << ',';
  first_in_row_ = false;
}

void CsvWriter::field(double v) {
  sep();
  if (std::isfinite(v)) out_ << format_number(v);
}

void CsvWriter::field_empty() { sep(); }

void CsvWriter::field(std::int64_t v) {
  sep();
  out_ << v;
}

void CsvWriter::field(std::uint64_t v) {
  sep();
  out_ << v;
}

void CsvWriter::field(const std::string& v) {
  sep();
  out_ << v;
}

void CsvWriter::end_row() { out_ << '\n'; }

}  // namespace spinrel_cli
