#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "config_file.hpp"

namespace spinrel_cli {

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_number(double v);

/// CSV sink with one header line; numeric fields rendered with
/// format_number, NaN rendered as an empty field.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& header);
  ~CsvWriter();

  void begin_row();
  void field(double v);
  void field_empty();
  void field(std::int64_t v);
  void field(std::uint64_t v);
  void field(const std::string& v);
  void end_row();

private:
  void sep();
  std::ofstream out_;
  std::string path_;
  bool first_in_row_ = true;
};

}  // namespace spinrel_cli
