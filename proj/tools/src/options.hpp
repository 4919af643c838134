#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <optional>
#include <map>
#include <string>

#include "config_file.hpp"

namespace spinrel_cli {

/// Resolves option values with the precedence: command line flag, then
/// config file entry, then default. Unknown config keys (relative to the
/// subcommand's registered flags) are rejected with their line number.
class OptionResolver {
public:
  OptionResolver(CLI::App& cmd, const std::string& config_path);

  bool has(const std::string& key) const;

  double require_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string require_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

private:
  struct Source {
    std::string value;
    std::string where;  // for error messages
  };

  std::optional<Source> find(const std::string& key) const;

  CLI::App& cmd_;
  std::map<std::string, Source> config_;
};

}  // namespace spinrel_cli
