#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinrel_cli {

/// A recoverable command line / config problem; exits with code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line;
};

/// Parses a key = value config file mirroring the long flags (keys without
/// the leading --). '#' starts a comment; blank lines are ignored. Malformed
/// lines raise UsageError citing "path:line".
std::vector<ConfigEntry> parse_config_file(const std::string& path);

}  // namespace spinrel_cli
