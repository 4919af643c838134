#include "options.hpp"

#include <charconv>

namespace spinrel_cli {

namespace {

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError(where + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& where) {
  std::uint64_t v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec == std::errc{} && ptr == end) return v;
  // allow scientific notation like 1e5 for counts
  const double d = parse_double(text, where);
  const auto rounded = static_cast<std::uint64_t>(d + 0.5);
  if (d < 0.0 || static_cast<double>(rounded) != d) {
    throw UsageError(where + ": cannot parse '" + text + "' as a nonnegative integer");
  }
  return rounded;
}

}  // namespace

OptionResolver::OptionResolver(CLI::App& cmd, const std::string& config_path) : cmd_(cmd) {
  if (config_path.empty()) return;
  for (const ConfigEntry& entry : parse_config_file(config_path)) {
    if (entry.key == "config") {
      throw UsageError(config_path + ":" + std::to_string(entry.line) +
                       ": config files cannot nest via key 'config'");
    }
    if (cmd_.get_option_no_throw("--" + entry.key) == nullptr) {
      throw UsageError(config_path + ":" + std::to_string(entry.line) + ": unknown key '" +
                       entry.key + "'");
    }
    if (config_.count(entry.key) != 0) {
      throw UsageError(config_path + ":" + std::to_string(entry.line) + ": duplicate key '" +
                       entry.key + "'");
    }
    config_[entry.key] = {entry.value, config_path + ":" + std::to_string(entry.line)};
  }
}

std::optional<OptionResolver::Source> OptionResolver::find(const std::string& key) const {
  const CLI::Option* opt = cmd_.get_option_no_throw("--" + key);
  if (opt != nullptr && opt->count() > 0) {
    return Source{opt->results().back(), "--" + key};
  }
  const auto it = config_.find(key);
  if (it == config_.end()) return std::nullopt;
  return it->second;
}

bool OptionResolver::has(const std::string& key) const { return find(key).has_value(); }

double OptionResolver::require_double(const std::string& key) const {
  const auto s = find(key);
  if (!s) throw UsageError("missing required flag --" + key);
  return parse_double(s->value, s->where);
}

double OptionResolver::get_double(const std::string& key, double fallback) const {
  const auto s = find(key);
  return !s ? fallback : parse_double(s->value, s->where);
}

int OptionResolver::get_int(const std::string& key, int fallback) const {
  const auto s = find(key);
  if (!s) return fallback;
  return static_cast<int>(parse_u64(s->value, s->where));
}

std::uint64_t OptionResolver::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto s = find(key);
  return !s ? fallback : parse_u64(s->value, s->where);
}

std::string OptionResolver::require_string(const std::string& key) const {
  const auto s = find(key);
  if (!s) throw UsageError("missing required flag --" + key);
  return s->value;
}

std::string OptionResolver::get_string(const std::string& key, const std::string& fallback) const {
  const auto s = find(key);
  return !s ? fallback : s->value;
}

}  // namespace spinrel_cli
