/// @file config.hpp
/// @brief Line-oriented run configuration: `[section]` headers, `key = value`
///        lines (or `section.key = value`), `#` comments. Unknown keys are errors.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "faddeev/evolve.hpp"

namespace faddeev {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& reason)
      : std::runtime_error(key + ": " + reason), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct AppConfig {
  RunConfig run{};
  std::size_t checkpoint_every = 0;  ///< output.checkpoint_every; 0 writes only the final checkpoint
};

/// Every recognised key, `section.key`, in the order the effective config is written.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value. Throws ConfigError.
void apply_setting(AppConfig& cfg, const std::string& key, const std::string& value);

/// Parses config text on top of `base`. Throws ConfigError (line numbers in the reason).
AppConfig parse_config(const std::string& text, AppConfig base = {});
AppConfig load_config(const std::string& path, AppConfig base = {});

/// `key=value` override as given to --set.
void apply_override(AppConfig& cfg, const std::string& assignment);

/// Canonical text of every key; parse_config(effective_config_text(c)) == c.
std::string effective_config_text(const AppConfig& cfg);

/// Hash of the canonical text, used in checkpoint sidecars.
std::string config_hash(const AppConfig& cfg);

}  // namespace faddeev
