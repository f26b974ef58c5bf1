#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcrystal/model.hpp"

namespace hcrystal::cli {

struct GridSpec {
  int points = 71;
  double spacing = 0.14;
};

/// Log-spaced inverse temperatures.
struct BetaSweep {
  double min = 0.05;
  double max = 10.0;
  int points = 60;
};

struct RunConfig {
  std::string preset;
  std::optional<int> n_particles;
  std::optional<double> kappa;
  std::optional<double> lambda;
  std::optional<double> delta_q;
  std::string material = "neon";
  std::size_t l_max = 5000;
  std::optional<int> d_max = 0;  // empty: every permutation
  GridSpec grid;
  BetaSweep sweep;
  double beta = 1.0;  // single temperature for density profiles
  std::string output_dir;  // empty: primary table to stdout
  int workers = 0;
  std::size_t memory_cap_mb = 2048;
  std::size_t mc_samples = 10'000'000;  // verify only
  std::uint64_t seed = 20240101;        // verify only

  /// Throws ConfigError naming every missing required key.
  CrystalParams params() const;

  /// Every key with its current value, in the same text form the parser accepts.
  std::map<std::string, std::string> to_map() const;
};

const std::vector<std::string>& required_keys();
const std::vector<std::string>& known_keys();

/// Parameters of the figure presets fig2 .. fig7. Throws ConfigError for unknown names.
RunConfig preset_config(std::string_view name);
const std::vector<std::string>& preset_names();

/// Sets one key. `preset` replaces the whole config with the preset, so it
/// should come first. Throws ConfigError naming the key on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and `#` comments are ignored.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// HCRYSTAL_WORKERS if set to a non-negative integer, else `fallback`.
int workers_from_env(int fallback);

}  // namespace hcrystal::cli
