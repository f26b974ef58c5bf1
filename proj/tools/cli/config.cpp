#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <istream>

#include "hcrystal/error.hpp"

namespace hcrystal::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, text), std::string(key));
  }
  return value;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys{"n_particles", "kappa", "lambda", "delta_q"};
  return keys;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "preset",      "n_particles",  "kappa",    "lambda",     "delta_q",     "material",
      "l_max",       "d_max",        "grid_points", "grid_spacing", "beta_min", "beta_max",
      "beta_points", "beta",         "output_dir",  "workers",     "memory_cap_mb", "mc_samples",
      "seed"};
  return keys;
}

CrystalParams RunConfig::params() const {
  std::vector<std::string> missing;
  if (!n_particles) missing.push_back("n_particles");
  if (!kappa) missing.push_back("kappa");
  if (!lambda) missing.push_back("lambda");
  if (!delta_q) missing.push_back("delta_q");
  if (!missing.empty()) {
    throw ConfigError(fmt::format("missing required keys: {} (or choose a preset: {})",
                                  fmt::join(missing, ", "), fmt::join(preset_names(), ", ")),
                      missing.front());
  }
  if (material != "neon") throw ConfigError("material must be 'neon'", "material");
  return CrystalParams(*n_particles, *kappa, *lambda, *delta_q, UnitSystem::neon());
}

std::map<std::string, std::string> RunConfig::to_map() const {
  std::map<std::string, std::string> m;
  m["preset"] = preset;
  m["n_particles"] = n_particles ? std::to_string(*n_particles) : "";
  m["kappa"] = kappa ? num(*kappa) : "";
  m["lambda"] = lambda ? num(*lambda) : "";
  m["delta_q"] = delta_q ? num(*delta_q) : "";
  m["material"] = material;
  m["l_max"] = std::to_string(l_max);
  m["d_max"] = d_max ? std::to_string(*d_max) : "all";
  m["grid_points"] = std::to_string(grid.points);
  m["grid_spacing"] = num(grid.spacing);
  m["beta_min"] = num(sweep.min);
  m["beta_max"] = num(sweep.max);
  m["beta_points"] = std::to_string(sweep.points);
  m["beta"] = num(beta);
  m["output_dir"] = output_dir;
  m["workers"] = std::to_string(workers);
  m["memory_cap_mb"] = std::to_string(memory_cap_mb);
  m["mc_samples"] = std::to_string(mc_samples);
  m["seed"] = std::to_string(seed);
  return m;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
  return names;
}

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.preset = std::string(name);
  c.n_particles = 4;
  c.delta_q = 1.0;
  c.l_max = 5000;
  if (name == "fig2" || name == "fig3") {
    // Level ladder and cutoff study: kappa = lambda, no symmetrization.
    c.kappa = 1.0;
    c.lambda = 1.0;
    c.d_max = 0;
  } else if (name == "fig4" || name == "fig5") {
    // Weakest interparticle spring of the lambda series.
    c.kappa = 0.0;
    c.lambda = 0.02;
    c.d_max = 2;
    c.beta = 2.0;
  } else if (name == "fig6") {
    c.kappa = 0.0;
    c.lambda = 1.0;
    c.delta_q = 0.1;
    c.l_max = 3000;
    c.d_max = 4;
    c.grid = {91, 0.12};
  } else if (name == "fig7") {
    c.kappa = 0.0;
    c.lambda = 1.0;
    c.delta_q = 0.1;
    c.d_max = 2;
    c.beta = 1.0;
    c.grid = {91, 0.12};
  } else {
    throw ConfigError(fmt::format("unknown preset '{}' (choose {})", name, fmt::join(preset_names(), ", ")),
                      "preset");
  }
  return c;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  const std::string k(key);
  if (key == "preset") {
    const std::string keep_out = c.output_dir;
    const int keep_workers = c.workers;
    c = preset_config(value);
    c.output_dir = keep_out;
    c.workers = keep_workers;
  } else if (key == "n_particles") {
    c.n_particles = parse_number<int>(key, value);
  } else if (key == "kappa") {
    c.kappa = parse_number<double>(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_number<double>(key, value);
  } else if (key == "delta_q") {
    c.delta_q = parse_number<double>(key, value);
  } else if (key == "material") {
    if (value != "neon") throw ConfigError("material must be 'neon'", k);
    c.material = std::string(value);
  } else if (key == "l_max") {
    const long v = parse_number<long>(key, value);
    if (v < 1) throw ConfigError("l_max must be >= 1", k);
    c.l_max = static_cast<std::size_t>(v);
  } else if (key == "d_max") {
    if (value == "all") {
      c.d_max.reset();
    } else {
      const int v = parse_number<int>(key, value);
      if (v < 0) throw ConfigError("d_max must be >= 0 or 'all'", k);
      c.d_max = v;
    }
  } else if (key == "grid_points") {
    c.grid.points = parse_number<int>(key, value);
  } else if (key == "grid_spacing") {
    c.grid.spacing = parse_number<double>(key, value);
  } else if (key == "beta_min") {
    c.sweep.min = parse_number<double>(key, value);
  } else if (key == "beta_max") {
    c.sweep.max = parse_number<double>(key, value);
  } else if (key == "beta_points") {
    c.sweep.points = parse_number<int>(key, value);
  } else if (key == "beta") {
    c.beta = parse_number<double>(key, value);
    if (!(c.beta > 0)) throw ConfigError("beta must be > 0", k);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else if (key == "workers") {
    c.workers = parse_number<int>(key, value);
    if (c.workers < 0) throw ConfigError("workers must be >= 0", k);
  } else if (key == "memory_cap_mb") {
    const long v = parse_number<long>(key, value);
    if (v < 1) throw ConfigError("memory_cap_mb must be >= 1", k);
    c.memory_cap_mb = static_cast<std::size_t>(v);
  } else if (key == "mc_samples") {
    const long v = parse_number<long>(key, value);
    if (v < 10'000) throw ConfigError("mc_samples must be >= 10000", k);
    c.mc_samples = static_cast<std::size_t>(v);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else {
    throw ConfigError(fmt::format("unknown key '{}'", key), k);
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    }
    apply_setting(base, trim(s.substr(0, eq)), s.substr(eq + 1));
  }
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), "config");
  return parse_config(in, std::move(base));
}

int workers_from_env(int fallback) {
  const char* env = std::getenv("HCRYSTAL_WORKERS");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string_view s = trim(env);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw ConfigError("HCRYSTAL_WORKERS must be a non-negative integer", "HCRYSTAL_WORKERS");
  }
  return v;
}

}  // namespace hcrystal::cli
