#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "hcrystal/error.hpp"

namespace {

struct Options {
  std::string preset;
  std::string config_file;
  std::vector<std::string> settings;
  std::string out;
  std::map<std::string, std::string> shorthands;  // config key -> value
};

// Flags that are shorthand for one config key.
const std::pair<const char*, const char*> kShorthands[] = {
    {"--n", "n_particles"},        {"--dmax", "d_max"},
    {"--lmax", "l_max"},           {"--grid-points", "grid_points"},
    {"--grid-spacing", "grid_spacing"}, {"--beta", "beta"},
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-p,--preset", o.preset, "figure preset (fig2 .. fig7)");
  sub->add_option("-c,--config", o.config_file, "key = value config file")->check(CLI::ExistingFile);
  sub->add_option("-s,--set", o.settings, "override one key, e.g. --set l_max=500");
  sub->add_option("-o,--out", o.out, "output directory for CSV and JSON files");
  for (const auto& [flag, key] : kShorthands) {
    sub->add_option_function<std::string>(
        flag, [&o, key = std::string(key)](const std::string& v) { o.shorthands[key] = v; },
        "same as --set " + std::string(key) + "=...");
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hcrystal::cli;
  CLI::App app{"One-dimensional harmonic crystal: spectrum, symmetrization and thermal averages"};
  app.require_subcommand(1);
  Options o;
  const char* help[] = {
      "mode frequencies and the energy-ordered level table",
      "permutations with parity and length, filtered by d_max",
      "symmetrization factors per level from grid quadrature",
      "mean energy over the beta sweep for unsymmetrized, boson and fermion states",
      "thermal singlet density profiles at beta",
      "two spin-1/2 particles: exact versus factorized symmetrization",
      "cross-check the main path against brute-force references",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < command_names().size(); ++i) {
    subs.push_back(app.add_subcommand(command_names()[i], help[i]));
    add_common(subs.back(), o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  RunConfig config;
  try {
    if (!o.preset.empty()) apply_setting(config, "preset", o.preset);
    if (!o.config_file.empty()) config = load_config_file(o.config_file, config);
    for (const auto& [key, value] : o.shorthands) apply_setting(config, key, value);
    for (const auto& s : o.settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw hcrystal::ConfigError("--set expects key=value", s);
      apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!o.out.empty()) config.output_dir = o.out;
  } catch (const hcrystal::ConfigError& e) {
    std::cerr << "config error" << (e.key().empty() ? "" : " [" + e.key() + "]") << ": " << e.what() << '\n';
    return kConfigError;
  }

  for (auto* sub : subs) {
    if (sub->parsed()) return run(sub->get_name(), config, std::cout, std::cerr).exit_code;
  }
  return kConfigError;
}
