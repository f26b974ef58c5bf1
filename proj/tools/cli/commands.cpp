#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "hcrystal/error.hpp"
#include "hcrystal/observables.hpp"
#include "hcrystal/oracle.hpp"
#include "hcrystal/permutations.hpp"
#include "hcrystal/spectrum.hpp"
#include "hcrystal/spin_pair.hpp"
#include "hcrystal/symmetrization.hpp"

#ifndef HCRYSTAL_VERSION
#define HCRYSTAL_VERSION "0.0.0"
#endif

namespace hcrystal::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"spectrum", "permutations", "chi",     "energy",
                                              "density",  "spin-demo",    "verify"};
  return names;
}

int sweep_exit_code(const std::vector<bool>& fermion_poles, bool symmetrized) {
  if (!symmetrized || fermion_poles.empty()) return kSuccess;
  for (bool pole : fermion_poles)
    if (!pole) return kSuccess;
  return kPoleOnly;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string cell(double v) { return format_double(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }
std::string cell(const char* v) { return v; }
std::string cell(const std::string& v) { return v; }

template <typename... Ts>
std::vector<std::string> row(const Ts&... values) {
  return {cell(values)...};
}

int worker_count(const RunConfig& c) { return workers_from_env(c.workers); }

SymmetrizationOptions sym_options(const RunConfig& c, bool density) {
  SymmetrizationOptions o;
  o.density = density;
  o.workers = worker_count(c);
  o.memory_cap_bytes = c.memory_cap_mb << 20;
  return o;
}

QuadratureGrid grid_of(const RunConfig& c, int dim) {
  return QuadratureGrid(c.grid.points, c.grid.spacing, dim);
}

struct Crystal {
  CrystalParams params;
  ModeSpectrum spectrum;
  LevelTable table;

  explicit Crystal(const RunConfig& c)
      : params(c.params()), spectrum(params), table(build_level_table(spectrum, c.l_max)) {}
};

std::vector<Table> spectrum_tables(const RunConfig& c) {
  const Crystal x(c);
  Table modes{"spectrum", {"mode", "mu", "omega", "scale", "zero_point_energy"}, {}};
  for (int n = 0; n < x.spectrum.size(); ++n) {
    modes.rows.push_back(row(n, x.spectrum.mu()[n], x.spectrum.omega()[n], x.spectrum.scale()[n],
                             0.5 * x.spectrum.omega()[n]));
  }
  Table levels{"levels", {"rank", "quanta", "energy"}, {}};
  for (std::size_t l = 0; l < x.table.size(); ++l) {
    levels.rows.push_back(row(l + 1, fmt::format("{}", fmt::join(x.table[l].quanta, ";")), x.table[l].energy));
  }
  return {modes, levels};
}

std::vector<Table> permutation_tables(const RunConfig& c) {
  if (!c.n_particles) throw ConfigError("missing required key: n_particles", "n_particles");
  const PermutationSet perms = enumerate_permutations(*c.n_particles, c.d_max);
  Table t{"permutations", {"index", "mapping", "parity", "metric_length", "displacement_sum"}, {}};
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Permutation& p = perms[i];
    t.rows.push_back(row(i, fmt::format("{}", fmt::join(p.mapping(), " ")), p.parity(),
                         p.metric_length(), p.displacement_sum()));
  }
  return {t};
}

std::vector<Table> chi_tables(const RunConfig& c) {
  const Crystal x(c);
  const PermutationSet perms = enumerate_permutations(x.params.n_particles(), c.d_max);
  const SymmetrizationResult r = compute_overlaps(x.table, perms, grid_of(c, x.params.n_particles()),
                                                  x.spectrum, x.params, sym_options(c, false));
  const std::size_t id = perms.identity_index();
  Table t{"chi", {"rank", "energy", "chi_plus", "chi_minus", "identity_overlap"}, {}};
  for (std::size_t l = 0; l < x.table.size(); ++l) {
    t.rows.push_back(row(l + 1, x.table[l].energy, r.chi(l, Statistics::boson),
                         r.chi(l, Statistics::fermion), r.overlap(l, id)));
  }
  return {t};
}

std::vector<Table> energy_tables(const RunConfig& c, int& exit_code) {
  const Crystal x(c);
  const std::vector<double> betas = log_spaced(c.sweep.min, c.sweep.max, c.sweep.points);
  const std::vector<double> ones(x.table.size(), 1.0);
  std::vector<double> chi_plus = ones, chi_minus = ones;
  const bool symmetrized = !c.d_max || *c.d_max > 0;
  if (symmetrized) {
    const PermutationSet perms = enumerate_permutations(x.params.n_particles(), c.d_max);
    const SymmetrizationResult r = compute_overlaps(x.table, perms, grid_of(c, x.params.n_particles()),
                                                    x.spectrum, x.params, sym_options(c, false));
    chi_plus = r.chi(Statistics::boson);
    chi_minus = r.chi(Statistics::fermion);
  }

  Table t{"energy",
          {"beta", "z_plus", "z_minus", "e_plus", "e_minus", "e_classical", "variance", "pole_flag",
           "e_unsym", "e_ground"},
          {}};
  std::vector<bool> poles;
  for (double beta : betas) {
    const ThermalPoint plain = thermal_point(x.table, ones, ones, beta);
    const ThermalPoint pt = thermal_point(x.table, chi_plus, chi_minus, beta);
    poles.push_back(pt.pole_minus);
    t.rows.push_back(row(beta, pt.z_plus, pt.z_minus, pt.e_plus, pt.e_minus, pt.e_classical, pt.variance,
                         pt.pole_plus || pt.pole_minus, plain.e_plus, x.table[0].energy));
  }
  exit_code = sweep_exit_code(poles, symmetrized);
  return {t};
}

std::vector<Table> density_tables(const RunConfig& c) {
  const Crystal x(c);
  const int n = x.params.n_particles();
  const QuadratureGrid grid = grid_of(c, n);
  const SymmetrizationResult plain = compute_overlaps(x.table, enumerate_permutations(n, 0), grid,
                                                      x.spectrum, x.params, sym_options(c, true));
  const std::vector<double> rho = thermal_density_profile(plain, x.table, c.beta, Statistics::boson);
  std::vector<double> rho_plus = rho, rho_minus = rho;
  if (!c.d_max || *c.d_max > 0) {
    const SymmetrizationResult sym = compute_overlaps(x.table, enumerate_permutations(n, c.d_max), grid,
                                                      x.spectrum, x.params, sym_options(c, true));
    rho_plus = thermal_density_profile(sym, x.table, c.beta, Statistics::boson);
    rho_minus = thermal_density_profile(sym, x.table, c.beta, Statistics::fermion);
  }
  const DensityBinning& bins = plain.binning();
  Table t{"density", {"r", "rho_plus", "rho_minus", "rho_unsym"}, {}};
  for (int b = 0; b < bins.bins; ++b) {
    t.rows.push_back(row(bins.center(b), rho_plus[b], rho_minus[b], rho[b]));
  }
  return {t};
}

std::vector<Table> spin_tables() {
  Table t{"spin_demo",
          {"n1", "n2", "s1", "s2", "class", "chi_boson", "chi_fermion", "chi_tilde_boson",
           "chi_tilde_fermion", "max_diff_boson", "max_diff_fermion"},
          {}};
  const Spin spins[] = {Spin::up, Spin::down};
  for (int n1 = 0; n1 < 4; ++n1) {
    for (int n2 = 0; n2 < 4; ++n2) {
      for (Spin s1 : spins) {
        for (Spin s2 : spins) {
          const PairState state{{n1, n2}, {s1, s2}};
          double worst[2] = {0.0, 0.0};
          const Statistics stats[2] = {Statistics::boson, Statistics::fermion};
          for (int k = 0; k < 2; ++k) {
            if (pair_chi(state, stats[k]) == 0) {
              worst[k] = std::nan("");
              continue;
            }
            for (int i = 0; i < 13; ++i) {
              for (int j = 0; j < 13; ++j) {
                for (Spin a : spins) {
                  for (Spin b : spins) {
                    const PairPoint x{{-3.0 + 0.5 * i, -3.0 + 0.5 * j}, {a, b}};
                    const double d = std::abs(exact_symmetrized(state, x, stats[k]) -
                                              factorized_symmetrized(state, x, stats[k]));
                    worst[k] = std::max(worst[k], d);
                  }
                }
              }
            }
          }
          t.rows.push_back(row(n1, n2, static_cast<int>(s1), static_cast<int>(s2),
                               to_string(classify_state(state)), pair_chi(state, Statistics::boson),
                               pair_chi(state, Statistics::fermion),
                               factorized_chi(state, Statistics::boson),
                               factorized_chi(state, Statistics::fermion), worst[0], worst[1]));
        }
      }
    }
  }
  return {t};
}

std::vector<Table> verify_tables(const RunConfig& c, std::ostream& out, int& exit_code) {
  OracleSuiteOptions o;
  o.mc_samples = c.mc_samples;
  o.seed = c.seed;
  o.workers = worker_count(c);
  const std::vector<OracleReport> reports = run_oracle_suite(o);
  Table t{"verify", {"quantity", "value", "oracle", "discrepancy", "tolerance", "pass"}, {}};
  out << fmt::format("{:<48} {:>24} {:>24} {:>10} {:>10}  {}\n", "quantity", "value", "oracle",
                     "discrep.", "tol.", "result");
  for (const auto& r : reports) {
    out << fmt::format("{:<48} {:>24.17g} {:>24.17g} {:>10.3g} {:>10.3g}  {}\n", r.quantity, r.value,
                       r.oracle, r.discrepancy, r.tolerance, r.pass ? "PASS" : "FAIL");
    t.rows.push_back(row(r.quantity, r.value, r.oracle, r.discrepancy, r.tolerance, r.pass));
    if (!r.pass) exit_code = kVerifyFailed;
  }
  return {t};
}

void write_csv(std::ostream& os, const Table& t) {
  os << fmt::format("{}\n", fmt::join(t.header, ","));
  for (const auto& r : t.rows) os << fmt::format("{}\n", fmt::join(r, ","));
}

std::vector<std::filesystem::path> write_outputs(std::string_view command, const RunConfig& c,
                                                 const std::vector<Table>& tables, double runtime) {
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : c.to_map()) config[k] = v;
  for (const Table& t : tables) {
    const auto csv = dir / (t.name + ".csv");
    const auto meta = dir / (t.name + ".json");
    {
      std::ofstream os(csv, std::ios::binary);
      if (!os) throw ConfigError("cannot write " + csv.string(), "output_dir");
      write_csv(os, t);
    }
    nlohmann::json j;
    j["command"] = std::string(command);
    j["version"] = HCRYSTAL_VERSION;
    j["config"] = config;
    j["workers"] = worker_count(c);
    j["runtime_seconds"] = runtime;
    j["columns"] = t.header;
    j["rows"] = t.rows.size();
    std::ofstream ms(meta, std::ios::binary);
    ms << j.dump(2) << '\n';
    files.push_back(csv);
    files.push_back(meta);
  }
  return files;
}

}  // namespace

RunOutcome run(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutcome outcome;
  const auto start = Clock::now();
  try {
    int code = kSuccess;
    if (command == "spectrum") {
      outcome.tables = spectrum_tables(config);
    } else if (command == "permutations") {
      outcome.tables = permutation_tables(config);
    } else if (command == "chi") {
      outcome.tables = chi_tables(config);
    } else if (command == "energy") {
      outcome.tables = energy_tables(config, code);
    } else if (command == "density") {
      outcome.tables = density_tables(config);
    } else if (command == "spin-demo") {
      outcome.tables = spin_tables();
    } else if (command == "verify") {
      outcome.tables = verify_tables(config, out, code);
    } else {
      throw ConfigError(fmt::format("unknown command '{}' (choose {})", command,
                                    fmt::join(command_names(), ", ")),
                        "command");
    }
    const double runtime = std::chrono::duration<double>(Clock::now() - start).count();
    if (!config.output_dir.empty()) {
      outcome.files = write_outputs(command, config, outcome.tables, runtime);
    } else if (command != "verify") {
      for (std::size_t i = 0; i < outcome.tables.size(); ++i) {
        if (outcome.tables.size() > 1) out << (i ? "\n# " : "# ") << outcome.tables[i].name << '\n';
        write_csv(out, outcome.tables[i]);
      }
    }
    if (code == kPoleOnly) err << "every fermion point of the sweep lies at a pole of the partition sum\n";
    outcome.exit_code = code;
  } catch (const ConfigError& e) {
    err << "config error" << (e.key().empty() ? "" : " [" + e.key() + "]") << ": " << e.what() << '\n';
    outcome.exit_code = kConfigError;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    outcome.exit_code = kResourceCap;
  } catch (const PoleError& e) {
    err << "pole: " << e.what() << '\n';
    outcome.exit_code = kPoleOnly;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome.exit_code = kVerifyFailed;
  }
  return outcome;
}

}  // namespace hcrystal::cli
