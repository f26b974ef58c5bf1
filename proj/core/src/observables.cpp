#include "hcrystal/observables.hpp"

#include <cmath>
#include <limits>

#include "hcrystal/error.hpp"

namespace hcrystal {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Ground-shifted moments: weights w_l = (chi_l/N!) e^{-beta (E_l - E_1)}.
struct Moments {
  double shift = 0.0;
  double w = 0.0;
  double w_e = 0.0;   // sum w (E - shift)
  double w_e2 = 0.0;  // sum w (E - shift)^2
};

Moments moments(const LevelTable& table, std::span<const double> chi, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be > 0", "beta");
  if (chi.size() != table.size()) throw ConfigError("chi length must equal the level count");
  Moments m;
  if (table.size() == 0) return m;
  m.shift = table[0].energy;
  const double norm = 1.0 / factorial(table.modes());
  for (std::size_t l = 0; l < table.size(); ++l) {
    const double de = table[l].energy - m.shift;
    const double w = norm * chi[l] * std::exp(-beta * de);
    m.w += w;
    m.w_e += w * de;
    m.w_e2 += w * de * de;
  }
  return m;
}

void check_pole(const Moments& m, double beta) {
  if (std::abs(m.w) <= kPoleEpsilon) {
    throw PoleError("partition sum vanishes at beta = " + std::to_string(beta));
  }
}

}  // namespace

double partition_function(const LevelTable& table, std::span<const double> chi, double beta) {
  const Moments m = moments(table, chi, beta);
  return m.w * std::exp(-beta * m.shift);
}

double mean_energy(const LevelTable& table, std::span<const double> chi, double beta) {
  const Moments m = moments(table, chi, beta);
  check_pole(m, beta);
  return m.shift + m.w_e / m.w;
}

double energy_variance(const LevelTable& table, std::span<const double> chi, double beta) {
  const Moments m = moments(table, chi, beta);
  check_pole(m, beta);
  const double mean = m.w_e / m.w;
  return m.w_e2 / m.w - mean * mean;
}

double classical_energy(int n_particles, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be > 0", "beta");
  return n_particles / beta;
}

ThermalPoint thermal_point(const LevelTable& table, std::span<const double> chi_plus,
                           std::span<const double> chi_minus, double beta) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  ThermalPoint pt;
  pt.beta = beta;
  pt.e_classical = classical_energy(table.modes(), beta);
  const Moments plus = moments(table, chi_plus, beta);
  const Moments minus = moments(table, chi_minus, beta);
  pt.z_plus = plus.w * std::exp(-beta * plus.shift);
  pt.z_minus = minus.w * std::exp(-beta * minus.shift);
  pt.pole_plus = std::abs(plus.w) <= kPoleEpsilon;
  pt.pole_minus = std::abs(minus.w) <= kPoleEpsilon;
  if (pt.pole_plus) {
    pt.e_plus = pt.variance = nan;
  } else {
    const double mean = plus.w_e / plus.w;
    pt.e_plus = plus.shift + mean;
    pt.variance = plus.w_e2 / plus.w - mean * mean;
  }
  pt.e_minus = pt.pole_minus ? nan : minus.shift + minus.w_e / minus.w;
  return pt;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi >= lo) || count < 1) {
    throw ConfigError("log spacing needs 0 < lo <= hi and count >= 1", "beta_min");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

std::vector<double> thermal_density_profile(const SymmetrizationResult& result,
                                            const LevelTable& table, double beta,
                                            Statistics stats) {
  if (!(beta > 0)) throw ConfigError("beta must be > 0", "beta");
  if (result.levels() != table.size()) throw ConfigError("result and table level counts differ");
  const auto& bins = result.binning();
  const double shift = table[0].energy;
  const double norm = 1.0 / factorial(table.modes());

  std::vector<double> profile(bins.bins, 0.0);
  double z = 0.0;
  for (std::size_t l = 0; l < table.size(); ++l) {
    const double boltzmann = std::exp(-beta * (table[l].energy - shift));
    z += norm * result.chi(l, stats) * boltzmann;
    for (int b = 0; b < bins.bins; ++b) profile[b] += boltzmann * result.density_sum(l, b, stats);
  }
  if (std::abs(z) <= kPoleEpsilon) {
    throw PoleError("partition sum vanishes at beta = " + std::to_string(beta));
  }
  // chi/N! weights the level; the per-level density carries 1/chi; N! cancels with norm.
  for (double& v : profile) v *= norm / (z * bins.width);
  return profile;
}

}  // namespace hcrystal
