#pragma once

#include <span>
#include <vector>

#include "hcrystal/spectrum.hpp"
#include "hcrystal/symmetrization.hpp"

namespace hcrystal {

/// Partition sums whose ground-shifted magnitude |sum_l (chi_l/N!) e^{-beta(E_l-E_1)}|
/// falls at or below this are treated as poles.
inline constexpr double kPoleEpsilon = 1e-9;

/// Cutoff partition function sum_l (chi_l / N!) e^{-beta E_l} over the table.
/// Not clamped: truncated fermion sums can be negative.
double partition_function(const LevelTable& table, std::span<const double> chi, double beta);

/// Canonical mean energy. Throws PoleError near a zero of the partition sum.
double mean_energy(const LevelTable& table, std::span<const double> chi, double beta);

/// <H^2> - <H>^2 from the same weighted sums. Throws PoleError like mean_energy.
double energy_variance(const LevelTable& table, std::span<const double> chi, double beta);

/// Equipartition result N / beta.
double classical_energy(int n_particles, double beta);

/// One row of a temperature sweep; pole points carry NaN energies.
struct ThermalPoint {
  double beta = 0.0;
  double z_plus = 0.0;
  double z_minus = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double e_classical = 0.0;
  double variance = 0.0;  // boson ensemble
  bool pole_plus = false;
  bool pole_minus = false;
};

ThermalPoint thermal_point(const LevelTable& table, std::span<const double> chi_plus,
                           std::span<const double> chi_minus, double beta);

/// count log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

/// Boltzmann-weighted symmetrized singlet density over the result's bins,
/// normalized to integrate to N. Throws PoleError near a zero of the partition sum.
std::vector<double> thermal_density_profile(const SymmetrizationResult& result,
                                            const LevelTable& table, double beta,
                                            Statistics stats);

}  // namespace hcrystal
