#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "hcrystal/model.hpp"

namespace hcrystal {

/// Normal modes of the chain from the closed-form diagonalization of the
/// tridiagonal potential matrix. Mode index n = 0..N-1 corresponds to
/// mu_n = K + 2 cos((n+1) pi / (N+1)), so frequencies ascend with n.
class ModeSpectrum {
 public:
  explicit ModeSpectrum(const CrystalParams& params);

  int size() const { return n_; }
  const std::vector<double>& mu() const { return mu_; }
  /// Mode frequencies in omega_LJ.
  const std::vector<double>& omega() const { return omega_; }
  /// sqrt(m omega_n / hbar) in 1/r_e.
  const std::vector<double>& scale() const { return scale_; }
  /// Ordered lattice sites of the mobile particles.
  const std::vector<double>& lattice() const { return lattice_; }

  /// Eigenvector matrix element X_{jn} = u_{n,j}; X is symmetric and orthogonal.
  double x(int j, int n) const { return x_[static_cast<std::size_t>(j) * n_ + n]; }
  const std::vector<double>& x_row_major() const { return x_; }

  /// Sum of zero-point energies, sum_n omega_n / 2.
  double ground_energy() const;

 private:
  int n_;
  std::vector<double> mu_;
  std::vector<double> omega_;
  std::vector<double> scale_;
  std::vector<double> lattice_;
  std::vector<double> x_;
};

ModeSpectrum diagonalize(const CrystalParams& params);

/// Q = scale * X^T (q - lattice).
std::vector<double> to_modes(std::span<const double> q, const ModeSpectrum& spectrum);

/// Inverse of to_modes: q = lattice + X (Q / scale).
std::vector<double> from_modes(std::span<const double> modes, const ModeSpectrum& spectrum);

/// A product state of the N oscillators.
struct Level {
  std::vector<int> quanta;
  double energy = 0.0;  // sum_n (l_n + 1/2) omega_n, in hbar*omega_LJ
};

/// Energy of a quanta vector, summed over modes in ascending order.
double level_energy(std::span<const int> quanta, std::span<const double> omega);

/// Strict ordering used for level tables: energy first, then the
/// lexicographically smaller quanta vector.
bool level_before(const Level& a, const Level& b);

/// The lowest-energy product states in nondecreasing energy order. Index 0 is
/// the ground state; printed ranks are 1-based.
class LevelTable {
 public:
  explicit LevelTable(std::vector<Level> levels);

  std::size_t size() const { return levels_.size(); }
  const Level& operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<Level>& levels() const { return levels_; }
  int modes() const { return levels_.empty() ? 0 : static_cast<int>(levels_.front().quanta.size()); }

  /// Index of a quanta vector, or -1 if absent.
  long index_of(const std::vector<int>& quanta) const;

  /// Largest quantum number carried by any stored level in each mode.
  std::vector<int> max_quanta() const;

  std::vector<double> energies() const;

 private:
  std::vector<Level> levels_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Builds the table by seeding with excitations of the lowest mode and then
/// inserting states with successively more quanta of each higher mode,
/// discarding whatever falls past l_max. Throws ConfigError if l_max == 0.
LevelTable build_level_table(const ModeSpectrum& spectrum, std::size_t l_max);

/// Least-squares slope of log E_l against log l over ranks 100..size.
/// Throws ConfigError when the table has no more than 100 levels.
double level_scaling_exponent(const LevelTable& table);

}  // namespace hcrystal
