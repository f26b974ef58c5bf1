#pragma once

// Physical model of the one-dimensional harmonic crystal.
//
// Internal units: lengths in r_e, energies in hbar*omega_LJ, spring constants
// in m*omega_LJ^2 and inverse temperature as the dimensionless beta*hbar*omega_LJ.

#include <span>
#include <vector>

namespace hcrystal {

/// SI constants defining the reduced unit system.
class UnitSystem {
 public:
  UnitSystem(double mass, double r_e, double epsilon, double hbar, double k_b);

  /// Lennard-Jones neon: m = 3.35e-26 kg, r_e = 3.13e-10 m, eps = 4.93e-22 J.
  static UnitSystem neon();

  double mass() const { return mass_; }
  double r_e() const { return r_e_; }
  double epsilon() const { return epsilon_; }
  double hbar() const { return hbar_; }
  double k_b() const { return k_b_; }

  /// sqrt(72 eps / (m r_e^2)), in 1/s.
  double omega_lj() const;

  /// hbar / (m omega_LJ r_e^2): squared oscillator length of a unit-frequency
  /// mode, in units of r_e^2. This is the only combination of the constants
  /// that survives in reduced units.
  double quantum_ratio() const;

 private:
  double mass_;
  double r_e_;
  double epsilon_;
  double hbar_;
  double k_b_;
};

/// Parameters of the chain: N mobile particles between two fixed wall particles.
class CrystalParams {
 public:
  /// Throws ConfigError unless n >= 1, kappa >= 0, lambda > 0, delta_q > 0.
  CrystalParams(int n_particles, double kappa, double lambda, double delta_q,
                UnitSystem units = UnitSystem::neon());

  int n_particles() const { return n_; }
  double kappa() const { return kappa_; }
  double lambda() const { return lambda_; }
  double delta_q() const { return delta_q_; }
  const UnitSystem& units() const { return units_; }

  /// Diagonal element K = -2 - kappa/lambda of the potential matrix.
  double diagonal_value() const { return -2.0 - kappa_ / lambda_; }
  double density() const { return 1.0 / delta_q_; }

  /// Lattice site j * delta_q; j = 0 and j = N+1 are the walls.
  double site(int j) const { return j * delta_q_; }

  /// Sites of the mobile particles, j = 1..N.
  std::vector<double> lattice() const;

 private:
  int n_;
  double kappa_;
  double lambda_;
  double delta_q_;
  UnitSystem units_;
};

/// Symmetric tridiagonal N x N matrix with K on the diagonal and unit off-diagonals.
class PotentialMatrix {
 public:
  PotentialMatrix(int dimension, double diagonal) : dim_(dimension), diag_(diagonal) {}

  int dimension() const { return dim_; }
  double diagonal_value() const { return diag_; }
  double operator()(int row, int col) const;

  /// Row-major dense copy.
  std::vector<double> dense() const;

 private:
  int dim_;
  double diag_;
};

PotentialMatrix build_potential_matrix(const CrystalParams& params);

// Three potential models, returned in hbar*omega_LJ. q holds the N
// mobile particle positions in r_e; wall particles are implicit.

/// Displacements taken from the ordered lattice regardless of particle order.
/// Not invariant under particle exchange.
double potential_model_I(std::span<const double> q, const CrystalParams& params);

/// Positions sorted before computing displacements; fully permutation symmetric.
double potential_model_II(std::span<const double> q, const CrystalParams& params);

/// Each particle is displaced from the closest of the N! equivalent minima,
/// found by rank assignment; springs join particles on neighboring sites.
/// Ties in position are broken by original index.
double potential_model_III(std::span<const double> q, const CrystalParams& params);

/// sqrt(2 pi hbar^2 beta / m) in r_e, for dimensionless beta*hbar*omega_LJ.
double thermal_wavelength(double beta, const UnitSystem& units);

}  // namespace hcrystal
