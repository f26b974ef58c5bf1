#pragma once

// Brute-force references for checking the main numerical path. Nothing here
// reuses the closed-form spectrum, the Hermite recurrence, the level insertion
// or the quadrature kernel.

#include <cstdint>
#include <string>
#include <vector>

#include "hcrystal/model.hpp"
#include "hcrystal/permutations.hpp"
#include "hcrystal/spectrum.hpp"

namespace hcrystal {

struct OracleReport {
  std::string quantity;
  double value = 0.0;
  double oracle = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Absolute discrepancy |value - oracle|.
OracleReport absolute_report(std::string quantity, double value, double oracle, double tolerance);
/// Relative discrepancy |value - oracle| / |oracle|.
OracleReport relative_report(std::string quantity, double value, double oracle, double tolerance);

struct EigenPairs {
  int dimension = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column k holds the eigenvector of values[k]; row-major storage
  double vector(int row, int k) const { return vectors[static_cast<std::size_t>(row) * dimension + k]; }
};

/// Dense symmetric eigensolver (Householder tridiagonalization + implicit QL).
/// Throws ConfigError above N = 64 and std::runtime_error on non-convergence.
EigenPairs numeric_eigen(const PotentialMatrix& matrix);

/// Largest |A u - mu u| over all returned pairs.
double eigen_residual(const PotentialMatrix& matrix, const EigenPairs& pairs);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Importance-sampled <phi_l(P q)|phi_l(q)>: Q is drawn from the ground-state
/// density prod_n pi^{-1/2} e^{-Q_n^2} and each sample is reweighted. Modes come
/// from numeric_eigen and mode functions from std::hermite, so the estimate is
/// independent of the quadrature path. Generator: std::mt19937_64.
/// Throws ConfigError for fewer than 1e4 samples.
McEstimate mc_overlap(const std::vector<int>& quanta, const Permutation& perm,
                      const CrystalParams& params, std::size_t samples, std::uint64_t seed);

/// Every quanta vector with each l_n <= quanta_cap, sorted by energy then
/// lexicographically, truncated to l_max. Throws ResourceError when
/// (cap+1)^N > 1e8 and ConfigError when the cap is too small for the result to
/// be complete.
LevelTable exhaustive_levels(const ModeSpectrum& spectrum, int quanta_cap, std::size_t l_max);

/// Hermite function from the explicit power sum in 256-bit binary floating point.
double hermite_function_extended(int degree, double x);

struct OracleSuiteOptions {
  std::size_t mc_samples = 10'000'000;
  std::uint64_t seed = 20240101;
  int workers = 0;
};

/// Runs every cross-check between the main path and the references above.
std::vector<OracleReport> run_oracle_suite(const OracleSuiteOptions& options = {});

}  // namespace hcrystal
