#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hcrystal/model.hpp"
#include "hcrystal/permutations.hpp"
#include "hcrystal/spectrum.hpp"

namespace hcrystal {

/// Tensor-product trapezoidal grid in mode space, centered on Q = 0.
class QuadratureGrid {
 public:
  /// Throws ConfigError unless points is odd and >= 3, spacing > 0, and the
  /// Gaussian e^{-Q^2/2} at the terminus is at most 1e-5.
  QuadratureGrid(int points_per_axis, double spacing, int dimension);

  /// 71 points per axis at spacing 0.14.
  static QuadratureGrid standard(int dimension) { return {71, 0.14, dimension}; }
  /// 91 points per axis at spacing 0.12, for high lattice densities.
  static QuadratureGrid high_density(int dimension) { return {91, 0.12, dimension}; }

  int points() const { return points_; }
  double spacing() const { return spacing_; }
  int dimension() const { return dim_; }
  double terminus() const { return spacing_ * (points_ - 1) / 2; }
  double coordinate(int i) const { return (i - (points_ - 1) / 2) * spacing_; }
  /// One-dimensional trapezoid weight of node i.
  double weight(int i) const { return (i == 0 || i == points_ - 1) ? 0.5 * spacing_ : spacing_; }
  double total_points() const;

 private:
  int points_;
  double spacing_;
  int dim_;
};

/// Uniform bins over particle position r.
struct DensityBinning {
  double r_min = 0.0;
  double width = 1.0;
  int bins = 0;

  /// Width delta_q/25 spanning two lattice spacings beyond each wall.
  static DensityBinning for_crystal(const CrystalParams& params);

  double center(int b) const { return r_min + (b + 0.5) * width; }
  /// Bin holding r, or -1 outside the range.
  int bin_of(double r) const;
};

struct SymmetrizationOptions {
  /// Accumulate singlet-density histograms alongside the overlaps.
  bool density = false;
  /// Defaults to DensityBinning::for_crystal.
  std::optional<DensityBinning> binning;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  int workers = 0;
  /// Upper bound on accumulator memory.
  std::size_t memory_cap_bytes = std::size_t{2} << 30;
};

/// Overlaps <phi_l(P q)|phi_l(q)> for every stored level and permutation, plus
/// optional density histograms, from one quadrature pass.
class SymmetrizationResult {
 public:
  SymmetrizationResult(std::size_t levels, std::vector<int> parities, std::vector<double> overlaps,
                       std::optional<DensityBinning> binning, std::vector<double> density_plus,
                       std::vector<double> density_minus);

  std::size_t levels() const { return levels_; }
  std::size_t permutations() const { return parities_.size(); }
  int parity(std::size_t perm) const { return parities_[perm]; }

  double overlap(std::size_t level, std::size_t perm) const {
    return overlaps_[level * parities_.size() + perm];
  }

  /// chi^{+-}_l = sum_P (+-1)^p overlap(l, P).
  double chi(std::size_t level, Statistics stats) const;
  std::vector<double> chi(Statistics stats) const;

  bool has_density() const { return binning_.has_value(); }
  const DensityBinning& binning() const;

  /// Unnormalized histogram sum_j sum_P (+-1)^p int phi_l(Q') phi_l(Q) delta(bin - q_j),
  /// integrated over each bin (not divided by the bin width).
  double density_sum(std::size_t level, int bin, Statistics stats) const;

 private:
  std::size_t levels_;
  std::vector<int> parities_;
  std::vector<double> overlaps_;  // [level][perm]
  std::optional<DensityBinning> binning_;
  std::vector<double> density_plus_;   // [level][bin]
  std::vector<double> density_minus_;  // [level][bin]
};

/// Bytes of accumulator storage compute_overlaps would allocate.
std::size_t estimate_memory(std::size_t levels, std::size_t perms, int bins, int workers);

/// Trapezoidal quadrature over the mode-space grid. At each node the identity
/// and permuted mode vectors are formed, Hermite tables are filled once per
/// (node, permutation), and every stored level reads its product from them.
/// The grid is split into slabs along the first axis; slab sums are merged in
/// slab order so results do not depend on the worker count.
/// Throws ResourceError when the accumulators would exceed the memory cap.
SymmetrizationResult compute_overlaps(const LevelTable& table, const PermutationSet& perms,
                                      const QuadratureGrid& grid, const ModeSpectrum& spectrum,
                                      const CrystalParams& params,
                                      const SymmetrizationOptions& options = {});

/// Per-level symmetrized density profile, sum over particles, in 1/r_e per bin.
/// Throws PoleError if |chi| <= 1e-9.
std::vector<double> singlet_density(const SymmetrizationResult& result, std::size_t level,
                                    Statistics stats);

/// <phi^{+-}_l|H|phi^{+-}_l> evaluated from the permutation sum; equals E_l.
double symmetrized_energy(const SymmetrizationResult& result, const LevelTable& table,
                          std::size_t level, Statistics stats);

}  // namespace hcrystal
