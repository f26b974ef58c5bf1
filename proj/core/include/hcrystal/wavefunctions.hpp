#pragma once

#include <span>
#include <vector>

#include "hcrystal/permutations.hpp"
#include "hcrystal/spectrum.hpp"

namespace hcrystal {

/// Normalized Hermite functions phi_l(x) = (2^l l! sqrt(pi))^{-1/2} e^{-x^2/2} H_l(x),
/// evaluated with the normalized three-term recurrence
///   phi_{l+1} = sqrt(2/(l+1)) x phi_l - sqrt(l/(l+1)) phi_{l-1}.
/// The Gaussian factor is carried as a separate exponent that is folded back in
/// only when the mantissa is rescaled, so neither e^{-x^2/2} underflow nor H_l
/// overflow limits the reachable degree.
class HermiteEvaluator {
 public:
  explicit HermiteEvaluator(int max_degree);

  int max_degree() const { return static_cast<int>(up_.size()); }

  /// Writes phi_0(x) .. phi_{out.size()-1}(x); out.size() - 1 must not exceed max_degree().
  void fill(double x, std::span<double> out) const;

  double operator()(int degree, double x) const;

 private:
  std::vector<double> up_;    // sqrt(2/(l+1))
  std::vector<double> down_;  // sqrt(l/(l+1))
};

/// Single value phi_l(x); builds a throwaway evaluator.
double hermite_function(int degree, double x);

/// A multi-mode product eigenfunction phi_l(Q) = prod_n phi_{l_n}(Q_n).
struct EigenfunctionContext {
  const ModeSpectrum& spectrum;
  const Level& level;
};

double eigenfunction_value(const EigenfunctionContext& ctx, std::span<const double> modes);

/// Mode amplitudes of the permuted configuration: Q' = scale * X^T (P q - lattice)
/// with q = from_modes(Q). Positions are permuted; the lattice is not.
std::vector<double> permuted_mode_amplitudes(std::span<const double> modes,
                                             const Permutation& perm,
                                             const ModeSpectrum& spectrum);

}  // namespace hcrystal
