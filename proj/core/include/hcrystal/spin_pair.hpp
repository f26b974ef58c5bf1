#pragma once

// Two spin-1/2 particles: exact symmetrization of spin-position basis functions
// against the factorized sum of products of separately symmetrized spin and
// position functions. Position functions are single-oscillator Hermite functions.

#include <array>

#include "hcrystal/permutations.hpp"

namespace hcrystal {

/// z-component of a spin-1/2, stored as 2s.
enum class Spin : int { down = -1, up = 1 };

struct SpinPair {
  Spin first = Spin::up;
  Spin second = Spin::up;
  bool aligned() const { return first == second; }
};

/// Single-particle position states n and spin labels s of the two particles.
struct PairState {
  std::array<int, 2> n{0, 0};
  SpinPair s;
};

/// A point x = (q_1, sigma_1; q_2, sigma_2).
struct PairPoint {
  std::array<double, 2> q{0.0, 0.0};
  SpinPair sigma;

  PairPoint swapped() const { return {{q[1], q[0]}, {sigma.second, sigma.first}}; }
};

/// chi_s = 1 +- delta(s1, s2).
int spin_chi(const SpinPair& s, Statistics stats);
/// chi_n = 1 +- delta(n1, n2) for orthonormal single-particle states.
int position_chi(const std::array<int, 2>& n, Statistics stats);
/// chi_{n,s} = 1 +- delta(s1,s2) delta(n1,n2), normalizing the exact form.
int pair_chi(const PairState& state, Statistics stats);
/// Normalization of the factorized form, built from the un-normalized factors.
int factorized_chi(const PairState& state, Statistics stats);

/// (2 chi)^{-1/2} [alpha_s(sigma) phi_n(q) +- alpha_s(sigma') phi_n(q')].
/// Throws ExclusionError for fermions with s1 = s2 and n1 = n2.
double exact_symmetrized(const PairState& state, const PairPoint& x, Statistics stats);

/// chi~^{-1/2} [alpha~+ phi~(+-) + alpha~- phi~(-+)] with un-normalized tilde factors.
/// Throws ExclusionError for fermions with s1 = s2 and n1 = n2.
double factorized_symmetrized(const PairState& state, const PairPoint& x, Statistics stats);

enum class PairClass { singlet_like, triplet_like, excluded };

/// Fermion pair classification: equal orbitals force opposite spins (singlet-like),
/// distinct orbitals admit the triplet, equal orbitals with equal spins are excluded.
PairClass classify_state(const PairState& state);

const char* to_string(PairClass c);

}  // namespace hcrystal
