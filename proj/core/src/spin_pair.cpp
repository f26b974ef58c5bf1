#include "hcrystal/spin_pair.hpp"

#include <cmath>
#include <numbers>

#include "hcrystal/error.hpp"
#include "hcrystal/wavefunctions.hpp"

namespace hcrystal {

namespace {

int sign_of(Statistics stats) { return stats == Statistics::boson ? 1 : -1; }

double spin_basis(const SpinPair& s, const SpinPair& sigma) {
  return (s.first == sigma.first && s.second == sigma.second) ? 1.0 : 0.0;
}

double position_basis(const std::array<int, 2>& n, const std::array<double, 2>& q) {
  return hermite_function(n[0], q[0]) * hermite_function(n[1], q[1]);
}

void check_allowed(const PairState& state, Statistics stats) {
  if (pair_chi(state, stats) == 0) {
    throw ExclusionError("two fermions cannot share both spin and position state");
  }
}

}  // namespace

int spin_chi(const SpinPair& s, Statistics stats) { return 1 + sign_of(stats) * (s.aligned() ? 1 : 0); }

int position_chi(const std::array<int, 2>& n, Statistics stats) {
  return 1 + sign_of(stats) * (n[0] == n[1] ? 1 : 0);
}

int pair_chi(const PairState& state, Statistics stats) {
  const int both = (state.s.aligned() && state.n[0] == state.n[1]) ? 1 : 0;
  return 1 + sign_of(stats) * both;
}

int factorized_chi(const PairState& state, Statistics stats) {
  const int sp = spin_chi(state.s, Statistics::boson);
  const int sm = spin_chi(state.s, Statistics::fermion);
  const int np = position_chi(state.n, Statistics::boson);
  const int nm = position_chi(state.n, Statistics::fermion);
  return stats == Statistics::boson ? sp * np + sm * nm : sp * nm + sm * np;
}

double exact_symmetrized(const PairState& state, const PairPoint& x, Statistics stats) {
  check_allowed(state, stats);
  const PairPoint xs = x.swapped();
  const double direct = spin_basis(state.s, x.sigma) * position_basis(state.n, x.q);
  const double exchanged = spin_basis(state.s, xs.sigma) * position_basis(state.n, xs.q);
  return (direct + sign_of(stats) * exchanged) / std::sqrt(2.0 * pair_chi(state, stats));
}

double factorized_symmetrized(const PairState& state, const PairPoint& x, Statistics stats) {
  const int chi = factorized_chi(state, stats);
  if (chi == 0) throw ExclusionError("two fermions cannot share both spin and position state");
  const PairPoint xs = x.swapped();
  const double root_half = std::numbers::sqrt2 / 2.0;
  const double a = spin_basis(state.s, x.sigma);
  const double a_swap = spin_basis(state.s, xs.sigma);
  const double p = position_basis(state.n, x.q);
  const double p_swap = position_basis(state.n, xs.q);
  const double alpha_plus = root_half * (a + a_swap);
  const double alpha_minus = root_half * (a - a_swap);
  const double phi_plus = root_half * (p + p_swap);
  const double phi_minus = root_half * (p - p_swap);
  const double sum = stats == Statistics::boson ? alpha_plus * phi_plus + alpha_minus * phi_minus
                                                : alpha_plus * phi_minus + alpha_minus * phi_plus;
  return sum / std::sqrt(static_cast<double>(chi));
}

PairClass classify_state(const PairState& state) {
  const bool same_orbital = state.n[0] == state.n[1];
  if (same_orbital && state.s.aligned()) return PairClass::excluded;
  if (same_orbital) return PairClass::singlet_like;
  return PairClass::triplet_like;
}

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::singlet_like: return "singlet-like";
    case PairClass::triplet_like: return "triplet-like";
    case PairClass::excluded: return "excluded";
  }
  return "?";
}

}  // namespace hcrystal
