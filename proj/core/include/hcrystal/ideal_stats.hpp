#pragma once

// Symmetrization factors for states built from single-particle states, where
// the familiar occupancy rules must fall out of the permutation sum.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hcrystal/error.hpp"
#include "hcrystal/permutations.hpp"

namespace hcrystal {

/// Occupancy m_n of each single-particle state n = 0..states-1.
struct OccupancyState {
  std::vector<int> occupancies;
  int total = 0;
};

/// Labeled description: states[j] is the single-particle state of particle j.
class LabeledState {
 public:
  explicit LabeledState(std::vector<int> states);

  int particles() const { return static_cast<int>(states_.size()); }
  const std::vector<int>& states() const { return states_; }

  /// m_n = sum_j delta(n_j, n) over states 0..max(n_j).
  OccupancyState occupancy() const;

 private:
  std::vector<int> states_;
};

/// prod_n m_n!. Requires N <= 8.
std::int64_t chi_boson(const LabeledState& state);

/// 1 if every occupancy is at most one, else 0. Requires N <= 8.
std::int64_t chi_fermion(const LabeledState& state);

/// sum_P (+-1)^p <P n|n> evaluated permutation by permutation.
std::int64_t chi_permutation_sum(const LabeledState& state, Statistics stats);

/// The two routes to F = sum over allowed occupancy states of f(m).
template <typename T>
struct OccupancySums {
  T direct{};        // restricted sum over occupancy vectors
  T labeled_sum{};   // sum over all labeled states of chi(n) f(m(n))
  std::int64_t n_factorial = 1;

  T via_chi() const { return labeled_sum / static_cast<T>(n_factorial); }
};

namespace detail {

std::int64_t factorial(int n);

// Calls visit(m) for every occupancy vector over `states` states summing to n
// with each entry at most `cap`.
void for_each_occupancy(int states, int n, int cap,
                        const std::function<void(std::span<const int>)>& visit);

// Calls visit(labels) for every labeled state in [0, states)^n.
void for_each_labeled(int states, int n, const std::function<void(std::span<const int>)>& visit);

}  // namespace detail

/// Evaluates both routes for a state function f(m). Requires states <= 5 and N <= 4.
/// Bosons allow m_n up to N, fermions up to 1.
template <typename T>
OccupancySums<T> occupancy_sum_equivalence(const std::function<T(std::span<const int>)>& f,
                                           int n_states, int n_particles, Statistics stats) {
  if (n_states < 1 || n_states > 5 || n_particles < 1 || n_particles > 4) {
    throw ConfigError("occupancy sums need 1 <= states <= 5 and 1 <= N <= 4");
  }
  OccupancySums<T> out;
  out.n_factorial = detail::factorial(n_particles);
  const int cap = stats == Statistics::boson ? n_particles : 1;
  detail::for_each_occupancy(n_states, n_particles, cap,
                             [&](std::span<const int> m) { out.direct += f(m); });
  std::vector<int> m(n_states);
  detail::for_each_labeled(n_states, n_particles, [&](std::span<const int> labels) {
    LabeledState state({labels.begin(), labels.end()});
    const std::int64_t chi =
        stats == Statistics::boson ? chi_boson(state) : chi_fermion(state);
    if (chi == 0) return;
    std::fill(m.begin(), m.end(), 0);
    for (int n : labels) ++m[n];
    out.labeled_sum += static_cast<T>(chi) * f(m);
  });
  return out;
}

}  // namespace hcrystal
