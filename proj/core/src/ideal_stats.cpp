#include "hcrystal/ideal_stats.hpp"

#include <algorithm>

namespace hcrystal {

namespace {

void check_size(const LabeledState& state) {
  if (state.particles() < 1 || state.particles() > 8) {
    throw ConfigError("labeled states must hold 1..8 particles");
  }
}

}  // namespace

LabeledState::LabeledState(std::vector<int> states) : states_(std::move(states)) {
  for (int n : states_)
    if (n < 0) throw ConfigError("single-particle state labels must be >= 0");
}

OccupancyState LabeledState::occupancy() const {
  OccupancyState occ;
  const int top = states_.empty() ? -1 : *std::max_element(states_.begin(), states_.end());
  occ.occupancies.assign(top + 1, 0);
  for (int n : states_) ++occ.occupancies[n];
  occ.total = particles();
  return occ;
}

std::int64_t chi_boson(const LabeledState& state) {
  check_size(state);
  std::int64_t chi = 1;
  for (int m : state.occupancy().occupancies) chi *= detail::factorial(m);
  return chi;
}

std::int64_t chi_fermion(const LabeledState& state) {
  check_size(state);
  const auto occ = state.occupancy().occupancies;
  return std::all_of(occ.begin(), occ.end(), [](int m) { return m <= 1; }) ? 1 : 0;
}

std::int64_t chi_permutation_sum(const LabeledState& state, Statistics stats) {
  check_size(state);
  const auto& n = state.states();
  std::int64_t sum = 0;
  for (const auto& perm : enumerate_permutations(state.particles())) {
    // <P n|n> is one exactly when the permutation only moves particles within a state.
    bool same = true;
    for (int j = 0; j < perm.size() && same; ++j) same = n[perm.image(j)] == n[j];
    if (same) sum += perm.sign(stats);
  }
  return sum;
}

namespace detail {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

namespace {

void occupancy_rec(int states, int remaining, int cap, std::vector<int>& m, int pos,
                   const std::function<void(std::span<const int>)>& visit) {
  if (pos == states - 1) {
    if (remaining > cap) return;
    m[pos] = remaining;
    visit(m);
    return;
  }
  for (int k = 0; k <= std::min(cap, remaining); ++k) {
    m[pos] = k;
    occupancy_rec(states, remaining - k, cap, m, pos + 1, visit);
  }
}

}  // namespace

void for_each_occupancy(int states, int n, int cap,
                        const std::function<void(std::span<const int>)>& visit) {
  std::vector<int> m(states, 0);
  occupancy_rec(states, n, cap, m, 0, visit);
}

void for_each_labeled(int states, int n, const std::function<void(std::span<const int>)>& visit) {
  std::vector<int> labels(n, 0);
  while (true) {
    visit(labels);
    int k = 0;
    while (k < n && ++labels[k] == states) labels[k++] = 0;
    if (k == n) return;
  }
}

}  // namespace detail

}  // namespace hcrystal
