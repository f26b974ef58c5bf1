#include <doctest.h>

#include <random>

#include "hcrystal/ideal_stats.hpp"

using namespace hcrystal;

TEST_CASE("chi examples") {
  CHECK(chi_boson(LabeledState({1, 2, 3})) == 1);
  CHECK(chi_boson(LabeledState({5, 5, 7})) == 2);
  CHECK(chi_boson(LabeledState({4, 4, 4})) == 6);
  CHECK(chi_fermion(LabeledState({1, 2, 3})) == 1);
  CHECK(chi_fermion(LabeledState({5, 5, 7})) == 0);
  CHECK(chi_permutation_sum(LabeledState({2, 2}), Statistics::fermion) == 0);
  CHECK(chi_permutation_sum(LabeledState({2, 2}), Statistics::boson) == 2);
  const auto occ = LabeledState({5, 5, 7}).occupancy();
  CHECK(occ.total == 3);
  CHECK(occ.occupancies[5] == 2);
  CHECK(occ.occupancies[7] == 1);
  CHECK(occ.occupancies[0] == 0);
}

TEST_CASE("closed forms match signed permutation sums") {
  for (int n = 1; n <= 5; ++n) {
    for (int states = 1; states <= 4; ++states) {
      detail::for_each_labeled(states, n, [&](std::span<const int> labels) {
        const LabeledState st({labels.begin(), labels.end()});
        CHECK(chi_boson(st) == chi_permutation_sum(st, Statistics::boson));
        CHECK(chi_fermion(st) == chi_permutation_sum(st, Statistics::fermion));
        const auto occ = st.occupancy();
        bool repeat = false;
        for (int m : occ.occupancies) repeat = repeat || m >= 2;
        if (repeat) CHECK(chi_permutation_sum(st, Statistics::fermion) == 0);
      });
    }
  }
}

TEST_CASE("parity balance within a block") {
  for (int m = 2; m <= 6; ++m) {
    const auto [even, odd] = parity_census(m);
    CHECK(even == odd);
    CHECK(even + odd == detail::factorial(m));
  }
}

TEST_CASE("counting examples") {
  const std::function<std::int64_t(std::span<const int>)> one = [](std::span<const int>) { return std::int64_t{1}; };
  const auto b = occupancy_sum_equivalence(one, 3, 2, Statistics::boson);
  CHECK(b.direct == 6);
  CHECK(b.via_chi() == 6);
  const auto f = occupancy_sum_equivalence(one, 3, 2, Statistics::fermion);
  CHECK(f.direct == 3);
  CHECK(f.via_chi() == 3);
}

TEST_CASE("occupancy energies by both routes") {
  const std::vector<double> eps{0.3, 1.7, 2.2, 5.1, 0.9};
  const std::function<double(std::span<const int>)> energy = [&](std::span<const int> m) {
    double e = 0;
    for (std::size_t k = 0; k < m.size(); ++k) e += m[k] * eps[k];
    return e;
  };
  for (auto st : {Statistics::boson, Statistics::fermion}) {
    const auto r = occupancy_sum_equivalence(energy, 5, 3, st);
    CHECK(std::abs(r.direct - r.via_chi()) < 1e-12 * std::max(1.0, std::abs(r.direct)));
  }
}

TEST_CASE("random integer functions agree exactly") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int states = 1 + static_cast<int>(rng() % 5);
    const int n = 1 + static_cast<int>(rng() % 4);
    // f tabulated on occupancy vectors through a random hash
    const std::uint64_t salt = rng();
    const std::function<std::int64_t(std::span<const int>)> f = [salt](std::span<const int> m) {
      std::uint64_t h = salt;
      for (int v : m) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001b3ULL;
      return static_cast<std::int64_t>(h % 2001) - 1000;
    };
    for (auto st : {Statistics::boson, Statistics::fermion}) {
      const auto r = occupancy_sum_equivalence(f, states, n, st);
      CHECK(r.labeled_sum % r.n_factorial == 0);
      CHECK(r.direct == r.via_chi());
    }
  }
}

TEST_CASE("bounds") {
  const std::function<int(std::span<const int>)> one = [](std::span<const int>) { return 1; };
  CHECK_THROWS_AS(occupancy_sum_equivalence(one, 6, 2, Statistics::boson), ConfigError);
  CHECK_THROWS_AS(occupancy_sum_equivalence(one, 3, 5, Statistics::boson), ConfigError);
  CHECK_THROWS_AS(chi_boson(LabeledState(std::vector<int>(9, 0))), ConfigError);
}
