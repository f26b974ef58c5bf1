#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hcrystal/error.hpp"
#include "hcrystal/model.hpp"
#include "hcrystal/permutations.hpp"

using namespace hcrystal;

namespace {

std::vector<double> jitter(const CrystalParams& p, std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  auto q = p.lattice();
  for (auto& x : q) x += u(rng);
  return q;
}

}  // namespace

TEST_CASE("potential matrix diagonal and shape") {
  CHECK(CrystalParams(4, 1.0, 1.0, 1.0).diagonal_value() == -3.0);
  CHECK(CrystalParams(4, 0.0, 0.7, 1.0).diagonal_value() == -2.0);

  const auto m = build_potential_matrix(CrystalParams(4, 1.0, 1.0, 1.0));
  REQUIRE(m.dimension() == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double want = i == j ? -3.0 : (std::abs(i - j) == 1 ? 1.0 : 0.0);
      CHECK(m(i, j) == want);
    }
  }
  const auto d = m.dense();
  CHECK(d.size() == 16);
  CHECK(d[1] == 1.0);
  CHECK(d[2] == 0.0);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(CrystalParams(0, 1, 1, 1), ConfigError);
  CHECK_THROWS_AS(CrystalParams(2, -1, 1, 1), ConfigError);
  CHECK_THROWS_AS(CrystalParams(2, 1, 0, 1), ConfigError);
  CHECK_THROWS_AS(CrystalParams(2, 1, 1, 0), ConfigError);
  const CrystalParams p(3, 1, 1, 1);
  const std::vector<double> short_q{1.0, 2.0};
  CHECK_THROWS_AS(potential_model_I(short_q, p), ConfigError);
  CHECK_THROWS_AS(thermal_wavelength(0.0, UnitSystem::neon()), ConfigError);
}

TEST_CASE("model I values") {
  const CrystalParams p(3, 0.5, 1.3, 1.0);
  CHECK(potential_model_I(p.lattice(), p) == 0.0);

  const CrystalParams one(1, 0.8, 1.5, 2.0);
  const double x = 0.3;
  const std::vector<double> q{one.site(1) + x};
  const double want = (0.5 * 0.8 * x * x + 1.5 * x * x) / one.units().quantum_ratio();
  CHECK(potential_model_I(q, one) == doctest::Approx(want).epsilon(1e-13));

  const std::vector<double> a{0.9, 2.3, 2.8};
  const std::vector<double> b{2.3, 0.9, 2.8};
  CHECK(potential_model_I(a, p) != doctest::Approx(potential_model_I(b, p)).epsilon(1e-6));
}

TEST_CASE("model II and III examples") {
  const CrystalParams p(3, 0.5, 1.3, 1.0);
  const auto lat = p.lattice();
  CHECK(potential_model_II(lat, p) == potential_model_I(lat, p));
  CHECK(potential_model_III(lat, p) == potential_model_I(lat, p));

  const std::vector<double> q{0.9, 2.3, 2.8};
  const std::vector<double> swapped{2.3, 0.9, 2.8};
  const std::vector<double> reversed{2.8, 2.3, 0.9};
  CHECK(potential_model_II(swapped, p) == doctest::Approx(potential_model_II(q, p)).epsilon(1e-14));
  CHECK(potential_model_II(reversed, p) == doctest::Approx(potential_model_II(q, p)).epsilon(1e-14));
  CHECK(potential_model_III(swapped, p) == doctest::Approx(potential_model_III(q, p)).epsilon(1e-14));
  // Ordered positions: the closest minimum is the identity assignment.
  CHECK(potential_model_III(q, p) == doctest::Approx(potential_model_I(q, p)).epsilon(1e-14));
}

TEST_CASE("models II and III are invariant under every permutation") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const CrystalParams p(n, 0.7, 1.1, 1.0);
    const auto perms = enumerate_permutations(n);
    for (int trial = 0; trial < 100; ++trial) {
      const auto q = jitter(p, rng, 0.9);
      const double u2 = potential_model_II(q, p);
      const double u3 = potential_model_III(q, p);
      for (const auto& perm : perms) {
        const auto pq = perm.apply(q);
        CHECK(std::abs(potential_model_II(pq, p) - u2) <= 1e-12 * std::max(1.0, u2));
        CHECK(std::abs(potential_model_III(pq, p) - u3) <= 1e-12 * std::max(1.0, u3));
      }
    }
  }
}

TEST_CASE("model I is asymmetric for almost every draw") {
  std::mt19937_64 rng(11);
  int differ = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const CrystalParams p(n, 0.7, 1.1, 1.0);
    const auto q = jitter(p, rng, 0.4);
    std::vector<int> map(n);
    for (int j = 0; j < n; ++j) map[j] = j;
    do {
      std::shuffle(map.begin(), map.end(), rng);
    } while (std::is_sorted(map.begin(), map.end()));
    const Permutation perm(map);
    if (potential_model_I(perm.apply(q), p) != potential_model_I(q, p)) ++differ;
  }
  CHECK(differ >= 0.99 * trials);
}

TEST_CASE("potentials are non-negative") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const CrystalParams p(1 + t % 6, 0.3 * (t % 4), 0.5 + 0.1 * (t % 7), 0.5 + 0.25 * (t % 5));
    const auto q = jitter(p, rng, 3.0);
    CHECK(potential_model_I(q, p) >= 0.0);
    CHECK(potential_model_II(q, p) >= 0.0);
    CHECK(potential_model_III(q, p) >= 0.0);
  }
}

TEST_CASE("neon units") {
  const auto neon = UnitSystem::neon();
  CHECK(neon.omega_lj() == doctest::Approx(3.29e12).epsilon(5e-3));
  const double lam = thermal_wavelength(1.0, neon);
  CHECK(lam == doctest::Approx(0.25).epsilon(0.02));
  CHECK(thermal_wavelength(4.0, neon) == doctest::Approx(2 * lam).epsilon(1e-14));
  CHECK_THROWS_AS(UnitSystem(-1, 1, 1, 1, 1), ConfigError);
}
