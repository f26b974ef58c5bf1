#include <doctest.h>

#include <cmath>
#include <cstring>

#include "hcrystal/error.hpp"
#include "hcrystal/oracle.hpp"
#include "hcrystal/wavefunctions.hpp"

using namespace hcrystal;

TEST_CASE("dense eigensolver") {
  const auto m = build_potential_matrix(CrystalParams(2, 1.0, 1.0, 1.0));
  const auto e = numeric_eigen(m);
  REQUIRE(e.dimension == 2);
  CHECK(e.values[0] == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(-2.0).epsilon(1e-14));
  for (int n : {3, 17, 64}) {
    const auto mm = build_potential_matrix(CrystalParams(n, 0.3, 1.0, 1.0));
    CHECK(eigen_residual(mm, numeric_eigen(mm)) < 1e-10);
  }
  CHECK_THROWS_AS(numeric_eigen(PotentialMatrix(65, -2.0)), ConfigError);
}

TEST_CASE("Monte Carlo overlap") {
  const CrystalParams p(2, 0.0, 1.0, 0.1);
  const auto id = mc_overlap({2, 1}, Permutation::identity(2), p, 200'000, 17);
  CHECK(std::abs(id.estimate - 1.0) < 3 * id.std_error);
  CHECK(id.samples == 200'000);
  CHECK(id.seed == 17);

  const auto a = mc_overlap({1, 0}, Permutation({1, 0}), p, 50'000, 99);
  const auto b = mc_overlap({1, 0}, Permutation({1, 0}), p, 50'000, 99);
  CHECK(std::memcmp(&a.estimate, &b.estimate, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0);
  const auto c = mc_overlap({1, 0}, Permutation({1, 0}), p, 50'000, 100);
  CHECK(a.estimate != c.estimate);
  CHECK_THROWS_AS(mc_overlap({0, 0}, Permutation({1, 0}), p, 100, 1), ConfigError);
}

TEST_CASE("exhaustive enumeration") {
  const auto s = diagonalize(CrystalParams(1, 1.0, 1.0, 1.0));
  const auto t = exhaustive_levels(s, 99, 100);
  REQUIRE(t.size() == 100);
  for (std::size_t l = 0; l < t.size(); ++l) CHECK(t[l].quanta[0] == static_cast<int>(l));
  CHECK(t[1].energy - t[0].energy == doctest::Approx(t[50].energy - t[49].energy));

  const auto s4 = diagonalize(CrystalParams(4, 1.0, 1.0, 1.0));
  const auto t4 = exhaustive_levels(s4, 10, 50);
  CHECK(t4[0].quanta == std::vector<int>(4, 0));
  CHECK_THROWS_AS(exhaustive_levels(s4, 3, 5000), ConfigError);
  CHECK_THROWS_AS(exhaustive_levels(s4, 200, 10), ResourceError);
}

TEST_CASE("extended precision Hermite functions") {
  CHECK(hermite_function_extended(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(hermite_function_extended(1, 0.0) == 0.0);
  for (int l : {2, 5, 11, 30}) {
    for (double x : {-1.7, 0.25, 2.9}) {
      CHECK(hermite_function_extended(l, x) == doctest::Approx(hermite_function(l, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("reports") {
  const auto a = absolute_report("x", 1.0, 1.1, 0.2);
  CHECK(a.pass);
  CHECK(a.discrepancy == doctest::Approx(0.1));
  const auto r = relative_report("y", 1.0, 2.0, 0.1);
  CHECK_FALSE(r.pass);
  CHECK(r.discrepancy == doctest::Approx(0.5));
}

TEST_CASE("full oracle suite passes") {
  OracleSuiteOptions o;
  o.mc_samples = 1'000'000;
  const auto reports = run_oracle_suite(o);
  CHECK(reports.size() >= 6);
  for (const auto& r : reports) {
    INFO(r.quantity << " value " << r.value << " oracle " << r.oracle);
    CHECK(r.pass);
  }
}
