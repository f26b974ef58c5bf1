#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcrystal/error.hpp"
#include "hcrystal/spin_pair.hpp"

using namespace hcrystal;

namespace {

const SpinPair kSpins[] = {{Spin::up, Spin::up}, {Spin::up, Spin::down}, {Spin::down, Spin::up}, {Spin::down, Spin::down}};
const Statistics kStats[] = {Statistics::boson, Statistics::fermion};

bool excluded(const PairState& st) { return st.s.aligned() && st.n[0] == st.n[1]; }

std::vector<double> positions() {
  std::vector<double> q;
  for (double x = -3.0; x <= 3.0; x += 0.5) q.push_back(x);
  return q;
}

}  // namespace

TEST_CASE("spin and pair factors") {
  CHECK(spin_chi({Spin::up, Spin::up}, Statistics::boson) == 2);
  CHECK(spin_chi({Spin::up, Spin::up}, Statistics::fermion) == 0);
  CHECK(spin_chi({Spin::up, Spin::down}, Statistics::fermion) == 1);
  CHECK(position_chi({3, 3}, Statistics::boson) == 2);
  CHECK(position_chi({3, 1}, Statistics::fermion) == 1);
  for (const auto& s : kSpins) {
    // direct signed sum over the two permutations of <s'|s>
    for (auto st : kStats) {
      const int sign = st == Statistics::boson ? 1 : -1;
      const int direct = 1 + sign * ((s.first == s.second) ? 1 : 0);
      CHECK(spin_chi(s, st) == direct);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const PairState ps{{a, b}, s};
        for (auto st : kStats) {
          const int want = 1 + (st == Statistics::boson ? 1 : -1) * ((a == b && s.aligned()) ? 1 : 0);
          CHECK(pair_chi(ps, st) == want);
          CHECK(factorized_chi(ps, st) == 2 * pair_chi(ps, st));
        }
      }
  }
}

TEST_CASE("exact and factorized forms agree pointwise") {
  const auto qs = positions();
  for (const auto& s : kSpins)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const PairState ps{{a, b}, s};
        for (auto st : kStats) {
          if (st == Statistics::fermion && excluded(ps)) {
            CHECK_THROWS_AS(exact_symmetrized(ps, {}, st), ExclusionError);
            CHECK_THROWS_AS(factorized_symmetrized(ps, {}, st), ExclusionError);
            continue;
          }
          const double sign = st == Statistics::boson ? 1.0 : -1.0;
          for (const auto& sigma : kSpins)
            for (double q1 : qs)
              for (double q2 : qs) {
                const PairPoint x{{q1, q2}, sigma};
                const double e = exact_symmetrized(ps, x, st);
                CHECK(std::abs(e - factorized_symmetrized(ps, x, st)) < 1e-12);
                CHECK(std::abs(exact_symmetrized(ps, x.swapped(), st) - sign * e) < 1e-12);
                CHECK(std::abs(factorized_symmetrized(ps, x.swapped(), st) - sign * e) < 1e-12);
              }
        }
      }
}

TEST_CASE("boson pair is normalized") {
  const PairState ps{{0, 2}, {Spin::up, Spin::down}};
  const double h = 0.05;
  std::vector<double> grid;
  for (double x = -10.0; x <= 10.0 + 1e-9; x += h) grid.push_back(x);
  double sum = 0;
  for (const auto& sigma : kSpins)
    for (double q1 : grid)
      for (double q2 : grid) {
        const double v = exact_symmetrized(ps, {{q1, q2}, sigma}, Statistics::boson);
        sum += v * v * h * h;
      }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fermion classification") {
  CHECK(classify_state({{1, 1}, {Spin::up, Spin::down}}) == PairClass::singlet_like);
  CHECK(classify_state({{0, 2}, {Spin::up, Spin::up}}) == PairClass::triplet_like);
  CHECK(classify_state({{1, 1}, {Spin::up, Spin::up}}) == PairClass::excluded);
  CHECK(std::string(to_string(PairClass::excluded)) == "excluded");
}
