#include "hcrystal/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hcrystal/error.hpp"

namespace hcrystal {

UnitSystem::UnitSystem(double mass, double r_e, double epsilon, double hbar, double k_b)
    : mass_(mass), r_e_(r_e), epsilon_(epsilon), hbar_(hbar), k_b_(k_b) {
  if (!(mass > 0) || !(r_e > 0) || !(epsilon > 0) || !(hbar > 0) || !(k_b > 0)) {
    throw ConfigError("unit system constants must be strictly positive", "material");
  }
}

UnitSystem UnitSystem::neon() {
  return UnitSystem(3.35e-26, 3.13e-10, 4.93e-22, 1.054571817e-34, 1.380649e-23);
}

double UnitSystem::omega_lj() const { return std::sqrt(72.0 * epsilon_ / (mass_ * r_e_ * r_e_)); }

double UnitSystem::quantum_ratio() const { return hbar_ / (mass_ * omega_lj() * r_e_ * r_e_); }

CrystalParams::CrystalParams(int n_particles, double kappa, double lambda, double delta_q,
                             UnitSystem units)
    : n_(n_particles), kappa_(kappa), lambda_(lambda), delta_q_(delta_q), units_(units) {
  if (n_particles < 1) throw ConfigError("n_particles must be >= 1", "n_particles");
  if (!(kappa >= 0) || !std::isfinite(kappa)) throw ConfigError("kappa must be >= 0", "kappa");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw ConfigError("lambda must be > 0", "lambda");
  if (!(delta_q > 0) || !std::isfinite(delta_q)) {
    throw ConfigError("delta_q must be > 0", "delta_q");
  }
}

std::vector<double> CrystalParams::lattice() const {
  std::vector<double> sites(n_);
  for (int j = 0; j < n_; ++j) sites[j] = site(j + 1);
  return sites;
}

double PotentialMatrix::operator()(int row, int col) const {
  if (row == col) return diag_;
  if (row - col == 1 || col - row == 1) return 1.0;
  return 0.0;
}

std::vector<double> PotentialMatrix::dense() const {
  std::vector<double> m(static_cast<std::size_t>(dim_) * dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m[static_cast<std::size_t>(i) * dim_ + j] = (*this)(i, j);
  return m;
}

PotentialMatrix build_potential_matrix(const CrystalParams& params) {
  return PotentialMatrix(params.n_particles(), params.diagonal_value());
}

namespace {

void check_size(std::span<const double> q, const CrystalParams& params) {
  if (static_cast<int>(q.size()) != params.n_particles()) {
    throw ConfigError("position vector length must equal n_particles");
  }
}

// Harmonic energy of a displacement chain d_1..d_N with fixed walls, in hbar*omega_LJ.
double chain_energy(std::span<const double> d, const CrystalParams& params) {
  double site_term = 0.0;
  double spring_term = 0.0;
  double prev = 0.0;
  for (double dj : d) {
    site_term += dj * dj;
    spring_term += (dj - prev) * (dj - prev);
    prev = dj;
  }
  spring_term += prev * prev;
  const double u = 0.5 * params.kappa() * site_term + 0.5 * params.lambda() * spring_term;
  return u / params.units().quantum_ratio();
}

// Particle indices ordered by position; ties keep index order.
std::vector<int> rank_order(std::span<const double> q) {
  std::vector<int> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return q[a] < q[b]; });
  return order;
}

}  // namespace

double potential_model_I(std::span<const double> q, const CrystalParams& params) {
  check_size(q, params);
  std::vector<double> d(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) d[j] = q[j] - params.site(static_cast<int>(j) + 1);
  return chain_energy(d, params);
}

double potential_model_II(std::span<const double> q, const CrystalParams& params) {
  check_size(q, params);
  std::vector<double> sorted(q.begin(), q.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> d(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    d[j] = sorted[j] - params.site(static_cast<int>(j) + 1);
  }
  return chain_energy(d, params);
}

double potential_model_III(std::span<const double> q, const CrystalParams& params) {
  check_size(q, params);
  const int n = params.n_particles();
  // site_of[j]: lattice site (1-based) assigned to particle j by rank.
  const std::vector<int> order = rank_order(q);
  std::vector<int> site_of(n);
  for (int r = 0; r < n; ++r) site_of[order[r]] = r + 1;

  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = q[j] - params.site(site_of[j]);

  // Occupant of each site, with the walls (d = 0) at sites 0 and N+1.
  std::vector<double> d_at_site(n + 2, 0.0);
  for (int j = 0; j < n; ++j) d_at_site[site_of[j]] = d[j];

  double site_term = 0.0;
  for (double dj : d) site_term += dj * dj;
  double spring_term = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double diff = d_at_site[s + 1] - d_at_site[s];
    spring_term += diff * diff;
  }
  const double u = 0.5 * params.kappa() * site_term + 0.5 * params.lambda() * spring_term;
  return u / params.units().quantum_ratio();
}

double thermal_wavelength(double beta, const UnitSystem& units) {
  if (!(beta > 0)) throw ConfigError("beta must be > 0", "beta");
  return std::sqrt(2.0 * std::numbers::pi * units.quantum_ratio() * beta);
}

}  // namespace hcrystal
