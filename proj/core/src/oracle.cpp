#include "hcrystal/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hcrystal/error.hpp"
#include "hcrystal/symmetrization.hpp"
#include "hcrystal/wavefunctions.hpp"

namespace hcrystal {

OracleReport absolute_report(std::string quantity, double value, double oracle, double tolerance) {
  OracleReport r{std::move(quantity), value, oracle, std::abs(value - oracle), tolerance, false};
  r.pass = r.discrepancy <= r.tolerance;
  return r;
}

OracleReport relative_report(std::string quantity, double value, double oracle, double tolerance) {
  OracleReport r{std::move(quantity), value, oracle, 0.0, tolerance, false};
  const double diff = std::abs(value - oracle);
  r.discrepancy = oracle == 0.0 ? diff : diff / std::abs(oracle);
  r.pass = r.discrepancy <= r.tolerance;
  return r;
}

namespace {

// Discrepancy measured in standard errors of the Monte Carlo estimate.
OracleReport sigma_report(std::string quantity, double value, const McEstimate& mc, double sigmas) {
  OracleReport r{std::move(quantity), value, mc.estimate, 0.0, sigmas, false};
  const double diff = std::abs(value - mc.estimate);
  if (mc.std_error > 0) {
    r.discrepancy = diff / mc.std_error;
  } else {
    r.discrepancy = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  r.pass = r.discrepancy <= r.tolerance;
  return r;
}

// log of the Hermite-function normalization sqrt(2^l l! sqrt(pi)).
double log_norm(int l) {
  return 0.5 * (l * std::numbers::ln2 + std::lgamma(l + 1.0) + 0.5 * std::log(std::numbers::pi));
}

}  // namespace

EigenPairs numeric_eigen(const PotentialMatrix& matrix) {
  const int n = matrix.dimension();
  if (n < 1 || n > 64) throw ConfigError("numeric_eigen supports 1 <= N <= 64", "n_particles");
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = matrix(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");

  EigenPairs out;
  out.dimension = n;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out.vectors[static_cast<std::size_t>(i) * n + k] = solver.eigenvectors()(i, k);
  return out;
}

double eigen_residual(const PotentialMatrix& matrix, const EigenPairs& pairs) {
  const int n = pairs.dimension;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      double au = 0.0;
      for (int j = 0; j < n; ++j) au += matrix(i, j) * pairs.vector(j, k);
      worst = std::max(worst, std::abs(au - pairs.values[k] * pairs.vector(i, k)));
    }
  }
  return worst;
}

McEstimate mc_overlap(const std::vector<int>& quanta, const Permutation& perm,
                      const CrystalParams& params, std::size_t samples, std::uint64_t seed) {
  if (samples < 10'000) throw ConfigError("Monte Carlo needs at least 1e4 samples", "samples");
  const int n = params.n_particles();
  if (static_cast<int>(quanta.size()) != n || perm.size() != n) {
    throw ConfigError("quanta and permutation must match the particle count");
  }

  // Modes in ascending frequency: the most negative eigenvalue is the stiffest mode.
  const EigenPairs eig = numeric_eigen(build_potential_matrix(params));
  const double eta = params.units().quantum_ratio();
  std::vector<double> s(n), u(static_cast<std::size_t>(n) * n), site(n);
  for (int m = 0; m < n; ++m) {
    const int k = n - 1 - m;
    s[m] = std::sqrt(std::sqrt(-params.lambda() * eig.values[k]) / eta);
    for (int j = 0; j < n; ++j) u[static_cast<std::size_t>(j) * n + m] = eig.vector(j, k);
  }
  for (int j = 0; j < n; ++j) site[j] = params.site(j + 1);

  double log_const = 0.0;
  for (int m = 0; m < n; ++m) log_const += -2.0 * log_norm(quanta[m]) + 0.5 * std::log(std::numbers::pi);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::vector<double> Q(n), q(n), Qp(n);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (int m = 0; m < n; ++m) Q[m] = gauss(rng);
    for (int j = 0; j < n; ++j) {
      double d = 0.0;
      for (int m = 0; m < n; ++m) d += u[static_cast<std::size_t>(j) * n + m] * Q[m] / s[m];
      q[j] = site[j] + d;
    }
    double poly = 1.0, expo = log_const;
    for (int m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += u[static_cast<std::size_t>(j) * n + m] * (q[perm.image(j)] - site[j]);
      Qp[m] = s[m] * acc;
      poly *= std::hermite(static_cast<unsigned>(quanta[m]), Qp[m]) *
              std::hermite(static_cast<unsigned>(quanta[m]), Q[m]);
      expo += 0.5 * (Q[m] * Q[m] - Qp[m] * Qp[m]);
    }
    const double f = poly * std::exp(expo);
    const double delta = f - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (f - mean);
  }
  McEstimate out;
  out.estimate = mean;
  out.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  out.samples = samples;
  out.seed = seed;
  return out;
}

LevelTable exhaustive_levels(const ModeSpectrum& spectrum, int quanta_cap, std::size_t l_max) {
  const int n = spectrum.size();
  if (quanta_cap < 0) throw ConfigError("quanta cap must be >= 0");
  if (l_max == 0) throw ConfigError("l_max must be >= 1", "l_max");
  if (std::pow(quanta_cap + 1.0, n) > 1e8) throw ResourceError("exhaustive enumeration exceeds 1e8 states");
  const auto& omega = spectrum.omega();

  const std::size_t total = static_cast<std::size_t>(std::llround(std::pow(quanta_cap + 1.0, n)));
  std::vector<int> flat(total * n);
  std::vector<double> energy(total);
  std::vector<int> l(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double e = 0.0;
    for (int m = 0; m < n; ++m) e += (l[m] + 0.5) * omega[m];
    energy[idx] = e;
    std::copy(l.begin(), l.end(), flat.begin() + static_cast<std::ptrdiff_t>(idx * n));
    for (int m = n - 1; m >= 0; --m) {
      if (++l[m] <= quanta_cap) break;
      l[m] = 0;
    }
  }

  auto quanta_of = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * n); };
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(l_max, total);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (energy[a] != energy[b]) return energy[a] < energy[b];
                      return std::lexicographical_compare(quanta_of(a), quanta_of(a) + n, quanta_of(b),
                                                          quanta_of(b) + n);
                    });

  // Any state outside the box has at least cap+1 quanta in some mode.
  const double outside = spectrum.ground_energy() + (quanta_cap + 1) * *std::min_element(omega.begin(), omega.end());
  if (keep < l_max || energy[order[keep - 1]] >= outside) {
    throw ConfigError("quanta cap too small for a complete enumeration");
  }

  std::vector<Level> levels(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    levels[i].quanta.assign(quanta_of(order[i]), quanta_of(order[i]) + n);
    levels[i].energy = energy[order[i]];
  }
  return LevelTable(std::move(levels));
}

double hermite_function_extended(int degree, double x) {
  using boost::multiprecision::cpp_bin_float;
  using boost::multiprecision::digit_base_2;
  using Real = boost::multiprecision::number<cpp_bin_float<256, digit_base_2>>;
  if (degree < 0) throw ConfigError("Hermite degree must be >= 0");

  // H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)
  const Real two_x = 2 * Real(x);
  Real factorial_n = 1;
  for (int k = 2; k <= degree; ++k) factorial_n *= k;
  Real sum = 0;
  for (int m = 0; 2 * m <= degree; ++m) {
    Real denom = 1;
    for (int k = 2; k <= m; ++k) denom *= k;
    for (int k = 2; k <= degree - 2 * m; ++k) denom *= k;
    Real term = pow(two_x, degree - 2 * m) / denom;
    sum += (m % 2 == 0) ? term : Real(-term);
  }
  const Real h = factorial_n * sum;
  const Real norm = sqrt(pow(Real(2), degree) * factorial_n * sqrt(boost::math::constants::pi<Real>()));
  const Real value = h * exp(-Real(x) * Real(x) / 2) / norm;
  return static_cast<double>(value);
}

std::vector<OracleReport> run_oracle_suite(const OracleSuiteOptions& options) {
  std::vector<OracleReport> reports;

  {
    const CrystalParams params(4, 1.0, 1.0, 1.0);
    const ModeSpectrum spectrum(params);
    const PotentialMatrix matrix = build_potential_matrix(params);
    const EigenPairs eig = numeric_eigen(matrix);
    double mu_err = 0.0, omega_err = 0.0;
    for (int n = 0; n < 4; ++n) {
      const double mu = eig.values[3 - n];
      mu_err = std::max(mu_err, std::abs(spectrum.mu()[n] - mu));
      omega_err = std::max(omega_err, std::abs(spectrum.omega()[n] - std::sqrt(-params.lambda() * mu)));
    }
    reports.push_back(absolute_report("spectrum N=4 max |mu - mu_numeric|", mu_err, 0.0, 1e-10));
    reports.push_back(absolute_report("spectrum N=4 max |omega - omega_numeric|", omega_err, 0.0, 1e-10));
    reports.push_back(absolute_report("eigenvector residual N=4", eigen_residual(matrix, eig), 0.0, 1e-10));

    const LevelTable table = build_level_table(spectrum, 5000);
    const LevelTable brute = exhaustive_levels(spectrum, 40, 5000);
    double mismatches = 0;
    for (std::size_t l = 0; l < table.size(); ++l) {
      if (table[l].quanta != brute[l].quanta || table[l].energy != brute[l].energy) ++mismatches;
    }
    reports.push_back(absolute_report("level table N=4 l_max=5000 mismatches", mismatches, 0.0, 0.0));
  }

  reports.push_back(relative_report("hermite function degree 60 at 1.3", hermite_function(60, 1.3),
                                    hermite_function_extended(60, 1.3), 1e-10));

  {
    const CrystalParams params(2, 0.0, 1.0, 0.1);
    const ModeSpectrum spectrum(params);
    const LevelTable table = build_level_table(spectrum, 3);
    const PermutationSet perms = enumerate_permutations(2);
    SymmetrizationOptions opts;
    opts.workers = options.workers;
    const SymmetrizationResult result =
        compute_overlaps(table, perms, QuadratureGrid::standard(2), spectrum, params, opts);
    const std::size_t id = perms.identity_index();
    const std::size_t swap = 1 - id;
    for (std::size_t l = 0; l < table.size(); ++l) {
      const auto& qn = table[l].quanta;
      const std::string label = "(" + std::to_string(qn[0]) + "," + std::to_string(qn[1]) + ")";
      const McEstimate mc_swap = mc_overlap(table[l].quanta, perms[swap], params, options.mc_samples,
                                            options.seed + l);
      reports.push_back(sigma_report("N=2 swap overlap level " + label + " [sigma]",
                                     result.overlap(l, swap), mc_swap, 3.0));
    }
    const McEstimate mc_id = mc_overlap(table[1].quanta, perms[id], params, options.mc_samples,
                                        options.seed + 100);
    reports.push_back(sigma_report("N=2 identity overlap excited level [sigma]", result.overlap(1, id),
                                   mc_id, 3.0));
  }
  return reports;
}

}  // namespace hcrystal
