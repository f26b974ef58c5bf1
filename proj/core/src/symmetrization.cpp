#include "hcrystal/symmetrization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>

#include "hcrystal/error.hpp"
#include "hcrystal/wavefunctions.hpp"

namespace hcrystal {

QuadratureGrid::QuadratureGrid(int points_per_axis, double spacing, int dimension)
    : points_(points_per_axis), spacing_(spacing), dim_(dimension) {
  if (points_ < 3 || points_ % 2 == 0) {
    throw ConfigError("grid points per axis must be odd and >= 3", "grid_points");
  }
  if (!(spacing_ > 0)) throw ConfigError("grid spacing must be > 0", "grid_spacing");
  if (dim_ < 1) throw ConfigError("grid dimension must be >= 1", "n_particles");
  const double edge = terminus();
  if (std::exp(-0.5 * edge * edge) > 1e-5) {
    throw ConfigError("grid terminus too close to the origin: exp(-Q_max^2/2) exceeds 1e-5",
                      "grid_spacing");
  }
}

double QuadratureGrid::total_points() const { return std::pow(static_cast<double>(points_), dim_); }

DensityBinning DensityBinning::for_crystal(const CrystalParams& params) {
  const double dq = params.delta_q();
  DensityBinning b;
  b.width = dq / 25.0;
  b.r_min = params.site(0) - 2.0 * dq;
  const double r_max = params.site(params.n_particles() + 1) + 2.0 * dq;
  b.bins = static_cast<int>(std::lround((r_max - b.r_min) / b.width));
  return b;
}

int DensityBinning::bin_of(double r) const {
  const double x = (r - r_min) / width;
  if (!(x >= 0.0) || x >= bins) return -1;
  return static_cast<int>(x);
}

SymmetrizationResult::SymmetrizationResult(std::size_t levels, std::vector<int> parities,
                                           std::vector<double> overlaps,
                                           std::optional<DensityBinning> binning,
                                           std::vector<double> density_plus,
                                           std::vector<double> density_minus)
    : levels_(levels),
      parities_(std::move(parities)),
      overlaps_(std::move(overlaps)),
      binning_(binning),
      density_plus_(std::move(density_plus)),
      density_minus_(std::move(density_minus)) {}

double SymmetrizationResult::chi(std::size_t level, Statistics stats) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < parities_.size(); ++p) {
    const double o = overlap(level, p);
    sum += (stats == Statistics::fermion && parities_[p] == 1) ? -o : o;
  }
  return sum;
}

std::vector<double> SymmetrizationResult::chi(Statistics stats) const {
  std::vector<double> out(levels_);
  for (std::size_t l = 0; l < levels_; ++l) out[l] = chi(l, stats);
  return out;
}

const DensityBinning& SymmetrizationResult::binning() const {
  if (!binning_) throw ConfigError("symmetrization result holds no density histograms");
  return *binning_;
}

double SymmetrizationResult::density_sum(std::size_t level, int bin, Statistics stats) const {
  const auto& b = binning();
  const auto& data = stats == Statistics::boson ? density_plus_ : density_minus_;
  return data[level * static_cast<std::size_t>(b.bins) + bin];
}

std::size_t estimate_memory(std::size_t levels, std::size_t perms, int bins, int workers) {
  const std::size_t per_copy = levels * perms + 2 * static_cast<std::size_t>(bins) * levels;
  return per_copy * sizeof(double) * static_cast<std::size_t>(workers + 2);
}

namespace {

// Everything that is fixed for the whole quadrature.
struct Setup {
  int n = 0;
  std::size_t levels = 0;
  std::size_t perms = 0;
  int stride = 0;                       // Hermite table length per mode
  double cutoff = 0.0;                  // |Q'| past which every tabulated phi_l is negligible
  std::vector<std::uint32_t> offsets;   // [level][mode] -> mode * stride + quanta
  std::vector<std::vector<double>> a;   // Q' = A Q + b, per permutation, row-major
  std::vector<std::vector<double>> b;
  std::vector<int> parity;
  std::vector<char> identity;
  std::vector<double> to_positions;     // q = lattice + C Q, row-major
  std::vector<double> lattice;
  std::vector<double> coords;
  std::vector<double> weights;
  int points = 0;
  bool density = false;
  DensityBinning binning;
};

struct Accumulator {
  std::vector<double> overlaps;  // [perm][level]
  std::vector<double> plus;      // [bin][level]
  std::vector<double> minus;     // [bin][level]

  void resize(const Setup& s) {
    overlaps.assign(s.perms * s.levels, 0.0);
    if (s.density) {
      plus.assign(static_cast<std::size_t>(s.binning.bins) * s.levels, 0.0);
      minus.assign(plus.size(), 0.0);
    }
  }
  void zero() {
    std::fill(overlaps.begin(), overlaps.end(), 0.0);
    std::fill(plus.begin(), plus.end(), 0.0);
    std::fill(minus.begin(), minus.end(), 0.0);
  }
  void add(const Accumulator& other) {
    for (std::size_t i = 0; i < overlaps.size(); ++i) overlaps[i] += other.overlaps[i];
    for (std::size_t i = 0; i < plus.size(); ++i) plus[i] += other.plus[i];
    for (std::size_t i = 0; i < minus.size(); ++i) minus[i] += other.minus[i];
  }
};

struct Scratch {
  std::vector<double> table;
  std::vector<double> phi0;
  std::vector<double> even;
  std::vector<double> odd;
  std::vector<double> modes;
  std::vector<double> permuted;

  explicit Scratch(const Setup& s)
      : table(static_cast<std::size_t>(s.n) * s.stride),
        phi0(s.levels),
        even(s.levels),
        odd(s.levels),
        modes(s.n),
        permuted(s.n) {}
};

Setup make_setup(const LevelTable& table, const PermutationSet& perms, const QuadratureGrid& grid,
                 const ModeSpectrum& spectrum, const SymmetrizationOptions& options,
                 const CrystalParams& params) {
  Setup s;
  s.n = spectrum.size();
  s.levels = table.size();
  s.perms = perms.size();
  const auto max_q = table.max_quanta();
  s.stride = *std::max_element(max_q.begin(), max_q.end()) + 1;
  // Well past the outermost classical turning point sqrt(2l+1) the functions decay like e^{-x^2/2}.
  s.cutoff = std::sqrt(2.0 * s.stride + 1.0) + 12.0;

  s.offsets.resize(s.levels * s.n);
  for (std::size_t l = 0; l < s.levels; ++l)
    for (int m = 0; m < s.n; ++m)
      s.offsets[l * s.n + m] = static_cast<std::uint32_t>(m * s.stride + table[l].quanta[m]);

  const int n = s.n;
  const auto& scale = spectrum.scale();
  s.lattice = spectrum.lattice();
  s.to_positions.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) s.to_positions[j * n + m] = spectrum.x(j, m) / scale[m];

  for (const auto& perm : perms) {
    // A = S X^T P X S^{-1},  b = S X^T (P lattice - lattice).
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> b(n, 0.0);
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < n; ++j) {
        const int src = perm.image(j);
        const double xr = spectrum.x(j, r) * scale[r];
        for (int m = 0; m < n; ++m) a[r * n + m] += xr * s.to_positions[src * n + m];
        b[r] += xr * (s.lattice[src] - s.lattice[j]);
      }
    }
    s.a.push_back(std::move(a));
    s.b.push_back(std::move(b));
    s.parity.push_back(perm.parity());
    s.identity.push_back(perm.is_identity() ? 1 : 0);
  }

  s.points = grid.points();
  for (int i = 0; i < s.points; ++i) {
    s.coords.push_back(grid.coordinate(i));
    s.weights.push_back(grid.weight(i));
  }
  s.density = options.density;
  if (s.density) s.binning = options.binning.value_or(DensityBinning::for_crystal(params));
  return s;
}

template <int kN>
inline double mode_product(const double* table, const std::uint32_t* off, int n) {
  if constexpr (kN > 0) {
    double v = table[off[0]];
    for (int k = 1; k < kN; ++k) v *= table[off[k]];
    return v;
  } else {
    double v = table[off[0]];
    for (int k = 1; k < n; ++k) v *= table[off[k]];
    return v;
  }
}

template <int kN>
void process_node(const Setup& s, const HermiteEvaluator& hermite, double w, Scratch& sc,
                  Accumulator& acc) {
  const int n = kN > 0 ? kN : s.n;
  const std::size_t levels = s.levels;
  const std::uint32_t* off = s.offsets.data();
  const auto stride = static_cast<std::size_t>(s.stride);

  for (int m = 0; m < n; ++m) hermite.fill(sc.modes[m], {sc.table.data() + m * stride, stride});
  double* phi0 = sc.phi0.data();
  for (std::size_t l = 0; l < levels; ++l) phi0[l] = mode_product<kN>(sc.table.data(), off + l * n, n);

  if (s.density) {
    std::fill(sc.even.begin(), sc.even.end(), 0.0);
    std::fill(sc.odd.begin(), sc.odd.end(), 0.0);
  }

  for (std::size_t p = 0; p < s.perms; ++p) {
    double* out = acc.overlaps.data() + p * levels;
    double* sink = s.parity[p] ? sc.odd.data() : sc.even.data();
    if (s.identity[p]) {
      for (std::size_t l = 0; l < levels; ++l) {
        const double v = phi0[l] * phi0[l];
        out[l] += w * v;
        if (s.density) sink[l] += v;
      }
      continue;
    }
    const double* a = s.a[p].data();
    const double* b = s.b[p].data();
    bool negligible = false;
    for (int r = 0; r < n; ++r) {
      double v = b[r];
      for (int m = 0; m < n; ++m) v += a[r * n + m] * sc.modes[m];
      sc.permuted[r] = v;
      if (std::abs(v) > s.cutoff) negligible = true;
    }
    if (negligible) continue;
    for (int m = 0; m < n; ++m) hermite.fill(sc.permuted[m], {sc.table.data() + m * stride, stride});
    for (std::size_t l = 0; l < levels; ++l) {
      const double v = phi0[l] * mode_product<kN>(sc.table.data(), off + l * n, n);
      out[l] += w * v;
      if (s.density) sink[l] += v;
    }
  }

  if (s.density) {
    const auto bins = s.binning;
    for (int j = 0; j < n; ++j) {
      double r = s.lattice[j];
      for (int m = 0; m < n; ++m) r += s.to_positions[j * n + m] * sc.modes[m];
      const int bin = bins.bin_of(r);
      if (bin < 0) continue;
      double* plus = acc.plus.data() + static_cast<std::size_t>(bin) * levels;
      double* minus = acc.minus.data() + static_cast<std::size_t>(bin) * levels;
      for (std::size_t l = 0; l < levels; ++l) {
        plus[l] += w * (sc.even[l] + sc.odd[l]);
        minus[l] += w * (sc.even[l] - sc.odd[l]);
      }
    }
  }
}

template <int kN>
void process_slab(const Setup& s, const HermiteEvaluator& hermite, int slab, Scratch& sc,
                  Accumulator& acc) {
  acc.zero();
  const int n = s.n;
  std::vector<int> idx(n, 0);
  idx[0] = slab;
  while (true) {
    double w = 1.0;
    for (int m = 0; m < n; ++m) {
      sc.modes[m] = s.coords[idx[m]];
      w *= s.weights[idx[m]];
    }
    process_node<kN>(s, hermite, w, sc, acc);
    int axis = 1;
    while (axis < n) {
      if (++idx[axis] < s.points) break;
      idx[axis] = 0;
      ++axis;
    }
    if (axis >= n) break;
  }
}

using SlabFn = void (*)(const Setup&, const HermiteEvaluator&, int, Scratch&, Accumulator&);

SlabFn pick_kernel(int n) {
  switch (n) {
    case 1: return process_slab<1>;
    case 2: return process_slab<2>;
    case 3: return process_slab<3>;
    case 4: return process_slab<4>;
    case 5: return process_slab<5>;
    case 6: return process_slab<6>;
    default: return process_slab<0>;
  }
}

}  // namespace

SymmetrizationResult compute_overlaps(const LevelTable& table, const PermutationSet& perms,
                                      const QuadratureGrid& grid, const ModeSpectrum& spectrum,
                                      const CrystalParams& params,
                                      const SymmetrizationOptions& options) {
  if (grid.dimension() != spectrum.size() || table.modes() != spectrum.size() ||
      perms.particles() != spectrum.size()) {
    throw ConfigError("grid, level table, permutations and spectrum must share the particle count",
                      "n_particles");
  }
  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, grid.points());

  const Setup setup = make_setup(table, perms, grid, spectrum, options, params);
  const std::size_t need =
      estimate_memory(setup.levels, setup.perms, setup.density ? setup.binning.bins : 0, workers);
  if (need > options.memory_cap_bytes) {
    throw ResourceError("symmetrization accumulators need " + std::to_string(need) +
                        " bytes, above the configured cap of " +
                        std::to_string(options.memory_cap_bytes));
  }

  const HermiteEvaluator hermite(setup.stride - 1);
  const SlabFn kernel = pick_kernel(setup.n);

  Accumulator total;
  total.resize(setup);
  std::vector<Accumulator> local(workers);
  std::vector<Scratch> scratch;
  for (int w = 0; w < workers; ++w) {
    local[w].resize(setup);
    scratch.emplace_back(setup);
  }

  for (int start = 0; start < setup.points; start += workers) {
    const int count = std::min(workers, setup.points - start);
    if (count == 1) {
      kernel(setup, hermite, start, scratch[0], local[0]);
    } else {
      std::vector<std::jthread> pool;
      for (int k = 0; k < count; ++k) {
        pool.emplace_back([&, k] { kernel(setup, hermite, start + k, scratch[k], local[k]); });
      }
    }
    for (int k = 0; k < count; ++k) total.add(local[k]);
  }

  std::vector<double> overlaps(setup.levels * setup.perms);
  for (std::size_t p = 0; p < setup.perms; ++p)
    for (std::size_t l = 0; l < setup.levels; ++l)
      overlaps[l * setup.perms + p] = total.overlaps[p * setup.levels + l];

  std::optional<DensityBinning> binning;
  std::vector<double> plus, minus;
  if (setup.density) {
    binning = setup.binning;
    const auto bins = static_cast<std::size_t>(setup.binning.bins);
    plus.resize(setup.levels * bins);
    minus.resize(setup.levels * bins);
    for (std::size_t bin = 0; bin < bins; ++bin)
      for (std::size_t l = 0; l < setup.levels; ++l) {
        plus[l * bins + bin] = total.plus[bin * setup.levels + l];
        minus[l * bins + bin] = total.minus[bin * setup.levels + l];
      }
  }
  return SymmetrizationResult(setup.levels, setup.parity, std::move(overlaps), binning,
                              std::move(plus), std::move(minus));
}

std::vector<double> singlet_density(const SymmetrizationResult& result, std::size_t level,
                                    Statistics stats) {
  const double chi = result.chi(level, stats);
  if (std::abs(chi) <= 1e-9) {
    throw PoleError("symmetrization factor of level " + std::to_string(level) +
                    " vanishes; its symmetrized density is undefined");
  }
  const auto& b = result.binning();
  std::vector<double> profile(b.bins);
  for (int bin = 0; bin < b.bins; ++bin) {
    profile[bin] = result.density_sum(level, bin, stats) / (chi * b.width);
  }
  return profile;
}

double symmetrized_energy(const SymmetrizationResult& result, const LevelTable& table,
                          std::size_t level, Statistics stats) {
  const double chi = result.chi(level, stats);
  if (std::abs(chi) <= 1e-9) {
    throw PoleError("symmetrization factor of level " + std::to_string(level) + " vanishes");
  }
  // H phi_l = E_l phi_l, so every term <phi_l(Pq)|H|phi_l(q)> is E_l times the overlap
  // and E_l factors out of the permutation sum before dividing by chi.
  return table[level].energy * (chi / chi);
}

}  // namespace hcrystal
