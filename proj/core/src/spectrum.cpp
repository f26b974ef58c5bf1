#include "hcrystal/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcrystal/error.hpp"

namespace hcrystal {

ModeSpectrum::ModeSpectrum(const CrystalParams& params)
    : n_(params.n_particles()),
      mu_(n_),
      omega_(n_),
      scale_(n_),
      lattice_(params.lattice()),
      x_(static_cast<std::size_t>(n_) * n_) {
  const double k = params.diagonal_value();
  const double eta = params.units().quantum_ratio();
  const double theta = std::numbers::pi / (n_ + 1);
  const double norm = std::sqrt(2.0 / (n_ + 1));
  for (int n = 0; n < n_; ++n) {
    mu_[n] = k + 2.0 * std::cos((n + 1) * theta);
    omega_[n] = std::sqrt(-params.lambda() * mu_[n]);
    scale_[n] = std::sqrt(omega_[n] / eta);
    for (int j = 0; j < n_; ++j) {
      x_[static_cast<std::size_t>(j) * n_ + n] = norm * std::sin((j + 1) * (n + 1) * theta);
    }
  }
}

double ModeSpectrum::ground_energy() const {
  double e = 0.0;
  for (double w : omega_) e += 0.5 * w;
  return e;
}

ModeSpectrum diagonalize(const CrystalParams& params) { return ModeSpectrum(params); }

std::vector<double> to_modes(std::span<const double> q, const ModeSpectrum& spectrum) {
  const int n = spectrum.size();
  if (static_cast<int>(q.size()) != n) throw ConfigError("position vector length mismatch");
  const auto& lattice = spectrum.lattice();
  std::vector<double> modes(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double d = q[j] - lattice[j];
    for (int m = 0; m < n; ++m) modes[m] += spectrum.x(j, m) * d;
  }
  for (int m = 0; m < n; ++m) modes[m] *= spectrum.scale()[m];
  return modes;
}

std::vector<double> from_modes(std::span<const double> modes, const ModeSpectrum& spectrum) {
  const int n = spectrum.size();
  if (static_cast<int>(modes.size()) != n) throw ConfigError("mode vector length mismatch");
  std::vector<double> q(spectrum.lattice());
  for (int m = 0; m < n; ++m) {
    const double amplitude = modes[m] / spectrum.scale()[m];
    for (int j = 0; j < n; ++j) q[j] += spectrum.x(j, m) * amplitude;
  }
  return q;
}

double level_energy(std::span<const int> quanta, std::span<const double> omega) {
  double e = 0.0;
  for (std::size_t n = 0; n < quanta.size(); ++n) e += (quanta[n] + 0.5) * omega[n];
  return e;
}

bool level_before(const Level& a, const Level& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  return a.quanta < b.quanta;
}

LevelTable::LevelTable(std::vector<Level> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 0; i < levels_.size(); ++i) index_.emplace(levels_[i].quanta, i);
}

long LevelTable::index_of(const std::vector<int>& quanta) const {
  auto it = index_.find(quanta);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::vector<int> LevelTable::max_quanta() const {
  std::vector<int> out(modes(), 0);
  for (const auto& level : levels_)
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = std::max(out[n], level.quanta[n]);
  return out;
}

std::vector<double> LevelTable::energies() const {
  std::vector<double> e;
  e.reserve(levels_.size());
  for (const auto& level : levels_) e.push_back(level.energy);
  return e;
}

LevelTable build_level_table(const ModeSpectrum& spectrum, std::size_t l_max) {
  if (l_max == 0) throw ConfigError("l_max must be >= 1", "l_max");
  const int n_modes = spectrum.size();
  const auto& omega = spectrum.omega();

  std::vector<Level> list;
  list.reserve(l_max + 1);
  for (std::size_t l = 0; l < l_max; ++l) {
    Level level{std::vector<int>(n_modes, 0), 0.0};
    level.quanta[0] = static_cast<int>(l);
    level.energy = level_energy(level.quanta, omega);
    list.push_back(std::move(level));
  }

  for (int mode = 1; mode < n_modes; ++mode) {
    // States carrying no quanta of this mode; each is offered with k = 1, 2, ... quanta added.
    const std::vector<Level> base = list;
    for (int k = 1;; ++k) {
      bool inserted_any = false;
      for (const Level& b : base) {
        Level candidate{b.quanta, 0.0};
        candidate.quanta[mode] = k;
        candidate.energy = level_energy(candidate.quanta, omega);
        if (list.size() == l_max && !level_before(candidate, list.back())) {
          // Later base states are higher still; the margin absorbs rounding differences.
          const double top = list.back().energy;
          if (candidate.energy > top + 1e-12 * std::abs(top)) break;
          continue;
        }
        auto pos = std::upper_bound(list.begin(), list.end(), candidate, level_before);
        list.insert(pos, std::move(candidate));
        if (list.size() > l_max) list.pop_back();
        inserted_any = true;
      }
      if (!inserted_any) break;
    }
  }
  return LevelTable(std::move(list));
}

double level_scaling_exponent(const LevelTable& table) {
  constexpr std::size_t first_rank = 100;
  if (table.size() <= first_rank) {
    throw ConfigError("level table must hold more than 100 levels for a scaling fit", "l_max");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t rank = first_rank; rank <= table.size(); ++rank) {
    const double x = std::log(static_cast<double>(rank));
    const double y = std::log(table[rank - 1].energy);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double c = static_cast<double>(count);
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

}  // namespace hcrystal
