#include "hcrystal/wavefunctions.hpp"

#include <cmath>
#include <numbers>

#include "hcrystal/error.hpp"

namespace hcrystal {

namespace {
constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleBy = 1e-150;
const double kLogRescale = 150.0 * std::numbers::ln10;
}  // namespace

HermiteEvaluator::HermiteEvaluator(int max_degree) {
  if (max_degree < 0) throw ConfigError("Hermite degree must be >= 0");
  up_.resize(max_degree);
  down_.resize(max_degree);
  for (int l = 0; l < max_degree; ++l) {
    up_[l] = std::sqrt(2.0 / (l + 1));
    down_[l] = std::sqrt(static_cast<double>(l) / (l + 1));
  }
}

void HermiteEvaluator::fill(double x, std::span<double> out) const {
  if (out.empty()) return;
  const int top = static_cast<int>(out.size()) - 1;
  if (top > max_degree()) throw ConfigError("Hermite degree exceeds evaluator range");

  double log_factor = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double factor = std::exp(log_factor);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = factor;
  for (int l = 0; l < top; ++l) {
    const double next = up_[l] * x * cur - down_[l] * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      prev *= kRescaleBy;
      log_factor += kLogRescale;
      factor = std::exp(log_factor);
    }
    out[l + 1] = factor * cur;
  }
}

double HermiteEvaluator::operator()(int degree, double x) const {
  std::vector<double> values(degree + 1);
  fill(x, values);
  return values.back();
}

double hermite_function(int degree, double x) {
  if (degree < 0) throw ConfigError("Hermite degree must be >= 0");
  return HermiteEvaluator(degree)(degree, x);
}

double eigenfunction_value(const EigenfunctionContext& ctx, std::span<const double> modes) {
  const auto& quanta = ctx.level.quanta;
  if (modes.size() != quanta.size()) throw ConfigError("mode vector length mismatch");
  double value = 1.0;
  for (std::size_t n = 0; n < quanta.size(); ++n) value *= hermite_function(quanta[n], modes[n]);
  return value;
}

std::vector<double> permuted_mode_amplitudes(std::span<const double> modes,
                                             const Permutation& perm,
                                             const ModeSpectrum& spectrum) {
  if (perm.size() != spectrum.size()) throw ConfigError("permutation size mismatch");
  if (perm.is_identity()) return {modes.begin(), modes.end()};
  const std::vector<double> q = from_modes(modes, spectrum);
  return to_modes(perm.apply(q), spectrum);
}

}  // namespace hcrystal
