#include "hcrystal/permutations.hpp"

#include <cstdlib>

#include "hcrystal/error.hpp"

namespace hcrystal {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  const int n = size();
  std::vector<char> seen(n, 0);
  for (int j = 0; j < n; ++j) {
    const int k = map_[j];
    if (k < 0 || k >= n || seen[k]) throw ConfigError("permutation mapping is not a bijection");
    seen[k] = 1;
    displacement_ += std::abs(j - k);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (map_[i] > map_[j]) metric_ += 2;
  std::vector<char> visited(n, 0);
  int cycles = 0;
  for (int j = 0; j < n; ++j) {
    if (visited[j]) continue;
    ++cycles;
    for (int k = j; !visited[k]; k = map_[k]) visited[k] = 1;
  }
  parity_ = (n - cycles) % 2;
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  for (int j = 0; j < n; ++j) m[j] = j;
  return Permutation(std::move(m));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ConfigError("composing permutations of different sizes");
  std::vector<int> m(a.size());
  for (int j = 0; j < a.size(); ++j) m[j] = a.map_[b.map_[j]];
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> m(map_.size());
  for (int j = 0; j < size(); ++j) m[map_[j]] = j;
  return Permutation(std::move(m));
}

int metric_length(const Permutation& p) { return p.metric_length(); }

int parity(const Permutation& p) { return p.parity(); }

std::size_t PermutationSet::identity_index() const {
  for (std::size_t i = 0; i < perms_.size(); ++i)
    if (perms_[i].is_identity()) return i;
  throw ConfigError("permutation set lacks the identity");
}

namespace {

void extend(int n, int bound, std::vector<int>& prefix, std::vector<char>& used, int partial,
            std::vector<Permutation>& out) {
  const int j = static_cast<int>(prefix.size());
  if (j == n) {
    out.emplace_back(prefix);
    return;
  }
  for (int k = 0; k < n; ++k) {
    if (used[k]) continue;
    // Each earlier label larger than k adds one adjacent transposition.
    int inversions = 0;
    for (int i = 0; i < j; ++i) inversions += prefix[i] > k;
    const int cost = partial + 2 * inversions;
    if (cost > bound) continue;
    used[k] = 1;
    prefix.push_back(k);
    extend(n, bound, prefix, used, cost, out);
    prefix.pop_back();
    used[k] = 0;
  }
}

}  // namespace

PermutationSet enumerate_permutations(int n, std::optional<int> max_metric) {
  if (n < 1) throw ConfigError("permutation size must be >= 1", "n_particles");
  if (!max_metric && n > 10) {
    throw ResourceError("refusing to enumerate all permutations of more than 10 labels");
  }
  if (max_metric && *max_metric < 0) throw ConfigError("metric bound must be >= 0", "d_max");
  const int bound = max_metric ? *max_metric : n * n;
  std::vector<Permutation> out;
  std::vector<int> prefix;
  prefix.reserve(n);
  std::vector<char> used(n, 0);
  extend(n, bound, prefix, used, 0, out);
  return PermutationSet(n, max_metric, std::move(out));
}

std::pair<long, long> parity_census(int m) {
  if (m < 2 || m > 10) throw ConfigError("parity census requires 2 <= m <= 10");
  long even = 0, odd = 0;
  for (const auto& p : enumerate_permutations(m)) (p.parity() == 0 ? even : odd) += 1;
  return {even, odd};
}

}  // namespace hcrystal
