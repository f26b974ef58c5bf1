#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace hcrystal {

/// Exchange symmetry of the position wave function: fully symmetric (bosons)
/// or fully antisymmetric (fermions).
enum class Statistics : int { boson = 1, fermion = -1 };

/// Bijection on particle labels 0..N-1. Applied to a position vector it gives
/// (P q)_j = q_{image(j)}.
class Permutation {
 public:
  /// Throws ConfigError if `mapping` is not a bijection on 0..N-1.
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(map_.size()); }
  int image(int j) const { return map_[j]; }
  const std::vector<int>& mapping() const { return map_; }

  /// 0 for even, 1 for odd.
  int parity() const { return parity_; }
  /// Length in nearest-neighbor moves: twice the number of adjacent
  /// transpositions needed to build the permutation (its inversion count).
  /// A nearest-neighbor swap has length 2; two disjoint ones or a cycle of three
  /// consecutive labels have length 4.
  int metric_length() const { return metric_; }
  /// sum_j |j - image(j)|. Equals metric_length() except for permutations that
  /// move a label past more than one neighbor, e.g. (0 2) gives 4 here and 6 there.
  int displacement_sum() const { return displacement_; }
  bool is_identity() const { return metric_ == 0; }
  /// (+1)^p for bosons, (-1)^p for fermions.
  int sign(Statistics stats) const {
    return (stats == Statistics::fermion && parity_ == 1) ? -1 : 1;
  }

  /// (a * b)(j) = a(b(j)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;

  template <typename T>
  std::vector<T> apply(const std::vector<T>& values) const {
    std::vector<T> out(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) out[j] = values[map_[j]];
    return out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

 private:
  std::vector<int> map_;
  int parity_ = 0;
  int metric_ = 0;
  int displacement_ = 0;
};

int metric_length(const Permutation& p);

/// Parity by cycle decomposition: (N - #cycles) mod 2.
int parity(const Permutation& p);

/// Permutations of N labels whose metric length is at most `max_metric`
/// (no bound when empty), in lexicographic order of their mappings.
class PermutationSet {
 public:
  PermutationSet(int n, std::optional<int> max_metric, std::vector<Permutation> perms)
      : n_(n), max_metric_(max_metric), perms_(std::move(perms)) {}

  int particles() const { return n_; }
  std::optional<int> max_metric() const { return max_metric_; }
  std::size_t size() const { return perms_.size(); }
  const Permutation& operator[](std::size_t i) const { return perms_[i]; }
  const std::vector<Permutation>& permutations() const { return perms_; }
  auto begin() const { return perms_.begin(); }
  auto end() const { return perms_.end(); }

  /// Position of the identity permutation (always present).
  std::size_t identity_index() const;

 private:
  int n_;
  std::optional<int> max_metric_;
  std::vector<Permutation> perms_;
};

/// Depth-first generation pruned on the partial metric length. Throws
/// ConfigError for n < 1 and ResourceError for n > 10 without a metric bound.
PermutationSet enumerate_permutations(int n, std::optional<int> max_metric = std::nullopt);

/// (even, odd) counts over all permutations of m objects, 2 <= m <= 10.
std::pair<long, long> parity_census(int m);

}  // namespace hcrystal
