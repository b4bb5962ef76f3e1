#pragma once

// Multi-index bookkeeping for the auxiliary-operator hierarchy.
//
// Nodes are all n = (n_1..n_K) with n_k >= 0 and sum n_k <= N, ordered by
// depth (sum n_k) and, within a depth, lexicographically ascending. The rank
// of a node is computed combinatorially (no hashing) and the n_{k+} / n_{k-}
// neighbours are tabulated once.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fmo {

/// C(N + K, K) = number of multi-indices of K sites with depth <= N.
/// Throws std::overflow_error (message carries the count) if it does not fit
/// a signed 32-bit node index.
std::int64_t hierarchy_count(int n_sites, int truncation);

class HierarchyIndexSpace {
 public:
  static constexpr std::int32_t kAbsent = -1;

  HierarchyIndexSpace(int n_sites, int truncation);

  std::size_t size() const { return depth_.size(); }
  int n_sites() const { return n_sites_; }
  int truncation() const { return truncation_; }

  std::span<const std::uint8_t> multi_index(std::size_t rank) const {
    return {indices_.data() + rank * static_cast<std::size_t>(n_sites_),
            static_cast<std::size_t>(n_sites_)};
  }
  int depth(std::size_t rank) const { return depth_[rank]; }

  /// Rank of a multi-index, or kAbsent when it is outside the space.
  std::int32_t rank_of(std::span<const int> n) const;

  /// Rank of n_{k+} (site k 0-based), kAbsent at depth N.
  std::int32_t plus(std::size_t rank, int k) const {
    return plus_[rank * static_cast<std::size_t>(n_sites_) + static_cast<std::size_t>(k)];
  }
  /// Rank of n_{k-} (site k 0-based), kAbsent when n_k == 0.
  std::int32_t minus(std::size_t rank, int k) const {
    return minus_[rank * static_cast<std::size_t>(n_sites_) + static_cast<std::size_t>(k)];
  }

 private:
  int n_sites_;
  int truncation_;
  std::vector<std::uint8_t> indices_;
  std::vector<int> depth_;
  std::vector<std::int64_t> depth_offset_;
  std::vector<std::int32_t> plus_;
  std::vector<std::int32_t> minus_;
};

}  // namespace fmo
