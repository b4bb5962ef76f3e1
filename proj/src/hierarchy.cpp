#include "fmoheom/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

// Number of ways to write s as an ordered sum of m nonnegative parts,
// C(s + m - 1, m - 1). Saturates at int64 max.
std::int64_t compositions(int s, int m) {
  if (m == 0) return s == 0 ? 1 : 0;
  // C(s + m - 1, s) computed incrementally; each partial product is exact.
  unsigned __int128 acc = 1;
  for (int i = 1; i <= s; ++i) {
    acc = acc * static_cast<unsigned>(m - 1 + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      return std::numeric_limits<std::int64_t>::max();
    }
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace

std::int64_t hierarchy_count(int n_sites, int truncation) {
  if (n_sites < 1) throw std::invalid_argument("hierarchy_count: n_sites must be positive");
  if (truncation < 0) throw std::invalid_argument("hierarchy_count: truncation must be >= 0");
  // Depth <= N over K sites equals depth == N over K + 1 sites (slack part).
  const std::int64_t count = compositions(truncation, n_sites + 1);
  if (count > std::numeric_limits<std::int32_t>::max() || truncation > 255) {
    std::ostringstream msg;
    msg << "hierarchy_count: " << n_sites << " sites at truncation " << truncation << " need ";
    if (count == std::numeric_limits<std::int64_t>::max()) {
      msg << "more than 2^63";
    } else {
      msg << count;
    }
    msg << " nodes, beyond the supported index range";
    throw std::overflow_error(msg.str());
  }
  return count;
}

HierarchyIndexSpace::HierarchyIndexSpace(int n_sites, int truncation)
    : n_sites_(n_sites), truncation_(truncation) {
  const auto count = static_cast<std::size_t>(hierarchy_count(n_sites, truncation));
  const auto k_sites = static_cast<std::size_t>(n_sites);
  indices_.reserve(count * k_sites);
  depth_.reserve(count);

  depth_offset_.assign(static_cast<std::size_t>(truncation) + 2, 0);
  for (int d = 0; d <= truncation; ++d) {
    depth_offset_[d + 1] = depth_offset_[d] + compositions(d, n_sites);
  }

  // Enumerate each depth in ascending lexicographic order: the first site
  // varies slowest, starting from (0, ..., 0, d).
  std::vector<int> n(k_sites, 0);
  for (int d = 0; d <= truncation; ++d) {
    std::fill(n.begin(), n.end(), 0);
    n.back() = d;
    while (true) {
      for (int v : n) indices_.push_back(static_cast<std::uint8_t>(v));
      depth_.push_back(d);
      // Next composition in lex order: find the rightmost position i < K-1
      // that can grow, i.e. has mass to its right.
      int tail = n.back();
      int i = n_sites - 2;
      while (i >= 0 && tail == 0) {
        tail += n[static_cast<std::size_t>(i)];
        --i;
      }
      if (i < 0) break;
      // Position i gains one unit, everything after it is reset with the
      // remaining mass on the last site.
      ++n[static_cast<std::size_t>(i)];
      int rest = tail - 1;
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k_sites; ++j) n[j] = 0;
      n.back() = rest;
    }
  }

  plus_.assign(count * k_sites, kAbsent);
  minus_.assign(count * k_sites, kAbsent);
  std::vector<int> probe(k_sites);
  for (std::size_t r = 0; r < count; ++r) {
    const auto idx = multi_index(r);
    std::copy(idx.begin(), idx.end(), probe.begin());
    for (std::size_t k = 0; k < k_sites; ++k) {
      if (depth_[r] < truncation) {
        ++probe[k];
        plus_[r * k_sites + k] = rank_of(probe);
        --probe[k];
      }
      if (probe[k] > 0) {
        --probe[k];
        minus_[r * k_sites + k] = rank_of(probe);
        ++probe[k];
      }
    }
  }
}

std::int32_t HierarchyIndexSpace::rank_of(std::span<const int> n) const {
  if (n.size() != static_cast<std::size_t>(n_sites_)) return kAbsent;
  int depth = 0;
  for (int v : n) {
    if (v < 0) return kAbsent;
    depth += v;
  }
  if (depth > truncation_) return kAbsent;

  // Count compositions of the same depth that precede n lexicographically:
  // at each position, every smaller value v leaves (remaining - v) to be
  // spread over the sites to its right.
  std::int64_t rank = depth_offset_[static_cast<std::size_t>(depth)];
  int remaining = depth;
  for (int i = 0; i + 1 < n_sites_; ++i) {
    const int right = n_sites_ - i - 1;
    for (int v = 0; v < n[static_cast<std::size_t>(i)]; ++v) {
      rank += compositions(remaining - v, right);
    }
    remaining -= n[static_cast<std::size_t>(i)];
  }
  return static_cast<std::int32_t>(rank);
}

}  // namespace fmo
