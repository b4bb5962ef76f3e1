#include "fmoheom/hierarchy.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

using namespace fmo;

namespace {

// All multi-indices with depth <= n, by brute-force recursion.
void enumerate(int sites, int n, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == sites) {
    out.push_back(current);
    return;
  }
  int used = 0;
  for (int v : current) used += v;
  for (int v = 0; v + used <= n; ++v) {
    current.push_back(v);
    enumerate(sites, n, current, out);
    current.pop_back();
  }
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("hierarchy counts") {
  CHECK(hierarchy_count(7, 0) == 1);
  CHECK(hierarchy_count(1, 3) == 4);
  CHECK(hierarchy_count(7, 12) == 50388);
  CHECK(hierarchy_count(7, 12) == binomial(19, 7));
  CHECK(HierarchyIndexSpace(7, 12).size() == 50388);
  CHECK_THROWS_WITH_AS(hierarchy_count(7, 200), doctest::Contains("count"), std::overflow_error);
  CHECK_THROWS_AS(HierarchyIndexSpace(7, -1), std::invalid_argument);
}

TEST_CASE("exhaustive enumeration matches the binomial count for N <= 6") {
  for (int n = 0; n <= 6; ++n) {
    std::vector<std::vector<int>> all;
    std::vector<int> current;
    enumerate(7, n, current, all);
    CHECK(static_cast<std::int64_t>(all.size()) == binomial(n + 7, 7));
    CHECK(hierarchy_count(7, n) == static_cast<std::int64_t>(all.size()));
  }
}

TEST_CASE("nodes are graded lexicographic and ranks round-trip") {
  const HierarchyIndexSpace space(4, 5);
  std::set<std::vector<int>> seen;
  std::vector<int> previous;
  int previous_depth = -1;
  for (std::size_t r = 0; r < space.size(); ++r) {
    const auto idx = space.multi_index(r);
    std::vector<int> n(idx.begin(), idx.end());
    int depth = 0;
    for (int v : n) depth += v;
    CHECK(depth == space.depth(r));
    CHECK(depth <= 5);
    if (depth == previous_depth) {
      CHECK(previous < n);
    } else {
      CHECK(depth == previous_depth + 1);
    }
    CHECK(seen.insert(n).second);
    CHECK(space.rank_of(n) == static_cast<std::int32_t>(r));
    previous = n;
    previous_depth = depth;
  }
  CHECK(seen.size() == space.size());
  CHECK(space.rank_of(std::vector<int>{6, 0, 0, 0}) == HierarchyIndexSpace::kAbsent);
  CHECK(space.rank_of(std::vector<int>{-1, 0, 0, 0}) == HierarchyIndexSpace::kAbsent);
}

TEST_CASE("neighbour tables") {
  const HierarchyIndexSpace space(7, 4);
  for (std::size_t r = 0; r < space.size(); ++r) {
    const auto idx = space.multi_index(r);
    for (int k = 0; k < 7; ++k) {
      std::vector<int> n(idx.begin(), idx.end());
      const auto plus = space.plus(r, k);
      if (space.depth(r) == 4) {
        CHECK(plus == HierarchyIndexSpace::kAbsent);
      } else {
        ++n[static_cast<std::size_t>(k)];
        CHECK(plus == space.rank_of(n));
        CHECK(space.minus(static_cast<std::size_t>(plus), k) == static_cast<std::int32_t>(r));
        --n[static_cast<std::size_t>(k)];
      }
      const auto minus = space.minus(r, k);
      if (idx[static_cast<std::size_t>(k)] == 0) {
        CHECK(minus == HierarchyIndexSpace::kAbsent);
      } else {
        // n_k- followed by n_k+ returns the original node.
        CHECK(space.plus(static_cast<std::size_t>(minus), k) == static_cast<std::int32_t>(r));
      }
    }
  }
}
