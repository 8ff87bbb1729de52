#include <algorithm>
#include <deque>

#include "kslab/decomposition.hpp"

namespace kslab {

namespace {

bool independent(const Matrix& T, const IndexSet& cols, const Tolerances& tol) {
  if (cols.empty()) return true;
  if (static_cast<Index>(cols.size()) > T.rows()) return false;
  return numeric_rank(select_columns(T, cols), tol) == cols.size();
}

}  // namespace

RadoHornCheck rado_horn_check(const Frame& fr, int r, const Tolerances& tol, int max_size) {
  if (r < 1) throw ContractViolation("rado_horn_check: r must be >= 1");
  const auto M = static_cast<int>(fr.size());
  if (M > max_size) {
    throw BudgetExceeded("rado_horn_check: " + std::to_string(M) + " vectors exceed the subset-scan limit of " +
                         std::to_string(max_size));
  }
  RadoHornCheck out;
  for (int k = 1; k <= M && out.holds; ++k) {
    for_each_subset(M, k, [&](const IndexSet& J) {
      ++out.subsets;
      const auto rank = numeric_rank(select_columns(fr.synthesis, J), tol);
      if (J.size() > static_cast<std::size_t>(r) * rank) {
        out.holds = false;
        out.violator = J;
        return false;
      }
      return true;
    });
  }
  return out;
}

Partition rado_horn_partition(const Frame& fr, int r, const Tolerances& tol) {
  if (r < 1) throw ContractViolation("rado_horn_partition: r must be >= 1");
  const auto M = static_cast<int>(fr.size());
  const Matrix& T = fr.synthesis;
  std::vector<IndexSet> sets(static_cast<std::size_t>(r));
  std::vector<int> block(static_cast<std::size_t>(M), -1);

  auto with = [](IndexSet s, int add, int drop) {
    if (drop >= 0) std::erase(s, drop);
    s.push_back(add);
    return s;
  };

  for (int x = 0; x < M; ++x) {
    // Breadth-first search for a shortest exchange chain x -> y1 -> ... -> yk
    // where each element replaces its successor in the successor's set and yk
    // enters a set it keeps independent.
    std::vector<int> parent(static_cast<std::size_t>(M), -2);
    parent[static_cast<std::size_t>(x)] = -1;
    std::deque<int> queue{x};
    IndexSet reached{x};
    int end = -1, end_set = -1;
    while (!queue.empty() && end < 0) {
      const int z = queue.front();
      queue.pop_front();
      for (int j = 0; j < r && end < 0; ++j) {
        if (block[static_cast<std::size_t>(z)] == j) continue;
        const auto& I = sets[static_cast<std::size_t>(j)];
        if (independent(T, with(I, z, -1), tol)) {
          end = z;
          end_set = j;
          break;
        }
        for (int y : I) {
          if (parent[static_cast<std::size_t>(y)] != -2) continue;
          if (independent(T, with(I, z, y), tol)) {
            parent[static_cast<std::size_t>(y)] = z;
            reached.push_back(y);
            queue.push_back(y);
          }
        }
      }
    }
    if (end < 0) {
      // Every set restricted to the reached elements spans them, so
      // |reached| = 1 + r * rank(reached).
      std::sort(reached.begin(), reached.end());
      throw RadoHornInfeasible("rado_horn_partition: no partition into " + std::to_string(r) +
                                   " independent sets (violating subset of size " + std::to_string(reached.size()) +
                                   ")",
                               reached);
    }
    // Apply the chain back to front: end joins end_set, each predecessor takes
    // the set its successor left.
    int z = end;
    int target = end_set;
    while (z >= 0) {
      const int old = block[static_cast<std::size_t>(z)];
      if (old >= 0) std::erase(sets[static_cast<std::size_t>(old)], z);
      sets[static_cast<std::size_t>(target)].push_back(z);
      block[static_cast<std::size_t>(z)] = target;
      target = old;
      z = parent[static_cast<std::size_t>(z)];
    }
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::erase_if(sets, [](const IndexSet& s) { return s.empty(); });
  return Partition::from_blocks(static_cast<std::size_t>(M), sets);
}

}  // namespace kslab
