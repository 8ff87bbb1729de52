#include "kslab/core.hpp"

#include <algorithm>
#include <limits>

namespace kslab {

Partition::Partition(std::vector<int> block_of, int blocks, bool allow_empty)
    : block_of_(std::move(block_of)), blocks_(blocks) {
  if (blocks_ < 0) throw ContractViolation("partition: negative block count");
  std::vector<int> count(static_cast<std::size_t>(blocks_), 0);
  for (int b : block_of_) {
    if (b < 0 || b >= blocks_) throw ContractViolation("partition: block id out of range");
    ++count[static_cast<std::size_t>(b)];
  }
  if (!allow_empty && std::find(count.begin(), count.end(), 0) != count.end()) {
    throw ContractViolation("partition: empty block");
  }
}

Partition::Partition(const std::vector<int>& block_of)
    : Partition(block_of, block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1) {}

Partition Partition::from_blocks(std::size_t size, const std::vector<IndexSet>& blocks) {
  std::vector<int> labels(size, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int i : blocks[b]) {
      if (i < 0 || static_cast<std::size_t>(i) >= size) throw ContractViolation("partition: index out of range");
      if (labels[static_cast<std::size_t>(i)] != -1) throw ContractViolation("partition: index in two blocks");
      labels[static_cast<std::size_t>(i)] = static_cast<int>(b);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw ContractViolation("partition: blocks do not cover the index set");
  }
  return Partition(std::move(labels), static_cast<int>(blocks.size()));
}

Partition Partition::single_block(std::size_t size) {
  return Partition(std::vector<int>(size, 0), size == 0 ? 0 : 1);
}

std::vector<IndexSet> Partition::members() const {
  std::vector<IndexSet> out(static_cast<std::size_t>(blocks_));
  for (std::size_t i = 0; i < block_of_.size(); ++i) out[static_cast<std::size_t>(block_of_[i])].push_back(static_cast<int>(i));
  return out;
}

std::vector<IndexSet> Partition::nonempty_members() const {
  auto all = members();
  std::erase_if(all, [](const IndexSet& s) { return s.empty(); });
  return all;
}

Partition Partition::canonical() const {
  std::vector<int> remap(static_cast<std::size_t>(blocks_), -1);
  std::vector<int> labels(block_of_.size());
  int next = 0;
  for (std::size_t i = 0; i < block_of_.size(); ++i) {
    int& m = remap[static_cast<std::size_t>(block_of_[i])];
    if (m < 0) m = next++;
    labels[i] = m;
  }
  return Partition(std::move(labels), next);
}

bool Partition::is_refinement_of(const Partition& coarser) const {
  if (coarser.size() != size()) return false;
  std::vector<int> parent(static_cast<std::size_t>(blocks_), -1);
  for (std::size_t i = 0; i < size(); ++i) {
    int& p = parent[static_cast<std::size_t>(block_of_[i])];
    if (p < 0) p = coarser.block_of(i);
    else if (p != coarser.block_of(i)) return false;
  }
  return true;
}

PartitionEnumerator::PartitionEnumerator(int M, int r) : M_(M), r_(r) {
  if (M < 1 || r < 1) throw ContractViolation("enumerate_partitions: need M >= 1 and r >= 1");
  rgs_.assign(static_cast<std::size_t>(M), 0);
  used_.assign(static_cast<std::size_t>(M), 1);
}

bool PartitionEnumerator::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  // Increment the rightmost position that may grow: rgs_[i] < used_[i-1] and < r.
  for (int i = M_ - 1; i >= 1; --i) {
    const auto ui = static_cast<std::size_t>(i);
    const int limit = std::min(used_[ui - 1], r_ - 1);
    if (rgs_[ui] < limit) {
      ++rgs_[ui];
      used_[ui] = std::max(used_[ui - 1], rgs_[ui] + 1);
      for (int j = i + 1; j < M_; ++j) {
        rgs_[static_cast<std::size_t>(j)] = 0;
        used_[static_cast<std::size_t>(j)] = used_[ui];
      }
      return true;
    }
  }
  return false;
}

Partition PartitionEnumerator::current() const { return Partition(rgs_, used_.back()); }

std::vector<Partition> enumerate_partitions(int M, int r) {
  std::vector<Partition> out;
  PartitionEnumerator e(M, r);
  while (e.next()) out.push_back(e.current());
  return out;
}

namespace {
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
}  // namespace

std::uint64_t count_partitions(int M, int r) {
  if (M < 0 || r < 0) return 0;
  // S(m, k) = k S(m-1, k) + S(m-1, k-1)
  std::vector<std::uint64_t> s(static_cast<std::size_t>(r) + 1, 0);
  s[0] = 1;
  for (int m = 1; m <= M; ++m) {
    for (int k = std::min(m, r); k >= 1; --k) {
      const auto uk = static_cast<std::size_t>(k);
      s[uk] = sat_add(sat_mul(static_cast<std::uint64_t>(k), s[uk]), s[uk - 1]);
    }
    s[0] = 0;
  }
  std::uint64_t total = 0;
  for (int k = (M == 0 ? 0 : 1); k <= r; ++k) total = sat_add(total, s[static_cast<std::size_t>(k)]);
  return total;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (c > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace kslab
