#include <algorithm>
#include <limits>
#include <thread>

#include "kslab/paving.hpp"

namespace kslab {

std::string to_string(PavingForm f) {
  switch (f) {
    case PavingForm::off_diagonal: return "off_diagonal";
    case PavingForm::projection: return "projection";
    case PavingForm::frame_blocks: return "frame_blocks";
  }
  return "unknown";
}

namespace {

double principal_norm(const Matrix& H, const IndexSet& block) {
  if (block.empty()) return 0.0;
  if (block.size() == 1) return std::abs(H(block[0], block[0]));
  return operator_norm(principal_submatrix(H, block));
}

double in_block_mass(const Matrix& H, const IndexSet& block) {
  double s = 0.0;
  for (int i : block)
    for (int m : block) s += std::norm(H(i, m));
  return s;
}

struct Candidate {
  double objective = std::numeric_limits<double>::infinity();
  std::uint64_t order = std::numeric_limits<std::uint64_t>::max();
  std::vector<int> labels;
  int blocks = 0;
  std::uint64_t evaluated = 0;
};

void exhaustive_worker(const Matrix& H, int r_max, int worker, int workers, Candidate& best) {
  const auto M = static_cast<int>(H.rows());
  PartitionEnumerator e(M, r_max);
  std::vector<IndexSet> members(static_cast<std::size_t>(r_max));
  std::uint64_t k = 0;
  for (; e.next(); ++k) {
    if (k % static_cast<std::uint64_t>(workers) != static_cast<std::uint64_t>(worker)) continue;
    ++best.evaluated;
    for (auto& m : members) m.clear();
    const auto& labels = e.labels();
    for (int i = 0; i < M; ++i) members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
    double worst = 0.0;
    bool pruned = false;
    for (int b = 0; b < e.blocks(); ++b) {
      worst = std::max(worst, principal_norm(H, members[static_cast<std::size_t>(b)]));
      if (worst >= best.objective) {  // cannot be strictly better
        pruned = true;
        break;
      }
    }
    if (!pruned) {
      best.objective = worst;
      best.order = k;
      best.labels = labels;
      best.blocks = e.blocks();
    }
  }
}

}  // namespace

BlockNorms block_norms(const Matrix& H, const Partition& p) {
  if (!is_square(H) || static_cast<std::size_t>(H.rows()) != p.size()) {
    throw ContractViolation("block_norms: partition size does not match the square matrix");
  }
  BlockNorms out;
  for (const auto& block : p.nonempty_members()) {
    const double v = principal_norm(H, block);
    out.per_block.push_back(v);
    out.max = std::max(out.max, v);
  }
  return out;
}

bool exhaustive_fits(Index M, int r_max, const SearchOptions& opt) {
  return M <= opt.size_budget && count_partitions(static_cast<int>(M), r_max) <= opt.partition_budget;
}

BlockSearchResult min_block_norm_exhaustive(const Matrix& H, int r_max, const SearchOptions& opt) {
  if (!is_square(H) || H.rows() < 1) throw ContractViolation("partition search: matrix must be square and nonempty");
  if (r_max < 1) throw ContractViolation("partition search: r_max must be >= 1");
  if (!exhaustive_fits(H.rows(), r_max, opt)) {
    throw BudgetExceeded("exhaustive partition search over budget (size " + std::to_string(H.rows()) +
                         ", " + std::to_string(count_partitions(static_cast<int>(H.rows()), r_max)) +
                         " partitions); use the local search");
  }
  const int workers = std::max(1, opt.threads);
  std::vector<Candidate> best(static_cast<std::size_t>(workers));
  if (workers == 1) {
    exhaustive_worker(H, r_max, 0, 1, best[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(exhaustive_worker, std::cref(H), r_max, w, workers, std::ref(best[static_cast<std::size_t>(w)]));
    for (auto& t : pool) t.join();
  }
  // merge by (objective, enumeration order)
  Candidate winner;
  std::uint64_t evaluated = 0;
  for (const auto& c : best) {
    evaluated += c.evaluated;
    if (c.labels.empty()) continue;
    if (c.objective < winner.objective || (c.objective == winner.objective && c.order < winner.order)) winner = c;
  }
  BlockSearchResult out;
  out.partition = Partition(winner.labels, winner.blocks);
  out.norms = block_norms(H, out.partition);
  out.exhaustive = true;
  out.evaluated = evaluated;
  return out;
}

BlockSearchResult min_block_norm_local(const Matrix& H, int r, const SearchOptions& opt) {
  if (!is_square(H) || H.rows() < 1) throw ContractViolation("partition search: matrix must be square and nonempty");
  if (r < 1) throw ContractViolation("partition search: r must be >= 1");
  const auto M = static_cast<int>(H.rows());
  const auto ur = static_cast<std::size_t>(r);
  Rng rng(opt.seed);

  BlockSearchResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  double best_mass = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
    std::vector<int> labels(static_cast<std::size_t>(M));
    for (auto& l : labels) l = static_cast<int>(rng.below(ur));
    std::vector<IndexSet> members(ur);
    for (int i = 0; i < M; ++i) members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
    std::vector<double> norm(ur), mass(ur);
    for (std::size_t b = 0; b < ur; ++b) {
      norm[b] = principal_norm(H, members[b]);
      mass[b] = in_block_mass(H, members[b]);
    }
    auto objective = [&](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };

    int sweep = 0;
    std::uint64_t moves = 0;
    for (; sweep < opt.sweeps; ++sweep) {
      bool moved = false;
      for (int i = 0; i < M; ++i) {
        const auto a = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
        IndexSet without = members[a];
        std::erase(without, i);
        const double norm_without = principal_norm(H, without);
        double row_a = 0.0;
        for (int m : without) row_a += std::norm(H(i, m)) + std::norm(H(m, i));
        const double mass_without = mass[a] - row_a - std::norm(H(i, i));

        double cur_obj = objective(norm);
        double cur_mass = 0.0;
        for (double x : mass) cur_mass += x;
        double best_move_obj = cur_obj;
        double best_move_mass = cur_mass;
        std::size_t target = a;
        IndexSet target_members;
        double target_norm = 0.0, target_mass = 0.0;

        for (std::size_t b = 0; b < ur; ++b) {
          if (b == a) continue;
          IndexSet with = members[b];
          with.insert(std::upper_bound(with.begin(), with.end(), i), i);
          const double norm_with = principal_norm(H, with);
          double row_b = 0.0;
          for (int m : members[b]) row_b += std::norm(H(i, m)) + std::norm(H(m, i));
          const double mass_with = mass[b] + row_b + std::norm(H(i, i));

          double obj = 0.0;
          double total = 0.0;
          for (std::size_t c = 0; c < ur; ++c) {
            const double nc = c == a ? norm_without : (c == b ? norm_with : norm[c]);
            const double mc = c == a ? mass_without : (c == b ? mass_with : mass[c]);
            obj = std::max(obj, nc);
            total += mc;
          }
          if (obj < best_move_obj || (obj == best_move_obj && total < best_move_mass)) {
            best_move_obj = obj;
            best_move_mass = total;
            target = b;
            target_members = std::move(with);
            target_norm = norm_with;
            target_mass = mass_with;
          }
        }
        if (target != a) {
          members[a] = std::move(without);
          norm[a] = norm_without;
          mass[a] = mass_without;
          members[target] = std::move(target_members);
          norm[target] = target_norm;
          mass[target] = target_mass;
          labels[static_cast<std::size_t>(i)] = static_cast<int>(target);
          moved = true;
          ++moves;
        }
      }
      if (!moved) break;
    }

    const Partition p = Partition(labels, r, true).canonical();
    const BlockNorms bn = block_norms(H, p);
    double total_mass = 0.0;
    for (const auto& block : p.nonempty_members()) total_mass += in_block_mass(H, block);
    if (bn.max < best_obj || (bn.max == best_obj && total_mass < best_mass)) {
      best_obj = bn.max;
      best_mass = total_mass;
      best.partition = p;
      best.norms = bn;
      best.sweeps_used = sweep;
    }
    best.evaluated += moves;
  }
  best.exhaustive = false;
  return best;
}

}  // namespace kslab
