#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kslab/harmonic.hpp"

namespace kslab {

namespace {

// e^{2 pi i m / N} with m reduced first.
Scalar unit_root(long long m, int N) {
  const long long r = ((m % N) + N) % N;
  const double x = 2.0 * std::numbers::pi * static_cast<double>(r) / N;
  return {std::cos(x), std::sin(x)};
}

void require_divides(const GridFunction& g, int K, const char* what) {
  if (g.N() < 1) throw ContractViolation(std::string(what) + ": empty grid");
  if (K < 1 || g.N() % K != 0) {
    throw ContractViolation(std::string(what) + ": K = " + std::to_string(K) + " does not divide N = " +
                            std::to_string(g.N()));
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<Scalar> v) : values(std::move(v)) {
  if (values.empty()) throw ContractViolation("GridFunction: N must be >= 1");
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ContractViolation("GridFunction: non-finite value");
}

GridFunction GridFunction::constant(int N, Scalar c) {
  if (N < 1) throw ContractViolation("GridFunction: N must be >= 1");
  return GridFunction(std::vector<Scalar>(static_cast<std::size_t>(N), c));
}

GridFunction GridFunction::indicator(int N, const IndexSet& cells) {
  GridFunction g = constant(N, 0.0);
  for (int j : cells) {
    if (j < 0 || j >= N) throw ContractViolation("GridFunction::indicator: cell out of range");
    g.values[static_cast<std::size_t>(j)] = 1.0;
  }
  return g;
}

double GridFunction::norm_sq() const {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return s / N();
}

double GridFunction::sup_sq() const {
  double s = 0.0;
  for (const auto& z : values) s = std::max(s, std::norm(z));
  return s;
}

double GridFunction::support_measure() const {
  const auto count = std::count_if(values.begin(), values.end(), [](const Scalar& z) { return z != Scalar(0.0); });
  return static_cast<double>(count) / N();
}

GridFunction translate(const GridFunction& g, int cells) {
  const int N = g.N();
  std::vector<Scalar> out(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) out[static_cast<std::size_t>(j)] = g.values[static_cast<std::size_t>(((j - cells) % N + N) % N)];
  return GridFunction(std::move(out));
}

GridFunction translate_average(const GridFunction& g, int K) {
  require_divides(g, K, "translate_average");
  const int N = g.N();
  const int step = N / K;
  std::vector<Scalar> out(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) s += std::norm(g.values[static_cast<std::size_t>(((j - k * step) % N + N) % N)]);
    out[static_cast<std::size_t>(j)] = s / K;
  }
  return GridFunction(std::move(out));
}

GridFunction gk_component(const GridFunction& g, int K, int k) {
  require_divides(g, K, "gk_component");
  if (k < 0 || k >= K) throw ContractViolation("gk_component: residue must satisfy 0 <= k < K");
  const int N = g.N();
  const int step = N / K;
  std::vector<Scalar> out(static_cast<std::size_t>(N));
  for (int t = 0; t < N; ++t) {
    Scalar s = 0.0;
    for (int j = 0; j < K; ++j)
      s += g.values[static_cast<std::size_t>(((t - j * step) % N + N) % N)] * unit_root(static_cast<long long>(j) * k, K);
    out[static_cast<std::size_t>(t)] = s / static_cast<double>(K);
  }
  return GridFunction(std::move(out));
}

double tt3_identity_check(const GridFunction& g, int K) {
  const GridFunction avg = translate_average(g, K);
  std::vector<double> lhs(static_cast<std::size_t>(g.N()), 0.0);
  for (int k = 0; k < K; ++k) {
    const GridFunction c = gk_component(g, K, k);
    for (int j = 0; j < g.N(); ++j) lhs[static_cast<std::size_t>(j)] += std::norm(c.values[static_cast<std::size_t>(j)]);
  }
  double residual = 0.0;
  for (int j = 0; j < g.N(); ++j)
    residual = std::max(residual, std::abs(lhs[static_cast<std::size_t>(j)] - avg.values[static_cast<std::size_t>(j)].real()));
  return residual;
}

UniformCriterion uniform_paving_criterion(const GridFunction& g, int K, double epsilon) {
  const GridFunction avg = translate_average(g, K);
  const double n2 = g.norm_sq();
  UniformCriterion out;
  out.K = K;
  for (const auto& z : avg.values) out.value = std::max(out.value, std::abs(z.real() - n2));
  out.holds = out.value < epsilon;
  return out;
}

UniformCriterion uniform_feichtinger_criterion(const GridFunction& g, int K, double epsilon) {
  const GridFunction avg = translate_average(g, K);
  UniformCriterion out;
  out.K = K;
  out.value = avg.values[0].real();
  for (const auto& z : avg.values) out.value = std::min(out.value, z.real());
  out.holds = out.value >= epsilon;
  return out;
}

std::vector<TrendPoint> translate_average_trend(const GridFunction& g, const std::vector<int>& Ks) {
  std::vector<TrendPoint> out;
  for (int K : Ks) {
    TrendPoint p;
    p.K = K;
    p.deviation = uniform_paving_criterion(g, K, 0.0).value;
    p.threshold = 10.0 / std::sqrt(static_cast<double>(K));
    p.within = p.deviation <= p.threshold;
    out.push_back(p);
  }
  return out;
}

GridFunction random_trig_polynomial(int N, int degree, std::uint64_t seed) {
  if (N < 1 || degree < 0 || degree > N / 2 - 1) {
    throw ContractViolation("random_trig_polynomial: need 0 <= degree <= N/2 - 1");
  }
  Rng rng(seed);
  std::vector<Scalar> coeff(static_cast<std::size_t>(2 * degree + 1));
  for (auto& c : coeff) c = rng.normal_scalar(Field::complex);
  std::vector<Scalar> out(static_cast<std::size_t>(N), 0.0);
  for (int j = 0; j < N; ++j)
    for (int m = -degree; m <= degree; ++m)
      out[static_cast<std::size_t>(j)] += coeff[static_cast<std::size_t>(m + degree)] * unit_root(static_cast<long long>(m) * j, N);
  return GridFunction(std::move(out));
}

E1Set example_e1_set(int N, int levels, double c) {
  if (levels < 1) throw ContractViolation("example_e1_set: levels must be >= 1");
  if (!(c > 0.0) || c >= 1.0) throw ContractViolation("example_e1_set: need 0 < c < 1 so that sum n a_n < 1");
  long long l = 1;
  for (int n = 1; n <= levels; ++n) l = std::lcm(l, static_cast<long long>(n));
  if (N < 1 || N % l != 0) {
    throw ContractViolation("example_e1_set: N = " + std::to_string(N) + " is not divisible by lcm(1.." +
                            std::to_string(levels) + ") = " + std::to_string(l));
  }
  E1Set out;
  out.c = c;
  std::vector<char> used(static_cast<std::size_t>(N), 0);
  std::vector<long long> want(static_cast<std::size_t>(levels) + 1, 0);
  double target_cells = 0.0;
  long long planned = 0;
  for (int n = 1; n <= levels; ++n) {
    const double a_n = c / (n * std::pow(2.0, n));
    out.target_measure += n * a_n;
    target_cells += n * a_n * N;
    // cumulative rounding keeps the total within n/2 cells of the target
    want[n] = std::max<long long>(1, std::llround((target_cells - static_cast<double>(planned)) / n));
    planned += want[n] * n;
  }
  // Finest period first: an occupied cell blocks at most one base slot of a
  // coarser level, so every level finds room when sum n a_n < 1.
  out.level_cells.resize(static_cast<std::size_t>(levels));
  out.base_cells.resize(static_cast<std::size_t>(levels));
  for (int n = levels; n >= 1; --n) {
    const int period = N / n;
    IndexSet level;
    long long found = 0;
    for (int s = 0; s < period && found < want[n]; ++s) {
      bool free = true;
      for (int k = 0; k < n && free; ++k) free = !used[static_cast<std::size_t>(s + k * period)];
      if (!free) continue;
      for (int k = 0; k < n; ++k) {
        used[static_cast<std::size_t>(s + k * period)] = 1;
        level.push_back(s + k * period);
      }
      ++found;
    }
    if (found < want[n]) throw ContractViolation("example_e1_set: grid too coarse to place level " + std::to_string(n));
    std::sort(level.begin(), level.end());
    out.base_cells[static_cast<std::size_t>(n - 1)] = static_cast<int>(found);
    out.level_cells[static_cast<std::size_t>(n - 1)] = std::move(level);
  }
  IndexSet E, Ec;
  for (int j = 0; j < N; ++j) (used[static_cast<std::size_t>(j)] ? E : Ec).push_back(j);
  out.set_indicator = GridFunction::indicator(N, E);
  out.symbol = GridFunction::indicator(N, Ec);
  out.measure = static_cast<double>(E.size()) / N;
  return out;
}

// ---------------------------------------------------------------------------

void require_alias_free(const std::vector<int>& freqs, int N) {
  std::vector<int> sorted = freqs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractViolation("frequency set has repeated entries");
  }
  for (int n : freqs) {
    if (std::abs(n) > N / 2 - 1) {
      throw ContractViolation("frequency " + std::to_string(n) + " aliases on a grid of " + std::to_string(N) +
                              " points (need |n| <= N/2 - 1)");
    }
  }
}

Matrix toeplitz_section(const GridFunction& E, const std::vector<int>& freqs) {
  const int N = E.N();
  require_alias_free(freqs, N);
  // Fourier coefficients of chi_E at every difference n_a - n_b
  const auto m = static_cast<Index>(freqs.size());
  Matrix M(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      const long long d = static_cast<long long>(freqs[static_cast<std::size_t>(a)]) - freqs[static_cast<std::size_t>(b)];
      if (b < a) {
        M(a, b) = std::conj(M(b, a));
        continue;
      }
      Scalar s = 0.0;
      for (int j = 0; j < N; ++j)
        if (E.values[static_cast<std::size_t>(j)] != Scalar(0.0)) s += E.values[static_cast<std::size_t>(j)] * unit_root(d * j, N);
      M(a, b) = s / static_cast<double>(N);
    }
  }
  return M;
}

DistributionReport distribution_check(const GridFunction& E, const std::vector<std::vector<int>>& blocks,
                                      double epsilon) {
  for (const auto& z : E.values)
    if (z != Scalar(0.0) && z != Scalar(1.0)) throw ContractViolation("distribution_check: E must be a 0/1 indicator");
  DistributionReport rep;
  rep.epsilon = epsilon;
  rep.measure = E.support_measure();
  rep.notes.push_back("grid semantics: N = " + std::to_string(E.N()));
  const double lo = (1.0 - epsilon) * rep.measure;
  const double hi = (1.0 + epsilon) * rep.measure;
  const double slack = 1e-12;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].empty()) continue;
    const RealVector ev = sym_eigenvalues(toeplitz_section(E, blocks[j]));
    const double mn = ev(0), mx = ev(ev.size() - 1);
    rep.block_min.push_back(mn);
    rep.block_max.push_back(mx);
    for (double v : {mn, mx}) {
      const double dev = rep.measure > 0.0 ? std::abs(v / rep.measure - 1.0) : std::abs(v);
      if (dev > rep.worst_relative_deviation || !rep.worst_block) {
        rep.worst_relative_deviation = dev;
        rep.worst_eigenvalue = v;
        rep.worst_block = static_cast<int>(j);
      }
    }
    if (mn < lo - slack || mx > hi + slack) rep.verdict = false;
  }
  return rep;
}

std::vector<std::vector<int>> arithmetic_progression_partition(const std::vector<int>& freqs, int stride) {
  if (stride < 1) throw ContractViolation("arithmetic_progression_partition: stride must be >= 1");
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(stride));
  for (int n : freqs) blocks[static_cast<std::size_t>(((n % stride) + stride) % stride)].push_back(n);
  std::erase_if(blocks, [](const std::vector<int>& b) { return b.empty(); });
  return blocks;
}

int separated_stride(double epsilon, double measure) {
  if (!(epsilon > 0.0) || !(measure > 0.0)) throw ContractViolation("separated_stride: epsilon and |E| must be positive");
  return static_cast<int>(std::ceil(1.0 / (epsilon * measure)));
}

}  // namespace kslab
