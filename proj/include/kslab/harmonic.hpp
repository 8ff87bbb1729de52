#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/core.hpp"

namespace kslab {

/// Samples g(j / N), j = 0..N-1, of a function on [0, 1).
/// Norm convention: ||g||^2 = (1/N) sum_j |g_j|^2.
struct GridFunction {
  std::vector<Scalar> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<Scalar> v);
  static GridFunction constant(int N, Scalar c);
  /// 0/1 indicator of the grid cells in `cells`.
  static GridFunction indicator(int N, const IndexSet& cells);

  int N() const { return static_cast<int>(values.size()); }
  double norm_sq() const;
  double sup_sq() const;  // max_j |g_j|^2
  /// (1/N) * number of cells with nonzero value.
  double support_measure() const;
};

/// g(t - cells / N).
GridFunction translate(const GridFunction& g, int cells);

/// (1/K) sum_k |g(t - k/K)|^2. Requires K | N.
GridFunction translate_average(const GridFunction& g, int K);

/// (1/K) sum_j g(t - j/K) e^{2 pi i j k / K}: the part of g with frequencies = k mod K.
GridFunction gk_component(const GridFunction& g, int K, int k);

/// max_j | sum_k |g_k^K(j)|^2 - g_K(j) |.
double tt3_identity_check(const GridFunction& g, int K);

struct UniformCriterion {
  bool holds = false;
  double value = 0.0;  // paving: max deviation; Feichtinger: min of g_K
  int K = 0;
};

/// max_j |g_K(j) - ||g||^2| < epsilon.
UniformCriterion uniform_paving_criterion(const GridFunction& g, int K, double epsilon);

/// min_j g_K(j) >= epsilon.
UniformCriterion uniform_feichtinger_criterion(const GridFunction& g, int K, double epsilon);

struct TrendPoint {
  int K = 0;
  double deviation = 0.0;  // max_j |g_K(j) - ||g||^2|
  double threshold = 0.0;  // 10 / sqrt(K)
  bool within = false;
};

/// Deviation of translate averages from ||g||^2 along the divisors of N in `Ks`.
std::vector<TrendPoint> translate_average_trend(const GridFunction& g, const std::vector<int>& Ks);

/// Random trigonometric polynomial sum_{|m| <= degree} c_m e^{2 pi i m t} on the grid.
GridFunction random_trig_polynomial(int N, int degree, std::uint64_t seed);

struct E1Set {
  GridFunction set_indicator;   // chi_E
  GridFunction symbol;          // chi of the complement of E
  std::vector<IndexSet> level_cells;  // grid cells of E_n, n = 1..levels
  std::vector<int> base_cells;  // cells of F_n
  double c = 0.4;
  double target_measure = 0.0;  // sum_n n a_n with a_n = c / (n 2^n)
  double measure = 0.0;         // |E| on the grid
};

/// Grid version of the set E = union_n union_k (F_n + k/n), F_n in [0, 1/n),
/// |F_n| ~ a_n. Requires lcm(1..levels) | N. The E_n are placed disjoint.
E1Set example_e1_set(int N, int levels, double c = 0.4);

/// Frequencies with |n| <= N/2 - 1.
void require_alias_free(const std::vector<int>& freqs, int N);

/// M_ab = (1/N) sum_j chi_E(j) e^{2 pi i (n_a - n_b) j / N}.
Matrix toeplitz_section(const GridFunction& E, const std::vector<int>& freqs);

struct DistributionReport {
  bool verdict = true;
  double measure = 0.0;  // |E|
  double epsilon = 0.0;
  std::vector<double> block_min;
  std::vector<double> block_max;
  std::optional<int> worst_block;
  double worst_eigenvalue = 0.0;
  double worst_relative_deviation = 0.0;  // max |lambda / |E| - 1|
  std::vector<std::string> notes;
};

/// Every block's Toeplitz section has spectrum in [(1 - eps)|E|, (1 + eps)|E|].
DistributionReport distribution_check(const GridFunction& E, const std::vector<std::vector<int>>& blocks,
                                      double epsilon);

/// Residue classes of `freqs` modulo `stride`, empty classes dropped.
std::vector<std::vector<int>> arithmetic_progression_partition(const std::vector<int>& freqs, int stride);

/// ceil(1 / (epsilon * measure)): block separation making 1/stride <= epsilon |E|.
int separated_stride(double epsilon, double measure);

struct MvResult {
  double theta = 0.0;
  double integral = 0.0;         // at 2 * quad_N
  double integral_coarse = 0.0;  // at quad_N
  double quadrature_error = 0.0;  // Richardson estimate |I_2N - I_N| / 15
  double separation = 0.0;
  double coefficient_mass = 0.0;  // sum |a|^2
  int quad_N = 0;
};

/// theta = delta (I / sum|a|^2 - T) with I = int_0^T |sum a_n e^{2 pi i lambda_n t}|^2 dt
/// by composite Simpson. delta defaults to the minimal separation; a supplied
/// delta larger than that is a contract violation. quad_N = 0 picks
/// max(256, 64 T max|lambda|) rounded up to even.
MvResult montgomery_vaughan_theta(const std::vector<double>& freqs, const std::vector<Scalar>& coeffs, double T,
                                  int quad_N = 0, std::optional<double> delta = std::nullopt);

struct PerturbationBounds {
  double L = 0.0;  // admissible perturbation radius (Kadec form only)
  double lower = 0.0;
  double upper = 0.0;
  bool valid = false;
};

/// L(gamma) = pi/(4 gamma) - (1/gamma) asin((1 - sqrt(A/B)) / sqrt 2),
/// upper = B (2 - cos(gamma delta) + sin(gamma delta))^2,
/// lower = A (1 - sqrt(A/B) (1 - cos(gamma delta) + sin(gamma delta)))^2, valid = delta < L.
PerturbationBounds kadec_bounds(double A, double B, double gamma, double delta);

/// lower = A (1 - lambda - mu/sqrt A)^2, upper = B (1 + lambda + mu/sqrt B)^2,
/// valid = lambda + mu/sqrt A < 1.
PerturbationBounds christensen_bounds(double A, double B, double lambda, double mu);

struct KadecCheck {
  int N = 0;
  double delta = 0.0;       // max |delta_n|
  double lambda_min = 0.0;  // of the Gram matrix
  double lambda_max = 0.0;
  double predicted_lower = 0.0;
  double edge_tolerance = 0.05;
  bool passed = false;
};

/// Gram matrix of e^{2 pi i (n + delta_n) t} on [0, 1], n = -N..N, from closed-form
/// integrals. perturbations has 2N + 1 entries (n = -N first).
KadecCheck kadec_empirical_check(const std::vector<double>& perturbations);

/// int_0^1 e^{2 pi i d t} dt.
Scalar exponential_integral(double d);

}  // namespace kslab
