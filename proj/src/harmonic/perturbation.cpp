#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kslab/harmonic.hpp"

namespace kslab {

namespace {

double simpson(const std::vector<double>& freqs, const std::vector<Scalar>& coeffs, double T, int n) {
  const double h = T / n;
  auto f = [&](double t) {
    Scalar s = 0.0;
    for (std::size_t k = 0; k < freqs.size(); ++k) s += coeffs[k] * std::polar(1.0, 2.0 * std::numbers::pi * freqs[k] * t);
    return std::norm(s);
  };
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(i * h);
  return h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(T));
}

}  // namespace

MvResult montgomery_vaughan_theta(const std::vector<double>& freqs, const std::vector<Scalar>& coeffs, double T,
                                  int quad_N, std::optional<double> delta) {
  if (freqs.empty() || freqs.size() != coeffs.size()) {
    throw ContractViolation("montgomery_vaughan_theta: need matching nonempty frequency and coefficient lists");
  }
  if (!(T > 0.0)) throw ContractViolation("montgomery_vaughan_theta: T must be positive");
  std::vector<double> sorted = freqs;
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  if (!(gap > 0.0)) throw ContractViolation("montgomery_vaughan_theta: frequencies are not separated");
  MvResult out;
  if (delta) {
    if (!(*delta > 0.0) || *delta > gap) {
      throw ContractViolation("montgomery_vaughan_theta: separation " + std::to_string(gap) + " is below delta = " +
                              std::to_string(*delta));
    }
    out.separation = *delta;
  } else {
    out.separation = std::isfinite(gap) ? gap : 1.0;  // one frequency: any delta works
  }

  double lam = 0.0;
  for (double x : freqs) lam = std::max(lam, std::abs(x));
  const int needed = static_cast<int>(std::ceil(64.0 * T * lam));
  if (quad_N == 0) quad_N = std::max(256, needed);
  if (quad_N < needed) {
    throw ContractViolation("montgomery_vaughan_theta: quad_N must be >= 64 T max|lambda| = " + std::to_string(needed));
  }
  if (quad_N % 2) ++quad_N;
  out.quad_N = quad_N;

  for (const auto& a : coeffs) out.coefficient_mass += std::norm(a);
  if (!(out.coefficient_mass > 0.0)) throw ContractViolation("montgomery_vaughan_theta: coefficients are all zero");
  out.integral_coarse = simpson(freqs, coeffs, T, quad_N);
  out.integral = simpson(freqs, coeffs, T, 2 * quad_N);
  out.quadrature_error = std::abs(out.integral - out.integral_coarse) / 15.0;
  out.theta = out.separation * (out.integral / out.coefficient_mass - T);
  return out;
}

PerturbationBounds kadec_bounds(double A, double B, double gamma, double delta) {
  if (!(A > 0.0) || A > B) throw ContractViolation("kadec_bounds: need 0 < A <= B");
  if (!(gamma > 0.0)) throw ContractViolation("kadec_bounds: gamma must be positive");
  if (delta < 0.0) throw ContractViolation("kadec_bounds: delta must be >= 0");
  const double ratio = std::sqrt(A / B);
  PerturbationBounds out;
  out.L = std::numbers::pi / (4.0 * gamma) - std::asin((1.0 - ratio) / std::numbers::sqrt2) / gamma;
  const double c = std::cos(gamma * delta);
  const double s = std::sin(gamma * delta);
  out.upper = B * (2.0 - c + s) * (2.0 - c + s);
  const double inner = 1.0 - ratio * (1.0 - c + s);
  out.lower = A * inner * inner;
  out.valid = delta < out.L;
  return out;
}

PerturbationBounds christensen_bounds(double A, double B, double lambda, double mu) {
  if (!(A > 0.0) || !(B > 0.0)) throw ContractViolation("christensen_bounds: A and B must be positive");
  if (lambda < 0.0 || mu < 0.0) throw ContractViolation("christensen_bounds: lambda and mu must be >= 0");
  PerturbationBounds out;
  const double lo = 1.0 - lambda - mu / std::sqrt(A);
  const double hi = 1.0 + lambda + mu / std::sqrt(B);
  out.lower = A * lo * lo;
  out.upper = B * hi * hi;
  out.valid = lambda + mu / std::sqrt(A) < 1.0;
  return out;
}

Scalar exponential_integral(double d) {
  if (d == 0.0) return 1.0;
  const double x = 2.0 * std::numbers::pi * d;
  // e^{ix} - 1 = -2 sin^2(x/2) + i sin x, free of cancellation for small x
  const double h = std::sin(x / 2.0);
  const Scalar num(-2.0 * h * h, std::sin(x));
  return num / Scalar(0.0, x);
}

KadecCheck kadec_empirical_check(const std::vector<double>& perturbations) {
  if (perturbations.empty() || perturbations.size() % 2 == 0) {
    throw ContractViolation("kadec_empirical_check: need 2N + 1 perturbations");
  }
  KadecCheck out;
  out.N = static_cast<int>(perturbations.size() / 2);
  for (double d : perturbations) {
    if (!std::isfinite(d)) throw ContractViolation("kadec_empirical_check: non-finite perturbation");
    out.delta = std::max(out.delta, std::abs(d));
  }
  if (out.delta >= 0.25) throw ContractViolation("kadec_empirical_check: sup |delta_n| must be < 1/4");
  const auto m = static_cast<Index>(perturbations.size());
  std::vector<double> mu(perturbations.size());
  for (Index i = 0; i < m; ++i) mu[static_cast<std::size_t>(i)] = static_cast<double>(i - out.N) + perturbations[static_cast<std::size_t>(i)];
  Matrix G(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) G(a, b) = exponential_integral(mu[static_cast<std::size_t>(a)] - mu[static_cast<std::size_t>(b)]);
  const RealVector ev = sym_eigenvalues(G);
  out.lambda_min = ev(0);
  out.lambda_max = ev(ev.size() - 1);
  out.predicted_lower = kadec_bounds(1.0, 1.0, std::numbers::pi, out.delta).lower;
  out.passed = out.lambda_min >= out.predicted_lower - out.edge_tolerance;
  return out;
}

}  // namespace kslab
