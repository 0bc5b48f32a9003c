#include "etspectra/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "etspectra/error.hpp"

namespace etspectra {

double hermite_eval(int n, double z) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "Hermite degree must be non-negative");
  double prev = 1.0;
  if (n == 0) return prev;
  double curr = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * z * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double oscillator_function(int k, double lambda, double x) {
  const double xi = lambda * x;
  // Gaussian folded into the seed: keeps h_k * exp(-xi^2/2) finite for large k and |xi|.
  double prev = std::sqrt(lambda) * std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (k == 0) return prev;
  double curr = std::numbers::sqrt2 * xi * prev;
  for (int j = 1; j < k; ++j) {
    const double next = std::sqrt(2.0 / (j + 1)) * xi * curr - std::sqrt(double(j) / (j + 1)) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double et_wavefunction(const EtSolution& sol, double x) {
  const double psi = oscillator_function(oscillator_index(sol.n, sol.domain), sol.lambda(), x);
  return sol.domain == DomainKind::HalfLine ? std::numbers::sqrt2 * psi : psi;
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    sum += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
  return sum;
}

WavefunctionSample sample_wavefunction(const EtSolution& sol, std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorKind::EmptyGrid, "wavefunction grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorKind::NonMonotoneGrid, "grid must be strictly increasing");
  if (sol.domain == DomainKind::HalfLine && grid.front() < 0.0)
    throw Error(ErrorKind::DomainViolation, "half-line grid contains negative positions");

  WavefunctionSample sample;
  sample.n = sol.n;
  sample.lambda = sol.lambda();
  sample.domain = sol.domain;
  sample.grid.assign(grid.begin(), grid.end());
  sample.values.reserve(grid.size());
  std::vector<double> density;
  density.reserve(grid.size());
  for (double x : grid) {
    const double psi = et_wavefunction(sol, x);
    sample.values.push_back(psi);
    density.push_back(psi * psi);
  }
  sample.norm_estimate = trapezoid(sample.grid, density);
  return sample;
}

std::vector<double> default_wavefunction_grid(const EtSolution& sol, int points) {
  if (points < 2) throw Error(ErrorKind::EmptyGrid, "need at least two grid points");
  const double reach = 8.0 / sol.lambda();
  const double lo = sol.domain == DomainKind::FullLine ? -reach : 0.0;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = lo + (reach - lo) * i / (points - 1);
  return grid;
}

int count_nodes(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double floor = 1e-8 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

std::pair<double, double> moment_check(const WavefunctionSample& sample, const EtSolution& sol) {
  if (sample.n != sol.n || sample.domain != sol.domain)
    throw Error(ErrorKind::InvalidParameter, "sample and solution describe different levels");
  const auto& x = sample.grid;
  const auto& psi = sample.values;
  const std::size_t count = x.size();
  if (count < 5) throw Error(ErrorKind::EmptyGrid, "moment check needs at least five points");
  const double h = (x.back() - x.front()) / double(count - 1);
  for (std::size_t i = 1; i < count; ++i)
    if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * h) throw Error(ErrorKind::NonUniformGrid, "moment check needs a uniform grid");

  const double tail = std::abs(1.0 - sample.norm_estimate);
  if (tail > 1e-8)
    throw Error(ErrorKind::GridTooNarrow, "probability outside the grid is " + std::to_string(tail));

  // Ghost points: odd reflection through a half-line origin, zero beyond a truncated tail.
  const bool reflect = sample.domain == DomainKind::HalfLine && x.front() == 0.0;
  auto at = [&](std::ptrdiff_t i) -> double {
    if (i >= 0 && i < std::ptrdiff_t(count)) return psi[i];
    if (i < 0 && reflect) return -psi[-i];
    return 0.0;
  };

  std::vector<double> x2(count), dpsi2(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = std::ptrdiff_t(i);
    const double d = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
    x2[i] = x[i] * x[i] * psi[i] * psi[i];
    dpsi2[i] = d * d;
  }
  return {trapezoid(x, x2), trapezoid(x, dpsi2)};
}

}  // namespace etspectra
