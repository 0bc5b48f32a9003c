#pragma once

#include <span>
#include <utility>
#include <vector>

#include "etspectra/core.hpp"
#include "etspectra/envelope_solver.hpp"

namespace etspectra {

// Physicists' Hermite polynomial by the three-term recurrence.
double hermite_eval(int n, double z);

// Normalized oscillator eigenfunction of index k and scale lambda on the full line.
// Uses the recurrence on H_k / sqrt(2^k k!) so large k does not overflow.
double oscillator_function(int k, double lambda, double x);

struct WavefunctionSample {
  int n = 0;
  double lambda = 0.0;
  DomainKind domain = DomainKind::FullLine;
  std::vector<double> grid;
  std::vector<double> values;
  double norm_estimate = 0.0;  // trapezoid integral of |psi|^2 over the grid
};

// Approximate eigenfunction of an envelope solution; half-line states carry the sqrt(2)
// normalization factor.
double et_wavefunction(const EtSolution& sol, double x);

WavefunctionSample sample_wavefunction(const EtSolution& sol, std::span<const double> grid);

// 2001 points over [-8/lambda, 8/lambda], or [0, 8/lambda] on the half line.
std::vector<double> default_wavefunction_grid(const EtSolution& sol, int points = 2001);

// Strict sign changes of the sampled values, ignoring entries below a small fraction of the peak.
int count_nodes(std::span<const double> values);

double trapezoid(std::span<const double> grid, std::span<const double> values);

// (<x^2>, <p^2>) by quadrature of the sample; <p^2> uses fourth-order central differences.
std::pair<double, double> moment_check(const WavefunctionSample& sample, const EtSolution& sol);

}  // namespace etspectra
