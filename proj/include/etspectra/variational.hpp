#pragma once

#include "etspectra/core.hpp"

namespace etspectra {

// Oscillator trial state of index n (0 or 1) and scale lambda, optimized over lambda.
struct VariationalResult {
  int n = 0;
  double lambda_opt = 0.0;
  double energy = 0.0;
  int iterations = 0;
};

// <n, lambda| T + V |n, lambda> for T = p^2/2; <p^2> = lambda^2 (n + 1/2) and <V> by quadrature.
double variational_expectation(const HamiltonianModel& model, int n, double lambda);

// d/dlambda of variational_expectation, with the potential part differentiated under the integral.
double variational_slope(const HamiltonianModel& model, int n, double lambda);

VariationalResult variational_energy(const HamiltonianModel& model, int n);
VariationalResult variational_energy(double D, int n);

}  // namespace etspectra
