#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "etspectra/core.hpp"

namespace etspectra {

// Periodic Fourier grid with an odd number of points, symmetric about the origin.
// Full-line grids are uniform on [-x_max, x_max]. Half-line problems use the odd sector of
// that grid (an infinite wall at the origin) and may be mapped,
//   x = u - (1 - map_beta) * map_width * tanh(u / map_width),
// which shrinks the spacing near the origin by map_beta; map_beta = 1 is the uniform grid.
struct GridSpec {
  int n_points = 1025;
  double x_max = 40.0;
  DomainKind domain = DomainKind::FullLine;
  double map_beta = 1.0;
  double map_width = 1.0;

  void validate() const;
  // Uniform spacing in the (possibly mapped) grid coordinate.
  double spacing() const;
  // Grid-coordinate extent whose image is x_max.
  double coordinate_extent() const;
  double map(double u) const;
  double jacobian(double u) const;
  double unmap(double x) const;

  bool operator==(const GridSpec&) const = default;
};

struct GridEigenResult {
  GridSpec spec;
  std::vector<double> positions;  // where eigenvector components live
  std::vector<double> weights;    // quadrature weights: sum_i w_i psi_i^2 = 1
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;   // column k is psi_k sampled at positions
  std::vector<double> convergence_estimate;

  int levels() const { return int(eigenvalues.size()); }
  // Trigonometric interpolation of psi_level at an arbitrary x (zero outside the box).
  double interpolate(int level, double x) const;
  // sum_i w_i f(x_i) psi_level(x_i)
  double overlap(int level, const std::function<double(double)>& f) const;
};

// Kinetic matrix element of the uniform periodic grid, T = p^2/2, between points offset by t.
double fgh_kinetic_element(int t, int n_points, double spacing);

GridEigenResult fgh_solve(const HamiltonianModel& model, const GridSpec& spec, int n_levels);

// Grid sized from the envelope solution of the lowest and highest requested levels.
GridSpec default_grid(const HamiltonianModel& model, int n_levels);

// Same box, 2N - 1 points (spacing halved).
GridSpec refine(const GridSpec& spec);

// Solves on spec and on refine(spec); the estimates are |E_refined - E_spec|.
GridEigenResult fgh_solve_certified(const HamiltonianModel& model, const GridSpec& spec, int n_levels);

struct ConvergenceStep {
  GridSpec spec;
  std::vector<double> eigenvalues;
  std::vector<double> deltas;  // vs the previous step; empty for the base grid
};

// Four refinements alternating: doubled point count, then doubled box at fixed point count.
std::vector<ConvergenceStep> convergence_sweep(const HamiltonianModel& model, const GridSpec& base, int n_levels);

struct ExtrapolatedLevels {
  std::vector<double> energies;
  std::vector<double> estimates;
};

// Two-grid Richardson extrapolation assuming error ~ spacing^order. Used for half-line
// problems with a Coulomb-like origin, where the odd-sector grid converges algebraically.
ExtrapolatedLevels fgh_extrapolate(const HamiltonianModel& model, const GridSpec& spec, int n_levels,
                                   int order = 2);

}  // namespace etspectra
