#include "etspectra/fgh.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "etspectra/envelope_solver.hpp"
#include "etspectra/error.hpp"

namespace etspectra {

namespace {

constexpr double kPi = std::numbers::pi;

int half_count(const GridSpec& spec) { return (spec.n_points - 1) / 2; }

// Fourier differentiation element of the odd periodic grid, d/du between points offset by t.
double derivative_element(int t, int n_points, double spacing) {
  if (t % n_points == 0) return 0.0;
  const double length = n_points * spacing;
  const double sign = (t % 2 == 0) ? 1.0 : -1.0;
  return (kPi / length) * sign / std::sin(kPi * t / n_points);
}

struct SectorEigen {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};

// Lowest `count` eigenpairs of a dense symmetric matrix (upper triangle referenced).
// Householder reduction in Eigen, then bisection and inverse iteration on the tridiagonal
// form. The blocked dsytrd path goes through level-3 BLAS, whose AVX-512 kernels return
// wrong vectors on some OpenBLAS builds, so it is avoided.
SectorEigen lowest_eigenpairs(Eigen::MatrixXd h, int count) {
  const lapack_int dim = lapack_int(h.rows());
  count = std::min<int>(count, dim);
  h.triangularView<Eigen::StrictlyLower>() = h.transpose();
  const Eigen::MatrixXd original = h;
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(std::move(h));
  Eigen::VectorXd diag = tri.diagonal();
  Eigen::VectorXd sub = tri.subDiagonal();

  lapack_int found = 0, n_split = 0;
  std::vector<double> w(dim);
  std::vector<lapack_int> block(dim), split(dim), fail(std::max(count, 1));
  lapack_int info = LAPACKE_dstebz('I', 'B', dim, 0.0, 0.0, 1, count, 0.0, diag.data(), sub.data(), &found, &n_split,
                                   w.data(), block.data(), split.data());
  if (info != 0 || found != count)
    throw Error(ErrorKind::EigensolverFailure, "dstebz returned info=" + std::to_string(info));
  Eigen::MatrixXd z(dim, count);
  info = LAPACKE_dstein(LAPACK_COL_MAJOR, dim, diag.data(), sub.data(), found, w.data(), block.data(), split.data(),
                        z.data(), dim, fail.data());
  if (info != 0) throw Error(ErrorKind::EigensolverFailure, "dstein returned info=" + std::to_string(info));
  const Eigen::MatrixXd vectors = tri.matrixQ() * z;

  // Block ordering groups eigenvalues by split point; sort globally.
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
  SectorEigen out;
  out.vectors.resize(dim, count);
  const double scale = original.cwiseAbs().maxCoeff();
  for (int k = 0; k < count; ++k) {
    out.values.push_back(w[order[k]]);
    out.vectors.col(k) = vectors.col(order[k]);
    const double residual = (original * out.vectors.col(k) - out.values[k] * out.vectors.col(k)).norm();
    if (!(residual <= 1e-9 * scale * std::sqrt(double(dim))))
      throw Error(ErrorKind::EigensolverFailure, "eigenpair residual " + std::to_string(residual));
  }
  return out;
}

std::vector<double> sample_potential(const HamiltonianModel& model, std::span<const double> x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    v[i] = model.potential.value(x[i]);
    if (!std::isfinite(v[i]))
      throw Error(ErrorKind::SingularPotentialOnGrid,
                  model.label + " is not finite at grid point x=" + std::to_string(x[i]));
  }
  return v;
}

// First significant component positive; tails at the box edge are round-off.
void fix_phase(Eigen::Ref<Eigen::VectorXd> psi) {
  const double peak = psi.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (std::abs(psi[i]) > 1e-6 * peak) {
      if (psi[i] < 0.0) psi = -psi;
      return;
    }
  }
}

GridEigenResult solve_full_line(const HamiltonianModel& model, const GridSpec& spec, int n_levels) {
  const int n = half_count(spec);
  const int N = spec.n_points;
  const double h = spec.spacing();

  GridEigenResult result;
  result.spec = spec;
  result.positions.resize(N);
  for (int j = -n; j <= n; ++j) result.positions[j + n] = j * h;
  result.weights.assign(N, h);
  const auto v = sample_potential(model, result.positions);

  std::vector<double> kinetic(2 * n + 1);
  for (int t = 0; t <= 2 * n; ++t) kinetic[t] = fgh_kinetic_element(t, N, h);
  auto T = [&](int t) { return kinetic[std::abs(t)]; };

  bool even = true;
  for (int j = 1; j <= n && even; ++j)
    even = std::abs(v[n + j] - v[n - j]) <= 1e-12 * (1.0 + std::abs(v[n + j]));

  struct Candidate {
    double energy;
    Eigen::VectorXd psi;
  };
  std::vector<Candidate> states;

  if (even) {
    // Parity sectors: basis e_0, (e_j + e_-j)/sqrt2 and (e_j - e_-j)/sqrt2.
    Eigen::MatrixXd he(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int l = 0; l <= n; ++l) he(i, l) = T(i - l) + T(i + l);
    he.row(0) /= std::numbers::sqrt2;
    he.col(0) /= std::numbers::sqrt2;
    for (int i = 0; i <= n; ++i) he(i, i) += v[n + i];

    Eigen::MatrixXd ho(n, n);
    for (int i = 1; i <= n; ++i)
      for (int l = 1; l <= n; ++l) ho(i - 1, l - 1) = T(i - l) - T(i + l) + (i == l ? v[n + i] : 0.0);

    const auto se = lowest_eigenpairs(std::move(he), n_levels);
    const auto so = lowest_eigenpairs(std::move(ho), n_levels);
    const double scale = 1.0 / std::sqrt(h);
    for (std::size_t k = 0; k < se.values.size(); ++k) {
      Eigen::VectorXd psi(N);
      psi[n] = se.vectors(0, k) * scale;
      for (int j = 1; j <= n; ++j) psi[n + j] = psi[n - j] = se.vectors(j, k) * scale / std::numbers::sqrt2;
      states.push_back({se.values[k], std::move(psi)});
    }
    for (std::size_t k = 0; k < so.values.size(); ++k) {
      Eigen::VectorXd psi(N);
      psi[n] = 0.0;
      for (int j = 1; j <= n; ++j) {
        psi[n + j] = so.vectors(j - 1, k) * scale / std::numbers::sqrt2;
        psi[n - j] = -psi[n + j];
      }
      states.push_back({so.values[k], std::move(psi)});
    }
  } else {
    Eigen::MatrixXd hf(N, N);
    for (int i = 0; i < N; ++i)
      for (int l = 0; l < N; ++l) hf(i, l) = T(i - l) + (i == l ? v[i] : 0.0);
    const auto sf = lowest_eigenpairs(std::move(hf), n_levels);
    for (std::size_t k = 0; k < sf.values.size(); ++k)
      states.push_back({sf.values[k], sf.vectors.col(Eigen::Index(k)) / std::sqrt(h)});
  }

  std::stable_sort(states.begin(), states.end(),
                   [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
  result.eigenvectors.resize(N, n_levels);
  for (int k = 0; k < n_levels; ++k) {
    result.eigenvalues.push_back(states[k].energy);
    result.eigenvectors.col(k) = states[k].psi;
    fix_phase(result.eigenvectors.col(k));
  }
  result.convergence_estimate.assign(n_levels, std::numeric_limits<double>::quiet_NaN());
  return result;
}

GridEigenResult solve_half_line(const HamiltonianModel& model, const GridSpec& spec, int n_levels) {
  const int n = half_count(spec);
  const int N = spec.n_points;
  const double h = spec.spacing();

  GridEigenResult result;
  result.spec = spec;
  std::vector<double> u(n + 1), jac(n + 1), wdiag(n + 1), s(n + 1);
  for (int j = 0; j <= n; ++j) {
    u[j] = j * h;
    jac[j] = spec.jacobian(u[j]);
    wdiag[j] = 1.0 / jac[j];
    s[j] = 1.0 / std::sqrt(jac[j]);
  }
  result.positions.resize(n);
  result.weights.resize(n);
  for (int j = 1; j <= n; ++j) {
    result.positions[j - 1] = spec.map(u[j]);
    result.weights[j - 1] = h * jac[j];
  }
  const auto v = sample_potential(model, result.positions);

  // Mapped kinetic operator (1/2) S D^T W D S restricted to odd vectors (e_j - e_-j)/sqrt2.
  // Column i of D S P is even in the row index, so rows k > 0 count twice.
  Eigen::MatrixXd b(n + 1, n);
  for (int k = 0; k <= n; ++k) {
    const double row_weight = std::sqrt((k == 0 ? 1.0 : 2.0) * wdiag[k]);
    for (int i = 1; i <= n; ++i)
      b(k, i - 1) = row_weight * (derivative_element(k - i, N, h) - derivative_element(k + i, N, h));
  }
  Eigen::MatrixXd hmat = Eigen::MatrixXd::Zero(n, n);
  hmat.selfadjointView<Eigen::Upper>().rankUpdate(b.transpose(), 0.25);
  for (int i = 0; i < n; ++i)
    for (int l = i; l < n; ++l) hmat(i, l) *= s[i + 1] * s[l + 1];
  for (int i = 0; i < n; ++i) hmat(i, i) += v[i];

  const auto so = lowest_eigenpairs(std::move(hmat), n_levels);
  result.eigenvectors.resize(n, Eigen::Index(so.values.size()));
  for (std::size_t k = 0; k < so.values.size(); ++k) {
    result.eigenvalues.push_back(so.values[k]);
    for (int j = 0; j < n; ++j) result.eigenvectors(j, Eigen::Index(k)) = so.vectors(j, k) / std::sqrt(result.weights[j]);
    fix_phase(result.eigenvectors.col(Eigen::Index(k)));
  }
  result.convergence_estimate.assign(so.values.size(), std::numeric_limits<double>::quiet_NaN());
  return result;
}

// Periodic interpolant through one grid point: sin(pi t) / (N sin(pi t / N)), t in spacings.
double dirichlet_kernel(double t, int n_points) {
  const double denom = n_points * std::sin(kPi * t / n_points);
  if (std::abs(t) < 1e-12) return 1.0;
  return std::sin(kPi * t) / denom;
}

}  // namespace

void GridSpec::validate() const {
  if (n_points < 65 || n_points % 2 == 0)
    throw Error(ErrorKind::InvalidParameter, "grid needs an odd point count of at least 65 (got " +
                                                 std::to_string(n_points) + ")");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw Error(ErrorKind::InvalidParameter, "x_max must be positive");
  if (!(map_beta > 0.0 && map_beta <= 1.0)) throw Error(ErrorKind::InvalidParameter, "map_beta must lie in (0, 1]");
  if (!(map_width > 0.0)) throw Error(ErrorKind::InvalidParameter, "map_width must be positive");
  if (domain == DomainKind::FullLine && map_beta != 1.0)
    throw Error(ErrorKind::InvalidParameter, "full-line grids are uniform");
}

double GridSpec::map(double u) const { return u - (1.0 - map_beta) * map_width * std::tanh(u / map_width); }

double GridSpec::jacobian(double u) const {
  const double c = std::cosh(u / map_width);
  return 1.0 - (1.0 - map_beta) / (c * c);
}

double GridSpec::unmap(double x) const {
  if (map_beta == 1.0) return x;
  double u = x;  // map(u) <= u, so the root lies at or above x
  for (int it = 0; it < 100; ++it) {
    const double step = (map(u) - x) / jacobian(u);
    u -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(u))) break;
  }
  return u;
}

double GridSpec::coordinate_extent() const { return unmap(x_max); }

double GridSpec::spacing() const { return coordinate_extent() / ((n_points - 1) / 2); }

double GridEigenResult::interpolate(int level, double x) const {
  if (level < 0 || level >= levels()) throw Error(ErrorKind::InvalidParameter, "no such level");
  const int n = half_count(spec);
  const int N = spec.n_points;
  const double h = spec.spacing();
  const auto psi = eigenvectors.col(level);
  if (spec.domain == DomainKind::FullLine) {
    if (std::abs(x) > spec.x_max) return 0.0;
    double sum = 0.0;
    for (int j = -n; j <= n; ++j) sum += psi[j + n] * dirichlet_kernel(x / h - j, N);
    return sum;
  }
  if (x < 0.0 || x > spec.x_max) return 0.0;
  // Interpolate phi = sqrt(J) psi, odd in u, then undo the metric factor.
  const double u = spec.unmap(x);
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double phi = psi[j - 1] * std::sqrt(spec.jacobian(j * h));
    sum += phi * (dirichlet_kernel(u / h - j, N) - dirichlet_kernel(u / h + j, N));
  }
  return sum / std::sqrt(spec.jacobian(u));
}

double GridEigenResult::overlap(int level, const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i)
    sum += weights[i] * f(positions[i]) * eigenvectors(Eigen::Index(i), level);
  return sum;
}

double fgh_kinetic_element(int t, int n_points, double spacing) {
  const double length = n_points * spacing;
  t %= n_points;
  if (t == 0) return kPi * kPi * (double(n_points) * n_points - 1.0) / (6.0 * length * length);
  const double sign = (t % 2 == 0) ? 1.0 : -1.0;
  const double sn = std::sin(kPi * t / n_points);
  return (2.0 * kPi / length) * (2.0 * kPi / length) * sign * std::cos(kPi * t / n_points) / (4.0 * sn * sn);
}

GridEigenResult fgh_solve(const HamiltonianModel& model, const GridSpec& spec, int n_levels) {
  spec.validate();
  if (!model.kinetic.nonrelativistic)
    throw Error(ErrorKind::UnsupportedModel, "the grid solver handles T = p^2/2 only");
  if (spec.domain != model.domain())
    throw Error(ErrorKind::DomainViolation, "grid domain does not match model " + model.label);
  if (n_levels < 1 || n_levels > spec.n_points / 4)
    throw Error(ErrorKind::TooManyLevels, std::to_string(n_levels) + " levels requested on " +
                                              std::to_string(spec.n_points) + " points");
  return spec.domain == DomainKind::FullLine ? solve_full_line(model, spec, n_levels)
                                             : solve_half_line(model, spec, n_levels);
}

GridSpec default_grid(const HamiltonianModel& model, int n_levels) {
  if (n_levels < 1) throw Error(ErrorKind::TooManyLevels, "need at least one level");
  GridSpec spec;
  spec.domain = model.domain();
  double lambda0 = 1.0;
  double reach = 0.0;
  if (model.supports_et) {
    const auto ground = solve_level(model, 0);
    const auto top = solve_level(model, n_levels - 1);
    lambda0 = ground.lambda();
    reach = 2.0 * top.x0 + 6.0 / lambda0;
  } else {
    const double q = quantization_number(n_levels - 1, spec.domain);
    reach = 2.0 * q * q + 10.0 * q;
  }
  spec.x_max = std::max(20.0 / lambda0, reach);

  double target_spacing = 0.2 / lambda0;
  if (spec.domain == DomainKind::HalfLine) {
    spec.map_beta = 0.01;
    spec.map_width = 2.0 / lambda0;
    target_spacing = 0.05 / lambda0;
  }
  const double extent = spec.coordinate_extent();
  const int half = int(std::ceil(extent / target_spacing));
  spec.n_points = std::clamp(2 * half + 1, 1025, 4001);
  return spec;
}

GridSpec refine(const GridSpec& spec) {
  GridSpec fine = spec;
  fine.n_points = 2 * spec.n_points - 1;
  return fine;
}

GridEigenResult fgh_solve_certified(const HamiltonianModel& model, const GridSpec& spec, int n_levels) {
  auto coarse = fgh_solve(model, spec, n_levels);
  const auto fine = fgh_solve(model, refine(spec), n_levels);
  for (int k = 0; k < coarse.levels(); ++k)
    coarse.convergence_estimate[k] = std::abs(fine.eigenvalues[k] - coarse.eigenvalues[k]);
  return coarse;
}

std::vector<ConvergenceStep> convergence_sweep(const HamiltonianModel& model, const GridSpec& base, int n_levels) {
  std::vector<ConvergenceStep> steps;
  GridSpec spec = base;
  for (int r = 0; r <= 4; ++r) {
    if (r > 0) {
      if (r % 2 == 1)
        spec = refine(spec);
      else
        spec.x_max *= 2.0;
    }
    ConvergenceStep step{spec, fgh_solve(model, spec, n_levels).eigenvalues, {}};
    if (!steps.empty())
      for (int k = 0; k < n_levels; ++k) step.deltas.push_back(std::abs(step.eigenvalues[k] - steps.back().eigenvalues[k]));
    steps.push_back(std::move(step));
  }
  return steps;
}

ExtrapolatedLevels fgh_extrapolate(const HamiltonianModel& model, const GridSpec& spec, int n_levels, int order) {
  const auto coarse = fgh_solve(model, spec, n_levels);
  const auto fine = fgh_solve(model, refine(spec), n_levels);
  const double factor = 1.0 / (std::pow(2.0, order) - 1.0);
  ExtrapolatedLevels out;
  for (int k = 0; k < n_levels; ++k) {
    const double diff = fine.eigenvalues[k] - coarse.eigenvalues[k];
    out.energies.push_back(fine.eigenvalues[k] + factor * diff);
    out.estimates.push_back(std::abs(factor * diff));
  }
  return out;
}

}  // namespace etspectra
