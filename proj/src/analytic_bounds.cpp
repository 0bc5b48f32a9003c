#include "etspectra/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "etspectra/error.hpp"
#include "etspectra/root_finding.hpp"

namespace etspectra {

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::CoulombLower: return "coulomb-lower";
    case BoundSource::HarmonicUpper: return "harmonic-upper";
    case BoundSource::HulthenExact: return "hulthen-exact";
    case BoundSource::ExpWellExact: return "exp-well-exact";
    case BoundSource::CoulombHalfExact: return "coulomb-half-exact";
  }
  return "unknown";
}

namespace {

void require_level(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "level index must be non-negative");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be positive");
}

// Depth parameter of the exponential well: psi = J_nu(z0 e^{-a x/2}), E = -a^2 nu^2 / 8.
double exp_well_argument(double k, double a) { return (2.0 / a) * std::sqrt(2.0 * k); }

// Orders nu > 0 with J_nu(z0) = 0, largest (deepest level) first.
std::vector<double> exp_well_orders(double k, double a) {
  const double z0 = exp_well_argument(k, a);
  auto f = [z0](double nu) { return std::cyl_bessel_j(nu, z0); };
  auto df = [&](double nu) {
    const double h = 1e-6 * std::max(1.0, nu);
    return (f(nu + h) - f(std::max(0.0, nu - h))) / (h + std::min(h, nu));
  };
  constexpr int kScan = 4000;
  std::vector<double> orders;
  double lo = z0 * 1e-6;
  double flo = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double hi = z0 * i / kScan;
    const double fhi = f(hi);
    if ((flo < 0.0) != (fhi < 0.0)) orders.push_back(newton_bisect(f, df, lo, hi, 0.0, 200).x);
    lo = hi;
    flo = fhi;
  }
  std::sort(orders.rbegin(), orders.rend());
  return orders;
}

}  // namespace

double coulomb_lower(int n) {
  require_level(n);
  const double no = 2.0 * n + 1.0;
  return -2.0 / ((no + 1.0) * (no + 1.0));
}

bool coulomb_lower_applies(int level) { return level >= 0 && level % 2 == 1; }

double coulomb_lower_for_level(int level) {
  if (!coulomb_lower_applies(level))
    throw Error(ErrorKind::InvalidParameter, "no analytic lower bound for even level " + std::to_string(level));
  return coulomb_lower((level - 1) / 2);
}

double harmonic_upper(int n, double D) {
  require_level(n);
  if (!(D > 0.0)) throw Error(ErrorKind::NonPositiveBias, "D must be positive");
  return (n + 0.5) / std::pow(D, 1.5) - 1.0 / D;
}

double coulomb_half_exact(int n, double k, double a) {
  require_level(n);
  require_positive(k, "k");
  require_positive(a, "a");
  const double strength = k / a;
  const double nb = n + 1.0;
  return -strength * strength / (2.0 * nb * nb);
}

int hulthen_bound_count(double k, double a) {
  require_positive(k, "k");
  require_positive(a, "a");
  return int(std::ceil(std::sqrt(2.0 * k) / a)) - 1;
}

double hulthen_exact(int n, double k, double a) {
  require_level(n);
  if (n >= hulthen_bound_count(k, a))
    throw Error(ErrorKind::NoBoundState, "Hulthen well (k=" + std::to_string(k) + ", a=" + std::to_string(a) +
                                             ") has no level " + std::to_string(n));
  const double nb = n + 1.0;
  const double kappa = k / (a * nb) - 0.5 * a * nb;
  return -0.5 * kappa * kappa;
}

int exp_well_bound_count(double k, double a) {
  require_positive(k, "k");
  require_positive(a, "a");
  return int(exp_well_orders(k, a).size());
}

double exp_well_exact(int n, double k, double a) {
  require_level(n);
  require_positive(k, "k");
  require_positive(a, "a");
  const auto orders = exp_well_orders(k, a);
  if (n >= int(orders.size()))
    throw Error(ErrorKind::NoBoundState, "exponential well (k=" + std::to_string(k) + ", a=" + std::to_string(a) +
                                             ") has no level " + std::to_string(n));
  const double nu = orders[n];
  return -a * a * nu * nu / 8.0;
}

HulthenBracket hulthen_bracket(int n, double k, double a) {
  return {coulomb_half_exact(n, k, a), hulthen_exact(n, k, a), exp_well_exact(n, k, a)};
}

BoundSpectrum coulomb_lower_spectrum(int max_level) {
  BoundSpectrum s{BoundSource::CoulombLower, {}, coulomb_lower_applies};
  for (int level = 0; level <= max_level; ++level)
    if (coulomb_lower_applies(level)) s.levels.push_back({level, coulomb_lower_for_level(level)});
  return s;
}

BoundSpectrum harmonic_upper_spectrum(int max_level, double D) {
  BoundSpectrum s{BoundSource::HarmonicUpper, {}, [](int level) { return level >= 0; }};
  for (int level = 0; level <= max_level; ++level) s.levels.push_back({level, harmonic_upper(level, D)});
  return s;
}

BoundSpectrum hulthen_family_spectrum(BoundSource source, int max_level, double k, double a) {
  int count = 0;
  double (*energy)(int, double, double) = nullptr;
  switch (source) {
    case BoundSource::HulthenExact:
      count = hulthen_bound_count(k, a);
      energy = hulthen_exact;
      break;
    case BoundSource::ExpWellExact:
      count = exp_well_bound_count(k, a);
      energy = exp_well_exact;
      break;
    case BoundSource::CoulombHalfExact:
      count = max_level + 1;
      energy = coulomb_half_exact;
      break;
    default:
      throw Error(ErrorKind::InvalidParameter, "not a half-line source: " + std::string(to_string(source)));
  }
  BoundSpectrum s{source, {}, [count](int level) { return level >= 0 && level < count; }};
  for (int level = 0; level <= max_level && level < count; ++level) s.levels.push_back({level, energy(level, k, a)});
  return s;
}

}  // namespace etspectra
