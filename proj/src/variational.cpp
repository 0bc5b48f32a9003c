#include "etspectra/variational.hpp"

#include <cmath>
#include <string>

#include "etspectra/error.hpp"
#include "etspectra/root_finding.hpp"
#include "etspectra/wavefunction.hpp"

namespace etspectra {

namespace {

constexpr double kReach = 12.0;  // in oscillator lengths 1/lambda
constexpr double kQuadratureTol = 1e-13;

void require_supported(const HamiltonianModel& model, int n) {
  if (n != 0 && n != 1)
    throw Error(ErrorKind::UnsupportedLevel,
                "oscillator trial states bound level " + std::to_string(n) +
                    " only if orthogonal to every lower exact state; use levels 0 (even) and 1 (odd)");
  if (model.domain() != DomainKind::FullLine || !model.kinetic.nonrelativistic)
    throw Error(ErrorKind::UnsupportedModel, "variational bounds need T = p^2/2 on the full line");
}

// Trapezoid on [0, kReach] with interval halving; the integrand is even in u so the rule
// converges geometrically.
template <class F>
double even_integral(F&& f) {
  int intervals = 64;
  double h = kReach / intervals;
  double sum = 0.5 * (f(0.0) + f(kReach));
  for (int i = 1; i < intervals; ++i) sum += f(i * h);
  double estimate = sum * h;
  for (int level = 0; level < 16; ++level) {
    for (int i = 0; i < intervals; ++i) sum += f((i + 0.5) * h);
    intervals *= 2;
    h *= 0.5;
    const double refined = sum * h;
    if (std::abs(refined - estimate) <= kQuadratureTol * (1.0 + std::abs(refined))) return 2.0 * refined;
    estimate = refined;
  }
  throw Error(ErrorKind::QuadratureFailure, "potential expectation did not converge");
}

}  // namespace

double variational_expectation(const HamiltonianModel& model, int n, double lambda) {
  require_supported(model, n);
  const auto& V = model.potential.value;
  const double potential = even_integral([&](double u) {
    const double phi = oscillator_function(n, 1.0, u);
    return phi * phi * V(u / lambda);
  });
  return 0.5 * lambda * lambda * (n + 0.5) + potential;
}

double variational_slope(const HamiltonianModel& model, int n, double lambda) {
  require_supported(model, n);
  const auto& dV = model.potential.derivative;
  const double potential = even_integral([&](double u) {
    const double phi = oscillator_function(n, 1.0, u);
    return -phi * phi * dV(u / lambda) * u / (lambda * lambda);
  });
  return lambda * (n + 0.5) + potential;
}

VariationalResult variational_energy(const HamiltonianModel& model, int n) {
  require_supported(model, n);
  auto energy_at = [&](double t) { return variational_expectation(model, n, std::exp(t)); };

  // Golden-section search on log(lambda).
  constexpr double kLo = -6.0;
  constexpr double kHi = 6.0;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = kLo, b = kHi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = energy_at(c), fd = energy_at(d);
  int iterations = 0;
  while (b - a > 1e-3) {
    ++iterations;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = energy_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = energy_at(d);
    }
  }
  if (a - kLo < 1e-2 || kHi - b < 1e-2)
    throw Error(ErrorKind::MinimizerNotBracketed, "optimal scale lies at the edge of the search window");

  // Refine on the stationarity condition inside the golden bracket.
  auto slope = [&](double lambda) { return variational_slope(model, n, lambda); };
  auto curvature = [&](double lambda) {
    const double h = 1e-5 * lambda;
    return (slope(lambda + h) - slope(lambda - h)) / (2.0 * h);
  };
  const auto root = newton_bisect(slope, curvature, std::exp(a), std::exp(b), 1e-14, 200);

  VariationalResult result;
  result.n = n;
  result.lambda_opt = root.x;
  result.energy = variational_expectation(model, n, root.x);
  result.iterations = iterations + root.iterations;
  return result;
}

VariationalResult variational_energy(double D, int n) { return variational_energy(make_soft_coulomb(D), n); }

}  // namespace etspectra
