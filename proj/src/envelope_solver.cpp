#include "etspectra/envelope_solver.hpp"

#include <cmath>
#include <string>

#include "etspectra/error.hpp"
#include "etspectra/root_finding.hpp"

namespace etspectra {

std::string_view to_string(BoundCharacter character) {
  switch (character) {
    case BoundCharacter::UpperBound: return "upper";
    case BoundCharacter::LowerBound: return "lower";
    case BoundCharacter::Exact: return "exact";
    case BoundCharacter::Unknown: return "unknown";
  }
  return "unknown";
}

double EtSolution::lambda() const { return std::sqrt(Q) / x0; }

namespace {

// x0^4 = Q^2 (x0^2 + D^2)^{3/2}, solved for s = x0^2.
double soft_coulomb_separation(double Q, double D) {
  const double q2 = Q * Q;
  const double d2 = D * D;
  auto f = [=](double s) { return s * s - q2 * std::pow(s + d2, 1.5); };
  auto df = [=](double s) { return 2.0 * s - 1.5 * q2 * std::sqrt(s + d2); };

  double hi = 4.0 * std::max(q2 * d2 * D, q2 * q2);
  for (int grow = 0; f(hi) <= 0.0; ++grow) {
    if (grow >= kMaxIterations || !std::isfinite(hi))
      throw Error(ErrorKind::RootNotBracketed, "separation equation has no sign change below " + std::to_string(hi));
    hi *= 2.0;
  }
  return std::sqrt(newton_bisect(f, df, 0.0, hi, 0.0, kMaxIterations).x);
}

// Generic route: eliminate p0 = Q/x0 and solve p0 T'(p0) = x0 V'(x0) for x0. The admissible
// root is the first sign change from + to -, i.e. the minimum of T(Q/x) + V(x).
double generic_separation(const HamiltonianModel& model, double Q, double tol) {
  const auto& T = model.kinetic;
  const auto& V = model.potential;
  auto g = [&](double x) {
    const double p = Q / x;
    return p * T.derivative(p) - x * V.derivative(x);
  };
  auto dg = [&](double x) {
    const double h = 1e-6 * x;
    return (g(x + h) - g(x - h)) / (2.0 * h);
  };

  double lo = 1e-8;
  double glo = g(lo);
  for (int step = 0; step < 2000; ++step) {
    const double hi = lo * 1.05;
    const double ghi = g(hi);
    if (std::isfinite(glo) && std::isfinite(ghi) && glo > 0.0 && ghi <= 0.0)
      return newton_bisect(g, dg, lo, hi, 0.1 * tol, kMaxIterations).x;
    lo = hi;
    glo = ghi;
    if (lo > 1e12) break;
  }
  throw Error(ErrorKind::RootNotBracketed, "equation of motion has no admissible root for " + model.label);
}

}  // namespace

EtSolution solve_level(const HamiltonianModel& model, int n, double tol) {
  if (!model.supports_et)
    throw Error(ErrorKind::UnsupportedModel, model.label + " has a singular V' and cannot be enveloped");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");

  EtSolution sol;
  sol.n = n;
  sol.domain = model.domain();
  sol.Q = quantization_number(n, sol.domain);
  sol.bound_character = classify_bound(model);

  if (model.kind == ModelKind::SoftCoulomb && model.kinetic.nonrelativistic)
    sol.x0 = soft_coulomb_separation(sol.Q, model.parameter("D"));
  else
    sol.x0 = generic_separation(model, sol.Q, tol);

  // hbar = 1
  sol.p0 = sol.Q / sol.x0;
  sol.energy = model.kinetic.value(sol.p0) + model.potential.value(sol.x0);
  sol.quantization_residual = std::abs(sol.x0 * sol.p0 - sol.Q);
  sol.motion_residual =
      std::abs(sol.p0 * model.kinetic.derivative(sol.p0) - sol.x0 * model.potential.derivative(sol.x0));

  if (!(sol.motion_residual <= tol) || !(sol.quantization_residual <= tol))
    throw Error(ErrorKind::NoConvergence, "level " + std::to_string(n) + " residual " +
                                              std::to_string(sol.motion_residual) + " exceeds tolerance");
  return sol;
}

BoundCharacter classify_bound(const HamiltonianModel& model) {
  const Convexity t = model.kinetic.b_convexity;
  const Convexity v = model.potential.b_convexity;
  if (t == Convexity::Indefinite || v == Convexity::Indefinite) return BoundCharacter::Unknown;
  if (t == Convexity::Linear && v == Convexity::Linear) return BoundCharacter::Exact;
  auto within = [&](Convexity c) { return (t == c || t == Convexity::Linear) && (v == c || v == Convexity::Linear); };
  if (within(Convexity::Concave)) return BoundCharacter::UpperBound;
  if (within(Convexity::Convex)) return BoundCharacter::LowerBound;
  return BoundCharacter::Unknown;
}

EnvelopePair build_envelopes(const HamiltonianModel& model, const EtSolution& sol) {
  const double p0 = sol.p0;
  const double x0 = sol.x0;
  return {{model.kinetic.value(p0), model.kinetic.derivative(p0) / (2.0 * p0), p0},
          {model.potential.value(x0), model.potential.derivative(x0) / (2.0 * x0), x0}};
}

double envelope_expectation(const EtSolution& sol, const EnvelopePair& env) {
  const double lambda = sol.lambda();
  const double mean_p2 = sol.Q * lambda * lambda;
  const double mean_x2 = sol.Q / (lambda * lambda);
  const auto& t = env.kinetic;
  const auto& v = env.potential;
  return t.c0 + t.c2 * (mean_p2 - t.z0 * t.z0) + v.c0 + v.c2 * (mean_x2 - v.z0 * v.z0);
}

double asymptotic_energy(AsymptoticRegime regime, int n, double D) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "level index must be non-negative");
  if (!(D > 0.0)) throw Error(ErrorKind::NonPositiveBias, "D must be positive");
  if (regime == AsymptoticRegime::LargeN) {
    const double m = 2.0 * n + 1.0;
    return -2.0 / (m * m);
  }
  return (n + 0.5) / std::pow(D, 1.5) - 1.0 / D;
}

}  // namespace etspectra
