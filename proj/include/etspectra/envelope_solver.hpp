#pragma once

#include "etspectra/core.hpp"

namespace etspectra {

enum class BoundCharacter { UpperBound, LowerBound, Exact, Unknown };

std::string_view to_string(BoundCharacter character);

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kMaxIterations = 200;

// One level of the envelope approximation. x0 is the root-mean-square separation and p0 the
// root-mean-square momentum of the auxiliary oscillator state.
struct EtSolution {
  int n = 0;
  DomainKind domain = DomainKind::FullLine;
  double Q = 0.0;
  double x0 = 0.0;
  double p0 = 0.0;
  double energy = 0.0;
  BoundCharacter bound_character = BoundCharacter::Unknown;
  double quantization_residual = 0.0;  // |x0 p0 - Q|
  double motion_residual = 0.0;        // |p0 T'(p0) - x0 V'(x0)|

  // Oscillator scale of the approximate eigenfunction, sqrt(Q)/x0.
  double lambda() const;
};

// Tangent quadratic c0 + c2 (z^2 - z0^2) touching f at z0.
struct TangentQuadratic {
  double c0 = 0.0;  // f(z0)
  double c2 = 0.0;  // f'(z0) / (2 z0)
  double z0 = 0.0;

  double operator()(double z) const { return c0 + c2 * (z * z - z0 * z0); }
  double derivative(double z) const { return 2.0 * c2 * z; }
};

struct EnvelopePair {
  TangentQuadratic kinetic;
  TangentQuadratic potential;
};

EtSolution solve_level(const HamiltonianModel& model, int n, double tol = kDefaultTolerance);

BoundCharacter classify_bound(const HamiltonianModel& model);

EnvelopePair build_envelopes(const HamiltonianModel& model, const EtSolution& sol);

// <n|T~ + V~|n> evaluated with the oscillator moments <p^2> = Q lambda^2, <x^2> = Q / lambda^2.
double envelope_expectation(const EtSolution& sol, const EnvelopePair& env);

enum class AsymptoticRegime { LargeN, SmallNLargeD };

// Closed-form limits of the soft-Coulomb envelope energy.
double asymptotic_energy(AsymptoticRegime regime, int n, double D);

}  // namespace etspectra
