#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace etspectra {

enum class DomainKind { FullLine, HalfLine };

// Sign of b'' where b(z) = f(sqrt(z)), i.e. f(x) = b(x^2).
enum class Convexity { Concave, Linear, Convex, Indefinite };

enum class ModelKind { SoftCoulomb, PureCoulomb, HarmonicApprox, Hulthen, ExpWell, CoulombHalf, Custom };

std::string_view to_string(DomainKind domain);
std::string_view to_string(Convexity convexity);

/// Effective quantum number of level n: n + 1/2 on the full line, (2n + 1) + 1/2 on the half
/// line (odd oscillator states only, so that the wavefunction vanishes at the origin).
double quantization_number(int n, DomainKind domain);

/// Index of the harmonic-oscillator state that carries level n in the given domain.
int oscillator_index(int n, DomainKind domain);

using ScalarFunction = std::function<double(double)>;

struct KineticSpec {
  ScalarFunction value;
  ScalarFunction derivative;
  Convexity b_convexity = Convexity::Indefinite;
  // T(p) = p^2/2; the grid solver only handles this form.
  bool nonrelativistic = false;
};

struct PotentialSpec {
  ScalarFunction value;
  ScalarFunction derivative;
  Convexity b_convexity = Convexity::Indefinite;
  DomainKind domain = DomainKind::FullLine;
};

using ParameterMap = std::map<std::string, double, std::less<>>;

struct HamiltonianModel {
  KineticSpec kinetic;
  PotentialSpec potential;
  std::string label;
  ParameterMap parameters;
  ModelKind kind = ModelKind::Custom;
  // False when V' is singular where the envelope solver would need it (pure Coulomb).
  bool supports_et = true;

  DomainKind domain() const { return potential.domain; }
  double parameter(std::string_view name) const;
};

KineticSpec nonrelativistic_kinetic();

HamiltonianModel make_soft_coulomb(double D);
HamiltonianModel make_pure_coulomb();
HamiltonianModel make_harmonic_approx(double D);
HamiltonianModel make_hulthen(double k, double a);
HamiltonianModel make_exp_well(double k, double a);
HamiltonianModel make_coulomb_half(double k, double a);

// Registry lookup by CLI label. Missing or unexpected parameters raise InvalidParameter.
HamiltonianModel make_model(std::string_view label, const ParameterMap& parameters);
std::span<const std::string_view> model_labels();

// Sampling diagnostics for the parity and derivative-consistency invariants.
double max_parity_defect(const ScalarFunction& f, std::span<const double> probes);
double max_derivative_defect(const ScalarFunction& f, const ScalarFunction& df,
                             std::span<const double> probes, double step = 1e-5);

}  // namespace etspectra
