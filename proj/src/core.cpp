#include "etspectra/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "etspectra/error.hpp"

namespace etspectra {

std::string_view to_string(DomainKind domain) {
  return domain == DomainKind::FullLine ? "full-line" : "half-line";
}

std::string_view to_string(Convexity convexity) {
  switch (convexity) {
    case Convexity::Concave: return "concave";
    case Convexity::Linear: return "linear";
    case Convexity::Convex: return "convex";
    case Convexity::Indefinite: return "indefinite";
  }
  return "indefinite";
}

double quantization_number(int n, DomainKind domain) {
  return oscillator_index(n, domain) + 0.5;
}

int oscillator_index(int n, DomainKind domain) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "level index must be non-negative");
  return domain == DomainKind::FullLine ? n : 2 * n + 1;
}

double HamiltonianModel::parameter(std::string_view name) const {
  auto it = parameters.find(name);
  if (it == parameters.end())
    throw Error(ErrorKind::InvalidParameter, "model '" + label + "' has no parameter " + std::string(name));
  return it->second;
}

KineticSpec nonrelativistic_kinetic() {
  return {[](double p) { return 0.5 * p * p; }, [](double p) { return p; }, Convexity::Linear, true};
}

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be positive and finite");
}

void require_bias(double D) {
  if (!(D > 0.0) || !std::isfinite(D))
    throw Error(ErrorKind::NonPositiveBias, "D must be positive (got " + std::to_string(D) + ")");
}

}  // namespace

HamiltonianModel make_soft_coulomb(double D) {
  require_bias(D);
  const double d2 = D * D;
  PotentialSpec v{
      [d2](double x) { return -1.0 / std::sqrt(x * x + d2); },
      [d2](double x) {
        const double r2 = x * x + d2;
        return x / (r2 * std::sqrt(r2));
      },
      Convexity::Concave, DomainKind::FullLine};
  return {nonrelativistic_kinetic(), std::move(v), "soft-coulomb", {{"D", D}}, ModelKind::SoftCoulomb, true};
}

HamiltonianModel make_pure_coulomb() {
  PotentialSpec v{[](double x) { return -1.0 / std::abs(x); },
                  [](double x) { return (x > 0 ? 1.0 : -1.0) / (x * x); }, Convexity::Concave,
                  DomainKind::FullLine};
  return {nonrelativistic_kinetic(), std::move(v), "pure-coulomb", {}, ModelKind::PureCoulomb, false};
}

HamiltonianModel make_harmonic_approx(double D) {
  require_bias(D);
  const double curvature = 1.0 / (D * D * D);
  PotentialSpec v{[curvature, D](double x) { return 0.5 * curvature * x * x - 1.0 / D; },
                  [curvature](double x) { return curvature * x; }, Convexity::Linear,
                  DomainKind::FullLine};
  return {nonrelativistic_kinetic(), std::move(v), "harmonic-approx", {{"D", D}}, ModelKind::HarmonicApprox, true};
}

HamiltonianModel make_hulthen(double k, double a) {
  require_positive(k, "k");
  require_positive(a, "a");
  PotentialSpec v{[k, a](double x) { return -k / std::expm1(a * x); },
                  [k, a](double x) {
                    const double em1 = std::expm1(a * x);
                    return k * a * (em1 + 1.0) / (em1 * em1);
                  },
                  Convexity::Concave, DomainKind::HalfLine};
  return {nonrelativistic_kinetic(), std::move(v), "hulthen", {{"a", a}, {"k", k}}, ModelKind::Hulthen, true};
}

HamiltonianModel make_exp_well(double k, double a) {
  require_positive(k, "k");
  require_positive(a, "a");
  PotentialSpec v{[k, a](double x) { return -k * std::exp(-a * x); },
                  [k, a](double x) { return k * a * std::exp(-a * x); }, Convexity::Concave,
                  DomainKind::HalfLine};
  return {nonrelativistic_kinetic(), std::move(v), "exp-well", {{"a", a}, {"k", k}}, ModelKind::ExpWell, true};
}

HamiltonianModel make_coulomb_half(double k, double a) {
  require_positive(k, "k");
  require_positive(a, "a");
  const double strength = k / a;
  PotentialSpec v{[strength](double x) { return -strength / x; },
                  [strength](double x) { return strength / (x * x); }, Convexity::Concave,
                  DomainKind::HalfLine};
  return {nonrelativistic_kinetic(), std::move(v), "coulomb-half", {{"a", a}, {"k", k}}, ModelKind::CoulombHalf, true};
}

namespace {

constexpr std::array<std::string_view, 6> kLabels{"soft-coulomb", "pure-coulomb", "harmonic-approx",
                                                  "hulthen",      "exp-well",     "coulomb-half"};

double take(const ParameterMap& params, std::string_view name, std::string_view label) {
  auto it = params.find(name);
  if (it == params.end())
    throw Error(ErrorKind::InvalidParameter,
                "model " + std::string(label) + " requires parameter " + std::string(name));
  return it->second;
}

void reject_extra(const ParameterMap& params, std::initializer_list<std::string_view> allowed,
                  std::string_view label) {
  for (const auto& [name, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw Error(ErrorKind::InvalidParameter,
                  "model " + std::string(label) + " does not take parameter " + name);
  }
}

}  // namespace

HamiltonianModel make_model(std::string_view label, const ParameterMap& parameters) {
  if (label == "soft-coulomb" || label == "harmonic-approx") {
    reject_extra(parameters, {"D"}, label);
    const double D = take(parameters, "D", label);
    return label == "soft-coulomb" ? make_soft_coulomb(D) : make_harmonic_approx(D);
  }
  if (label == "pure-coulomb") {
    reject_extra(parameters, {}, label);
    return make_pure_coulomb();
  }
  if (label == "hulthen" || label == "exp-well" || label == "coulomb-half") {
    reject_extra(parameters, {"k", "a"}, label);
    const double k = take(parameters, "k", label);
    const double a = take(parameters, "a", label);
    if (label == "hulthen") return make_hulthen(k, a);
    if (label == "exp-well") return make_exp_well(k, a);
    return make_coulomb_half(k, a);
  }
  throw Error(ErrorKind::UnknownModel, "no model registered as '" + std::string(label) + "'");
}

std::span<const std::string_view> model_labels() { return kLabels; }

double max_parity_defect(const ScalarFunction& f, std::span<const double> probes) {
  double worst = 0.0;
  for (double x : probes) worst = std::max(worst, std::abs(f(x) - f(-x)));
  return worst;
}

double max_derivative_defect(const ScalarFunction& f, const ScalarFunction& df,
                             std::span<const double> probes, double step) {
  double worst = 0.0;
  for (double x : probes) {
    const double fd = (f(x + step) - f(x - step)) / (2.0 * step);
    const double exact = df(x);
    worst = std::max(worst, std::abs(exact - fd) / (1.0 + std::abs(exact)));
  }
  return worst;
}

}  // namespace etspectra
