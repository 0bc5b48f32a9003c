#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "etspectra/core.hpp"
#include "etspectra/error.hpp"

using namespace etspectra;

namespace {

std::vector<HamiltonianModel> all_models() {
  return {make_soft_coulomb(2.0), make_harmonic_approx(1.5), make_hulthen(1.0, 0.2),
          make_exp_well(1.0, 0.2),  make_coulomb_half(1.0, 0.2), make_pure_coulomb()};
}

// Sign of b''(z) for b(z) = f(sqrt z), by a centered second difference.
double b_curvature(const ScalarFunction& f, double z) {
  const double h = 1e-3 * z;
  return (f(std::sqrt(z + h)) - 2.0 * f(std::sqrt(z)) + f(std::sqrt(z - h))) / (h * h);
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no Error thrown");
  return ErrorKind::UsageError;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("quantization numbers") {
    CHECK(quantization_number(0, DomainKind::FullLine) == 0.5);
    CHECK(quantization_number(7, DomainKind::FullLine) == 7.5);
    CHECK(quantization_number(0, DomainKind::HalfLine) == 1.5);
    CHECK(quantization_number(3, DomainKind::HalfLine) == 7.5);
    CHECK(oscillator_index(3, DomainKind::FullLine) == 3);
    CHECK(oscillator_index(3, DomainKind::HalfLine) == 7);
    CHECK(kind_of([] { quantization_number(-1, DomainKind::FullLine); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("soft-Coulomb potential values") {
    const auto m = make_soft_coulomb(2.0);
    CHECK(m.potential.value(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(m.potential.value(1.5) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(m.kinetic.value(2.0) == 2.0);
    CHECK(m.domain() == DomainKind::FullLine);
    CHECK(m.parameter("D") == 2.0);
  }

  TEST_CASE("harmonic approximation is the second-order expansion") {
    const double D = 3.0;
    const auto soft = make_soft_coulomb(D);
    const auto ho = make_harmonic_approx(D);
    for (double x : {1e-3, 1e-2}) {
      const double diff = std::abs(soft.potential.value(x) - ho.potential.value(x));
      CHECK(diff < std::pow(x, 4) / std::pow(D, 5) + 1e-15);
    }
  }

  TEST_CASE("full-line potentials are even") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.01, 30.0);
    std::vector<double> probes(200);
    for (auto& p : probes) p = u(rng);
    for (const auto& m : all_models())
      if (m.domain() == DomainKind::FullLine) CHECK(max_parity_defect(m.potential.value, probes) == 0.0);
  }

  TEST_CASE("declared derivatives match finite differences") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    std::vector<double> probes(200);
    for (auto& p : probes) p = u(rng);
    for (const auto& m : all_models()) {
      INFO(m.label);
      CHECK(max_derivative_defect(m.potential.value, m.potential.derivative, probes) < 1e-6);
      CHECK(max_derivative_defect(m.kinetic.value, m.kinetic.derivative, probes) < 1e-6);
    }
  }

  TEST_CASE("declared b-convexity matches the sampled curvature") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> logz(-4.0, 5.0);
    for (const auto& m : all_models()) {
      INFO(m.label);
      for (int i = 0; i < 100; ++i) {
        const double z = std::pow(10.0, logz(rng));
        const double c = b_curvature(m.potential.value, z);
        const double scale = std::abs(m.potential.value(std::sqrt(z))) / (z * z) + 1e-300;
        switch (m.potential.b_convexity) {
          case Convexity::Concave: CHECK(c < 1e-5 * scale); break;
          case Convexity::Convex: CHECK(c > -1e-5 * scale); break;
          case Convexity::Linear: CHECK(std::abs(c) <= 1e-5 * scale + 1e-6); break;
          case Convexity::Indefinite: break;
        }
      }
      CHECK(m.kinetic.b_convexity == Convexity::Linear);
    }
  }

  TEST_CASE("registry") {
    CHECK(model_labels().size() == 6);
    for (auto label : model_labels()) {
      ParameterMap p;
      if (label == "soft-coulomb" || label == "harmonic-approx") p = {{"D", 1.0}};
      if (label == "hulthen" || label == "exp-well" || label == "coulomb-half") p = {{"k", 1.0}, {"a", 0.5}};
      CHECK(make_model(label, p).label == label);
    }
    CHECK(kind_of([] { make_model("yukawa", {}); }) == ErrorKind::UnknownModel);
    CHECK(kind_of([] { make_model("soft-coulomb", {}); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { make_model("soft-coulomb", {{"D", 1.0}, {"k", 2.0}}); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { make_model("soft-coulomb", {{"D", -1.0}}); }) == ErrorKind::NonPositiveBias);
    CHECK(kind_of([] { make_model("soft-coulomb", {{"D", 0.0}}); }) == ErrorKind::NonPositiveBias);
    CHECK(kind_of([] { make_model("hulthen", {{"k", 1.0}, {"a", -0.2}}); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { make_soft_coulomb(1.0).parameter("k"); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("error names and categories") {
    CHECK(error_name(ErrorKind::NonPositiveBias) == "NonPositiveBias");
    CHECK(error_name(ErrorKind::RootNotBracketed) == "RootNotBracketed");
    CHECK_FALSE(is_numerical(ErrorKind::UsageError));
    CHECK_FALSE(is_numerical(ErrorKind::UnsupportedLevel));
    CHECK(is_numerical(ErrorKind::NoConvergence));
    CHECK(is_numerical(ErrorKind::EigensolverFailure));
    const Error e(ErrorKind::EmptyGrid, "nothing here");
    CHECK(std::string(e.what()).rfind("EmptyGrid", 0) == 0);
  }
}
