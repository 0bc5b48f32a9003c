#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "etspectra/error.hpp"
#include "etspectra/wavefunction.hpp"

using namespace etspectra;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

ErrorKind sample_error(const EtSolution& sol, std::vector<double> grid) {
  try {
    sample_wavefunction(sol, grid);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::UsageError;
}

}  // namespace

TEST_SUITE("wavefunction") {
  TEST_CASE("Hermite polynomials") {
    for (double z : {-1.3, 0.0, 0.4, 2.5}) {
      CHECK(hermite_eval(0, z) == 1.0);
      CHECK(hermite_eval(1, z) == doctest::Approx(2 * z));
      CHECK(hermite_eval(2, z) == doctest::Approx(4 * z * z - 2));
      CHECK(hermite_eval(3, z) == doctest::Approx(8 * z * z * z - 12 * z));
      CHECK(hermite_eval(4, z) == doctest::Approx(16 * std::pow(z, 4) - 48 * z * z + 12));
    }
  }

  TEST_CASE("oscillator functions match the textbook form") {
    const double lambda = 0.7;
    for (int k = 0; k <= 6; ++k)
      for (double x : {-3.0, -0.2, 0.0, 1.1, 4.0}) {
        const double z = lambda * x;
        const double expected = std::sqrt(lambda) / std::pow(std::numbers::pi, 0.25) /
                                std::sqrt(std::pow(2.0, k) * factorial(k)) * hermite_eval(k, z) *
                                std::exp(-0.5 * z * z);
        CHECK(oscillator_function(k, lambda, x) == doctest::Approx(expected).epsilon(1e-12));
      }
  }

  TEST_CASE("oscillator functions are orthonormal, including high index") {
    const double lambda = 1.3;
    const auto x = linspace(-40.0, 40.0, 16001);
    for (int k : {0, 1, 5, 30, 80}) {
      for (int l : {0, 1, 5, 30, 80}) {
        std::vector<double> prod(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
          prod[i] = oscillator_function(k, lambda, x[i]) * oscillator_function(l, lambda, x[i]);
        CHECK(trapezoid(x, prod) == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
      }
    }
  }

  TEST_CASE("sampled envelope states: norm, nodes, parity") {
    const auto model = make_soft_coulomb(2.0);
    for (int n = 0; n < 6; ++n) {
      const auto sol = solve_level(model, n);
      const auto grid = default_wavefunction_grid(sol);
      CHECK(grid.size() == 2001);
      const auto s = sample_wavefunction(sol, grid);
      CHECK(s.norm_estimate == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(count_nodes(s.values) == n);
      CHECK(s.lambda == doctest::Approx(std::sqrt(sol.Q) / sol.x0));
      for (double x : {0.3, 1.7, 5.0})
        CHECK(et_wavefunction(sol, -x) == doctest::Approx((n % 2 ? -1 : 1) * et_wavefunction(sol, x)));
    }
  }

  TEST_CASE("half-line states vanish at the origin and are normalized on it") {
    const auto model = make_hulthen(1.0, 0.2);
    for (int n = 0; n < 3; ++n) {
      const auto sol = solve_level(model, n);
      const auto s = sample_wavefunction(sol, default_wavefunction_grid(sol));
      CHECK(s.grid.front() == 0.0);
      CHECK(s.values.front() == doctest::Approx(0.0));
      CHECK(s.norm_estimate == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(count_nodes(s.values) == n);
    }
  }

  TEST_CASE("moments reproduce the envelope parameters") {
    for (double D : {0.5, 2.0}) {
      for (int n = 0; n <= 5; ++n) {
        const auto sol = solve_level(make_soft_coulomb(D), n);
        const auto s = sample_wavefunction(sol, default_wavefunction_grid(sol, 4001));
        const auto [x2, p2] = moment_check(s, sol);
        CHECK(x2 == doctest::Approx(sol.x0 * sol.x0).epsilon(1e-6));
        CHECK(p2 == doctest::Approx(sol.p0 * sol.p0).epsilon(1e-6));
      }
    }
    const auto half = solve_level(make_coulomb_half(1.0, 0.2), 1);
    const auto [x2, p2] = moment_check(sample_wavefunction(half, default_wavefunction_grid(half, 4001)), half);
    CHECK(x2 == doctest::Approx(half.x0 * half.x0).epsilon(1e-6));
    CHECK(p2 == doctest::Approx(half.p0 * half.p0).epsilon(1e-6));
  }

  TEST_CASE("grid validation") {
    const auto sol = solve_level(make_soft_coulomb(1.0), 0);
    CHECK(sample_error(sol, {}) == ErrorKind::EmptyGrid);
    CHECK(sample_error(sol, {0.0, 1.0, 1.0}) == ErrorKind::NonMonotoneGrid);
    CHECK(sample_error(sol, {0.0, 2.0, 1.0}) == ErrorKind::NonMonotoneGrid);
    const auto half = solve_level(make_hulthen(1.0, 0.2), 0);
    CHECK(sample_error(half, {-0.1, 0.5}) == ErrorKind::DomainViolation);

    auto narrow = sample_wavefunction(sol, linspace(-1.0, 1.0, 101));
    try {
      moment_check(narrow, sol);
      FAIL("narrow grid accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GridTooNarrow);
    }
    auto uneven = linspace(-20.0, 20.0, 401);
    uneven[200] += 0.01;
    try {
      moment_check(sample_wavefunction(sol, uneven), sol);
      FAIL("uneven grid accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonUniformGrid);
    }
  }

  TEST_CASE("node counting ignores numerical noise") {
    CHECK(count_nodes(std::vector<double>{1.0, 1e-12, -1e-12, 0.5}) == 0);
    CHECK(count_nodes(std::vector<double>{1.0, -0.5, 0.0, 0.3}) == 2);
    CHECK(count_nodes(std::vector<double>{}) == 0);
  }
}
