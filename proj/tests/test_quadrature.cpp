#include <cmath>
#include <random>

#include "bandlimit/extremal.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/special_functions.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bandlimit;
using oracle::pi;

namespace {

quad::QuadResult l1_line(const quad::Integrand& f, const quad::Integrand& g, double tol) {
  quad::L1Options o;
  o.tol = tol;
  o.breakpoints = {0.0};
  o.tail.period = 1.0;
  return quad::l1_distance(f, g, o);
}

}  // namespace

TEST_CASE("integrate basics") {
  const auto one = quad::integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.evaluations > 0);
  CHECK(one.abs_error_estimate >= 0.0);
  CHECK(std::abs(quad::integrate([](double x) { return gaussian(1.0, x); }, -6, 6, 1e-12).value -
                 1.0) < 1e-10);
  CHECK(quad::integrate([](double x) { return std::pow(sin_pi(x), 2); }, 0, 1, 1e-12).value ==
        doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("integrate over infinite limits") {
  const auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY,
                                 1e-12);
  CHECK(r.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  const auto h = quad::integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY, 1e-12);
  CHECK(h.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate_line") {
  CHECK(std::abs(quad::integrate_line([](double x) { return gaussian(1.0, x); }, 1e-12, 1.0).value -
                 1.0) < 1e-10);
  CHECK(std::abs(
            quad::integrate_line([](double x) { return truncated_gaussian(1.0, x); }, 1e-12, 1.0)
                .value -
            0.5) < 1e-10);
  CHECK(std::abs(quad::integrate_line([](double x) { return x * gaussian(1.0, x); }, 1e-13, 1.0)
                     .value) < 1e-12);
  CHECK(quad::gaussian_window(1e-10, 1.0) >= 3.0);
}

TEST_CASE("non-convergence carries the best estimate") {
  quad::Options o;
  o.abs_tol = 1e-15;
  o.max_subdivisions = 3;
  try {
    quad::integrate([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, o);
    FAIL("expected NonConvergence");
  } catch (const quad::NonConvergence& e) {
    CHECK(std::isfinite(e.best_estimate().value));
    CHECK(e.best_estimate().abs_error_estimate > 1e-15);
  }
}

TEST_CASE("error estimates are conservative on polynomial times Gaussian") {
  // I_k = int_0^b x^k e^(-x^2) dx by the recurrence
  // I_k = (k-1)/2 I_(k-2) - b^(k-1) e^(-b^2) / 2.
  for (double b : {0.7, 2.0, 4.5}) {
    std::vector<double> I(9);
    I[0] = std::sqrt(pi) / 2 * std::erf(b);
    I[1] = (1 - std::exp(-b * b)) / 2;
    for (int k = 2; k <= 8; ++k) I[k] = (k - 1) / 2.0 * I[k - 2] - std::pow(b, k - 1) * std::exp(-b * b) / 2;
    for (int k = 0; k <= 8; ++k) {
      for (double tol : {1e-4, 1e-8, 1e-12}) {
        const auto r = quad::integrate([k](double x) { return std::pow(x, k) * std::exp(-x * x); },
                                       0.0, b, tol);
        CHECK(std::abs(r.value - I[k]) <= r.abs_error_estimate + 1e-15);
        CHECK(std::abs(r.value - I[k]) <= std::max(tol, r.abs_error_estimate) + 1e-15);
      }
    }
  }
}

TEST_CASE("integrate_panels") {
  const std::vector<double> br{-1.0, 0.0, 2.0};
  const auto r = quad::integrate_panels([](double x) { return std::abs(x); }, br,
                                        quad::Options{1e-13, 0.0, 100});
  CHECK(r.value == doctest::Approx(2.5).epsilon(1e-14));
  const std::vector<double> bad{0.0, -1.0};
  CHECK_THROWS(quad::integrate_panels([](double) { return 1.0; }, bad, quad::Options{}));
}

TEST_CASE("l1_distance") {
  auto g = [](double x) { return truncated_gaussian(1.0, x); };
  CHECK(l1_line(g, g, 1e-10).value == 0.0);

  ExtremalSeries s(1.0);
  auto k = [&](double x) { return s.best(x); };
  auto l = [&](double x) { return s.minorant(x); };
  CHECK(std::abs(l1_line(g, k, 1e-9).value - error_best(1.0).value) < 1e-6);
  CHECK(std::abs(l1_line(g, l, 1e-10).value - error_minorant(1.0).value) < 1e-7);

  // |sin(pi x)| on [0, 3] without tails.
  quad::L1Options o;
  o.a = 0.0;
  o.b = 3.0;
  const auto r = quad::l1_distance([](double x) { return sin_pi(x); }, [](double) { return 0.0; }, o);
  CHECK(r.value == doctest::Approx(6 / pi).epsilon(1e-12));
}

TEST_CASE("H(lambda)") {
  CHECK(quad::H_lambda(1e-4) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::sqrt(1e4) * quad::H_lambda(1e4) == doctest::Approx(0.5).epsilon(0.01));
  for (double lam : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(quad::H_lambda(lam) - oracle::H(lam)) < 1e-10);
    const auto direct = quad::h_profile(lam, quad::HMethod::Direct);
    CHECK(direct.method == quad::HMethod::Direct);
    CHECK(std::abs(direct.value - quad::H_lambda(lam)) < 1e-6);
  }
  const auto br = quad::h_large_lambda_bracket(10.0);
  const double v = std::sqrt(10.0) * quad::H_lambda(10.0);
  CHECK(br.lower <= v);
  CHECK(v <= br.upper);
  for (double lam : {0.1, 1.0}) {
    for (double t : {0.5, 1.5}) CHECK(quad::H_t(t, lam) <= 1 / (pi * pi * t * t));
  }
  CHECK_THROWS(quad::H_lambda(0.0));
}

TEST_CASE("H_t resolves the endpoint layer for large t") {
  for (double t : {0.5, 3.5, 170.5, 1e4 + 0.5}) {
    const double a = pi * t * t;
    // Test-side value on a graded mesh in s = 1 - y.
    double ref = 0.0;
    double lo = 0.0;
    for (double hi : {1.0 / a, 4.0 / a, 16.0 / a, 64.0 / a, 1.0}) {
      if (hi <= lo || hi > 1.0) continue;
      ref += oracle::integrate([a](double s) { return std::exp(-a * s * (2 - s)); }, lo, hi, 20);
      lo = hi;
    }
    CHECK(quad::H_t(t, 1.0) == doctest::Approx(ref / pi).epsilon(1e-12));
  }
}

TEST_CASE("sum of H_t over half-integers reproduces H") {
  double s = 0.0;
  for (int n = -4000; n < 4000; ++n) s += quad::H_t(n + 0.5, 1.0);
  // Remaining tail is about 2 / (2 pi^2 * 4000).
  CHECK(std::abs(s - quad::H_lambda(1.0)) < 3e-5);
}

TEST_CASE("integrate_2d against closed forms") {
  const double lam = 1.0;
  const double c = 2 * pi * lam * std::sqrt(lam);
  auto G = [lam](double x) { return gaussian(lam, x); };
  auto integrand = [lam](double z, double w) {
    return [=](double t, double u) {
      return std::exp(-pi * lam * ((z - t) * (z - t) + (w - u) * (w - u) + 2 * t * u));
    };
  };
  {
    const double z = -1.3, w = 0.7;
    auto f = integrand(z, w);
    auto hint = [w](double t) { return w - t; };
    const double rhs = -c * (quad::integrate_2d(f, {0, INFINITY, -INFINITY, 0}, 1e-10, hint).value +
                             quad::integrate_2d(f, {0, INFINITY, 0, INFINITY}, 1e-10, hint).value);
    CHECK(std::abs(rhs - G(z) / (z - w)) < 1e-6);
  }
  {
    const double z = 1.2, w = 0.3;
    auto f = integrand(z, w);
    const double rhs =
        c * quad::integrate_2d(f, {-INFINITY, INFINITY, 0, INFINITY}, 1e-10,
                               [w](double t) { return w - t; })
                .value;
    CHECK(std::abs(rhs - G(w) / (z - w)) < 1e-6);
  }
  {
    const double z = 0.8;
    auto h = [lam, z](double u) { return std::exp(-pi * lam * (u * u + 2 * z * u)); };
    const double lhs = std::sqrt(lam) * (quad::integrate(h, -INFINITY, -z, 1e-13).value +
                                         quad::integrate(h, -z, INFINITY, 1e-13).value);
    CHECK(std::abs(lhs - 1 / G(z)) < 1e-8);
  }
  // Separable product over a finite box.
  const auto box = quad::integrate_2d([](double t, double u) { return t * u * u; }, {0, 1, 0, 2},
                                      1e-12);
  CHECK(box.value == doctest::Approx(0.5 * 8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("property: l1_distance of a shifted Gaussian") {
  // int |G(x) - G(x - d)| dx = 2 erf(sqrt(pi) d / 2) for lambda = 1.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> shift(0.05, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double d = shift(rng);
    quad::L1Options o;
    o.tol = 1e-11;
    const auto r = quad::l1_distance([](double x) { return gaussian(1.0, x); },
                                     [d](double x) { return gaussian(1.0, x - d); }, o);
    CHECK(r.value == doctest::Approx(2 * std::erf(std::sqrt(pi) * d / 2)).epsilon(1e-9));
  }
}
