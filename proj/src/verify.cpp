#include "bandlimit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include "bandlimit/extremal.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/special_functions.hpp"
#include "json.hpp"

namespace bandlimit::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict inequalities are checked as value <= -kStrictMargin.
constexpr double kStrictMargin = 1e-12;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "?";
  return std::string(buf, end);
}

/// Compensated (Neumaier) summation.
class Sum {
 public:
  void add(double v) {
    const double t = s_ + v;
    c_ += std::abs(s_) >= std::abs(v) ? (s_ - t) + v : (v - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Collects claims of the form violation <= tol. Claims with their own
// tolerance are rescaled onto the primary one so that a single maximum
// decides pass/fail:  T + (v - tol) |T| / |tol|.
class Tally {
 public:
  explicit Tally(double primary) : t_(primary) {}

  double primary() const { return t_; }

  void claim(double v, double tol, const char* what, double lam, double x) {
    const double scaled = std::isnan(v) ? kInf : t_ + (v - tol) * std::abs(t_) / std::abs(tol);
    if (scaled > worst_ || witness_.empty()) {
      worst_ = scaled;
      witness_ = std::string(what);
      if (!std::isnan(lam)) witness_ += " lam=" + num(lam);
      if (!std::isnan(x)) witness_ += " x=" + num(x);
      witness_ += " value=" + num(v);
    }
  }
  void check(double v, const char* what, double lam, double x) { claim(v, t_, what, lam, x); }

  double worst() const { return worst_; }
  const std::string& witness() const { return witness_; }

 private:
  double t_;
  double worst_ = -kInf;
  std::string witness_;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Ctx {
  const CheckConfig& cfg;
  bool fast() const { return cfg.profile == Profile::Fast; }

  std::vector<double> lambdas(std::vector<double> full) const {
    if (!cfg.lambdas.empty()) return cfg.lambdas;
    if (fast()) return {1.0};
    return full;
  }
  int points(int full, int fast_n) const {
    if (cfg.grid_points) return std::max(1, *cfg.grid_points);
    return fast() ? fast_n : full;
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  if (n == 1) return {a};
  for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  return out;
}

// Integers are moved off by 1e-3, where sin(pi x) and the residual both vanish.
std::vector<double> offset_grid(double a, double b, int n) {
  auto xs = linspace(a, b, n);
  for (double& x : xs) {
    if (std::abs(x - std::nearbyint(x)) < 1e-9) x = std::nearbyint(x) + 1e-3;
  }
  return xs;
}

std::string grid_desc(double a, double b, int n, const std::vector<double>& lams) {
  std::string s = "x in [" + num(a) + "," + num(b) + "] n=" + std::to_string(n) + "; lam={";
  for (std::size_t i = 0; i < lams.size(); ++i) s += (i ? "," : "") + num(lams[i]);
  return s + "}";
}

std::string lam_desc(const std::vector<double>& lams) {
  std::string s = "lam={";
  for (std::size_t i = 0; i < lams.size(); ++i) s += (i ? "," : "") + num(lams[i]);
  return s + "}";
}

using Fn = std::function<double(double)>;

Fn best_fn(const Ctx& c, double lam) {
  if (c.cfg.best_truncated_override) {
    return [f = c.cfg.best_truncated_override, lam](double x) { return f(lam, x); };
  }
  auto s = std::make_shared<const ExtremalSeries>(lam);
  return [s](double x) { return s->best(x); };
}

Fn odd_best_fn(const Ctx& c, double lam) {
  auto k = best_fn(c, lam);
  return [k](double x) { return k(x) - k(-x); };
}

quad::QuadResult l1(const Fn& f, const Fn& g, double tol) {
  quad::L1Options o;
  o.tol = tol;
  o.breakpoints = {0.0};
  o.tail.period = 1.0;
  return quad::l1_distance(f, g, o);
}

// ---------------------------------------------------------------------------
// Extremal functions

std::string sign_condition_truncated(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const int n = c.points(4001, 401);
  for (double lam : lams) {
    auto k = best_fn(c, lam);
    for (double x : offset_grid(-8, 8, n)) {
      t.check(-sin_pi(x) * (truncated_gaussian(lam, x) - k(x)), "sin(pi x)(G+ - K+) >= 0", lam, x);
    }
  }
  return grid_desc(-8, 8, n, lams);
}

std::string ba_error_closed_form(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  for (double lam : lams) {
    const double h = quad::H_lambda(lam);
    auto k = best_fn(c, lam);
    const auto d = l1([lam](double x) { return truncated_gaussian(lam, x); }, k, 1e-9);
    t.check(std::abs(d.value - h), "l1(G+, K+) = H", lam, kNaN);
    const double direct = quad::h_profile(lam, quad::HMethod::Direct, 1e-9).value;
    t.claim(std::abs(direct - h), 1e-6, "direct H = substituted H", lam, kNaN);
  }
  return lam_desc(lams) + "; l1 over R, window [-8,8] plus extrapolated tails";
}

std::string sandwich_truncated(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const int n = c.points(4001, 401);
  for (double lam : lams) {
    ExtremalSeries s(lam);
    for (double x : offset_grid(-8, 8, n)) {
      const double g = truncated_gaussian(lam, x);
      t.check(s.minorant(x) - g, "L+ <= G+", lam, x);
      t.check(g - s.majorant(x), "G+ <= M+", lam, x);
    }
  }
  return grid_desc(-8, 8, n, lams);
}

std::string minorant_error(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  for (double lam : lams) {
    auto s = std::make_shared<const ExtremalSeries>(lam);
    const auto d = l1([lam](double x) { return truncated_gaussian(lam, x); },
                      [s](double x) { return s->minorant(x); }, 1e-10);
    const double closed = error_minorant(lam).value;
    t.check(std::abs(d.value - closed), "l1(G+, L+) = minorant error", lam, kNaN);
    const double via_theta = 0.5 + 0.5 / std::sqrt(lam) - 0.5 * theta3(0.0, lam);
    t.claim(std::abs(closed - via_theta), 1e-12, "closed form vs theta3 series", lam, kNaN);
  }
  return lam_desc(lams) + "; l1 over R";
}

std::string majorant_error(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  for (double lam : lams) {
    auto s = std::make_shared<const ExtremalSeries>(lam);
    const auto d = l1([s](double x) { return s->majorant(x); },
                      [lam](double x) { return truncated_gaussian(lam, x); }, 1e-10);
    const double closed = error_majorant(lam).value;
    t.check(std::abs(d.value - closed), "l1(M+, G+) = majorant error", lam, kNaN);
    const double via_theta = 0.5 * theta3(0.0, lam) + 0.5 - 0.5 / std::sqrt(lam);
    t.claim(std::abs(closed - via_theta), 1e-12, "closed form vs theta3 series", lam, kNaN);
    t.claim(std::abs(closed + error_minorant(lam).value - 1.0), 1e-15, "errors sum to 1", lam,
            kNaN);
  }
  return lam_desc(lams) + "; l1 over R";
}

std::string odd_sign_condition(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const int n = c.points(4001, 401);
  for (double lam : lams) {
    auto k = odd_best_fn(c, lam);
    for (double x : offset_grid(-8, 8, n)) {
      t.check(-sin_pi(x) * (odd_gaussian(lam, x) - k(x)), "sin(pi x)(Godd - Kodd) >= 0", lam, x);
    }
  }
  return grid_desc(-8, 8, n, lams);
}

std::string odd_sandwich(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const int n = c.points(4001, 401);
  for (double lam : lams) {
    ExtremalSeries s(lam);
    for (double x : offset_grid(-8, 8, n)) {
      const double g = odd_gaussian(lam, x);
      t.check(s.odd(Kind::Minorant, x) - g, "Lodd <= Godd", lam, x);
      t.check(g - s.odd(Kind::Majorant, x), "Godd <= Modd", lam, x);
    }
  }
  return grid_desc(-8, 8, n, lams);
}

std::string interpolation_best(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  for (double lam : lams) {
    auto k = best_fn(c, lam);
    for (int n = -20; n <= 20; ++n) {
      if (n == 0) continue;
      t.check(std::abs(k(n) - truncated_gaussian(lam, n)), "K+(n) = G+(n)", lam, n);
    }
  }
  return "n in {-20..20}\\{0}; " + lam_desc(lams);
}

std::string interpolation_onesided(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const double h = 1e-5;
  for (double lam : lams) {
    ExtremalSeries s(lam);
    for (int n = -20; n <= 20; ++n) {
      if (n == 0) continue;
      const double g = truncated_gaussian(lam, n);
      const double gp = n > 0 ? gaussian_prime(lam, n) : 0.0;
      t.check(std::abs(s.minorant(n) - g), "L+(n) = G+(n)", lam, n);
      t.check(std::abs(s.majorant(n) - g), "M+(n) = G+(n)", lam, n);
      const double dl = (s.minorant(n + h) - s.minorant(n - h)) / (2 * h);
      const double dm = (s.majorant(n + h) - s.majorant(n - h)) / (2 * h);
      t.claim(std::abs(dl - gp), 1e-7, "L+'(n) = G+'(n)", lam, n);
      t.claim(std::abs(dm - gp), 1e-7, "M+'(n) = G+'(n)", lam, n);
    }
  }
  return "n in {-20..20}\\{0}, central differences h=1e-5; " + lam_desc(lams);
}

// ---------------------------------------------------------------------------
// Theta functions

// Gaussian sums on the right of the transformation formulas, summed directly.
double gauss_sum(double z, double lam, double shift, bool alternate) {
  Sum s;
  const long m = std::lround(z);
  for (long n = m - 60; n <= m + 60; ++n) {
    const double d = z - static_cast<double>(n) - shift;
    const double v = std::exp(-kPi * lam * d * d);
    s.add(alternate && (n % 2 != 0) ? -v : v);
  }
  return s.value();
}

std::string theta_transformations(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 1.0, 4.0});
  const double zs[] = {0.0, 0.1, 0.37, 0.5};
  for (double lam : lams) {
    const double r = 1.0 / std::sqrt(lam);
    for (double z : zs) {
      const double v1 = gauss_sum(z, lam, 0.0, true);
      const double v2 = gauss_sum(z, lam, 0.5, false);
      const double v3 = gauss_sum(z, lam, 0.0, false);
      const double q1 = r * theta1(z, 1.0 / lam, ThetaRoute::QSeries);
      const double q2 = r * theta2(z, 1.0 / lam, ThetaRoute::QSeries);
      const double q3 = r * theta3(z, 1.0 / lam, ThetaRoute::QSeries);
      t.check(std::abs(q1 - v1) / (1 + std::abs(v1)), "theta1 transformation", lam, z);
      t.check(std::abs(q2 - v2) / (1 + std::abs(v2)), "theta2 transformation", lam, z);
      t.check(std::abs(q3 - v3) / (1 + std::abs(v3)), "theta3 transformation", lam, z);
      const double a = theta1(z + 1.0, lam);
      t.check(std::abs(a + theta1(z, lam)) / (1 + std::abs(a)), "theta1(z+1) = -theta1(z)", lam,
              z);
    }
  }
  return "z in {0,0.1,0.37,0.5}; " + lam_desc(lams);
}

std::string theta1_theta2_link(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int n = c.points(46, 10);
  for (double lam : lams) {
    for (double x : linspace(0.0, 0.45, n)) {
      const double lhs = theta1(x, 1.0 / lam) / std::sqrt(lam);
      const double rhs = gaussian(lam, x) * theta2_imag(-lam * x, lam);
      t.check(std::abs(lhs - rhs), "theta1/theta2 link", lam, x);
    }
  }
  return grid_desc(0, 0.45, n, lams);
}

std::string lemma_theta2_signs(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int m = c.points(200, 20);
  for (double lam : lams) {
    for (int k = 1; k <= m; ++k) {
      const double x = -0.5 * lam * k / (m + 1);
      t.claim(-theta2_dz_imag(x, lam), -kStrictMargin, "i theta2'(ix) > 0", lam, x);
    }
    for (double x : linspace(0.0, 0.5, m + 1)) {
      t.check(theta3_dz(x, lam), "theta3'(x) <= 0", lam, x);
    }
  }
  return "x interior of (-lam/2,0) and [0,1/2], " + std::to_string(m) + " points; " +
         lam_desc(lams);
}

std::string theta_ratio_bound(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.25, 0.5, 1.0, 2.0, 4.0});
  const int n = c.points(100, 20);
  for (double lam : lams) {
    const double t0 = theta1(0.0, 1.0 / lam);
    for (int k = 0; k < n; ++k) {
      const double x = 0.5 * k / n;
      t.check(theta1(x, 1.0 / lam) / t0 - gaussian(lam, x), "theta1 ratio <= G", lam, x);
    }
  }
  return "x in [0,1/2) n=" + std::to_string(n) + "; " + lam_desc(lams);
}

std::string laplace_theta_negative(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const double xs[] = {0.1, 1.0, 5.0};
  for (double lam : lams) {
    const double t0 = theta1(0.0, 1.0 / lam);
    for (double x : xs) {
      const double rate = 2 * kPi * lam * x;
      auto f = [&](double s) {
        return std::exp(-rate * s) * (theta1(s, 1.0 / lam) - t0 * gaussian(lam, s));
      };
      // Beyond 40/rate the integrand is below e^-40 times a bounded factor.
      const double end = 40.0 / rate;
      std::vector<double> br;
      for (double b = 0.0; b < end; b += 0.5) br.push_back(b);
      br.push_back(end);
      const auto r = quad::integrate_panels(f, br, quad::Options{1e-15, 1e-12, 4000});
      t.check(r.value + r.abs_error_estimate, "Laplace integral < 0", lam, x);
    }
  }
  return "x in {0.1,1,5}; " + lam_desc(lams);
}

std::string sum_inequalities(const Ctx&, Tally& t) {
  const double ts[] = {0.01, 0.1, 1.0, 10.0};
  for (double s : ts) {
    Sum a, b, d;
    b.add(1.0);
    for (int n = 1;; ++n) {
      const double nn = static_cast<double>(n);
      const double e = std::exp(-s * nn * nn);
      if (e < 1e-300 || (s * nn * nn > 60.0 && e * nn * nn * nn * (1 + s) < 1e-25)) break;
      a.add((n % 2 ? 1.0 : -1.0) * nn * nn * e);
      b.add(e * (1.0 - 2.0 * s * nn * nn));
      d.add(e * (s * nn * nn * nn - nn));
    }
    t.check(-a.value(), "sum (-1)^(n+1) n^2 e^(-t n^2) >= 0", s, kNaN);
    t.check(0.5 - b.value(), "sum e^(-t n^2)(1 - 2 t n^2) >= 1/2", s, kNaN);
    t.check(-d.value(), "sum e^(-t n^2)(t n^3 - n) >= 0", s, kNaN);
  }
  return "t in {0.01,0.1,1,10}";
}

// ---------------------------------------------------------------------------
// Dawson's integral

std::string dawson_bounds(const Ctx& c, Tally& t) {
  const int n = c.points(901, 91);
  for (double x : linspace(1.0, 10.0, n)) {
    t.check(1.0 / (2 * x) - dawson(x), "D(x) >= 1/(2x)", kNaN, x);
  }
  for (double x : linspace(2.0, 10.0, n)) {
    t.check((x * x - 1) / (x * (2 * x * x - 3)) - dawson(x), "D(x) >= (x^2-1)/(x(2x^2-3))", kNaN,
            x);
  }
  t.claim(0.5 - dawson(1.0), -kStrictMargin, "D(1) > 1/2", kNaN, 1.0);
  t.claim(0.3 - dawson(2.0), -kStrictMargin, "D(2) > 3/10", kNaN, 2.0);
  const double h = 1e-5;
  for (double x : {0.5, 1.0, 3.0}) {
    const double fd = (dawson(x + h) - dawson(x - h)) / (2 * h);
    t.claim(std::abs(fd - (1 - 2 * x * dawson(x))), 1e-7, "D' = 1 - 2xD", kNaN, x);
  }
  return "[1,10] and [2,10], n=" + std::to_string(n);
}

std::string dawson_moments(const Ctx&, Tally& t) {
  for (int j : {0, 2, 4}) {
    for (double x : {0.3, 1.0, 2.5}) {
      auto f = [j, x](double u) { return std::pow(u, j) * std::exp(-u * u) * std::sin(2 * x * u); };
      const double numeric = quad::integrate(f, 0.0, 9.0, quad::Options{1e-14, 1e-13, 4000}).value;
      const double d = dawson(x);
      double closed = d;
      if (j == 2) closed = x / 2 + d * (0.5 - x * x);
      if (j == 4) closed = 1.25 * x - 0.5 * x * x * x + d * (0.75 - 3 * x * x + x * x * x * x);
      const std::string what = "moment j=" + std::to_string(j);
      t.check(std::abs(numeric - closed), what.c_str(), kNaN, x);
    }
  }
  return "j in {0,2,4}, x in {0.3,1,2.5}";
}

// ---------------------------------------------------------------------------
// Integral representations

std::string integral_representations(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({1.0});
  const double tol = 1e-9;
  for (double lam : lams) {
    const double scale = 2 * kPi * lam * std::sqrt(lam);
    auto G = [lam](double x) { return gaussian(lam, x); };
    auto dbl = [&](double z, double w, double t_lo, double t_hi, double u_lo, double u_hi) {
      auto f = [&](double s, double u) {
        return std::exp(-kPi * lam * ((z - s) * (z - s) + (w - u) * (w - u) + 2 * s * u));
      };
      return quad::integrate_2d(f, {t_lo, t_hi, u_lo, u_hi}, tol,
                                [w](double s) { return w - s; })
          .value;
    };
    // Difference quotient of G over the two opposite quadrants.
    for (auto [z, w] : {std::pair{-1.3, 0.7}, std::pair{1.2, 0.3}}) {
      const double rhs = scale * (dbl(z, w, -kInf, 0, -kInf, 0) - dbl(z, w, 0, kInf, 0, kInf));
      t.check(std::abs((G(z) - G(w)) / (z - w) - rhs), "difference quotient", lam, z);
    }
    // z < w
    for (auto [z, w] : {std::pair{-1.3, 0.7}, std::pair{0.2, 0.9}}) {
      const double a = -scale * dbl(z, w, -kInf, kInf, -kInf, 0);
      t.check(std::abs(G(w) / (z - w) - a), "G(w)/(z-w), z<w", lam, z);
      const double b = -scale * (dbl(z, w, 0, kInf, -kInf, 0) + dbl(z, w, 0, kInf, 0, kInf));
      t.check(std::abs(G(z) / (z - w) - b), "G(z)/(z-w), z<w", lam, z);
    }
    // z > w
    for (auto [z, w] : {std::pair{1.2, 0.3}, std::pair{0.5, -0.6}}) {
      const double a = scale * dbl(z, w, -kInf, kInf, 0, kInf);
      t.check(std::abs(G(w) / (z - w) - a), "G(w)/(z-w), z>w", lam, z);
      const double b = scale * (dbl(z, w, -kInf, 0, -kInf, 0) + dbl(z, w, -kInf, 0, 0, kInf));
      t.check(std::abs(G(z) / (z - w) - b), "G(z)/(z-w), z>w", lam, z);
    }
    // Reciprocal of the Gaussian as a Laplace-type integral.
    const double z = 0.8;
    auto h = [lam, z](double u) { return std::exp(-kPi * lam * (u * u + 2 * z * u)); };
    const quad::Options o{1e-13, 1e-13, 4000};
    const double lhs =
        std::sqrt(lam) * (quad::integrate(h, -kInf, -z, o).value + quad::integrate(h, -z, kInf, o).value);
    t.claim(std::abs(lhs - 1.0 / G(z)), 1e-8, "reciprocal Gaussian", lam, z);
  }
  return "two (z,w) points per identity, iterated 2D quadrature tol 1e-9; " + lam_desc(lams);
}

// ---------------------------------------------------------------------------
// Truncated theta series

std::string truncated_theta_inequalities(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int n = c.points(301, 31);
  for (double lam : lams) {
    const double tp0 = theta_plus(0.0, lam);
    const double vp0 = vartheta_plus(0.0, lam);
    for (int k = 0; k < n; ++k) {
      const double x = -3.0 + 3.0 * k / n;  // [-3, 0)
      const double g = gaussian(lam, x);
      t.check(theta_plus(x, lam) - tp0 * g, "theta+(0)G(x) >= theta+(x)", lam, x);
      const double d = vp0 * g - vartheta_plus(x, lam);
      t.check(-d, "vartheta+(0)G(x) >= vartheta+(x)", lam, x);
      t.check(d - 0.5 * gaussian_prime(lam, x), "vartheta+(0)G(x) - vartheta+(x) <= G'(x)/2", lam,
              x);
    }
    for (double x : linspace(0.0, 0.5, n / 6 + 1)) {
      t.check(vp0 * gaussian(lam, x) - vp0, "vartheta+(0)G(x) <= vartheta+(0)", lam, x);
      t.check(vp0 - vartheta_plus(x, lam), "vartheta+(0) <= vartheta+(x)", lam, x);
    }
    for (double x : linspace(-3.0, 3.0, n / 2 + 1)) {
      const double r = 1.0 / std::sqrt(lam);
      const double a = -r * theta1(x, 1.0 / lam);
      const double b = theta_plus(x, lam) + theta_plus(-x, lam) - gaussian(lam, x);
      t.claim(std::abs(a - b), 1e-12, "theta1 recombination", lam, x);
      const double p = r * theta3_dz(x, 1.0 / lam);
      const double q = vartheta_plus(x, lam) - vartheta_plus(-x, lam) + gaussian_prime(lam, x);
      t.claim(std::abs(p - q), 1e-12, "theta3' recombination", lam, x);
    }
  }
  return grid_desc(-3, 0, n, lams) + "; [0,1/2]; recombination on [-3,3]";
}

std::string growth_estimates(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int n = c.points(101, 21);
  const int max_terms = c.fast() ? 10 : 50;
  for (double lam : lams) {
    Sum ng;
    for (int k = 1; k < 200; ++k) ng.add(k * gaussian(lam, k));
    const double c_lam = 2 * kPi * lam * ng.value() / gaussian(lam, 1.0);
    for (double u : linspace(-4.0, 1.0, n)) {
      const double bound = 2 * gaussian(lam, u - 1);
      for (int N = 1; N <= max_terms; ++N) {
        t.check(std::abs(theta_plus_partial(u, lam, N)) - bound, "|theta+_N(u)| <= 2G(u-1)", lam,
                u);
      }
    }
    for (double u : linspace(-4.0, 0.0, n)) {
      const double full = vartheta_plus(u, lam);
      for (int N = 1; N <= max_terms; ++N) {
        const double p = vartheta_plus_partial(u, lam, N);
        t.check(-p, "vartheta+_N(u) >= 0", lam, u);
        t.check(p - full, "vartheta+_N(u) <= vartheta+(u)", lam, u);
      }
      t.check(full - c_lam * (std::abs(u) + 1) * gaussian(lam, 1 - u),
              "vartheta+(u) <= c (|u|+1) G(1-u)", lam, u);
    }
  }
  return "u in [-4,1] n=" + std::to_string(n) + ", N=1.." + std::to_string(max_terms) + "; " +
         lam_desc(lams);
}

// ---------------------------------------------------------------------------
// Fourier side

std::string ft_truncated(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({1.0});
  const double ts[] = {0.0, 0.5, 1.5};
  for (double lam : lams) {
    const double end = std::sqrt(40.0 / (kPi * lam));
    const quad::Options o{1e-14, 1e-13, 4000};
    for (double s : ts) {
      auto re = [lam, s](double x) { return gaussian(lam, x) * std::cos(2 * kPi * s * x); };
      auto im = [lam, s](double x) { return -gaussian(lam, x) * std::sin(2 * kPi * s * x); };
      const std::complex<double> numeric(quad::integrate(re, 0.0, end, o).value,
                                         quad::integrate(im, 0.0, end, o).value);
      t.check(std::abs(numeric - ft_truncated_gaussian(lam, s)), "closed-form transform", lam, s);
    }
  }
  return "t in {0,0.5,1.5}; " + lam_desc(lams);
}

// Hurwitz zeta for integer s >= 2 through the polygamma function.
double hurwitz_zeta(int s, double a) {
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return sign * boost::math::polygamma(s - 1, a) / boost::math::factorial<double>(s - 1);
}

std::string fourier_sum_identity(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int N = 100;
  for (double lam : lams) {
    Sum re, im;
    for (int n = -N; n <= N; ++n) {
      const double s = n + 0.5;
      const auto v = std::complex<double>(0.0, 1.0 / kPi) * ft_truncated_gaussian(lam, s) / s;
      re.add(v.real());
      im.add(v.imag());
    }
    // Terms beyond the window: H_t ~ sum_k c_k lambda^k / (pi^(k+2) t^(2k+2)).
    const double ck[] = {0.5, 0.25, 0.375, 0.9375};
    for (int k = 0; k < 4; ++k) {
      const double z = hurwitz_zeta(2 * k + 2, N + 1.5) + hurwitz_zeta(2 * k + 2, N + 0.5);
      re.add(ck[k] * std::pow(lam, k) / std::pow(kPi, k + 2) * z);
    }
    t.check(std::abs(re.value() - quad::H_lambda(lam)), "Fourier sum = H", lam, kNaN);
    t.claim(std::abs(im.value()), 1e-10, "Fourier sum is real", lam, kNaN);
  }
  return "|n| <= 100 with asymptotic tail; " + lam_desc(lams);
}

std::string poisson_value(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  for (double lam : lams) {
    ExtremalSeries s(lam);
    Sum sum;
    for (int n = -40; n <= 40; ++n) sum.add(s.minorant(n));
    t.check(std::abs(sum.value() - (0.5 * theta3(0.0, lam) - 0.5)), "sum L+(n) = theta3/2 - 1/2",
            lam, kNaN);
  }
  return "|n| <= 40; " + lam_desc(lams);
}

std::string h_asymptotics(const Ctx&, Tally& t) {
  t.check(std::abs(quad::H_lambda(1e-4) - 0.5), "H near 0", 1e-4, kNaN);
  t.check(std::abs(std::sqrt(1e4) * quad::H_lambda(1e4) - 0.5), "sqrt(lam) H near infinity", 1e4,
          kNaN);
  const double lam = 10.0;
  const auto br = quad::h_large_lambda_bracket(lam);
  const double v = std::sqrt(lam) * quad::H_lambda(lam);
  t.claim(br.lower - v, 1e-10, "bracket lower <= sqrt(lam) H", lam, kNaN);
  t.claim(v - br.upper, 1e-10, "sqrt(lam) H <= bracket upper", lam, kNaN);
  for (double l : {0.1, 1.0}) {
    for (double s : {0.5, 1.5}) {
      t.claim(quad::H_t(s, l) - 1.0 / (kPi * kPi * s * s), 1e-12, "H_t <= 1/(pi^2 t^2)", l, s);
    }
  }
  return "lam in {1e-4,1e4}, bracket at 10, H_t at t in {0.5,1.5}";
}

// ---------------------------------------------------------------------------
// Measures

std::string measure_point_mass(const Ctx& c, Tally& t) {
  const auto lams = c.lambdas({0.5, 1.0, 2.0});
  const int n = c.points(25, 9);
  const Kind kinds[] = {Kind::BestApprox, Kind::Minorant, Kind::Majorant};
  for (double lam : lams) {
    const auto m = MeasureRep::point_mass(lam);
    ExtremalSeries s(lam);
    for (Parity p : {Parity::Truncated, Parity::Odd}) {
      const IntegratedTarget target{m, p};
      for (double x : linspace(-3.0, 3.0, n)) {
        const double g = p == Parity::Truncated ? truncated_gaussian(lam, x) : odd_gaussian(lam, x);
        t.check(std::abs(eval_g(target, x) - g), "g = G", lam, x);
        for (Kind k : kinds) {
          const double direct = p == Parity::Truncated ? s.truncated(k, x) : s.odd(k, x);
          t.check(std::abs(eval_integrated(k, target, x) - direct), "integrated = single", lam, x);
        }
      }
      for (Kind k : kinds) {
        const double single =
            p == Parity::Truncated ? error_for(k, lam).value : error_odd(k, lam).value;
        t.check(std::abs(integrated_error(k, m, p) - single), "integrated error = single", lam,
                kNaN);
      }
    }
  }
  // Minorant error of the unit mass at 1 against a direct L1 distance.
  const IntegratedTarget one{MeasureRep::point_mass(1.0), Parity::Truncated};
  const auto d = l1([&](double x) { return eval_g(one, x); },
                    [&](double x) { return eval_integrated(Kind::Minorant, one, x); }, 1e-10);
  t.claim(std::abs(d.value - integrated_error(Kind::Minorant, one.measure)), 1e-7,
          "integrated minorant error = l1", 1.0, kNaN);
  return grid_desc(-3, 3, n, lams);
}

std::string measure_linearity(const Ctx& c, Tally& t) {
  const int n = c.points(25, 9);
  const double w1 = 0.25, w2 = 0.75, l1v = 1.0, l2v = 4.0;
  const MeasureRep m({Atom{l1v, w1}, Atom{l2v, w2}});
  ExtremalSeries s1(l1v), s2(l2v);
  const Kind kinds[] = {Kind::BestApprox, Kind::Minorant, Kind::Majorant};
  for (Parity p : {Parity::Truncated, Parity::Odd}) {
    const IntegratedTarget target{m, p};
    for (double x : linspace(-3.0, 3.0, n)) {
      const double g = p == Parity::Truncated
                           ? w1 * truncated_gaussian(l1v, x) + w2 * truncated_gaussian(l2v, x)
                           : w1 * odd_gaussian(l1v, x) + w2 * odd_gaussian(l2v, x);
      t.check(std::abs(eval_g(target, x) - g), "g linear", kNaN, x);
      for (Kind k : kinds) {
        const double v = p == Parity::Truncated ? w1 * s1.truncated(k, x) + w2 * s2.truncated(k, x)
                                                : w1 * s1.odd(k, x) + w2 * s2.odd(k, x);
        t.check(std::abs(eval_integrated(k, target, x) - v), "extremal linear", kNaN, x);
      }
    }
    for (Kind k : kinds) {
      const double e = p == Parity::Truncated
                           ? w1 * error_for(k, l1v).value + w2 * error_for(k, l2v).value
                           : w1 * error_odd(k, l1v).value + w2 * error_odd(k, l2v).value;
      t.check(std::abs(integrated_error(k, m, p) - e), "error linear", kNaN, kNaN);
    }
  }
  return "atoms (1,0.25),(4,0.75); x in [-3,3] n=" + std::to_string(n);
}

std::string arctan_example(const Ctx&, Tally& t) {
  const auto m = arctan_measure();
  const IntegratedTarget target{m, Parity::Odd};
  for (double x : {0.5, 1.0, 2.0}) {
    const double exact = std::atan(1.0 / x) - x / (1 + x * x);
    t.check(std::abs(eval_g(target, x) - exact), "g = arctan(1/x) - x/(1+x^2)", kNaN, x);
  }
  const double g5 = eval_g(target, 5.0);
  const double g10 = eval_g(target, 10.0);
  t.claim(g10 - g5, -kStrictMargin, "tail decreasing g(10) < g(5)", kNaN, 10.0);
  t.claim(-g10, -kStrictMargin, "tail positive g(10) > 0", kNaN, 10.0);
  const auto adm = check_admissible(m, Condition::Nu2);
  t.claim(adm.status == AdmissibilityStatus::Admissible ? 0.0 : kInf, 1e-9, "nu2 admissible",
          kNaN, kNaN);
  t.claim(m.density()->refined_to_tolerance ? 0.0 : kInf, 1e-9, "node refinement settled", kNaN,
          kNaN);
  for (double x : linspace(-3.0, 3.0, 13)) {
    const double g = eval_g(target, x);
    t.claim(eval_integrated(Kind::Minorant, target, x) - g, 1e-9, "l <= g", kNaN, x);
    t.claim(g - eval_integrated(Kind::Majorant, target, x), 1e-9, "g <= m", kNaN, x);
  }
  return "x in {0.5,1,2}; tail at {5,10}; sandwich on [-3,3] n=13; " +
         std::to_string(m.discretized().size()) + " density nodes";
}

std::string integrated_extremals(const Ctx&, Tally& t) {
  const MeasureRep m({Atom{0.5, 1.0}, Atom{2.0, 1.0}});
  const IntegratedTarget target{m, Parity::Truncated};
  for (double x : offset_grid(-4.0, 4.0, 161)) {
    const double g = eval_g(target, x);
    t.check(-sin_pi(x) * (g - eval_integrated(Kind::BestApprox, target, x)), "sin(pi x)(g - k) >= 0",
            kNaN, x);
    t.check(eval_integrated(Kind::Minorant, target, x) - g, "l <= g", kNaN, x);
    t.check(g - eval_integrated(Kind::Majorant, target, x), "g <= m", kNaN, x);
  }
  auto g = [&](double x) { return eval_g(target, x); };
  auto l = [&](double x) { return eval_integrated(Kind::Minorant, target, x); };
  const double h = 1e-5;
  for (int n : {1, 2}) {
    t.check(std::abs(l(n) - g(n)), "l(n) = g(n)", kNaN, n);
    const double dl = (l(n + h) - l(n - h)) / (2 * h);
    const double dg = (g(n + h) - g(n - h)) / (2 * h);
    t.claim(std::abs(dl - dg), 1e-7, "l'(n) = g'(n)", kNaN, n);
  }
  auto k = [&](double x) { return eval_integrated(Kind::BestApprox, target, x); };
  t.claim(std::abs(l1(g, l, 1e-10).value - integrated_error(Kind::Minorant, m)), 1e-7,
          "l1(g, l) = integrated minorant error", kNaN, kNaN);
  t.claim(std::abs(l1(g, k, 1e-9).value - integrated_error(Kind::BestApprox, m)), 1e-5,
          "l1(g, k) = integrated H", kNaN, kNaN);
  return "atoms (0.5,1),(2,1); x in [-4,4] n=161";
}

std::string summability_bounds(const Ctx&, Tally& t) {
  const double c5 = std::pow(1.5 / kPi, 1.5) * std::exp(-1.5);
  for (double lam : {1e-3, 1e3}) {
    Sum s;
    for (int n = 1;; ++n) {
      const double v = std::abs(gaussian_prime(lam, n));
      s.add(v);
      if (kPi * lam * n * n > 50.0 && v < 1e-20 * s.value()) break;
      if (v == 0.0) break;
    }
    const double r = std::sqrt(lam);
    t.check(s.value() - (r / 4 + (0.5 + kPi) * r * (theta3(0.0, lam) - 1) / 2),
            "sum |G'(n)| bound via theta3", lam, kNaN);
    t.check(r * s.value() - c5 * kPi * kPi * kPi / 3, "sqrt(lam) sum |G'(n)| bound", lam, kNaN);
  }
  return "lam in {1e-3,1e3}";
}

using CheckFn = std::string (*)(const Ctx&, Tally&);

struct Entry {
  CheckInfo info;
  CheckFn fn;
};

// Per-check primary tolerances live here and nowhere else.
const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"sign_condition_truncated", "best approximation K+: sin(pi x)(G+ - K+) >= 0", 1e-10},
       sign_condition_truncated},
      {{"ba_error_closed_form", "best approximation error equals H(lambda)", 1e-6},
       ba_error_closed_form},
      {{"sandwich_truncated", "one-sided extremals: L+ <= G+ <= M+", 1e-10}, sandwich_truncated},
      {{"minorant_error", "minorant error 1/2 + 1/(2 sqrt(lambda)) - theta3/2", 1e-7},
       minorant_error},
      {{"majorant_error", "majorant error theta3/2 + 1/2 - 1/(2 sqrt(lambda))", 1e-7},
       majorant_error},
      {{"odd_sign_condition", "odd best approximation: sin(pi x)(Godd - Kodd) >= 0", 1e-10},
       odd_sign_condition},
      {{"odd_sandwich", "odd one-sided extremals: Lodd <= Godd <= Modd", 1e-10}, odd_sandwich},
      {{"interpolation_best", "K+ interpolates G+ at nonzero integers", 1e-12},
       interpolation_best},
      {{"interpolation_onesided", "L+ and M+ interpolate G+ and G+' at nonzero integers", 1e-12},
       interpolation_onesided},
      {{"theta_transformations", "theta transformation formulas under lambda -> 1/lambda", 1e-12},
       theta_transformations},
      {{"theta1_theta2_link", "theta1 at i/lambda through G times theta2 at i lambda", 1e-12},
       theta1_theta2_link},
      {{"lemma_theta2_signs", "signs of i theta2'(ix) on (-lambda/2,0) and theta3' on [0,1/2]",
        1e-10},
       lemma_theta2_signs},
      {{"theta_ratio_bound", "theta1(x)/theta1(0) <= G(x) on [0,1/2)", 1e-12}, theta_ratio_bound},
      {{"laplace_theta_negative", "Laplace transform of theta1 - theta1(0) G is negative",
        -kStrictMargin},
       laplace_theta_negative},
      {{"sum_inequalities", "Gaussian sum inequalities for t > 0", 1e-12}, sum_inequalities},
      {{"dawson_bounds", "lower bounds for Dawson's integral", 1e-10}, dawson_bounds},
      {{"dawson_moments", "Gaussian sine moments j=0,2,4 through Dawson's integral", 1e-9},
       dawson_moments},
      {{"integral_representations", "double-integral representations of Gaussian quotients", 1e-6},
       integral_representations},
      {{"truncated_theta_inequalities", "inequalities for the truncated theta series", 1e-10},
       truncated_theta_inequalities},
      {{"growth_estimates", "growth bounds for partial truncated theta sums", 1e-10},
       growth_estimates},
      {{"ft_truncated", "Fourier transform of the truncated Gaussian", 1e-9}, ft_truncated},
      {{"fourier_sum_identity", "H(lambda) as a sum of Fourier coefficients at half-integers",
        1e-6},
       fourier_sum_identity},
      {{"poisson_value", "sum of L+ over integers by Poisson summation", 1e-10}, poisson_value},
      {{"h_asymptotics", "limits of H at 0 and infinity", 5e-3}, h_asymptotics},
      {{"measure_point_mass", "integrated extremals reduce to a point mass", 1e-12},
       measure_point_mass},
      {{"measure_linearity", "integrated extremals are linear in the measure", 1e-13},
       measure_linearity},
      {{"arctan_example", "measure producing arctan(1/x) - x/(1+x^2)", 1e-4}, arctan_example},
      {{"integrated_extremals", "sign, sandwich and error for an integrated target", 1e-9},
       integrated_extremals},
      {{"summability_bounds", "summability bounds for G'(n)", 1e-10}, summability_bounds},
  };
  return table;
}

const Entry& find(const std::string& id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  throw std::out_of_range("unknown check id '" + id + "'");
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool is_registered(const std::string& id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return true;
  }
  return false;
}

CheckReport run_check(const std::string& id, const CheckConfig& config) {
  const Entry& e = find(id);
  CheckReport r;
  r.id = e.info.id;
  r.anchor = e.info.anchor;
  r.tolerance = config.tolerance.value_or(e.info.tolerance);
  Tally tally(r.tolerance);
  const Ctx ctx{config};
  try {
    r.grid = e.fn(ctx, tally);
    r.max_violation = tally.worst();
    r.witness = tally.witness();
  } catch (const std::exception& ex) {
    r.max_violation = kInf;
    r.witness = std::string("error: ") + ex.what();
  }
  r.passed = r.max_violation <= r.tolerance;
  return r;
}

std::vector<CheckReport> run_selected(const std::vector<std::string>& ids,
                                      const CheckConfig& config, int threads) {
  std::vector<std::string> todo = ids;
  if (todo.empty()) {
    for (const auto& e : entries()) todo.push_back(e.info.id);
  }
  for (const auto& id : todo) find(id);
  std::vector<CheckReport> out(todo.size());
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, todo.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) out[i] = run_check(todo[i], config);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < todo.size(); i = next++) out[i] = run_check(todo[i], config);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<CheckReport> run_all(Profile profile, int threads) {
  CheckConfig cfg;
  cfg.profile = profile;
  return run_selected({}, cfg, threads);
}

std::string to_json(const std::vector<CheckReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json o;
    o["id"] = r.id;
    o["anchor"] = r.anchor;
    if (std::isfinite(r.max_violation)) {
      o["max_violation"] = r.max_violation;
    } else {
      o["max_violation"] = r.max_violation > 0 ? "inf" : "-inf";
    }
    o["tolerance"] = r.tolerance;
    o["grid"] = r.grid;
    o["passed"] = r.passed;
    o["witness"] = r.witness;
    arr.push_back(std::move(o));
  }
  return arr.dump(2);
}

}  // namespace bandlimit::verify
