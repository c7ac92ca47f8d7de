#pragma once

// Adaptive Gauss-Kronrod integration and the integrals built on it: windowed
// integrals of Gaussian-decaying functions, L1 distances with kink splitting,
// the optimal two-sided error H(lambda) and iterated 2D integrals.

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandlimit::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

/// Thrown when the subdivision budget is exhausted before the tolerance is
/// met. Carries the best estimate reached.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best_estimate() const noexcept { return best_; }

 private:
  QuadResult best_;
};

using Integrand = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_subdivisions = 4000;
};

/// Globally adaptive G7/K15 integration on [a, b]. Either limit may be
/// infinite; semi-infinite pieces are mapped onto [0, 1) first. The target is
/// max(abs_tol, rel_tol * |value|) on the summed error estimate.
QuadResult integrate(const Integrand& f, double a, double b, const Options& opt);

/// Shorthand for an absolute tolerance.
QuadResult integrate(const Integrand& f, double a, double b, double tol);

/// Integrates over consecutive panels [p0, p1], [p1, p2], ... splitting the
/// tolerance evenly. Breakpoints must be increasing.
QuadResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                            const Options& opt);

/// Half-width of the window [-W, W] outside which exp(-pi*decay_scale*x^2)
/// is below tol/10: W = max(3, sqrt(ln(10/tol) / (pi*decay_scale))).
double gaussian_window(double tol, double decay_scale);

/// Integral over the real line of a function bounded by
/// exp(-pi*decay_scale*x^2). The window is split at 0 so that functions with
/// a jump at the origin integrate cleanly. The tail bound outside the window
/// is added to abs_error_estimate.
QuadResult integrate_line(const Integrand& f, double tol, double decay_scale);

struct TailModel {
  // Period of the oscillating factor of f - g outside the window. Zero
  // disables tail summation.
  double period = 0.0;
  // Partial sums stop at distances 2^k (|edge| + first_level * period) from
  // the origin, k = 0..levels-1.
  int first_level = 25;
  int levels = 4;
};

struct L1Options {
  double a = -8.0;
  double b = 8.0;
  double tol = 1e-10;
  double scan_step = 1e-2;
  double bisection_tol = 1e-12;
  // Known kinks or jumps of f - g inside [a, b] (e.g. 0 for truncated targets).
  std::vector<double> breakpoints{};
  TailModel tail{};
};

/// Integral of |f - g|. Sign changes of f - g are located by scanning at
/// scan_step and refining by bisection; each located zero becomes a panel
/// boundary. With a tail model the contributions of (-inf, a] and [b, inf)
/// are summed period by period and Richardson-extrapolated in the number of
/// periods, which assumes |f - g| decays algebraically there.
QuadResult l1_distance(const Integrand& f, const Integrand& g, const L1Options& opt);

enum class HMethod { Direct, Substituted };

struct HProfile {
  double lam = 0.0;
  double value = 0.0;
  HMethod method = HMethod::Substituted;
  double abs_error_estimate = 0.0;
};

/// H(lambda) = (1/(pi lambda)) int_0^1 theta1(0, i(1 - y^2)/lambda) dy, the
/// minimal L1 error of a type-pi approximation to the truncated Gaussian.
///
/// The integrand blows up like (1 - y)^(-1/2) at y = 1. The substituted
/// method integrates over y = sin(phi), where the integrand is bounded; the
/// direct method integrates in y and only reaches about 1e-7.
HProfile h_profile(double lam, HMethod method = HMethod::Substituted, double tol = 1e-10);

double H_lambda(double lam);

/// int_0^1 exp(-a (1 - y^2)) dy for a >= 0. The mass sits within about 1/a
/// of y = 1, so the interval is split there before adaptive integration.
double edge_gaussian_integral(double a);

/// H_t(lambda) = (1/(pi lambda)) int_0^1 exp(-pi t^2 (1 - y^2)/lambda) dy. The
/// sum over t in Z + 1/2 reproduces H(lambda).
double H_t(double t, double lam);

/// Bracket for sqrt(lambda) H(lambda): lower uses 1 - 2 exp(-pi lambda/(1-y^2))
/// as the lower bound of the normalized theta factor, upper is 1/2.
struct HBracket {
  double lower;
  double upper;
};
HBracket h_large_lambda_bracket(double lam);

struct Region {
  double t_lo;
  double t_hi;
  double u_lo;
  double u_hi;
};

/// Location in u of the inner integrand's peak for a given t.
using PeakHint = std::function<double(double)>;

/// Iterated integral  int_{t_lo}^{t_hi} int_{u_lo}^{u_hi} f(t, u) du dt.
/// Limits may be infinite. Each axis receives tol/2. When a peak hint is
/// given the inner integral is split at the hinted point.
QuadResult integrate_2d(const Integrand2D& f, const Region& region, double tol,
                        const PeakHint& inner_peak = {});

}  // namespace bandlimit::quad
