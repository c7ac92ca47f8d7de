#include "bandlimit/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bandlimit/quadrature.hpp"

namespace bandlimit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesRel = 1e-17;
constexpr int kMaxTerms = 100000;

bool use_q_series(double lam, ThetaRoute route) {
  switch (route) {
    case ThetaRoute::QSeries:
      return true;
    case ThetaRoute::GaussianSum:
      return false;
    case ThetaRoute::Auto:
      break;
  }
  return lam >= 1.0;
}

enum class Kind { One, Two, Three, ThreeDz };

// q-series in cosines (or sines for the derivative). The stopping rule uses
// the term envelope so that a vanishing trigonometric factor cannot end the
// sum early.
double q_series(Kind kind, double z, double lam) {
  double sum = 0.0;
  double envelope_sum = 0.0;
  if (kind == Kind::Two || kind == Kind::Three) {
    sum = 1.0;
    envelope_sum = 1.0;
  }
  const int start = (kind == Kind::One) ? 0 : 1;
  for (int n = start; n < kMaxTerms; ++n) {
    double envelope = 0.0;
    double term = 0.0;
    switch (kind) {
      case Kind::One: {
        const double h = n + 0.5;
        envelope = 2.0 * std::exp(-kPi * lam * h * h);
        term = envelope * cos_pi((2.0 * n + 1.0) * z);
        break;
      }
      case Kind::Two:
        envelope = 2.0 * std::exp(-kPi * lam * n * static_cast<double>(n));
        term = ((n % 2 == 0) ? envelope : -envelope) * cos_pi(2.0 * n * z);
        break;
      case Kind::Three:
        envelope = 2.0 * std::exp(-kPi * lam * n * static_cast<double>(n));
        term = envelope * cos_pi(2.0 * n * z);
        break;
      case Kind::ThreeDz:
        envelope = 4.0 * kPi * n * std::exp(-kPi * lam * n * static_cast<double>(n));
        term = -envelope * sin_pi(2.0 * n * z);
        break;
    }
    sum += term;
    envelope_sum += envelope;
    if (envelope <= kSeriesRel * envelope_sum) break;
  }
  return sum;
}

// lambda^(-1/2) sum_n s_n w(z - n - offset) with w the transformed Gaussian
// (or its derivative), summed outward from the nearest lattice point.
double gaussian_sum(Kind kind, double z, double lam) {
  double sign = 1.0;
  const double k = std::nearbyint(z);
  double z0 = z - k;
  if (kind == Kind::One && std::fmod(std::abs(k), 2.0) == 1.0) sign = -1.0;
  const double offset = (kind == Kind::Two) ? 0.5 : 0.0;
  const bool alternating = (kind == Kind::One);
  const bool derivative = (kind == Kind::ThreeDz);

  auto term = [&](long n, double& envelope) {
    const double d = z0 - static_cast<double>(n) - offset;
    const double g = std::exp(-kPi * d * d / lam);
    envelope = derivative ? std::abs(2.0 * kPi * d / lam) * g + g : g;
    double t = derivative ? (-2.0 * kPi * d / lam) * g : g;
    if (alternating && (n % 2 != 0)) t = -t;
    return t;
  };

  double sum = 0.0;
  double envelope_sum = 0.0;
  for (long j = 0; j < kMaxTerms; ++j) {
    double e1 = 0.0;
    double e2 = 0.0;
    double added = 0.0;
    if (offset == 0.0) {
      added += term(j, e1);
      if (j > 0) added += term(-j, e2);
    } else {
      added += term(j, e1);
      added += term(-j - 1, e2);
    }
    sum += added;
    envelope_sum += e1 + e2;
    if (j > 0 && e1 + e2 <= kSeriesRel * envelope_sum) break;
  }
  return sign * sum / std::sqrt(lam);
}

double theta_any(Kind kind, double z, double lam, ThetaRoute route, const char* name) {
  detail::require_positive(lam, name);
  if (!std::isfinite(z)) throw std::domain_error(std::string(name) + ": z must be finite");
  return use_q_series(lam, route) ? q_series(kind, z, lam) : gaussian_sum(kind, z, lam);
}

// Index window of Gaussian translates G(x - n), n >= 1, that can exceed
// exp(-43) relative to the largest one.
void translate_window(double x, double lam, long& lo) {
  const double reach = std::sqrt(43.0 / (kPi * lam)) + 1.0;
  lo = std::max(1L, static_cast<long>(std::floor(x - reach)));
}

}  // namespace

namespace detail {
void require_positive(double lam, const char* what) {
  if (!(lam > 0.0) || !std::isfinite(lam)) {
    throw std::domain_error(std::string(what) + ": lambda must be positive and finite");
  }
}
}  // namespace detail

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  const double n = std::nearbyint(2.0 * x);
  const double r = x - 0.5 * n;
  double q = std::fmod(n, 4.0);
  if (q < 0) q += 4.0;
  switch (static_cast<int>(q)) {
    case 0:
      return std::sin(kPi * r);
    case 1:
      return std::cos(kPi * r);
    case 2:
      return -std::sin(kPi * r);
    default:
      return -std::cos(kPi * r);
  }
}

double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  const double n = std::nearbyint(2.0 * x);
  const double r = x - 0.5 * n;
  double q = std::fmod(n, 4.0);
  if (q < 0) q += 4.0;
  switch (static_cast<int>(q)) {
    case 0:
      return std::cos(kPi * r);
    case 1:
      return -std::sin(kPi * r);
    case 2:
      return -std::cos(kPi * r);
    default:
      return std::sin(kPi * r);
  }
}

double sinc(double w) {
  if (std::abs(w) < 1e-4) {
    const double p2 = (kPi * w) * (kPi * w);
    return 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
  }
  return sin_pi(w) / (kPi * w);
}

double theta1(double z, double lam, ThetaRoute route) {
  return theta_any(Kind::One, z, lam, route, "theta1");
}

double theta2(double z, double lam, ThetaRoute route) {
  return theta_any(Kind::Two, z, lam, route, "theta2");
}

double theta3(double z, double lam, ThetaRoute route) {
  return theta_any(Kind::Three, z, lam, route, "theta3");
}

double theta3_dz(double z, double lam, ThetaRoute route) {
  return theta_any(Kind::ThreeDz, z, lam, route, "theta3_dz");
}

double theta1_scaled(double z, double mu) {
  detail::require_positive(mu, "theta1_scaled");
  if (mu >= 1.0) return std::sqrt(mu) * q_series(Kind::One, z, mu);
  return std::sqrt(mu) * gaussian_sum(Kind::One, z, mu);
}

double theta2_imag(double x, double lam) {
  detail::require_positive(lam, "theta2_imag");
  if (lam < 0.25) {
    // Through the theta1/theta2 link; the direct series would cancel badly.
    const double y = x / lam;
    return theta1(y, 1.0 / lam) * std::exp(kPi * x * y) / std::sqrt(lam);
  }
  double sum = 1.0;
  double envelope_sum = 1.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    const double a = std::exp(-kPi * n * (lam * n - 2.0 * x));
    const double b = std::exp(-kPi * n * (lam * n + 2.0 * x));
    const double t = a + b;
    sum += (n % 2 == 0) ? t : -t;
    envelope_sum += t;
    if (n * lam > 2.0 * std::abs(x) && t <= kSeriesRel * envelope_sum) break;
  }
  return sum;
}

double theta2_dz_imag(double x, double lam) {
  detail::require_positive(lam, "theta2_dz_imag");
  if (!(std::abs(x) < 0.5 * lam)) {
    throw std::domain_error("theta2_dz_imag: requires |x| < lambda/2");
  }
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  double s = 0.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    // sinh(2 pi n |x|) / sinh(pi n lambda) without overflow
    const double t = std::exp(-kPi * n * (lam - 2.0 * ax)) * std::expm1(-4.0 * kPi * n * ax) /
                     std::expm1(-2.0 * kPi * n * lam);
    s += t;
    if (t <= 1e-16 * s) break;
  }
  if (x < 0) s = -s;
  return -2.0 * kPi * theta2_imag(x, lam) * s;
}

double theta_plus_partial(double x, double lam, int terms) {
  detail::require_positive(lam, "theta_plus_partial");
  double sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double g = gaussian(lam, x - n);
    sum += (n % 2 == 1) ? g : -g;
  }
  return sum;
}

double theta_plus(double x, double lam) {
  detail::require_positive(lam, "theta_plus");
  long lo = 1;
  translate_window(x, lam, lo);
  double sum = 0.0;
  for (long n = lo; n < lo + 10L * kMaxTerms; ++n) {
    const double d = x - static_cast<double>(n);
    const double g = std::exp(-kPi * lam * d * d);
    sum += (n % 2 == 1) ? g : -g;
    if (static_cast<double>(n) > x && g < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double vartheta_plus_partial(double x, double lam, int terms) {
  detail::require_positive(lam, "vartheta_plus_partial");
  double sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double d = n - x;
    sum += d * gaussian(lam, d);
  }
  return 2.0 * kPi * lam * sum;
}

double vartheta_plus(double x, double lam) {
  detail::require_positive(lam, "vartheta_plus");
  long lo = 1;
  translate_window(x, lam, lo);
  double sum = 0.0;
  for (long n = lo; n < lo + 10L * kMaxTerms; ++n) {
    const double d = static_cast<double>(n) - x;
    const double t = 2.0 * kPi * lam * d * std::exp(-kPi * lam * d * d);
    sum += t;
    if (d > 0 && std::abs(t) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

GaussianFamily::GaussianFamily(double lam) : lam_(lam) {
  detail::require_positive(lam, "GaussianFamily");
}

double GaussianFamily::operator()(double x) const { return std::exp(-kPi * lam_ * x * x); }

double GaussianFamily::prime(double x) const { return -2.0 * kPi * lam_ * x * (*this)(x); }

double GaussianFamily::truncated(double x) const {
  if (x > 0) return (*this)(x);
  if (x == 0) return 0.5;
  return 0.0;
}

double GaussianFamily::odd(double x) const {
  if (x > 0) return (*this)(x);
  if (x < 0) return -(*this)(x);
  return 0.0;
}

double GaussianFamily::fourier(double t) const {
  return std::exp(-kPi * t * t / lam_) / std::sqrt(lam_);
}

std::complex<double> GaussianFamily::fourier_truncated(double t) const {
  const double real = 0.5 * fourier(t);
  if (t == 0.0) return {real, 0.0};
  const double a = kPi * t * t / lam_;
  return {real, -(t / lam_) * quad::edge_gaussian_integral(a)};
}

double gaussian(double lam, double x) {
  detail::require_positive(lam, "gaussian");
  return std::exp(-kPi * lam * x * x);
}

double gaussian_prime(double lam, double x) {
  return -2.0 * kPi * lam * x * gaussian(lam, x);
}

double truncated_gaussian(double lam, double x) { return GaussianFamily(lam).truncated(x); }

double odd_gaussian(double lam, double x) { return GaussianFamily(lam).odd(x); }

std::complex<double> ft_truncated_gaussian(double lam, double t) {
  return GaussianFamily(lam).fourier_truncated(t);
}

double dawson(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : std::copysign(0.0, x);
  const double ax = std::abs(x);
  // u = x - v turns the integrand into exp(-v (2x - v)), which is negligible
  // once v exceeds about 40/x.
  const double upper = std::min(ax, 40.0 / ax);
  quad::Options opt;
  opt.abs_tol = 1e-16;
  opt.rel_tol = 1e-14;
  const auto r =
      quad::integrate([ax](double v) { return std::exp(-v * (2.0 * ax - v)); }, 0.0, upper, opt);
  return std::copysign(r.value, x);
}

}  // namespace bandlimit
