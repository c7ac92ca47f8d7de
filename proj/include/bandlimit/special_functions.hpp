#pragma once

// Theta functions on the imaginary axis tau = i*lambda, truncated theta
// series, Gaussians with their Fourier transforms, and Dawson's integral.
//
// Labeling follows Chandrasekharan: with q = exp(-pi*lambda)
//
//   theta1(z) = sum_n q^((n+1/2)^2) e^((2n+1) pi i z)
//   theta2(z) = sum_n (-1)^n q^(n^2) e^(2 pi i n z)
//   theta3(z) = sum_n q^(n^2) e^(2 pi i n z)
//
// so theta1 here is the classical theta_2 and theta2 is the classical
// theta_4 (both in the variable pi*z).

#include <complex>
#include <stdexcept>

namespace bandlimit {

struct ThetaArg {
  double z;
  double lam;
};

/// Which series a theta evaluation uses. Auto picks the q-series for
/// lambda >= 1 and the modular-transformed Gaussian sum below that.
enum class ThetaRoute { Auto, QSeries, GaussianSum };

double theta1(double z, double lam, ThetaRoute route = ThetaRoute::Auto);
double theta2(double z, double lam, ThetaRoute route = ThetaRoute::Auto);
double theta3(double z, double lam, ThetaRoute route = ThetaRoute::Auto);
/// d/dz theta3(z, i*lambda).
double theta3_dz(double z, double lam, ThetaRoute route = ThetaRoute::Auto);

inline double theta1(ThetaArg a) { return theta1(a.z, a.lam); }
inline double theta2(ThetaArg a) { return theta2(a.z, a.lam); }
inline double theta3(ThetaArg a) { return theta3(a.z, a.lam); }

/// sqrt(mu) * theta1(z, i*mu) = sum_n (-1)^n exp(-pi (z-n)^2 / mu). Bounded as
/// mu -> 0, unlike theta1 itself.
double theta1_scaled(double z, double mu);

/// theta2(i*x, i*lambda), real for real x.
double theta2_imag(double x, double lam);

/// i * theta2'(i*x, i*lambda), the derivative of x -> theta2(i*x, i*lambda).
/// Uses the logarithmic-derivative sinh series, which converges only for
/// |x| < lambda/2; outside that strip a domain_error is thrown.
double theta2_dz_imag(double x, double lam);

/// theta+(x, lambda) = sum_{n>=1} (-1)^(n+1) G_lambda(x - n).
double theta_plus(double x, double lam);
/// Partial sum over n = 1..N.
double theta_plus_partial(double x, double lam, int terms);

/// vartheta+(x, lambda) = 2 pi lambda sum_{n>=1} (n - x) G_lambda(n - x).
double vartheta_plus(double x, double lam);
double vartheta_plus_partial(double x, double lam, int terms);

/// The Gaussian G_lambda(x) = exp(-pi lambda x^2) and its relatives.
class GaussianFamily {
 public:
  explicit GaussianFamily(double lam);

  double lam() const noexcept { return lam_; }
  double operator()(double x) const;
  double prime(double x) const;
  /// x_+^0 G(x), with value 1/2 at the origin.
  double truncated(double x) const;
  /// sgn(x) G(x), with value 0 at the origin.
  double odd(double x) const;
  /// lambda^(-1/2) exp(-pi t^2 / lambda).
  double fourier(double t) const;
  /// Fourier transform of the truncated Gaussian.
  std::complex<double> fourier_truncated(double t) const;

 private:
  double lam_;
};

double gaussian(double lam, double x);
double gaussian_prime(double lam, double x);
double truncated_gaussian(double lam, double x);
double odd_gaussian(double lam, double x);

/// int e^(-2 pi i t x) G+_lambda(x) dx
///   = (1/2) lambda^(-1/2) e^(-pi t^2/lambda)
///     + (t / (i lambda)) int_0^1 e^(-pi t^2 (1 - y^2)/lambda) dy,
/// with the inner integral from edge_gaussian_integral.
std::complex<double> ft_truncated_gaussian(double lam, double t);

/// D(x) = int_0^x e^(u^2 - x^2) du by adaptive quadrature. Odd in x.
double dawson(double x);

/// sin(pi x) and cos(pi x) with exact argument reduction, so that integer and
/// half-integer arguments give exact zeros.
double sin_pi(double x);
double cos_pi(double x);

/// Normalized sinc sin(pi w)/(pi w), Taylor-expanded for |w| < 1e-4.
double sinc(double w);

namespace detail {
void require_positive(double lam, const char* what);
}

}  // namespace bandlimit
