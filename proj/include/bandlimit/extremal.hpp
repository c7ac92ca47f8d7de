#pragma once

// Extremal entire functions for the truncated Gaussian G+ and the odd
// Gaussian G°: the best approximation K of type pi and the minorant L and
// majorant M of type 2 pi, their dilations, and the optimal L1 errors.

#include <memory>
#include <string_view>
#include <vector>

namespace bandlimit {

enum class Kind { BestApprox, Minorant, Majorant };
enum class Parity { Truncated, Odd };

std::string_view to_string(Kind k);
std::string_view to_string(Parity p);

/// Minorant <-> Majorant, BestApprox fixed. Reflecting an odd approximant
/// turns it into minus its dual: A°(-x) = -dual(A)°(x).
Kind dual(Kind k);

/// Interpolation data G(n), G'(n) for n = 1..N, cached per lambda. N is the
/// first index where both G(n) and |G'(n)| fall below 1e-18.
class ExtremalSeries {
 public:
  explicit ExtremalSeries(double lam);

  double lam() const noexcept { return lam_; }
  int terms() const noexcept { return static_cast<int>(g_.size()); }

  /// theta+(0) = sum (-1)^(n+1) G(n), the value K+(0).
  double theta_plus0() const noexcept { return theta_plus0_; }
  /// vartheta+(0) = -sum G'(n), the slope of L+ at 0.
  double vartheta_plus0() const noexcept { return vartheta_plus0_; }

  double best(double x) const;
  double minorant(double x) const;
  double majorant(double x) const;
  double truncated(Kind kind, double x) const;
  double odd(Kind kind, double x) const;

 private:
  bool near_node(double x) const;

  double lam_;
  std::vector<double> g_;
  std::vector<double> gp_;
  double theta_plus0_ = 0.0;
  double vartheta_plus0_ = 0.0;
};

double eval_best_truncated(double lam, double x);
double eval_minorant_truncated(double lam, double x);
double eval_majorant_truncated(double lam, double x);
double eval_odd(Kind kind, double lam, double x);

/// Kind-tagged evaluable approximant. The stored lam is the base parameter;
/// with dilation delta the approximant is x -> base(delta x), which has type
/// pi delta (best) or 2 pi delta (one-sided) and approximates the target
/// G_{lam delta^2}, truncated or odd.
class Approximant {
 public:
  Approximant(Kind kind, Parity parity, double lam, double delta = 1.0);

  /// Approximant of type pi*delta (or 2 pi delta) for the target parameter
  /// target_lam, i.e. base parameter target_lam / delta^2.
  static Approximant for_target(Kind kind, Parity parity, double target_lam, double delta);

  Kind kind() const noexcept { return kind_; }
  Parity parity() const noexcept { return parity_; }
  double lam() const noexcept { return lam_; }
  double delta() const noexcept { return delta_; }
  double target_lam() const noexcept { return lam_ * delta_ * delta_; }

  double operator()(double x) const;
  /// The function being approximated, G+ or G° at target_lam.
  double target(double x) const;
  /// Optimal L1 error, base error divided by delta.
  double error() const;

  const ExtremalSeries& series() const noexcept { return *series_; }

 private:
  Kind kind_;
  Parity parity_;
  double lam_;
  double delta_;
  std::shared_ptr<const ExtremalSeries> series_;
};

/// Composes dilations: dilate(a, d).delta() == a.delta() * d.
Approximant dilate(const Approximant& a, double delta);

struct ErrorValue {
  double value;
  Kind kind;
};

/// H(lambda) by quadrature.
ErrorValue error_best(double lam);
/// 1/2 + 1/(2 sqrt(lambda)) - theta3(0, i lambda)/2, evaluated without the
/// cancellation between the last two terms.
ErrorValue error_minorant(double lam);
/// theta3(0, i lambda)/2 + 1/2 - 1/(2 sqrt(lambda)) = 1 - error_minorant.
ErrorValue error_majorant(double lam);
ErrorValue error_for(Kind kind, double lam);
/// Odd target: 2 H for the best approximation, 1 for either one-sided one.
ErrorValue error_odd(Kind kind, double lam);

}  // namespace bandlimit
