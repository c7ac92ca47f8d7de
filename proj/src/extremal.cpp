#include "bandlimit/extremal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandlimit/quadrature.hpp"
#include "bandlimit/special_functions.hpp"

namespace bandlimit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeCutoff = 1e-4;
constexpr double kCoeffCutoff = 1e-18;

}  // namespace

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::BestApprox:
      return "best";
    case Kind::Minorant:
      return "minorant";
    case Kind::Majorant:
      return "majorant";
  }
  return "?";
}

std::string_view to_string(Parity p) { return p == Parity::Truncated ? "truncated" : "odd"; }

Kind dual(Kind k) {
  switch (k) {
    case Kind::Minorant:
      return Kind::Majorant;
    case Kind::Majorant:
      return Kind::Minorant;
    case Kind::BestApprox:
      break;
  }
  return Kind::BestApprox;
}

ExtremalSeries::ExtremalSeries(double lam) : lam_(lam) {
  detail::require_positive(lam, "ExtremalSeries");
  GaussianFamily g(lam);
  for (int n = 1;; ++n) {
    const double gn = g(n);
    const double gpn = g.prime(n);
    if (std::max(gn, std::abs(gpn)) < kCoeffCutoff) break;
    g_.push_back(gn);
    gp_.push_back(gpn);
  }
  for (std::size_t i = 0; i < g_.size(); ++i) {
    theta_plus0_ += (i % 2 == 0) ? g_[i] : -g_[i];
    vartheta_plus0_ -= gp_[i];
  }
}

bool ExtremalSeries::near_node(double x) const {
  const double m = std::nearbyint(x);
  return std::abs(x - m) < kNodeCutoff && m >= 0.0 && m <= static_cast<double>(g_.size());
}

double ExtremalSeries::best(double x) const {
  if (near_node(x)) {
    // sin(pi x)/(pi (x - n)) = (-1)^n sinc(x - n) removes the poles.
    double sum = theta_plus0_ * sinc(x);
    for (std::size_t i = 0; i < g_.size(); ++i) {
      sum += g_[i] * sinc(x - static_cast<double>(i + 1));
    }
    return sum;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < g_.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double t = g_[i] * n / (x * (x - n));
    sum += (i % 2 == 0) ? -t : t;
  }
  return sin_pi(x) / kPi * sum;
}

double ExtremalSeries::minorant(double x) const {
  if (near_node(x)) {
    const double s0 = sinc(x);
    double sum = vartheta_plus0_ * x * s0 * s0;
    for (std::size_t i = 0; i < g_.size(); ++i) {
      const double d = x - static_cast<double>(i + 1);
      const double s = sinc(d);
      sum += s * s * (g_[i] + gp_[i] * d);
    }
    return sum;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < g_.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double d = x - n;
    sum += g_[i] / (d * d) + gp_[i] * n / (x * d);
  }
  const double s = sin_pi(x);
  return s * s / (kPi * kPi) * sum;
}

double ExtremalSeries::majorant(double x) const {
  const double s = sinc(x);
  return minorant(x) + s * s;
}

double ExtremalSeries::truncated(Kind kind, double x) const {
  switch (kind) {
    case Kind::BestApprox:
      return best(x);
    case Kind::Minorant:
      return minorant(x);
    case Kind::Majorant:
      return majorant(x);
  }
  return 0.0;
}

double ExtremalSeries::odd(Kind kind, double x) const {
  return truncated(kind, x) - truncated(dual(kind), -x);
}

double eval_best_truncated(double lam, double x) { return ExtremalSeries(lam).best(x); }
double eval_minorant_truncated(double lam, double x) { return ExtremalSeries(lam).minorant(x); }
double eval_majorant_truncated(double lam, double x) { return ExtremalSeries(lam).majorant(x); }
double eval_odd(Kind kind, double lam, double x) { return ExtremalSeries(lam).odd(kind, x); }

Approximant::Approximant(Kind kind, Parity parity, double lam, double delta)
    : kind_(kind), parity_(parity), lam_(lam), delta_(delta) {
  detail::require_positive(lam, "Approximant");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("Approximant: delta must be positive and finite");
  }
  series_ = std::make_shared<const ExtremalSeries>(lam);
}

Approximant Approximant::for_target(Kind kind, Parity parity, double target_lam, double delta) {
  detail::require_positive(target_lam, "Approximant::for_target");
  if (!(delta > 0.0)) throw std::domain_error("Approximant::for_target: delta must be positive");
  return Approximant(kind, parity, target_lam / (delta * delta), delta);
}

double Approximant::operator()(double x) const {
  const double u = delta_ * x;
  return parity_ == Parity::Truncated ? series_->truncated(kind_, u) : series_->odd(kind_, u);
}

double Approximant::target(double x) const {
  const double u = delta_ * x;
  return parity_ == Parity::Truncated ? truncated_gaussian(lam_, u) : odd_gaussian(lam_, u);
}

double Approximant::error() const {
  const double base = parity_ == Parity::Truncated ? error_for(kind_, lam_).value
                                                   : error_odd(kind_, lam_).value;
  return base / delta_;
}

Approximant dilate(const Approximant& a, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("dilate: delta must be positive");
  if (delta == 1.0) return a;
  return Approximant(a.kind(), a.parity(), a.lam(), a.delta() * delta);
}

ErrorValue error_best(double lam) {
  detail::require_positive(lam, "error_best");
  return {quad::H_lambda(lam), Kind::BestApprox};
}

ErrorValue error_minorant(double lam) {
  detail::require_positive(lam, "error_minorant");
  double tail = 0.0;
  double value = 0.0;
  if (lam >= 1.0) {
    for (int n = 1;; ++n) {
      const double t = std::exp(-kPi * lam * n * n);
      tail += t;
      if (t < 1e-18 * tail || t == 0.0) break;
    }
    value = 0.5 / std::sqrt(lam) - tail;
  } else {
    // theta3(0, i lambda) = lambda^(-1/2) (1 + 2 sum exp(-pi n^2 / lambda))
    for (int n = 1;; ++n) {
      const double t = std::exp(-kPi * n * n / lam);
      tail += t;
      if (t < 1e-18 * tail || t == 0.0) break;
    }
    value = 0.5 - tail / std::sqrt(lam);
  }
  return {value, Kind::Minorant};
}

ErrorValue error_majorant(double lam) {
  return {1.0 - error_minorant(lam).value, Kind::Majorant};
}

ErrorValue error_for(Kind kind, double lam) {
  switch (kind) {
    case Kind::BestApprox:
      return error_best(lam);
    case Kind::Minorant:
      return error_minorant(lam);
    case Kind::Majorant:
      return error_majorant(lam);
  }
  return error_best(lam);
}

ErrorValue error_odd(Kind kind, double lam) {
  detail::require_positive(lam, "error_odd");
  if (kind == Kind::BestApprox) return {2.0 * quad::H_lambda(lam), kind};
  return {1.0, kind};
}

}  // namespace bandlimit
