#include "bandlimit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "bandlimit/special_functions.hpp"

namespace bandlimit::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Kronrod abscissae (descending) and weights; every odd index is a Gauss node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double err;
  double roundoff;  // error floor from 50 eps * int |f|
};

struct ByError {
  bool operator()(const Panel& l, const Panel& r) const { return l.err < r.err; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double roundoff = 50.0 * kEps * resabs;
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(roundoff, err);
  return {a, b, value, err, roundoff};
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const Options& opt) {
  if (a == b) return {0.0, 0.0, 1};
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;
  long evals = 15;
  active.push(gauss_kronrod(f, a, b));
  int panels = 1;

  auto totals = [&]() {
    double value = 0.0;
    double err = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      err += copy.top().err;
      copy.pop();
    }
    for (const auto& p : frozen) {
      value += p.value;
      err += p.err;
    }
    return std::pair{value, err};
  };

  double value = active.top().value;
  double err = active.top().err;
  double roundoff = active.top().roundoff;
  while (true) {
    if (!std::isfinite(value)) {
      throw NonConvergence("integrate: non-finite integrand", {value, err, evals});
    }
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    // Below twice the summed roundoff floor further bisection cannot help.
    if (err <= target || err <= 2.0 * roundoff || active.empty()) break;
    if (panels >= opt.max_subdivisions) {
      auto [v, e] = totals();
      throw NonConvergence("integrate: subdivision limit reached", {v, e, evals});
    }
    const Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b) ||
        (worst.b - worst.a) <= 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evals += 30;
    ++panels;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    roundoff += left.roundoff + right.roundoff - worst.roundoff;
    active.push(left);
    active.push(right);
    if (panels % 64 == 0) std::tie(value, err) = totals();
  }
  auto [v, e] = totals();
  return {v, e, evals};
}

// Maps [lo, +inf) onto s in [0, 1): x = lo + s/(1-s).
QuadResult integrate_upper_infinite(const Integrand& f, double lo, const Options& opt) {
  auto mapped = [&](double s) {
    const double w = 1.0 - s;
    const double x = lo + s / w;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx / (w * w);
  };
  return integrate_finite(mapped, 0.0, 1.0, opt);
}

QuadResult integrate_lower_infinite(const Integrand& f, double hi, const Options& opt) {
  auto mapped = [&](double s) {
    const double w = 1.0 - s;
    const double x = hi - s / w;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx / (w * w);
  };
  return integrate_finite(mapped, 0.0, 1.0, opt);
}

QuadResult combine(const QuadResult& l, const QuadResult& r) {
  return {l.value + r.value, l.abs_error_estimate + r.abs_error_estimate,
          l.evaluations + r.evaluations};
}

// Zeros of d inside [lo, hi] by scanning and bisection, plus exact zeros on
// the scan grid.
std::vector<double> locate_sign_changes(const Integrand& d, double lo, double hi, double step,
                                        double bisection_tol, long& evals) {
  std::vector<double> zeros;
  const long n = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / step)));
  double x_prev = lo;
  double d_prev = d(lo);
  ++evals;
  for (long k = 1; k <= n; ++k) {
    const double x = (k == n) ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
    const double dx = d(x);
    ++evals;
    if (dx == 0.0) {
      if (k != n) zeros.push_back(x);
    } else if (d_prev != 0.0 && std::signbit(dx) != std::signbit(d_prev)) {
      double l = x_prev;
      double r = x;
      double dl = d_prev;
      while (r - l > bisection_tol) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        const double dm = d(m);
        ++evals;
        if (dm == 0.0) {
          l = r = m;
          break;
        }
        if (std::signbit(dm) == std::signbit(dl)) {
          l = m;
          dl = dm;
        } else {
          r = m;
        }
      }
      zeros.push_back(0.5 * (l + r));
    }
    x_prev = x;
    d_prev = dx;
  }
  return zeros;
}

QuadResult integrate_abs(const Integrand& d, double lo, double hi, std::vector<double> extra,
                         double step, double bisection_tol, double tol) {
  long evals = 0;
  auto zeros = locate_sign_changes(d, lo, hi, step, bisection_tol, evals);
  std::vector<double> pts{lo, hi};
  pts.insert(pts.end(), zeros.begin(), zeros.end());
  for (double e : extra) {
    if (e > lo && e < hi) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> cleaned;
  for (double p : pts) {
    if (cleaned.empty() || p - cleaned.back() > 1e-14 * std::max(1.0, std::abs(p))) {
      cleaned.push_back(p);
    }
  }
  if (cleaned.back() != hi) cleaned.back() = hi;
  auto absd = [&](double x) { return std::abs(d(x)); };
  Options opt;
  opt.abs_tol = tol / static_cast<double>(cleaned.size());
  auto r = integrate_panels(absd, cleaned, opt);
  r.evaluations += evals;
  return r;
}

// Sum of |d| over consecutive periods moving away from `edge`, extrapolated
// to infinitely many periods. Level k stops at distance 2^k X0 from the
// origin, X0 = |edge| + first_level * period, so that the partial sums are
// S - c1/X - c2/X^2 - ... in pure powers of 1/X.
QuadResult periodic_tail(const Integrand& d, double edge, double direction, const TailModel& tail,
                         double tol, double step, double bisection_tol) {
  const int levels = std::max(2, tail.levels);
  const double p = tail.period;
  const double x0 = std::abs(edge) + tail.first_level * p;
  std::vector<long> level_end;
  for (int k = 0; k < levels; ++k) {
    level_end.push_back(std::lround((std::ldexp(x0, k) - std::abs(edge)) / p));
  }
  const long total = level_end.back();
  const double panel_tol = tol / static_cast<double>(total);
  const double inner_step = std::min(step, p / 8.0);

  std::vector<double> partial;
  partial.reserve(static_cast<std::size_t>(levels));
  double sum = 0.0;
  double err_sum = 0.0;
  long evals = 0;
  std::size_t next = 0;
  for (long k = 0; k < total; ++k) {
    const double x0k = edge + direction * p * static_cast<double>(k);
    const double x1k = edge + direction * p * static_cast<double>(k + 1);
    const auto r = integrate_abs(d, std::min(x0k, x1k), std::max(x0k, x1k), {}, inner_step,
                                 bisection_tol, panel_tol);
    sum += r.value;
    err_sum += r.abs_error_estimate;
    evals += r.evaluations;
    if (k + 1 == level_end[next]) {
      partial.push_back(sum);
      ++next;
    }
  }
  // Partial sums behave like S + c1/N + c2/N^2 + ... with N doubling per level.
  std::vector<std::vector<double>> table(partial.size());
  for (std::size_t j = 0; j < partial.size(); ++j) {
    table[j].push_back(partial[j]);
    for (std::size_t k = 1; k <= j; ++k) {
      const double factor = std::ldexp(1.0, static_cast<int>(k));
      table[j].push_back(table[j][k - 1] + (table[j][k - 1] - table[j - 1][k - 1]) / (factor - 1.0));
    }
  }
  const auto& last = table.back();
  const double value = last.back();
  const double extrapolation_err = std::abs(last.back() - last[last.size() - 2]);
  return {value, err_sum + extrapolation_err, evals};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const Options& opt) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate: NaN limit");
  if (a == b) return {0.0, 0.0, 1};
  if (a > b) throw std::invalid_argument("integrate: requires a < b");
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    Options half = opt;
    half.abs_tol = 0.5 * opt.abs_tol;
    return combine(integrate_lower_infinite(f, 0.0, half), integrate_upper_infinite(f, 0.0, half));
  }
  if (hi_inf) return integrate_upper_infinite(f, a, opt);
  if (lo_inf) return integrate_lower_infinite(f, b, opt);
  return integrate_finite(f, a, b, opt);
}

QuadResult integrate(const Integrand& f, double a, double b, double tol) {
  Options opt;
  opt.abs_tol = tol;
  return integrate(f, a, b, opt);
}

QuadResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                            const Options& opt) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_panels: need two points");
  const auto panels = static_cast<double>(breakpoints.size() - 1);
  Options each = opt;
  each.abs_tol = opt.abs_tol / panels;
  QuadResult total{0.0, 0.0, 0};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw std::invalid_argument("integrate_panels: breakpoints must increase");
    }
    total = combine(total, integrate(f, breakpoints[i], breakpoints[i + 1], each));
  }
  return total;
}

double gaussian_window(double tol, double decay_scale) {
  if (!(tol > 0.0) || !(decay_scale > 0.0)) {
    throw std::invalid_argument("gaussian_window: tol and decay_scale must be positive");
  }
  return std::max(3.0, std::sqrt(std::log(10.0 / tol) / (std::numbers::pi * decay_scale)));
}

QuadResult integrate_line(const Integrand& f, double tol, double decay_scale) {
  const double w = gaussian_window(tol, decay_scale);
  const std::array<double, 3> pts{-w, 0.0, w};
  Options opt;
  opt.abs_tol = 0.5 * tol;
  auto r = integrate_panels(f, pts, opt);
  // 2 int_W^inf exp(-pi s x^2) dx <= exp(-pi s W^2) / (pi s W)
  const double pi_s = std::numbers::pi * decay_scale;
  r.abs_error_estimate += std::exp(-pi_s * w * w) / (pi_s * w);
  return r;
}

QuadResult l1_distance(const Integrand& f, const Integrand& g, const L1Options& opt) {
  if (!(opt.a < opt.b)) throw std::invalid_argument("l1_distance: requires a < b");
  auto d = [&](double x) { return f(x) - g(x); };
  const bool with_tail = opt.tail.period > 0.0;
  const double window_tol = with_tail ? 0.5 * opt.tol : opt.tol;
  auto r = integrate_abs(d, opt.a, opt.b, opt.breakpoints, opt.scan_step, opt.bisection_tol,
                         window_tol);
  if (with_tail) {
    const double side_tol = 0.25 * opt.tol;
    r = combine(r, periodic_tail(d, opt.b, 1.0, opt.tail, side_tol, opt.scan_step,
                                 opt.bisection_tol));
    r = combine(r, periodic_tail(d, opt.a, -1.0, opt.tail, side_tol, opt.scan_step,
                                 opt.bisection_tol));
  }
  return r;
}

HProfile h_profile(double lam, HMethod method, double tol) {
  detail::require_positive(lam, "h_profile");
  const double pi = std::numbers::pi;
  HProfile out;
  out.lam = lam;
  out.method = method;
  if (method == HMethod::Substituted) {
    // With y = sin(phi) and mu = cos^2(phi)/lambda the integrand becomes
    // sqrt(lambda) * sqrt(mu) theta1(0, i mu), which stays bounded.
    auto integrand = [lam](double phi) {
      const double c = std::cos(phi);
      return theta1_scaled(0.0, c * c / lam);
    };
    std::vector<double> pts{0.0};
    if (lam < 1.0) pts.push_back(std::acos(std::sqrt(lam)));
    pts.push_back(0.5 * pi);
    Options opt;
    opt.abs_tol = tol * pi * std::sqrt(lam);
    const auto r = integrate_panels(integrand, pts, opt);
    const double scale = 1.0 / (pi * std::sqrt(lam));
    out.value = scale * r.value;
    out.abs_error_estimate = scale * r.abs_error_estimate;
    return out;
  }
  auto integrand = [lam](double y) {
    const double s = 1.0 - y * y;
    if (s <= 0.0) return 0.0;
    return std::sqrt(lam / s) * theta1_scaled(0.0, s / lam);
  };
  Options opt;
  opt.abs_tol = std::max(tol, 1e-8) * pi * lam;
  opt.max_subdivisions = 20000;
  // The integrand climbs from exp(-pi/(4 lambda))-small values to its peak
  // where (1 - y^2)/lambda is of order one.
  std::vector<double> pts{0.0};
  for (double c : {64.0, 16.0, 4.0, 1.0}) {
    if (c * lam < 1.0) pts.push_back(std::sqrt(1.0 - c * lam));
  }
  pts.push_back(1.0);
  QuadResult r;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    try {
      r = combine(r, integrate(integrand, pts[i], pts[i + 1], opt));
    } catch (const NonConvergence& e) {
      r = combine(r, e.best_estimate());
    }
  }
  out.value = r.value / (pi * lam);
  out.abs_error_estimate = r.abs_error_estimate / (pi * lam);
  return out;
}

double H_lambda(double lam) { return h_profile(lam).value; }

double edge_gaussian_integral(double a) {
  if (!(a >= 0.0)) throw std::invalid_argument("edge_gaussian_integral: a must be >= 0");
  // In s = 1 - y the integrand is exp(-a s (2 - s)).
  std::vector<double> br{0.0};
  for (double c : {1.0, 4.0, 16.0, 64.0}) {
    if (c < a) br.push_back(c / a);
  }
  br.push_back(1.0);
  Options opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-14;
  return integrate_panels([a](double s) { return std::exp(-a * s * (2.0 - s)); }, br, opt).value;
}

double H_t(double t, double lam) {
  detail::require_positive(lam, "H_t");
  const double a = std::numbers::pi * t * t / lam;
  return edge_gaussian_integral(a) / (std::numbers::pi * lam);
}

HBracket h_large_lambda_bracket(double lam) {
  detail::require_positive(lam, "h_large_lambda_bracket");
  const double pi = std::numbers::pi;
  auto integrand = [lam, pi](double phi) {
    const double c = std::cos(phi);
    if (c <= 0.0) return 1.0;
    return 1.0 - 2.0 * std::exp(-pi * lam / (c * c));
  };
  const auto r = integrate(integrand, 0.0, 0.5 * pi, 1e-13);
  return {r.value / pi, 0.5};
}

QuadResult integrate_2d(const Integrand2D& f, const Region& region, double tol,
                        const PeakHint& inner_peak) {
  long inner_evals = 0;
  Options inner_opt;
  inner_opt.abs_tol = 0.5 * tol;
  auto outer = [&](double t) {
    auto g = [&](double u) { return f(t, u); };
    QuadResult r;
    const double p = inner_peak ? inner_peak(t) : std::numeric_limits<double>::quiet_NaN();
    if (p > region.u_lo && p < region.u_hi) {
      Options half = inner_opt;
      half.abs_tol = 0.5 * inner_opt.abs_tol;
      r = combine(integrate(g, region.u_lo, p, half), integrate(g, p, region.u_hi, half));
    } else {
      r = integrate(g, region.u_lo, region.u_hi, inner_opt);
    }
    inner_evals += r.evaluations;
    return r.value;
  };
  Options outer_opt;
  outer_opt.abs_tol = 0.5 * tol;
  auto r = integrate(outer, region.t_lo, region.t_hi, outer_opt);
  r.evaluations += inner_evals;
  return r;
}

}  // namespace bandlimit::quad
