#pragma once

// Non-negative measures nu on (0, inf) and the functions obtained by
// integrating the Gaussian family against them:
//
//   g(x) = x_+^0 int e^(-pi lambda x^2) dnu(lambda)   (or sgn(x) ... for odd)
//
// together with the integrated extremal functions k, l, m and their errors.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bandlimit/extremal.hpp"

namespace bandlimit {

class ExtremalSeries;

/// A point mass `weight` at `lam`.
struct Atom {
  double lam;
  double weight;
};

/// One quadrature node of a sampled density: the mass assigned to the node
/// (density value times its trapezoid weight in ln lambda).
struct DensityNode {
  double lam;
  double density;
  double mass;
  bool flagged = false;  // inner evaluation did not converge
};

struct Density {
  std::string kind;  // "arctan" or "table"
  std::vector<DensityNode> nodes;
  // Bound on the mass error from flagged nodes.
  double error_bound = 0.0;
  // False when node refinement stopped at its cap before the mass settled.
  bool refined_to_tolerance = true;
};

/// Atoms plus an optional sampled density. Immutable after construction; the
/// per-lambda interpolation series are built once and shared.
class MeasureRep {
 public:
  MeasureRep() = default;
  explicit MeasureRep(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt);

  static MeasureRep point_mass(double lam, double weight = 1.0);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<Density>& density() const noexcept { return density_; }

  /// Every (lambda, mass) pair: atoms first, then density nodes.
  const std::vector<Atom>& discretized() const noexcept { return points_; }
  const ExtremalSeries& series(std::size_t i) const { return *series_.at(i); }
  bool has_flagged_nodes() const noexcept;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  std::vector<Atom> points_;
  std::vector<std::shared_ptr<const ExtremalSeries>> series_;
};

/// nu1: int (1 + sqrt(lambda))^(-1) dnu < inf;  nu2: int dnu < inf.
enum class Condition { Nu1, Nu2 };

enum class AdmissibilityStatus { Admissible, Inadmissible, Indeterminate };

struct Admissibility {
  bool admissible;
  double value;
  AdmissibilityStatus status;
};

Admissibility check_admissible(const MeasureRep& m, Condition condition);

/// Condition each kind needs: nu1 for the best approximation and the
/// truncated minorant, nu2 for anything involving a majorant. The odd
/// minorant and majorant both contain a reflected majorant.
Condition required_condition(Kind kind, Parity parity);

struct IntegratedTarget {
  MeasureRep measure;
  Parity parity = Parity::Truncated;
};

double eval_g(const IntegratedTarget& t, double x);

/// k, l or m at x: the per-lambda extremal functions integrated against nu.
/// Throws std::domain_error naming the violated condition.
double eval_integrated(Kind kind, const IntegratedTarget& t, double x);

/// int error(lambda) dnu for the given kind; H(lambda) for the best
/// approximation, the theta3 closed forms for the one-sided ones.
double integrated_error(Kind kind, const MeasureRep& m, Parity parity = Parity::Truncated);

struct ArctanOptions {
  double lam_min = 1e-4;
  double lam_max = 1e4;
  int initial_per_decade = 8;
  int max_per_decade = 1024;
  // Refinement stops when the total mass changes by less than this.
  double mass_tol = 1e-8;
};

/// Density of the measure that turns the odd Gaussian into
/// arctan(1/x) - x/(1+x^2):
///   w(lambda) = (2 sqrt(pi) lambda^(3/2))^(-1)
///               int_0^inf e^(-t^2/(4 lambda)) (sin(sqrt(pi) t) - sqrt(pi) t cos(sqrt(pi) t)) dt
double arctan_density(double lam, bool* converged = nullptr);

/// Sampled arctan density on a log-spaced grid over [lam_min, lam_max],
/// trapezoidal in ln(lambda), refined by doubling the node count.
MeasureRep arctan_measure(const ArctanOptions& opt = {});

/// Trapezoidal masses in ln(lambda) for density values at increasing nodes.
Density tabulated_density(const std::vector<double>& nodes, const std::vector<double>& values);

/// Parses {"atoms": [[lam, w], ...], "density": {"kind": ..., "nodes": [...],
/// "weights": [...]}}. For "table" the weights are density values at the
/// nodes; for "arctan" nodes are optional and weights are ignored.
/// Throws std::invalid_argument on malformed input.
MeasureRep parse_measure_json(const std::string& text);
MeasureRep load_measure_file(const std::string& path);

}  // namespace bandlimit
