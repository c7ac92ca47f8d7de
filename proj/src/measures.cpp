#include "bandlimit/measures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bandlimit/quadrature.hpp"
#include "bandlimit/special_functions.hpp"
#include "json.hpp"

namespace bandlimit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string condition_name(Condition c) { return c == Condition::Nu1 ? "nu1" : "nu2"; }

void require_admissible(const MeasureRep& m, Kind kind, Parity parity) {
  const Condition c = required_condition(kind, parity);
  const auto adm = check_admissible(m, c);
  if (adm.status == AdmissibilityStatus::Inadmissible) {
    throw std::domain_error("measure violates condition " + condition_name(c) + " needed for the " +
                            std::string(to_string(kind)) + " of the " +
                            std::string(to_string(parity)) + " target");
  }
}

std::vector<double> log_grid(double lo, double hi, long intervals) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(intervals) + 1);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (long k = 0; k <= intervals; ++k) {
    out.push_back(std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(intervals)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace

MeasureRep::MeasureRep(std::vector<Atom> atoms, std::optional<Density> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!(a.lam > 0.0) || !std::isfinite(a.lam)) {
      throw std::invalid_argument("MeasureRep: atom location must be positive and finite");
    }
    if (!(a.weight >= 0.0)) throw std::invalid_argument("MeasureRep: atom weight must be >= 0");
    points_.push_back(a);
  }
  if (density_) {
    for (const auto& n : density_->nodes) {
      if (!(n.lam > 0.0) || !std::isfinite(n.lam)) {
        throw std::invalid_argument("MeasureRep: density node must be positive and finite");
      }
      if (!(n.mass >= 0.0)) throw std::invalid_argument("MeasureRep: density must be >= 0");
      points_.push_back({n.lam, n.mass});
    }
  }
  series_.reserve(points_.size());
  for (const auto& p : points_) series_.push_back(std::make_shared<const ExtremalSeries>(p.lam));
}

MeasureRep MeasureRep::point_mass(double lam, double weight) {
  return MeasureRep({Atom{lam, weight}});
}

bool MeasureRep::has_flagged_nodes() const noexcept {
  if (!density_) return false;
  for (const auto& n : density_->nodes) {
    if (n.flagged) return true;
  }
  return false;
}

Admissibility check_admissible(const MeasureRep& m, Condition condition) {
  double value = 0.0;
  for (const auto& p : m.discretized()) {
    value += condition == Condition::Nu1 ? p.weight / (1.0 + std::sqrt(p.lam)) : p.weight;
  }
  if (!std::isfinite(value)) return {false, value, AdmissibilityStatus::Inadmissible};
  if (m.has_flagged_nodes()) return {false, value, AdmissibilityStatus::Indeterminate};
  return {true, value, AdmissibilityStatus::Admissible};
}

Condition required_condition(Kind kind, Parity parity) {
  if (kind == Kind::BestApprox) return Condition::Nu1;
  if (kind == Kind::Minorant && parity == Parity::Truncated) return Condition::Nu1;
  return Condition::Nu2;
}

double eval_g(const IntegratedTarget& t, double x) {
  double sum = 0.0;
  for (const auto& p : t.measure.discretized()) {
    const double v = t.parity == Parity::Truncated ? truncated_gaussian(p.lam, x)
                                                   : odd_gaussian(p.lam, x);
    sum += p.weight * v;
  }
  return sum;
}

double eval_integrated(Kind kind, const IntegratedTarget& t, double x) {
  require_admissible(t.measure, kind, t.parity);
  const auto& pts = t.measure.discretized();
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& s = t.measure.series(i);
    const double v = t.parity == Parity::Truncated ? s.truncated(kind, x) : s.odd(kind, x);
    sum += pts[i].weight * v;
  }
  return sum;
}

double integrated_error(Kind kind, const MeasureRep& m, Parity parity) {
  require_admissible(m, kind, parity);
  double sum = 0.0;
  for (const auto& p : m.discretized()) {
    if (p.weight == 0.0) continue;
    const double e = parity == Parity::Truncated ? error_for(kind, p.lam).value
                                                 : error_odd(kind, p.lam).value;
    sum += p.weight * e;
  }
  return sum;
}

double arctan_density(double lam, bool* converged) {
  detail::require_positive(lam, "arctan_density");
  const double a = std::sqrt(kPi);
  // e^(-t^2/(4 lambda)) < 1e-20 beyond the window.
  const double window = std::sqrt(4.0 * lam * std::log(1e20)) + 1.0;
  auto integrand = [a, lam](double t) {
    const double at = a * t;
    return std::exp(-t * t / (4.0 * lam)) * (std::sin(at) - at * std::cos(at));
  };
  quad::Options opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-11;
  opt.max_subdivisions = 20000;
  const double scale = 1.0 / (2.0 * a * lam * std::sqrt(lam));
  if (converged) *converged = true;
  try {
    return scale * quad::integrate(integrand, 0.0, window, opt).value;
  } catch (const quad::NonConvergence& e) {
    if (converged) *converged = false;
    return scale * e.best_estimate().value;
  }
}

Density tabulated_density(const std::vector<double>& nodes, const std::vector<double>& values) {
  if (nodes.size() != values.size()) {
    throw std::invalid_argument("density: nodes and weights differ in length");
  }
  Density d;
  d.kind = "table";
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(nodes[i] > 0.0)) throw std::invalid_argument("density: nodes must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw std::invalid_argument("density: nodes must be increasing");
    }
    if (!(values[i] >= 0.0)) throw std::invalid_argument("density: values must be >= 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::log(nodes[i]) - std::log(nodes[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::log(nodes[i + 1]) - std::log(nodes[i]) : 0.0;
    d.nodes.push_back({nodes[i], values[i], values[i] * nodes[i] * 0.5 * (left + right), false});
  }
  return d;
}

namespace {

Density arctan_on_nodes(const std::vector<double>& nodes) {
  std::vector<double> values;
  std::vector<bool> ok;
  values.reserve(nodes.size());
  for (double lam : nodes) {
    bool converged = true;
    values.push_back(std::max(0.0, arctan_density(lam, &converged)));
    ok.push_back(converged);
  }
  Density d = tabulated_density(nodes, values);
  d.kind = "arctan";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!ok[i]) {
      d.nodes[i].flagged = true;
      d.error_bound += d.nodes[i].mass;
    }
  }
  return d;
}

double total_mass(const Density& d) {
  double s = 0.0;
  for (const auto& n : d.nodes) s += n.mass;
  return s;
}

}  // namespace

MeasureRep arctan_measure(const ArctanOptions& opt) {
  if (!(opt.lam_min > 0.0) || !(opt.lam_max > opt.lam_min)) {
    throw std::invalid_argument("arctan_measure: need 0 < lam_min < lam_max");
  }
  const double decades = std::log10(opt.lam_max / opt.lam_min);
  int per_decade = std::max(1, opt.initial_per_decade);
  auto intervals = [&](int pd) { return std::max(1L, std::lround(decades * pd)); };
  Density current = arctan_on_nodes(log_grid(opt.lam_min, opt.lam_max, intervals(per_decade)));
  double mass = total_mass(current);
  while (per_decade * 2 <= opt.max_per_decade) {
    per_decade *= 2;
    Density refined = arctan_on_nodes(log_grid(opt.lam_min, opt.lam_max, intervals(per_decade)));
    const double refined_mass = total_mass(refined);
    const bool done = std::abs(refined_mass - mass) < opt.mass_tol;
    current = std::move(refined);
    mass = refined_mass;
    if (done) break;
    if (per_decade * 2 > opt.max_per_decade) current.refined_to_tolerance = false;
  }
  return MeasureRep({}, std::move(current));
}

MeasureRep parse_measure_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("measure file: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("measure file: top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "atoms" && it.key() != "density") {
      throw std::invalid_argument("measure file: unknown field '" + it.key() + "'");
    }
  }
  std::vector<Atom> atoms;
  if (doc.contains("atoms")) {
    const auto& arr = doc["atoms"];
    if (!arr.is_array()) throw std::invalid_argument("measure file: atoms must be an array");
    for (const auto& a : arr) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        throw std::invalid_argument("measure file: each atom must be [lam, weight]");
      }
      atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
  }
  std::optional<Density> density;
  if (doc.contains("density") && !doc["density"].is_null()) {
    const auto& d = doc["density"];
    if (!d.is_object() || !d.contains("kind") || !d["kind"].is_string()) {
      throw std::invalid_argument("measure file: density needs a string 'kind'");
    }
    auto numbers = [&](const char* key) {
      std::vector<double> v;
      if (!d.contains(key)) return v;
      if (!d[key].is_array()) {
        throw std::invalid_argument(std::string("measure file: density.") + key +
                                    " must be an array");
      }
      for (const auto& x : d[key]) {
        if (!x.is_number()) {
          throw std::invalid_argument(std::string("measure file: density.") + key +
                                      " must hold numbers");
        }
        v.push_back(x.get<double>());
      }
      return v;
    };
    const std::string kind = d["kind"].get<std::string>();
    const auto nodes = numbers("nodes");
    if (kind == "table") {
      density = tabulated_density(nodes, numbers("weights"));
    } else if (kind == "arctan") {
      if (nodes.empty()) {
        density = *arctan_measure().density();
      } else {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          if (!(nodes[i] > 0.0) || (i > 0 && !(nodes[i] > nodes[i - 1]))) {
            throw std::invalid_argument("measure file: density nodes must increase and be > 0");
          }
        }
        density = arctan_on_nodes(nodes);
      }
    } else {
      throw std::invalid_argument("measure file: unknown density kind '" + kind + "'");
    }
  }
  return MeasureRep(std::move(atoms), std::move(density));
}

MeasureRep load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open measure file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_json(buf.str());
}

}  // namespace bandlimit
