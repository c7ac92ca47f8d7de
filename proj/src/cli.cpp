#include "bandlimit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "bandlimit/csv.hpp"
#include "bandlimit/extremal.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/special_functions.hpp"
#include "bandlimit/verify.hpp"
#include "json.hpp"

namespace bandlimit::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (first == last || ec != std::errc() || ptr != last) {
    throw UsageError(what + ": not a number '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    out.push_back(parse_double(text.substr(start, pos - start), what));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> linspace(double a, double b, long n) {
  std::vector<double> out;
  if (n == 1) return {a};
  for (long k = 0; k < n; ++k) out.push_back(a + (b - a) * static_cast<double>(k) / (n - 1));
  return out;
}

// "a:b:n" -> n equispaced points from a to b.
std::vector<double> parse_range(const std::string& text) {
  const auto p1 = text.find(':');
  const auto p2 = p1 == std::string::npos ? p1 : text.find(':', p1 + 1);
  if (p2 == std::string::npos || text.find(':', p2 + 1) != std::string::npos) {
    throw UsageError("--range must look like a:b:n, got '" + text + "'");
  }
  const double a = parse_double(text.substr(0, p1), "--range start");
  const double b = parse_double(text.substr(p1 + 1, p2 - p1 - 1), "--range end");
  const double n = parse_double(text.substr(p2 + 1), "--range count");
  if (!std::isfinite(a) || !std::isfinite(b)) throw UsageError("--range ends must be finite");
  if (!(n >= 1) || n != std::floor(n) || n > 1e8) {
    throw UsageError("--range count must be a positive integer");
  }
  return linspace(a, b, static_cast<long>(n));
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(what + " must be positive and finite");
}

Kind parse_kind(const std::string& s) {
  if (s == "best") return Kind::BestApprox;
  if (s == "minorant") return Kind::Minorant;
  if (s == "majorant") return Kind::Majorant;
  throw UsageError("unknown kind '" + s + "'");
}

Parity parse_parity(const std::string& s) {
  if (s == "truncated") return Parity::Truncated;
  if (s == "odd") return Parity::Odd;
  throw UsageError("unknown parity '" + s + "'");
}

const auto kKinds = CLI::IsMember({"best", "minorant", "majorant"});
const auto kParities = CLI::IsMember({"truncated", "odd"});

// Target and approximant as functions of x, with a description.
struct Pair {
  std::function<double(double)> g;
  std::function<double(double)> approx;
  std::vector<std::string> meta;
};

Pair single_pair(Kind kind, Parity parity, double lam, double delta) {
  require_positive(lam, "--lam");
  require_positive(delta, "--delta");
  auto a = std::make_shared<const Approximant>(Approximant::for_target(kind, parity, lam, delta));
  Pair p;
  p.g = [a](double x) { return a->target(x); };
  p.approx = [a](double x) { return (*a)(x); };
  p.meta = {" kind=" + std::string(to_string(kind)) + " parity=" + std::string(to_string(parity)) +
            " lam=" + csv::format_number(lam) + " delta=" + csv::format_number(delta),
            " error=" + csv::format_number(a->error())};
  return p;
}

MeasureRep load_measure(const std::string& path) {
  try {
    return load_measure_file(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Pair measure_pair(Kind kind, Parity parity, const std::string& path) {
  auto target = std::make_shared<const IntegratedTarget>(IntegratedTarget{load_measure(path), parity});
  const auto cond = required_condition(kind, parity);
  if (check_admissible(target->measure, cond).status == AdmissibilityStatus::Inadmissible) {
    throw std::domain_error(std::string("measure violates ") +
                            (cond == Condition::Nu1 ? "nu1" : "nu2"));
  }
  Pair p;
  p.g = [target](double x) { return eval_g(*target, x); };
  p.approx = [target, kind](double x) { return eval_integrated(kind, *target, x); };
  p.meta = {" kind=" + std::string(to_string(kind)) + " parity=" + std::string(to_string(parity)) +
            " measure=" + path};
  return p;
}

std::vector<double> points_from(const std::optional<std::string>& xs,
                                 const std::optional<std::string>& range) {
  if (xs && range) throw UsageError("give either --x or --range, not both");
  if (xs) return parse_list(*xs, "--x");
  if (range) return parse_range(*range);
  return {};
}

void write_rows(std::ostream& out, const std::string& format, const std::string& title,
                const Pair& p, const std::vector<double>& xs) {
  csv::Table t;
  t.meta.push_back(" bandlimit " + title);
  t.meta.insert(t.meta.end(), p.meta.begin(), p.meta.end());
  t.header = {"x", "g", "approx", "residual"};
  for (double x : xs) {
    const double g = p.g(x);
    const double a = p.approx(x);
    t.rows.push_back({x, g, a, a - g});
  }
  if (format == "json") {
    nlohmann::json doc;
    doc["meta"] = t.meta;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
      doc["rows"].push_back({{"x", r[0]}, {"g", r[1]}, {"approx", r[2]}, {"residual", r[3]}});
    }
    out << doc.dump(2) << '\n';
  } else {
    csv::write(out, t);
  }
}

struct EvalArgs {
  std::string kind = "best";
  std::string parity = "truncated";
  double lam = 1.0;
  double delta = 1.0;
  std::optional<std::string> x;
  std::optional<std::string> range;
  std::optional<std::string> measure;
  std::string format = "csv";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Kind kind = parse_kind(a.kind);
  const Parity parity = parse_parity(a.parity);
  const auto xs = points_from(a.x, a.range);
  const Pair p = a.measure ? measure_pair(kind, parity, *a.measure)
                           : single_pair(kind, parity, a.lam, a.delta);
  write_rows(out, a.format, "eval", p, xs);
  return kOk;
}

struct ErrorTableArgs {
  std::string lams = "1";
  std::string kinds = "best,minorant,majorant";
  std::string parity = "truncated";
  std::string format = "csv";
};

int cmd_error_table(const ErrorTableArgs& a, std::ostream& out, std::ostream& err) {
  const Parity parity = parse_parity(a.parity);
  std::vector<double> lams;
  for (double l : parse_list(a.lams, "--lam")) {
    require_positive(l, "--lam");
    if (std::find(lams.begin(), lams.end(), l) != lams.end()) {
      err << "warning: duplicate lambda " << csv::format_number(l) << " ignored\n";
      continue;
    }
    lams.push_back(l);
  }
  std::vector<Kind> kinds;
  std::size_t start = 0;
  for (;;) {
    const auto pos = a.kinds.find(',', start);
    const Kind k = parse_kind(trim(a.kinds.substr(start, pos - start)));
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  csv::Table t;
  t.meta = {" bandlimit error-table parity=" + std::string(to_string(parity))};
  t.header = {"lam"};
  for (Kind k : kinds) t.header.push_back(k == Kind::BestApprox ? "H" : std::string(to_string(k)));
  for (double l : lams) {
    std::vector<double> row{l};
    for (Kind k : kinds) {
      row.push_back(parity == Parity::Truncated ? error_for(k, l).value : error_odd(k, l).value);
    }
    t.rows.push_back(std::move(row));
  }
  if (a.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json o;
      for (std::size_t i = 0; i < r.size(); ++i) o[t.header[i]] = r[i];
      doc.push_back(o);
    }
    out << doc.dump(2) << '\n';
  } else {
    csv::write(out, t);
  }
  return kOk;
}

struct PlotArgs {
  std::string curve;
  std::string kind = "best";
  std::string parity = "truncated";
  double lam = 1.0;
  double delta = 1.0;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<long> points;
  std::optional<std::string> measure;
};

int cmd_plot_data(const PlotArgs& a, std::ostream& out) {
  csv::Table t;
  t.meta.push_back(" bandlimit plot-data curve=" + a.curve);
  if (a.curve == "H-profile") {
    const double lo = a.from.value_or(1e-4);
    const double hi = a.to.value_or(1e4);
    const long n = a.points.value_or(200);
    require_positive(lo, "--from");
    require_positive(hi, "--to");
    if (n < 1) throw UsageError("--points must be at least 1");
    t.meta.push_back(" log-spaced lambda");
    t.header = {"lam", "H"};
    for (double e : linspace(std::log(lo), std::log(hi), n)) {
      const double l = std::exp(e);
      t.rows.push_back({l, quad::H_lambda(l)});
    }
    csv::write(out, t);
    return kOk;
  }
  const Kind kind = parse_kind(a.kind);
  const Parity parity = parse_parity(a.parity);
  const double lo = a.from.value_or(-4.0);
  const double hi = a.to.value_or(4.0);
  const long n = a.points.value_or(801);
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("--from/--to must be finite");
  if (n < 1) throw UsageError("--points must be at least 1");
  const Pair p = a.measure ? measure_pair(kind, parity, *a.measure)
                           : single_pair(kind, parity, a.lam, a.delta);
  t.meta.insert(t.meta.end(), p.meta.begin(), p.meta.end());
  std::function<double(double)> y;
  if (a.curve == "g") {
    y = p.g;
  } else if (a.curve == "approximant") {
    y = p.approx;
  } else if (a.curve == "residual") {
    y = [&](double x) { return p.approx(x) - p.g(x); };
  } else {
    // Non-negative wherever the extremal property holds.
    switch (kind) {
      case Kind::BestApprox:
        y = [&](double x) { return sin_pi(x) * (p.g(x) - p.approx(x)); };
        break;
      case Kind::Minorant:
        y = [&](double x) { return p.g(x) - p.approx(x); };
        break;
      case Kind::Majorant:
        y = [&](double x) { return p.approx(x) - p.g(x); };
        break;
    }
  }
  t.header = {"x", "y"};
  for (double x : linspace(lo, hi, n)) t.rows.push_back({x, y(x)});
  csv::write(out, t);
  return kOk;
}

struct VerifyArgs {
  std::string profile = "full";
  std::vector<std::string> ids;
  std::optional<std::string> json;
  int threads = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  for (const auto& id : a.ids) {
    if (!verify::is_registered(id)) throw UsageError("unknown check id '" + id + "'");
  }
  verify::CheckConfig cfg;
  cfg.profile = a.profile == "fast" ? verify::Profile::Fast : verify::Profile::Full;
  int threads = a.threads;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto reports = verify::run_selected(a.ids, cfg, threads);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (a.json && *a.json == "-") {
    out << verify::to_json(reports) << '\n';
  } else {
    for (const auto& r : reports) {
      out << (r.passed ? "PASS " : "FAIL ") << r.id << " max_violation=" << r.max_violation
          << " tolerance=" << r.tolerance << " [" << r.witness << "]\n";
    }
    if (a.json) {
      std::ofstream f(*a.json);
      if (!f) {
        err << "error: cannot write " << *a.json << '\n';
        return kCheckFailed;
      }
      f << verify::to_json(reports) << '\n';
    }
  }
  return ok ? kOk : kCheckFailed;
}

struct MeasureArgs {
  std::string file;
  bool check = false;
  bool error = false;
  std::string kind = "best";
  std::string parity = "truncated";
  std::optional<std::string> x;
  std::optional<std::string> range;
};

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
  const Kind kind = parse_kind(a.kind);
  const Parity parity = parse_parity(a.parity);
  const auto xs = points_from(a.x, a.range);
  if (a.error && (a.x || a.range)) throw UsageError("--error cannot be combined with --x/--range");
  const MeasureRep m = load_measure(a.file);
  int code = kOk;
  if (a.check) {
    const auto needed = required_condition(kind, parity);
    for (Condition c : {Condition::Nu1, Condition::Nu2}) {
      const auto r = check_admissible(m, c);
      const char* status = r.status == AdmissibilityStatus::Admissible     ? "admissible"
                           : r.status == AdmissibilityStatus::Inadmissible ? "inadmissible"
                                                                           : "indeterminate";
      out << "# " << (c == Condition::Nu1 ? "nu1" : "nu2") << ' ' << status
          << " value=" << csv::format_number(r.value) << '\n';
      if (c == needed && !r.admissible) code = kCheckFailed;
    }
  }
  if (a.error) {
    csv::Table t;
    t.meta = {" bandlimit measure error kind=" + std::string(to_string(kind)) +
              " parity=" + std::string(to_string(parity))};
    t.header = {"error"};
    t.rows.push_back({integrated_error(kind, m, parity)});
    csv::write(out, t);
  } else if (a.x || a.range) {
    write_rows(out, "csv", "measure", measure_pair(kind, parity, a.file), xs);
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal bandlimited approximation of Gaussian-type functions"};
  app.name("bandlimit");
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate an extremal function at points");
  eval->add_option("--kind", ev.kind, "best | minorant | majorant")->check(kKinds);
  eval->add_option("--parity", ev.parity, "truncated | odd")->check(kParities);
  eval->add_option("--lam", ev.lam, "Target Gaussian parameter");
  eval->add_option("--delta", ev.delta, "Type scaling; the approximant has type pi*delta");
  eval->add_option("--x", ev.x, "Comma-separated points");
  eval->add_option("--range", ev.range, "a:b:n equispaced points");
  eval->add_option("--measure", ev.measure, "Measure file; evaluates the integrated functions");
  eval->add_option("--format", ev.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  ErrorTableArgs et;
  auto* table = app.add_subcommand("error-table", "Tabulate optimal L1 errors");
  table->add_option("--lam", et.lams, "Comma-separated lambda values");
  table->add_option("--kinds", et.kinds, "Comma-separated subset of best,minorant,majorant");
  table->add_option("--parity", et.parity, "truncated | odd")->check(kParities);
  table->add_option("--format", et.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot-data", "Write a two-column curve as CSV");
  plot->add_option("--curve", pl.curve, "g | approximant | residual | sign-product | H-profile")
      ->required()
      ->check(CLI::IsMember({"g", "approximant", "residual", "sign-product", "H-profile"}));
  plot->add_option("--kind", pl.kind)->check(kKinds);
  plot->add_option("--parity", pl.parity)->check(kParities);
  plot->add_option("--lam", pl.lam);
  plot->add_option("--delta", pl.delta);
  plot->add_option("--from", pl.from, "Start of x range (lambda range for H-profile)");
  plot->add_option("--to", pl.to, "End of x range (lambda range for H-profile)");
  plot->add_option("--points", pl.points, "Number of rows");
  plot->add_option("--measure", pl.measure, "Measure file");

  VerifyArgs vf;
  auto* ver = app.add_subcommand("verify", "Run the numerical certification suite");
  ver->add_option("--profile", vf.profile, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--id", vf.ids, "Check id (repeatable)");
  ver->add_option("--json", vf.json, "Write the JSON report to FILE, or '-' for stdout");
  ver->add_option("--threads", vf.threads, "Concurrent checks (0 = hardware)");

  MeasureArgs ms;
  auto* meas = app.add_subcommand("measure", "Load a measure file and evaluate against it");
  meas->add_option("--file", ms.file, "Measure JSON file")->required();
  meas->add_flag("--check", ms.check, "Report the admissibility conditions");
  meas->add_flag("--error", ms.error, "Print the integrated optimal error");
  meas->add_option("--kind", ms.kind)->check(kKinds);
  meas->add_option("--parity", ms.parity)->check(kParities);
  meas->add_option("--x", ms.x, "Comma-separated points");
  meas->add_option("--range", ms.range, "a:b:n equispaced points");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(ev, out);
    if (table->parsed()) return cmd_error_table(et, out, err);
    if (plot->parsed()) return cmd_plot_data(pl, out);
    if (ver->parsed()) return cmd_verify(vf, out, err);
    if (meas->parsed()) return cmd_measure(ms, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace bandlimit::cli
