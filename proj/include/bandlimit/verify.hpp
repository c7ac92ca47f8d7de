#pragma once

// Numerical certification suite. Each registered check samples one family of
// identities or inequalities and reports its worst point.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bandlimit::verify {

enum class Profile { Fast, Full };

struct CheckReport {
  std::string id;
  std::string anchor;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::string grid;
  bool passed = false;
  std::string witness;  // worst sample point
};

struct CheckConfig {
  Profile profile = Profile::Full;
  // Replaces the primary tolerance of the check.
  std::optional<double> tolerance;
  // Replaces the lambda set of checks that sweep lambda.
  std::vector<double> lambdas;
  // Replaces the point count of x-grid checks.
  std::optional<int> grid_points;
  // Stand-in for K+(lam, x); used for negative controls.
  std::function<double(double lam, double x)> best_truncated_override;
};

struct CheckInfo {
  std::string id;
  std::string anchor;
  double tolerance;
};

/// Registered checks in run order.
const std::vector<CheckInfo>& registry();
bool is_registered(const std::string& id);

/// Throws std::out_of_range for an unknown id.
CheckReport run_check(const std::string& id, const CheckConfig& config = {});

/// Runs the given ids (all when empty) with up to `threads` checks at once.
/// Output order follows the input order.
std::vector<CheckReport> run_selected(const std::vector<std::string>& ids,
                                      const CheckConfig& config, int threads = 1);
std::vector<CheckReport> run_all(Profile profile, int threads = 1);

std::string to_json(const std::vector<CheckReport>& reports);

}  // namespace bandlimit::verify
