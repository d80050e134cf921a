#pragma once

#include <vector>

#include "fairmetric/allocation.hpp"
#include "fairmetric/parallel.hpp"

namespace fairmetric {

/*
 * Structural consequences of the measure, packaged as diagnostics: how many
 * users can be starved at a given fairness level, the resource level where a
 * marginal grant stops helping fairness, worst-case fairness under box
 * constraints, and monotonicity of the measure in beta.
 */

// Upper bound on starved users and lower bound on the largest entry at the
// observed fairness level: (n - f(x), total / f(x)).  Only defined below
// beta = 1; above it a single zero entry already sends the measure to
// -infinity, so no finite starvation bound exists.
struct StarvationBounds {
  double max_zero_users;
  double min_max_resource;
};

StarvationBounds starvation_bounds(const Allocation& x, double beta);

// Resource level x_bar = (sum x_j / sum x_j^(1-beta))^(1/beta): granting a
// marginal unit to user i raises the measure exactly when x_i < x_bar.
double threshold_resource(const Allocation& x, double beta);

// Per-user bounds x_min <= x_i <= x_max.
struct BoxConstraint {
  double x_min;
  double x_max;

  BoxConstraint(double lo, double hi);
  double gamma() const { return x_max / x_min; }
};

/*
 * Worst-case fairness over the box.  The binding allocations put a fraction
 * mu of users at x_max and the rest at x_min; minimizing over mu in [0, 1]
 * gives a closed-form lower bound with stationary point mu_star.  When the
 * stationary point leaves (0, 1) the bound falls back to the evaluated
 * candidates and is flagged degenerate.
 */
struct BoxBound {
  double bound;          // lower bound on f for any x in the box
  double per_user;       // bound / n, the normalized variant
  double mu_star;        // stationary mixing fraction from the closed form
  bool mu_degenerate;    // mu_star fell outside (0, 1)
};

BoxBound box_lower_bound(const BoxConstraint& box, double beta, int n);

// Exact minimum of f over the 2^n corner allocations {x_min, x_max}^n.
// The enumeration fans out over assignment bitmasks.
double box_boundary_minimum(const BoxConstraint& box, double beta, int n,
                            Exec exec = Exec::parallel);

// Fairness as a function of beta for a fixed allocation: nondecreasing
// below 1 and nonincreasing above 1.
struct SweepPoint {
  double beta;
  double value;
  bool entropy_limit;  // true for the inserted beta = 0 row
};

struct SweepReport {
  std::vector<SweepPoint> points;
  long violations = 0;
  double worst_violation = 0.0;

  bool passed() const { return violations == 0; }
};

// `grid` must be sorted and avoid 0 and 1 exactly; pass insert_entropy to
// add the beta -> 0 limit in its ordered slot.
SweepReport beta_monotonicity_sweep(const Allocation& x,
                                    const std::vector<double>& grid,
                                    bool insert_entropy = true);

}  // namespace fairmetric
