#include "fairmetric/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairmetric/measures.hpp"

namespace fairmetric {

StarvationBounds starvation_bounds(const Allocation& x, double beta) {
  if (!(beta < 1.0)) {
    throw std::invalid_argument(
        "starvation_bounds: requires beta < 1; above 1 any zero entry "
        "already forces the measure to -infinity");
  }
  const double f = beta == 0.0 ? fairness_entropy_limit(x).value
                               : fairness_unified(x, beta).value;
  StarvationBounds out;
  out.max_zero_users = static_cast<double>(x.size()) - f;
  out.min_max_resource = x.total() / f;
  return out;
}

double threshold_resource(const Allocation& x, double beta) {
  x.require_strictly_positive("threshold_resource");
  if (beta == 0.0 || beta == 1.0) {
    throw std::invalid_argument("threshold_resource: beta must avoid 0 and 1");
  }
  long double tilted = 0.0L;
  for (double v : x.values()) tilted += std::pow(v, 1.0 - beta);
  return std::pow(x.total() / static_cast<double>(tilted), 1.0 / beta);
}

BoxConstraint::BoxConstraint(double lo, double hi) : x_min(lo), x_max(hi) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("box constraint: need 0 < x_min <= x_max");
  }
}

namespace {

// Fairness of a corner profile where a fraction mu of users sits at
// gamma * x_min and the rest at x_min (scale drops out).
double mixture_value(double mu, double gamma, double beta, double n) {
  const double g1b = std::pow(gamma, 1.0 - beta);
  const double num = mu * g1b + (1.0 - mu);
  const double den = std::pow(mu * gamma + (1.0 - mu), 1.0 - beta);
  const double sign = beta < 1.0 ? 1.0 : -1.0;
  return sign * n * std::pow(num / den, 1.0 / beta);
}

}  // namespace

BoxBound box_lower_bound(const BoxConstraint& box, double beta, int n) {
  if (beta == 0.0 || beta == 1.0) {
    throw std::invalid_argument("box_lower_bound: beta must avoid 0 and 1");
  }
  if (n < 1) throw std::invalid_argument("box_lower_bound: n must be >= 1");

  const double nn = static_cast<double>(n);
  const double sign = beta < 1.0 ? 1.0 : -1.0;
  BoxBound out;
  const double gamma = box.gamma();
  if (gamma == 1.0) {
    out.bound = sign * nn;
    out.per_user = sign;
    out.mu_star = 0.0;
    out.mu_degenerate = true;
    return out;
  }

  const double g1b = std::pow(gamma, 1.0 - beta);
  out.mu_star = (gamma - g1b - beta * (gamma - 1.0)) /
                (beta * (gamma - 1.0) * (g1b - 1.0));
  out.mu_degenerate = !(out.mu_star > 0.0 && out.mu_star < 1.0);

  // The stationary point is the continuous minimizer; the corner fractions
  // k/n and a coarse scan guard the degenerate cases.
  double best = std::min(mixture_value(0.0, gamma, beta, nn),
                         mixture_value(1.0, gamma, beta, nn));
  const double clamped = std::min(1.0, std::max(0.0, out.mu_star));
  if (std::isfinite(clamped)) {
    best = std::min(best, mixture_value(clamped, gamma, beta, nn));
  }
  for (int k = 1; k < n; ++k) {
    best = std::min(best, mixture_value(k / nn, gamma, beta, nn));
  }
  for (int k = 1; k < 256; ++k) {
    best = std::min(best, mixture_value(k / 256.0, gamma, beta, nn));
  }
  out.bound = best;
  out.per_user = best / nn;
  return out;
}

double box_boundary_minimum(const BoxConstraint& box, double beta, int n,
                            Exec exec) {
  if (beta == 0.0 || beta == 1.0) {
    throw std::invalid_argument("box_boundary_minimum: beta must avoid 0 and 1");
  }
  if (n < 1 || n > 30) {
    throw std::invalid_argument("box_boundary_minimum: n must be in [1, 30]");
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> values(count);
  parallel_for(count, exec, [&](std::size_t mask) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] =
          (mask >> i) & 1u ? box.x_max : box.x_min;
    }
    values[mask] = fairness_unified(Allocation(std::move(v)), beta).value;
  });
  double best = values[0];
  for (double v : values) best = std::min(best, v);
  return best;
}

SweepReport beta_monotonicity_sweep(const Allocation& x,
                                    const std::vector<double>& grid,
                                    bool insert_entropy) {
  SweepReport report;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double beta = grid[i];
    if (beta == 0.0 || beta == 1.0) {
      throw std::invalid_argument(
          "beta_monotonicity_sweep: grid must exclude 0 and 1");
    }
    if (i > 0 && !(beta > grid[i - 1])) {
      throw std::invalid_argument("beta_monotonicity_sweep: grid must be sorted");
    }
  }

  bool entropy_pending = insert_entropy;
  for (double beta : grid) {
    if (entropy_pending && beta > 0.0) {
      report.points.push_back({0.0, fairness_entropy_limit(x).value, true});
      entropy_pending = false;
    }
    report.points.push_back({beta, fairness_unified(x, beta).value, false});
  }
  if (entropy_pending) {
    report.points.push_back({0.0, fairness_entropy_limit(x).value, true});
  }

  // Nondecreasing up to beta = 1, nonincreasing beyond it.
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    const SweepPoint& a = report.points[i - 1];
    const SweepPoint& b = report.points[i];
    if (b.beta < 1.0) {
      const double slack = 1e-12 * std::max(1.0, std::abs(a.value));
      if (b.value < a.value - slack) {
        ++report.violations;
        report.worst_violation =
            std::max(report.worst_violation, a.value - b.value);
      }
    } else if (a.beta > 1.0) {
      if (std::isinf(a.value) && std::isinf(b.value)) continue;
      const double slack = 1e-12 * std::max(1.0, std::abs(a.value));
      if (b.value > a.value + slack) {
        ++report.violations;
        report.worst_violation =
            std::max(report.worst_violation, b.value - a.value);
      }
    }
  }
  return report;
}

}  // namespace fairmetric
