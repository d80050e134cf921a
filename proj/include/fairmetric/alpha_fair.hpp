#pragma once

#include <vector>

#include "fairmetric/allocation.hpp"

namespace fairmetric {

/*
 * Isoelastic utility, its fairness/efficiency factorization, the scalarized
 * tradeoff objective, and the reward ratio between the fair direction and
 * the efficient direction.
 */

// Sum of x_i^(1-alpha)/(1-alpha), with the natural-log form at alpha = 1.
// A zero entry with alpha >= 1 yields -infinity.
double alpha_utility(const Allocation& x, double alpha);

// U_{alpha=beta}(x) split into |f_beta(x)|^beta times U_beta(sum x_i).
struct Factorization {
  double fairness_component;    // |f_beta(x)|^beta
  double efficiency_component;  // U_beta(total)
};

Factorization factorize(const Allocation& x, double beta);

// Phi_lambda(x) = lambda * l(f_beta(x)) + l(sum x_i) with l(y) = sign(y)log|y|.
// Returns -infinity when the measure itself is -infinity (zero entry, beta > 1).
double tradeoff_objective(const Allocation& x, double beta, double lambda);

// Largest lambda for which Phi_lambda still ranks Pareto-dominating
// allocations higher: |beta/(1-beta)|.  At beta = 1 there is no finite
// threshold and +infinity is returned.
double pareto_lambda_max(double beta);

// A dominating pair that Phi_lambda mis-ranks once lambda exceeds the
// threshold: x = [1,...,1,n] and x' equal to x except the last entry grows
// by delta times the total.
struct CounterexamplePair {
  Allocation x;
  Allocation x_prime;
  double delta;
};

CounterexamplePair pareto_counterexample(double beta, double lambda, int n);

// Directional derivatives of the utility along the fair direction eta
// (pointing from x toward the equal split) and along 1_n.
struct GradientReport {
  std::vector<double> gradient;  // x_i^(-alpha)
  std::vector<double> eta;       // (1/n) - x_i / total, sums to zero
  double ratio;                  // <grad, eta/|eta|> / <grad, 1/sqrt(n)>
};

GradientReport reward_ratio(const Allocation& x, double alpha);

}  // namespace fairmetric
