#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fairmetric/allocation.hpp"

namespace fairmetric {

/*
 * The measure family evaluated here, for an allocation x with total w and
 * shares x_i/w:
 *
 *   f_beta(x)   = sign(1-beta) * [ sum_i (x_i/w)^(1-beta) ]^(1/beta)
 *   f_beta,r(x) = sign(1-beta*r) * [ sum_i (x_i/w)^(1-beta*r) ]^(1/beta)
 *
 * Conventions baked in:
 *   - 0^(1-beta) := 0 for beta < 1, so starved users simply drop out;
 *   - any zero entry with beta > 1 sends the value to -infinity;
 *   - beta = 0 and beta = 1 are singular points of the parameterization and
 *     are refused here; beta -> 0 is served by fairness_entropy_limit and
 *     beta -> +/-inf by fairness_ratio_limits;
 *   - f is scale invariant, symmetric, and equals sign(1-beta)*n^r on equal
 *     allocations.
 *
 * Internally the sum is computed over u_i = x_i / mean(x), i.e.
 * f = sign * n^r * [ (1/n) sum u_i^(1-beta*r) ]^(1/beta), which is the same
 * number but keeps equal integer allocations exact and the mean term near 1.
 */

enum class SingularCase { none, beta_one, beta_zero_limit, plus_inf_limit, minus_inf_limit };

enum class LimitDirection { plus_inf, minus_inf };

// Evaluation route for the power sum.  `automatic` switches to log-sum-exp
// once |1-beta*r| * log(max/min positive share) exceeds 600, which keeps
// beta sweeps out to +/-50 inside double range.
enum class EvalMode { automatic, direct, log_space };

struct FairnessValue {
  double value = 0.0;
  int sign_convention = +1;  // sign(1-beta), or sign(1-beta*r)
  SingularCase singular_case = SingularCase::none;
};

// Parameter bundle for the family.  rho is not free: recursion
// consistency pins rho = 1 - beta*r, and the factory enforces it.
struct FairnessParams {
  double beta = 0.0;
  double r = 1.0;
  double rho = 0.0;
  double lambda_inv = 0.0;  // homogeneity degree of the scaled measure F

  static FairnessParams make(double beta, double r = 1.0, double lambda_inv = 0.0) {
    FairnessParams p;
    p.beta = beta;
    p.r = r;
    p.rho = 1.0 - beta * r;
    p.lambda_inv = lambda_inv;
    return p;
  }

  bool singular() const { return beta == 0.0 || beta == 1.0; }
};

// Signals that beta sits on a singular point and a dedicated limit
// operation should be used instead.
class use_limit_error : public std::domain_error {
 public:
  use_limit_error(double beta, const std::string& message)
      : std::domain_error(message), beta_(beta) {}
  double beta() const { return beta_; }

 private:
  double beta_;
};

FairnessValue fairness_unified(const Allocation& x, double beta,
                               EvalMode mode = EvalMode::automatic);

FairnessValue fairness_general(const Allocation& x, double beta, double r,
                               EvalMode mode = EvalMode::automatic);

// exp(Shannon entropy of the share vector), natural log, 0*log(0) := 0.
// This is the beta -> 0 limit of fairness_unified.
FairnessValue fairness_entropy_limit(const Allocation& x);

// plus_inf:  -max_i { w / x_i }   (-infinity if some x_i = 0)
// minus_inf:  min_i { w / x_i }
FairnessValue fairness_ratio_limits(const Allocation& x, LimitDirection dir);

// f_beta(x)/n for beta <= 1 (beta = 0 uses the entropy limit).  Equals the
// classical Jain index at beta = -1; always inside [1/n, 1].
double jain_generalized(const Allocation& x, double beta);

// F(x) = f_beta(x) * w^lambda_inv, homogeneous of degree lambda_inv.
double fairness_homogeneous(const Allocation& x, double beta, double lambda_inv);

// Closed-form partial derivatives of f_beta at a strictly positive x.
std::vector<double> fairness_gradient(const Allocation& x, double beta);

// Pareto-preservation flags for the two scalarization views: the tradeoff
// weight lambda of Phi_lambda = lambda*l(f) + l(w), and the homogeneity
// degree of F = f * w^degree.  The two agree through degree = 1/lambda_eff
// (with sign(degree) = sign(1-beta)); both are exposed so that the
// agreement is a testable statement rather than a definition.
bool pareto_preserving_phi(double beta, double lambda);
bool pareto_preserving_degree(double beta, double degree);

}  // namespace fairmetric
