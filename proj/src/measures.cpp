#include "fairmetric/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Threshold on |exponent| * log(share spread) beyond which the power sum is
// evaluated with log-sum-exp instead of pow().
constexpr double kLogSpaceTrigger = 600.0;

struct MeanPower {
  double log_mean;   // log of (1/n) * sum_i u_i^e over all n entries
  bool infinite;     // some term diverged (zero entry with e < 0)
};

// log of the mean of u_i^e with u_i = x_i / mean(x).  Zero entries
// contribute zero terms for e > 0 and blow the sum up for e < 0.
MeanPower log_mean_power(const Allocation& x, double e, EvalMode mode) {
  const std::size_t n = x.size();
  const double m = x.total() / static_cast<double>(n);

  if (e < 0.0 && !x.strictly_positive()) return {0.0, true};
  if (e == 0.0) {
    // Every positive share contributes 1.
    const double frac = static_cast<double>(x.positive_count()) / static_cast<double>(n);
    return {std::log(frac), false};
  }

  bool use_log = false;
  if (mode == EvalMode::log_space) {
    use_log = true;
  } else if (mode == EvalMode::automatic) {
    const double spread = x.max_value() / x.min_positive();
    use_log = std::abs(e) * std::log(spread) > kLogSpaceTrigger;
  }

  // Terms accumulate in ascending value order; permutations of x then sum
  // to bit-identical results.
  std::vector<double> vals(x.values());
  std::sort(vals.begin(), vals.end());

  if (!use_log) {
    long double s = 0.0L;
    for (double v : vals) {
      if (v > 0.0) s += std::pow(v / m, e);
    }
    return {static_cast<double>(std::log(s / static_cast<long double>(n))), false};
  }

  // log-sum-exp over t_i = e * log(u_i), positive entries only.
  double t_max = -kInf;
  for (double v : vals) {
    if (v > 0.0) t_max = std::max(t_max, e * std::log(v / m));
  }
  long double s = 0.0L;
  for (double v : vals) {
    if (v > 0.0) s += std::exp(e * std::log(v / m) - t_max);
  }
  return {t_max + static_cast<double>(std::log(s)) - std::log(static_cast<double>(n)),
          false};
}

// Core evaluation: sign(1-beta*r) * n^r * [mean u^(1-beta*r)]^(1/beta).
FairnessValue evaluate_family(const Allocation& x, double beta, double r,
                              EvalMode mode) {
  const double br = beta * r;
  const double e = 1.0 - br;
  const int sign = br < 1.0 ? +1 : -1;
  const std::size_t n = x.size();

  FairnessValue out;
  out.sign_convention = sign;

  const MeanPower mp = log_mean_power(x, e, mode);
  if (mp.infinite) {
    // A starved user with exponent e < 0: the sum diverges.  For beta > 0
    // this is the -infinity rule; for beta < 0 the outer power collapses
    // the divergence to zero.
    out.value = beta > 0.0 ? -kInf : 0.0;
    return out;
  }

  // n^r * exp(log_mean / beta), with the pow kept exact on the clean cases
  // (equal allocations give log_mean == 0 and the result is exactly
  // sign * n^r).
  const double mean_part = std::exp(mp.log_mean / beta);
  const double growth = r == 1.0 ? static_cast<double>(n)
                                 : std::pow(static_cast<double>(n), r);
  out.value = sign * growth * mean_part;
  return out;
}

}  // namespace

FairnessValue fairness_unified(const Allocation& x, double beta, EvalMode mode) {
  if (beta == 0.0) {
    throw use_limit_error(beta,
                          "fairness_unified: beta = 0 is singular; use "
                          "fairness_entropy_limit");
  }
  if (beta == 1.0) {
    throw use_limit_error(beta,
                          "fairness_unified: beta = 1 is singular (one-sided "
                          "limits +/-n); no finite value exists");
  }
  return evaluate_family(x, beta, 1.0, mode);
}

FairnessValue fairness_general(const Allocation& x, double beta, double r,
                               EvalMode mode) {
  const double br = beta * r;
  if (br == 0.0) {
    throw use_limit_error(beta,
                          "fairness_general: beta*r = 0 is singular; use "
                          "fairness_entropy_limit");
  }
  if (br == 1.0) {
    throw use_limit_error(beta,
                          "fairness_general: beta*r = 1 is singular; no "
                          "finite value exists");
  }
  return evaluate_family(x, beta, r, mode);
}

FairnessValue fairness_entropy_limit(const Allocation& x) {
  const double w = x.total();
  std::vector<double> vals(x.values());
  std::sort(vals.begin(), vals.end());
  long double acc = 0.0L;  // sum of x_i * log(x_i), zeros contribute nothing
  for (double v : vals) {
    if (v > 0.0) acc += static_cast<long double>(v) * std::log(v);
  }
  const double entropy = std::log(w) - static_cast<double>(acc) / w;
  FairnessValue out;
  out.value = std::exp(entropy);
  out.sign_convention = +1;
  out.singular_case = SingularCase::beta_zero_limit;
  return out;
}

FairnessValue fairness_ratio_limits(const Allocation& x, LimitDirection dir) {
  const double w = x.total();
  FairnessValue out;
  if (dir == LimitDirection::minus_inf) {
    out.value = w / x.max_value();
    out.sign_convention = +1;
    out.singular_case = SingularCase::minus_inf_limit;
    return out;
  }
  out.sign_convention = -1;
  out.singular_case = SingularCase::plus_inf_limit;
  out.value = x.strictly_positive() ? -(w / x.min_value()) : -kInf;
  return out;
}

double jain_generalized(const Allocation& x, double beta) {
  if (beta >= 1.0) {
    throw std::domain_error(
        "jain_generalized: requires beta < 1 (beta >= 1 is outside the "
        "generalized-Jain range)");
  }
  const double n = static_cast<double>(x.size());
  if (beta == 0.0) return fairness_entropy_limit(x).value / n;
  return fairness_unified(x, beta).value / n;
}

double fairness_homogeneous(const Allocation& x, double beta, double lambda_inv) {
  const double f = fairness_unified(x, beta).value;
  if (lambda_inv == 0.0) return f;
  return f * std::pow(x.total(), lambda_inv);
}

std::vector<double> fairness_gradient(const Allocation& x, double beta) {
  x.require_strictly_positive("fairness_gradient");
  if (beta == 0.0 || beta == 1.0) {
    throw use_limit_error(beta, "fairness_gradient: beta in {0,1} is singular");
  }
  const std::size_t n = x.size();
  const double m = x.total() / static_cast<double>(n);
  const double e = 1.0 - beta;

  long double acc = 0.0L;
  for (double v : x.values()) acc += std::pow(v / m, e);
  const double mean = static_cast<double>(acc / static_cast<long double>(n));

  // d f / d x_j = (|1-beta|/beta) * mean^(1/beta - 1) * (u_j^-beta - mean) / m
  const double front =
      (std::abs(e) / beta) * std::pow(mean, 1.0 / beta - 1.0) / m;
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = front * (std::pow(x[j] / m, -beta) - mean);
  }
  return g;
}

bool pareto_preserving_phi(double beta, double lambda) {
  if (beta <= 0.0 || beta == 1.0) {
    throw std::domain_error("pareto_preserving_phi: requires beta > 0, beta != 1");
  }
  if (lambda < 0.0) {
    throw std::domain_error("pareto_preserving_phi: requires lambda >= 0");
  }
  return lambda <= std::abs(beta / (1.0 - beta)) + 1e-12;
}

bool pareto_preserving_degree(double beta, double degree) {
  if (beta <= 0.0 || beta == 1.0) {
    throw std::domain_error(
        "pareto_preserving_degree: requires beta > 0, beta != 1");
  }
  // The degree must point the same way as sign(1-beta) for the scaled
  // measure to reward throughput at all; given that, preservation needs at
  // least the minimum degree |(1-beta)/beta|.
  if (degree != 0.0 && (degree > 0.0) != (beta < 1.0)) return false;
  return std::abs(degree) + 1e-12 >= std::abs((1.0 - beta) / beta);
}

}  // namespace fairmetric
