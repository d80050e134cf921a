#include "fairmetric/alpha_fair.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairmetric/measures.hpp"

namespace fairmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double signed_log(double y) {
  if (y == 0.0) {
    throw std::domain_error("tradeoff_objective: sign(y)log|y| undefined at 0");
  }
  return y > 0.0 ? std::log(y) : -std::log(-y);
}

}  // namespace

double alpha_utility(const Allocation& x, double alpha) {
  if (alpha < 0.0) {
    throw std::invalid_argument("alpha_utility: alpha must be >= 0");
  }
  if (alpha >= 1.0 && !x.strictly_positive()) return -kInf;
  long double acc = 0.0L;
  if (alpha == 1.0) {
    for (double v : x.values()) acc += std::log(v);
  } else {
    for (double v : x.values()) acc += std::pow(v, 1.0 - alpha);
    acc /= 1.0 - alpha;
  }
  return static_cast<double>(acc);
}

Factorization factorize(const Allocation& x, double beta) {
  if (!(beta > 0.0) || beta == 1.0) {
    throw std::invalid_argument("factorize: beta must be positive and != 1");
  }
  if (beta > 1.0) x.require_strictly_positive("factorize");
  const double f = fairness_unified(x, beta).value;
  const double w = x.total();
  Factorization out;
  out.fairness_component = std::pow(std::abs(f), beta);
  out.efficiency_component = std::pow(w, 1.0 - beta) / (1.0 - beta);
  return out;
}

double tradeoff_objective(const Allocation& x, double beta, double lambda) {
  if (!(beta > 0.0) || beta == 1.0) {
    throw std::invalid_argument("tradeoff_objective: beta must be positive and != 1");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("tradeoff_objective: lambda must be >= 0");
  }
  const double f = fairness_unified(x, beta).value;
  if (std::isinf(f)) return -kInf;
  return lambda * signed_log(f) + std::log(x.total());
}

double pareto_lambda_max(double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("pareto_lambda_max: beta must be positive");
  }
  if (beta == 1.0) return kInf;  // preserved for every finite weight
  return std::abs(beta / (1.0 - beta));
}

CounterexamplePair pareto_counterexample(double beta, double lambda, int n) {
  if (!(beta > 1.0)) {
    throw std::invalid_argument("pareto_counterexample: beta must exceed 1");
  }
  if (n < 2) {
    throw std::invalid_argument("pareto_counterexample: n must be >= 2");
  }
  if (!(lambda > pareto_lambda_max(beta))) {
    throw std::invalid_argument(
        "pareto_counterexample: lambda must exceed the preservation threshold");
  }
  const double nn = static_cast<double>(n);
  const double delta =
      0.5 * std::pow(1.0 + std::pow(nn, -beta),
                     lambda / (lambda * (beta - 1.0) - beta));
  std::vector<double> base(static_cast<std::size_t>(n) + 1, 1.0);
  base.back() = nn;
  std::vector<double> grown = base;
  grown.back() = nn + delta * 2.0 * nn;
  CounterexamplePair out{Allocation(std::move(base)), Allocation(std::move(grown)),
                         delta};
  return out;
}

GradientReport reward_ratio(const Allocation& x, double alpha) {
  x.require_strictly_positive("reward_ratio");
  if (alpha < 0.0) {
    throw std::invalid_argument("reward_ratio: alpha must be >= 0");
  }
  const std::size_t n = x.size();
  const double w = x.total();

  GradientReport out;
  out.gradient.resize(n);
  out.eta.resize(n);
  long double gsum = 0.0L;
  long double eta_sq = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    out.gradient[i] = std::pow(x[i], -alpha);
    out.eta[i] = 1.0 / static_cast<double>(n) - x[i] / w;
    gsum += out.gradient[i];
    eta_sq += static_cast<long double>(out.eta[i]) * out.eta[i];
  }
  const double eta_norm = std::sqrt(static_cast<double>(eta_sq));
  if (eta_norm == 0.0) {
    throw std::invalid_argument("reward_ratio: eta degenerate (equal allocation)");
  }

  // Centering the gradient against its mean uses sum(eta) = 0, so the
  // numerator vanishes identically at alpha = 0 instead of rounding near it.
  const double gmean = static_cast<double>(gsum) / static_cast<double>(n);
  long double num = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    num += (out.gradient[i] - gmean) * static_cast<long double>(out.eta[i]);
  }
  out.ratio = static_cast<double>(num) * std::sqrt(static_cast<double>(n)) /
              (eta_norm * static_cast<double>(gsum));
  return out;
}

}  // namespace fairmetric
