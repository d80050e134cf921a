#include "fairmetric/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairmetric/alpha_fair.hpp"
#include "fairmetric/measures.hpp"
#include "fairmetric/sampling.hpp"

namespace fairmetric {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double phi_at(const std::vector<double>& x, double beta, double lambda) {
  for (double v : x) {
    if (!(v >= 0.0)) return kNegInf;
  }
  double total = 0.0;
  for (double v : x) total += v;
  if (total <= 0.0) return kNegInf;
  return tradeoff_objective(Allocation(x), beta, lambda);
}

struct AscentResult {
  double phi = kNegInf;
  std::vector<double> x;
  bool feasible = false;
};

AscentResult ascend(const FeasibleRegion& region, double beta, double lambda,
                    std::vector<double> x0, double floor, double step_scale,
                    const SolveOptions& opts) {
  const std::size_t n = region.dimension();
  for (auto& v : x0) v = std::max(v, floor);
  std::vector<double> x = project_to_region(region, std::move(x0), floor);

  AscentResult out;
  if (!region.contains(x, 1e-6 * std::max(1.0, step_scale))) return out;
  out.feasible = true;

  double phi = phi_at(x, beta, lambda);
  for (long iter = 0; iter < opts.max_iters; ++iter) {
    const Allocation a(x);
    const double f = fairness_unified(a, beta).value;
    const std::vector<double> grad_f = fairness_gradient(a, beta);
    const double inv_total = 1.0 / a.total();
    std::vector<double> g(n);
    double gnorm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = lambda * grad_f[j] / std::abs(f) + inv_total;
      gnorm += g[j] * g[j];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm == 0.0) break;

    double accepted = kNegInf;
    std::vector<double> next;
    for (double t = 1.0; t > 1e-16; t *= 0.5) {
      std::vector<double> trial(n);
      for (std::size_t j = 0; j < n; ++j) {
        trial[j] = x[j] + t * step_scale * g[j] / gnorm;
      }
      trial = project_to_region(region, std::move(trial), floor);
      const double phi_trial = phi_at(trial, beta, lambda);
      if (phi_trial > phi) {
        accepted = phi_trial;
        next = std::move(trial);
        break;
      }
    }
    if (next.empty()) break;
    const double rel = (accepted - phi) / std::max(1.0, std::abs(phi));
    x = std::move(next);
    phi = accepted;
    if (rel < opts.tol) break;
  }
  out.phi = phi;
  out.x = std::move(x);
  return out;
}

std::vector<std::vector<double>> build_starts(const FeasibleRegion& region,
                                              const BoundingBox& box,
                                              const SolveOptions& opts) {
  const std::size_t n = region.dimension();
  std::vector<std::vector<double>> starts;

  // Vertices that max out one coordinate, then total throughput.
  for (std::size_t j = 0; j < n && starts.size() + 1 < static_cast<std::size_t>(opts.starts); ++j) {
    std::vector<double> c(n, 0.0);
    c[j] = 1.0;
    const LpResult r = lp_maximize(c, region.A, region.b);
    if (r.status == LpResult::Status::optimal) starts.push_back(r.x);
  }
  {
    const LpResult r = lp_maximize(std::vector<double>(n, 1.0), region.A, region.b);
    if (r.status == LpResult::Status::optimal) starts.push_back(r.x);
  }

  // Random-objective vertices and interior blends fill the remainder.
  Sampler rng(Sampler::mix(opts.seed, 0xb00));
  const std::size_t fixed = starts.size();
  while (starts.size() < static_cast<std::size_t>(opts.starts)) {
    if ((starts.size() - fixed) % 2 == 0) {
      std::vector<double> c(n);
      for (auto& v : c) v = rng.uniform(0.1, 1.1);
      const LpResult r = lp_maximize(c, region.A, region.b);
      if (r.status == LpResult::Status::optimal) {
        starts.push_back(r.x);
        continue;
      }
    }
    std::vector<double> blend(n, 0.0);
    const double pull = rng.uniform(0.2, 0.9);
    const std::vector<double>& anchor = starts[rng.index(fixed == 0 ? 1 : fixed)];
    for (std::size_t j = 0; j < n; ++j) {
      blend[j] = pull * anchor[j] + (1.0 - pull) * rng.uniform(0.0, box.hi[j]);
    }
    starts.push_back(std::move(blend));
  }
  return starts;
}

}  // namespace

TradeoffPoint maximize_phi(const FeasibleRegion& region, double beta,
                           double lambda, const SolveOptions& opts) {
  if (!(beta > 0.0) || beta == 1.0) {
    throw std::invalid_argument("maximize_phi: beta must be positive and != 1");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("maximize_phi: lambda must be >= 0");
  }
  if (opts.starts < 1) {
    throw std::invalid_argument("maximize_phi: need at least one start");
  }
  const BoundingBox box = bounding_box(region);
  if (box.diameter == 0.0) {
    throw std::invalid_argument("maximize_phi: region contains only the origin");
  }
  const double floor = 1e-9 * box.diameter;

  const auto starts = build_starts(region, box, opts);
  std::vector<AscentResult> results(starts.size());
  parallel_for(starts.size(), opts.exec, [&](std::size_t k) {
    results[k] = ascend(region, beta, lambda, starts[k], floor, box.diameter, opts);
  });

  std::size_t best = starts.size();
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (!results[k].feasible) continue;
    if (best == starts.size() || results[k].phi > results[best].phi) best = k;
  }
  if (best == starts.size()) {
    throw std::runtime_error("maximize_phi: no start reached the feasible set");
  }

  std::vector<double> xbest = results[best].x;
  double phibest = results[best].phi;
  if (pareto_preserving_phi(beta, lambda)) {
    // Inside the preserving range a dominating allocation cannot lower the
    // objective, so walking to the dominance-LP optimum moves the iterate
    // from "near the efficient face" to a point of it.
    const auto dom = dominance_search(region, xbest, 1e-12);
    if (dom) {
      const double phi_dom = phi_at(*dom, beta, lambda);
      if (phi_dom >= phibest) {
        xbest = *dom;
        phibest = phi_dom;
      }
    }
  }

  TradeoffPoint point;
  point.lambda = lambda;
  point.allocation = std::move(xbest);
  point.phi = phibest;
  const Allocation a(point.allocation);
  point.fairness = fairness_unified(a, beta).value;
  point.throughput = a.total();
  point.pareto_flag = pareto_preserving_phi(beta, lambda) ? ParetoFlag::preserved
                                                          : ParetoFlag::at_risk;
  return point;
}

std::vector<TradeoffPoint> tradeoff_curve(const FeasibleRegion& region,
                                          double beta,
                                          const std::vector<double>& lambda_grid,
                                          const SolveOptions& opts) {
  std::vector<TradeoffPoint> curve;
  curve.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    curve.push_back(maximize_phi(region, beta, lambda, opts));
  }
  return curve;
}

std::optional<std::vector<double>> dominance_search(const FeasibleRegion& region,
                                                    const std::vector<double>& x,
                                                    double tol) {
  const std::size_t n = region.dimension();
  if (x.size() != n) {
    throw std::invalid_argument("dominance_search: dimension mismatch");
  }
  double scale = 1.0;
  for (double hi : bounding_box(region).hi) scale = std::max(scale, hi);
  if (!region.contains(x, 1e-6 * scale)) {
    throw std::invalid_argument("dominance_search: x is not feasible");
  }

  // Slack variables z = y - x >= 0 shift the region onto the origin.
  std::vector<double> shifted = region.b;
  for (std::size_t i = 0; i < region.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += region.A[i][j] * x[j];
    shifted[i] = std::max(0.0, shifted[i] - row);
  }
  const LpResult r = lp_maximize(std::vector<double>(n, 1.0), region.A, shifted);
  if (r.status != LpResult::Status::optimal || r.value <= tol) {
    return std::nullopt;
  }
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + r.x[j];
  return y;
}

GridBest grid_reference_phi(const FeasibleRegion& region, double beta,
                            double lambda, double pitch, Exec exec) {
  const std::size_t n = region.dimension();
  if (n < 1 || n > 3) {
    throw std::invalid_argument("grid_reference_phi: supports 1 to 3 dimensions");
  }
  if (!(pitch > 0.0)) {
    throw std::invalid_argument("grid_reference_phi: pitch must be positive");
  }
  const BoundingBox box = bounding_box(region);
  std::vector<std::size_t> steps(n);
  for (std::size_t j = 0; j < n; ++j) {
    steps[j] = static_cast<std::size_t>(std::floor(box.hi[j] / pitch)) + 1;
  }
  const double feas_tol = 1e-9 * std::max(1.0, box.diameter);

  // Outer coordinate parallelizes; inner sweeps stay serial per slot so the
  // argmax is reproducible regardless of thread count.
  std::vector<GridBest> slots(steps[0], GridBest{kNegInf, {}});
  parallel_for(steps[0], exec, [&](std::size_t i0) {
    std::vector<double> x(n, 0.0);
    x[0] = static_cast<double>(i0) * pitch;
    GridBest local{kNegInf, {}};
    const std::size_t inner1 = n >= 2 ? steps[1] : 1;
    for (std::size_t i1 = 0; i1 < inner1; ++i1) {
      if (n >= 2) x[1] = static_cast<double>(i1) * pitch;
      const std::size_t inner2 = n >= 3 ? steps[2] : 1;
      for (std::size_t i2 = 0; i2 < inner2; ++i2) {
        if (n >= 3) x[2] = static_cast<double>(i2) * pitch;
        if (!region.contains(x, feas_tol)) continue;
        const double phi = phi_at(x, beta, lambda);
        if (phi > local.phi) local = GridBest{phi, x};
      }
    }
    slots[i0] = std::move(local);
  });

  GridBest best{kNegInf, {}};
  for (const auto& s : slots) {
    if (s.phi > best.phi) best = s;
  }
  if (best.x.empty()) {
    throw std::runtime_error("grid_reference_phi: no feasible grid point");
  }
  return best;
}

}  // namespace fairmetric
