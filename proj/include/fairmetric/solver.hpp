#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairmetric/parallel.hpp"
#include "fairmetric/region.hpp"

namespace fairmetric {

/*
 * Maximizer for the weighted fairness-efficiency objective over a bounded
 * linear region.  The objective is not concave for every exponent, so the
 * solve runs projected gradient ascent from a spread of vertex and interior
 * starts and keeps the best; a dense grid reference covers low dimensions
 * in the tests.
 */

enum class ParetoFlag { preserved, at_risk };

struct TradeoffPoint {
  double lambda;
  std::vector<double> allocation;
  double fairness;    // f_beta at the solution
  double throughput;  // sum of the solution entries
  double phi;         // objective value attained
  ParetoFlag pareto_flag;
};

struct SolveOptions {
  int starts = 16;
  long max_iters = 10000;
  double tol = 1e-10;          // stop below this relative improvement
  std::uint64_t seed = 0x5eed;
  Exec exec = Exec::parallel;
};

TradeoffPoint maximize_phi(const FeasibleRegion& region, double beta,
                           double lambda, const SolveOptions& opts = {});

std::vector<TradeoffPoint> tradeoff_curve(const FeasibleRegion& region,
                                          double beta,
                                          const std::vector<double>& lambda_grid,
                                          const SolveOptions& opts = {});

// Feasible y >= x with strictly larger total, when one exists.  Solved as a
// linear program over the slack z = y - x >= 0.
std::optional<std::vector<double>> dominance_search(const FeasibleRegion& region,
                                                    const std::vector<double>& x,
                                                    double tol);

// Exhaustive reference maximizer on a regular grid; dimensions above 3 are
// rejected (cost grows geometrically).
struct GridBest {
  double phi;
  std::vector<double> x;
};

GridBest grid_reference_phi(const FeasibleRegion& region, double beta,
                            double lambda, double pitch,
                            Exec exec = Exec::parallel);

}  // namespace fairmetric
