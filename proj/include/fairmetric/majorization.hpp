#pragma once

#include <cstdint>
#include <vector>

#include "fairmetric/allocation.hpp"
#include "fairmetric/parallel.hpp"
#include "fairmetric/report.hpp"

namespace fairmetric {

/*
 * Majorization partial order and the Robin Hood transfer that generates it.
 *
 * Convention: majorizes(y, x) == yes means y is the less spread-out vector,
 * i.e. every ascending prefix sum of x stays at or below the matching prefix
 * sum of y and the totals agree.  Equal allocations sit at the top of the
 * order, maximally concentrated ones at the bottom.
 */

// Ascending rearrangement of an allocation together with cumulative sums.
struct SortedAllocation {
  std::vector<double> ascending;
  std::vector<double> prefix_sums;

  explicit SortedAllocation(const Allocation& x);
};

enum class MajorizationOrder { yes, no, incomparable_sums };

// Tri-state comparison.  `tol` is an absolute slack on every prefix-sum
// comparison; totals differing by more than tol make the pair incomparable.
MajorizationOrder majorizes(const Allocation& y, const Allocation& x,
                            double tol);

// Convenience overload with tol = 1e-9 * max(total).  Prefix sums arrive
// from arithmetic rather than exact input, so a scale-relative slack is the
// right default for a closed condition.
MajorizationOrder majorizes(const Allocation& y, const Allocation& x);

// Transfer eps from the richer entry i to the poorer entry j.  Requires
// x[i] > x[j] and 0 < eps < x[i] - x[j], so the donor stays ahead of the
// recipient's old position and the result majorizes the input.
Allocation robin_hood(const Allocation& x, std::size_t i, std::size_t j,
                      double eps);

/*
 * Property suite: random Robin Hood transfers never decrease the measure,
 * an equal flat tax never increases it, appended zero users leave it
 * unchanged below beta = 1, majorization chains compose transitively, and
 * the equal allocation uniquely maximizes the measure at fixed total.
 */
SuiteReport schur_concavity_suite(const std::vector<double>& beta_grid,
                                  long trials, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

}  // namespace fairmetric
