#pragma once

#include <string>
#include <vector>

namespace fairmetric {

/*
 * Bounded polyhedral feasible set {x >= 0 : A x <= b}.  Construction probes
 * the region with a per-coordinate linear program, so an empty or unbounded
 * description is rejected before any solver touches it.
 */
struct FeasibleRegion {
  std::vector<std::vector<double>> A;  // m rows of length n
  std::vector<double> b;               // m right-hand sides
  std::vector<std::string> names;     // optional per-coordinate labels

  std::size_t dimension() const { return A.empty() ? 0 : A.front().size(); }
  std::size_t rows() const { return A.size(); }

  bool contains(const std::vector<double>& x, double tol) const;
};

// Validates shapes, feasibility, and boundedness.
FeasibleRegion make_region(std::vector<std::vector<double>> A,
                           std::vector<double> b,
                           std::vector<std::string> names = {});

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status;
  double value;
  std::vector<double> x;
};

// maximize c.x subject to A x <= b, x >= 0.  Dense two-phase simplex with
// Bland's rule; sized for the handful of variables the tradeoff regions use.
LpResult lp_maximize(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b);

// Componentwise upper corner of the region (the lower corner is 0).
struct BoundingBox {
  std::vector<double> hi;
  double diameter;
};

BoundingBox bounding_box(const FeasibleRegion& region);

// Euclidean projection onto {x : x >= floor, A x <= b} via Dykstra's
// alternating projections over the individual halfspaces.
std::vector<double> project_to_region(const FeasibleRegion& region,
                                      std::vector<double> x, double floor);

}  // namespace fairmetric
