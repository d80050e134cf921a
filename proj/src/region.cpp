#include "fairmetric/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairmetric {

bool FeasibleRegion::contains(const std::vector<double>& x, double tol) const {
  if (x.size() != dimension()) return false;
  for (double v : x) {
    if (v < -tol) return false;
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) row += A[i][j] * x[j];
    if (row > b[i] + tol * std::max(1.0, std::abs(b[i]))) return false;
  }
  return true;
}

namespace {

constexpr double kPivotTol = 1e-11;

/*
 * Tableau layout: columns are [structural(n) | slack(m) | artificial(k)],
 * one row per constraint plus an objective row kept as reduced costs.
 * Rows whose right-hand side starts negative are negated and given an
 * artificial basic variable; phase one drives the artificials to zero.
 */
class Simplex {
 public:
  Simplex(const std::vector<double>& c,
          const std::vector<std::vector<double>>& A,
          const std::vector<double>& b)
      : m_(A.size()), n_(c.size()) {
    std::size_t artificials = 0;
    for (double rhs : b) {
      if (rhs < 0.0) ++artificials;
    }
    cols_ = n_ + m_ + artificials;
    tab_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, 0);

    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double flip = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = flip * A[i][j];
      tab_[i][n_ + i] = flip;  // slack
      tab_[i][cols_] = flip * b[i];
      if (flip < 0.0) {
        tab_[i][art] = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
    have_artificials_ = artificials > 0;
    objective_ = c;
  }

  LpResult solve() {
    if (have_artificials_) {
      // Phase one: minimize the artificial sum, i.e. maximize its negative.
      std::vector<double> cost(cols_, 0.0);
      for (std::size_t j = n_ + m_; j < cols_; ++j) cost[j] = -1.0;
      const double phase1 = run(cost, cols_);
      if (!std::isfinite(phase1) || phase1 < -1e-8) {
        return {LpResult::Status::infeasible, 0.0, {}};
      }
      // Pivot lingering artificials out of the basis; a row where none of
      // the real columns can host the pivot is redundant and is zeroed.
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_ + m_) continue;
        std::size_t enter = cols_;
        for (std::size_t j = 0; j < n_ + m_; ++j) {
          if (std::abs(tab_[i][j]) > kPivotTol) {
            enter = j;
            break;
          }
        }
        if (enter < cols_) {
          pivot(i, enter);
        } else {
          std::fill(tab_[i].begin(), tab_[i].end(), 0.0);
        }
      }
    }
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = objective_[j];
    const double value = run(cost, n_ + m_);
    if (!std::isfinite(value)) {
      return {LpResult::Status::unbounded, value, {}};
    }
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = tab_[i][cols_];
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += objective_[j] * x[j];
    return {LpResult::Status::optimal, obj, std::move(x)};
  }

 private:
  // Maximizes cost over the current tableau; returns the objective value or
  // +inf when unbounded.  Bland's rule (lowest eligible index) terminates on
  // degenerate corners.  `enter_limit` keeps phase two from re-admitting
  // artificial columns.
  double run(const std::vector<double>& cost, std::size_t enter_limit) {
    for (long iter = 0; iter < 100000; ++iter) {
      std::vector<double> reduced = cost;
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < cols_; ++j) {
          reduced[j] -= cb * tab_[i][j];
        }
      }
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < enter_limit; ++j) {
        if (reduced[j] > 1e-9) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) {
        double value = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
          value += cost[basis_[i]] * tab_[i][cols_];
        }
        return value;
      }
      std::size_t leave = m_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] > kPivotTol) {
          const double ratio = tab_[i][cols_] / tab_[i][enter];
          if (leave == m_ || ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == m_) return std::numeric_limits<double>::infinity();
      pivot(leave, enter);
    }
    throw std::runtime_error("lp_maximize: simplex iteration cap exceeded");
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = tab_[row][col];
    for (double& v : tab_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double factor = tab_[i][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        tab_[i][j] -= factor * tab_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  bool have_artificials_ = false;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<double> objective_;
};

}  // namespace

LpResult lp_maximize(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b) {
  if (A.size() != b.size()) {
    throw std::invalid_argument("lp_maximize: A and b row counts differ");
  }
  for (const auto& row : A) {
    if (row.size() != c.size()) {
      throw std::invalid_argument("lp_maximize: ragged constraint matrix");
    }
  }
  if (A.empty()) {
    // Only x >= 0 constrains the problem; any positive cost is unbounded.
    for (double v : c) {
      if (v > 0.0) return {LpResult::Status::unbounded,
                           std::numeric_limits<double>::infinity(), {}};
    }
    return {LpResult::Status::optimal, 0.0, std::vector<double>(c.size(), 0.0)};
  }
  return Simplex(c, A, b).solve();
}

FeasibleRegion make_region(std::vector<std::vector<double>> A,
                           std::vector<double> b,
                           std::vector<std::string> names) {
  if (A.empty() || b.size() != A.size()) {
    throw std::invalid_argument("region: A and b must be non-empty and aligned");
  }
  const std::size_t n = A.front().size();
  if (n == 0) throw std::invalid_argument("region: zero-dimensional");
  for (const auto& row : A) {
    if (row.size() != n) throw std::invalid_argument("region: ragged matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("region: non-finite entry");
    }
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw std::invalid_argument("region: non-finite bound");
  }
  if (!names.empty() && names.size() != n) {
    throw std::invalid_argument("region: name count must match dimension");
  }

  FeasibleRegion region{std::move(A), std::move(b), std::move(names)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> c(n, 0.0);
    c[j] = 1.0;
    const LpResult r = lp_maximize(c, region.A, region.b);
    if (r.status == LpResult::Status::infeasible) {
      throw std::invalid_argument("region: empty feasible set");
    }
    if (r.status == LpResult::Status::unbounded) {
      throw std::invalid_argument("region: unbounded along coordinate " +
                                  std::to_string(j));
    }
  }
  return region;
}

BoundingBox bounding_box(const FeasibleRegion& region) {
  const std::size_t n = region.dimension();
  BoundingBox box;
  box.hi.resize(n);
  double sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> c(n, 0.0);
    c[j] = 1.0;
    const LpResult r = lp_maximize(c, region.A, region.b);
    if (r.status != LpResult::Status::optimal) {
      throw std::invalid_argument("bounding_box: region must be non-empty and bounded");
    }
    box.hi[j] = r.value;
    sq += r.value * r.value;
  }
  box.diameter = std::sqrt(sq);
  return box;
}

std::vector<double> project_to_region(const FeasibleRegion& region,
                                      std::vector<double> x, double floor) {
  const std::size_t n = region.dimension();
  const std::size_t m = region.rows();
  if (x.size() != n) {
    throw std::invalid_argument("project_to_region: dimension mismatch");
  }

  std::vector<double> norms(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (double v : region.A[i]) norms[i] += v * v;
  }

  // Dykstra corrections, one per halfspace (m rows + n floors).
  std::vector<std::vector<double>> corr(m + n, std::vector<double>(n, 0.0));
  double scale = floor;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double tol = 1e-13 * std::max(1.0, scale);

  for (int cycle = 0; cycle < 400; ++cycle) {
    double moved = 0.0;
    for (std::size_t h = 0; h < m + n; ++h) {
      std::vector<double> y(n);
      for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + corr[h][j];
      if (h < m) {
        if (norms[h] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += region.A[h][j] * y[j];
        const double excess = std::max(0.0, (row - region.b[h]) / norms[h]);
        for (std::size_t j = 0; j < n; ++j) {
          const double nx = y[j] - excess * region.A[h][j];
          corr[h][j] = y[j] - nx;
          moved += std::abs(nx - x[j]);
          x[j] = nx;
        }
      } else {
        const std::size_t j = h - m;
        const double nx = std::max(y[j], floor);
        corr[h][j] = y[j] - nx;
        moved += std::abs(nx - x[j]);
        x[j] = nx;
      }
    }
    if (moved <= tol) break;
  }
  return x;
}

}  // namespace fairmetric
