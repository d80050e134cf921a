#include "fairmetric/majorization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fairmetric/measures.hpp"
#include "fairmetric/sampling.hpp"

namespace fairmetric {

SortedAllocation::SortedAllocation(const Allocation& x)
    : ascending(x.values()) {
  std::sort(ascending.begin(), ascending.end());
  prefix_sums.resize(ascending.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    acc += ascending[i];
    prefix_sums[i] = static_cast<double>(acc);
  }
}

MajorizationOrder majorizes(const Allocation& y, const Allocation& x,
                            double tol) {
  if (y.size() != x.size()) {
    throw std::invalid_argument("majorizes: vectors must have equal length");
  }
  const SortedAllocation sy(y);
  const SortedAllocation sx(x);
  const std::size_t n = sx.prefix_sums.size();
  if (std::abs(sy.prefix_sums[n - 1] - sx.prefix_sums[n - 1]) > tol) {
    return MajorizationOrder::incomparable_sums;
  }
  for (std::size_t d = 0; d + 1 < n; ++d) {
    if (sx.prefix_sums[d] > sy.prefix_sums[d] + tol) {
      return MajorizationOrder::no;
    }
  }
  return MajorizationOrder::yes;
}

MajorizationOrder majorizes(const Allocation& y, const Allocation& x) {
  return majorizes(y, x, 1e-9 * std::max(y.total(), x.total()));
}

Allocation robin_hood(const Allocation& x, std::size_t i, std::size_t j,
                      double eps) {
  if (i >= x.size() || j >= x.size()) {
    throw std::out_of_range("robin_hood: index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("robin_hood: donor and recipient must differ");
  }
  if (!(x[i] > x[j])) {
    throw std::invalid_argument("robin_hood: donor must be richer than recipient");
  }
  if (!(eps > 0.0) || !(eps < x[i] - x[j])) {
    throw std::invalid_argument("robin_hood: eps must lie in (0, x[i] - x[j])");
  }
  std::vector<double> out = x.values();
  out[i] -= eps;
  out[j] += eps;
  return Allocation(std::move(out));
}

namespace {

constexpr double kSlack = 1e-12;

double measure_at(const Allocation& x, double beta) {
  if (beta == 0.0) return fairness_entropy_limit(x).value;
  return fairness_unified(x, beta).value;
}

struct Accum {
  long trials = 0;
  long failures = 0;
  double worst = 0.0;
  std::string note;

  void add(bool ok, double err, double beta, long trial, const char* what) {
    ++trials;
    worst = std::max(worst, err);
    if (!ok) {
      ++failures;
      if (note.empty()) {
        std::ostringstream os;
        os << what << " at beta=" << beta << " trial#" << trial;
        note = os.str();
      }
    }
  }

  void merge(const Accum& o) {
    trials += o.trials;
    failures += o.failures;
    worst = std::max(worst, o.worst);
    if (note.empty()) note = o.note;
  }
};

constexpr int kMonotone = 0;
constexpr int kFixedTax = 1;
constexpr int kAppendZeros = 2;
constexpr int kTransitivity = 3;
constexpr int kEqualMax = 4;
constexpr int kChecks = 5;

const char* kCheckNames[kChecks] = {"robin_hood_monotonicity", "fixed_tax",
                                    "append_zeros", "transitivity",
                                    "equal_allocation_maximal"};

// Pick a donor/recipient pair with distinct values, or report failure.
bool pick_transfer(Sampler& rng, const Allocation& x, std::size_t& i,
                   std::size_t& j) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    i = rng.index(x.size());
    j = rng.index(x.size());
    if (i == j || x[i] == x[j]) continue;
    if (x[i] < x[j]) std::swap(i, j);
    return true;
  }
  return false;
}

Allocation random_transfer(Sampler& rng, const Allocation& x, bool* ok) {
  std::size_t i = 0;
  std::size_t j = 0;
  if (!pick_transfer(rng, x, i, j)) {
    *ok = false;
    return x;
  }
  *ok = true;
  const double eps = (0.25 + 0.5 * rng.uniform()) * (x[i] - x[j]);
  return robin_hood(x, i, j, eps);
}

void run_trial(double beta, long trial, std::uint64_t trial_seed,
               std::array<Accum, kChecks>& out) {
  Sampler rng(trial_seed);
  const std::size_t n = 2 + rng.index(7);
  Allocation x = rng.allocation(n, 0.1, 10.0);
  if (beta < 1.0 && rng.uniform() < 0.25) {
    std::vector<double> padded = x.values();
    const std::size_t extra = 1 + rng.index(3);
    padded.insert(padded.end(), extra, 0.0);
    x = Allocation(std::move(padded));
  }

  // Monotonicity under a single random rich-to-poor transfer.
  bool ok = false;
  const Allocation after = random_transfer(rng, x, &ok);
  if (ok) {
    const double f0 = measure_at(x, beta);
    const double f1 = measure_at(after, beta);
    const double slack = kSlack * std::max(1.0, std::abs(f0));
    const double drop = f0 - f1;
    out[kMonotone].add(f1 >= f0 - slack || (std::isinf(f0) && std::isinf(f1)),
                       std::max(0.0, drop), beta, trial, "robin hood decrease");

    // Two transfers chained: both steps and the composition must order.
    bool ok2 = false;
    const Allocation after2 = random_transfer(rng, after, &ok2);
    if (ok2) {
      const bool chain = majorizes(after, x) == MajorizationOrder::yes &&
                         majorizes(after2, after) == MajorizationOrder::yes &&
                         majorizes(after2, x) == MajorizationOrder::yes;
      out[kTransitivity].add(chain, chain ? 0.0 : 1.0, beta, trial,
                             "transitivity break");
    }
  }

  // Flat tax below the minimum can only hurt.
  if (x.strictly_positive()) {
    const double c = rng.uniform(0.0, 0.9 * x.min_value());
    if (c > 0.0) {
      std::vector<double> taxed = x.values();
      for (auto& v : taxed) v -= c;
      const double f0 = measure_at(x, beta);
      const double f1 = measure_at(Allocation(std::move(taxed)), beta);
      const double slack = kSlack * std::max(1.0, std::abs(f0));
      out[kFixedTax].add(f1 <= f0 + slack, std::max(0.0, f1 - f0), beta, trial,
                         "fixed tax increase");
    }
  }

  // Idle users are invisible below beta = 1.
  if (beta < 1.0) {
    std::vector<double> padded = x.values();
    padded.insert(padded.end(), 2, 0.0);
    const double f0 = measure_at(x, beta);
    const double f1 = measure_at(Allocation(std::move(padded)), beta);
    const double err = std::abs(f1 - f0) / std::max(1.0, std::abs(f0));
    out[kAppendZeros].add(err <= kSlack, err, beta, trial, "zero padding shift");
  }

  // Equal split beats every other division of the same total.
  {
    const Allocation eq(std::vector<double>(x.size(), x.total() / x.size()));
    const double fx = measure_at(x, beta);
    const double fe = measure_at(eq, beta);
    const bool strict = fx < fe || std::isinf(fx);
    out[kEqualMax].add(strict, std::max(0.0, fx - fe), beta, trial,
                       "equal allocation not maximal");
  }
}

}  // namespace

SuiteReport schur_concavity_suite(const std::vector<double>& beta_grid,
                                  long trials, std::uint64_t seed, Exec exec) {
  if (trials <= 0) {
    throw std::invalid_argument("schur_concavity_suite: trials must be positive");
  }
  const std::size_t B = beta_grid.size();
  const std::size_t T = static_cast<std::size_t>(trials);
  std::vector<std::array<Accum, kChecks>> partial(B * T);

  parallel_for(B * T, exec, [&](std::size_t idx) {
    const std::size_t b = idx / T;
    const std::size_t t = idx % T;
    const double beta = beta_grid[b];
    if (beta == 1.0) return;
    run_trial(beta, static_cast<long>(t), Sampler::mix(seed, b, t), partial[idx]);
  });

  SuiteReport report;
  report.suite = "schur";
  report.seed = seed;
  report.tolerance = kSlack;
  std::array<Accum, kChecks> merged;
  for (const auto& p : partial) {
    for (int c = 0; c < kChecks; ++c) merged[c].merge(p[c]);
  }
  for (int c = 0; c < kChecks; ++c) {
    CheckResult r;
    r.name = kCheckNames[c];
    r.trials = merged[c].trials;
    r.failures = merged[c].failures;
    r.worst_error = merged[c].worst;
    r.passed = merged[c].failures == 0;
    r.note = merged[c].note;
    report.checks.push_back(std::move(r));
  }
  for (double beta : beta_grid) {
    if (beta == 1.0) {
      CheckResult r;
      r.name = "beta_one_discontinuity";
      r.passed = true;
      r.note = "beta = 1 skipped: the measure is discontinuous there";
      report.checks.push_back(std::move(r));
      break;
    }
  }
  return report;
}

}  // namespace fairmetric
