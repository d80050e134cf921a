#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fairmetric/allocation.hpp"

namespace fairmetric {

/*
 * Deterministic random source for the property suites.  Doubles are derived
 * from raw mt19937_64 output (not from std::*_distribution, whose streams
 * are implementation-defined), so a (seed, trial) pair reproduces the same
 * vectors everywhere and the serial/parallel suite paths agree bit for bit.
 */
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Combine a base seed with per-trial indices.  splitmix-style mixing keeps
  // neighboring trials decorrelated.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(rng_() % n);
  }

  // Dirichlet(1,...,1) shares via normalized exponentials, scaled by a
  // log-uniform total.  Entries are strictly positive.
  std::vector<double> simplex(std::size_t n, double total_lo = 1.0,
                              double total_hi = 1.0) {
    std::vector<double> v(n);
    double s = 0.0;
    for (auto& e : v) {
      e = -std::log(uniform_pos());
      s += e;
    }
    double total = total_lo;
    if (total_hi > total_lo) {
      total = std::exp(uniform(std::log(total_lo), std::log(total_hi)));
    }
    for (auto& e : v) e *= total / s;
    return v;
  }

  Allocation allocation(std::size_t n, double total_lo = 1.0,
                        double total_hi = 1.0) {
    return Allocation(simplex(n, total_lo, total_hi));
  }

  // Strictly positive vector with max/min spread at most `spread`.
  Allocation bounded_spread(std::size_t n, double spread) {
    std::vector<double> v(n);
    for (auto& e : v) e = uniform(1.0, spread);
    return Allocation(std::move(v));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fairmetric
