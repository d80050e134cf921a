#pragma once

#include <cstdint>
#include <vector>

#include "fairmetric/allocation.hpp"
#include "fairmetric/measures.hpp"
#include "fairmetric/parallel.hpp"
#include "fairmetric/report.hpp"

namespace fairmetric {

/*
 * Hierarchical construction: a vector is split into two segments, each
 * segment is measured on its own, and the two per-segment values are
 * recombined through a weighted mean plus the fairness of the segment-sum
 * pair.  For the right weight exponent the recombined value must equal the
 * flat evaluation of the whole vector, whatever the split; that is the
 * property the verification suite drives at random.
 */

// A 2-way split of a parent allocation into contiguous segments.
struct Partition {
  Allocation parent;
  std::size_t cut;  // first segment is [0, cut), second is [cut, n)

  Partition(Allocation parent_vec, std::size_t cut_index)
      : parent(std::move(parent_vec)), cut(cut_index) {
    if (cut == 0 || cut >= parent.size()) {
      throw std::invalid_argument("partition: cut must split off two non-empty segments");
    }
  }

  Allocation segment(int which) const {
    const auto& v = parent.values();
    if (which == 0) return Allocation(std::vector<double>(v.begin(), v.begin() + cut));
    return Allocation(std::vector<double>(v.begin() + cut, v.end()));
  }

  double segment_sum(int which) const { return segment(which).total(); }
};

enum class GeneratorKind { power, logarithm };

// The mean used for recombination: g(y) = |y|^beta or g(y) = log y,
// with weights s_i proportional to (segment sum)^rho.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::power;
  double beta = 0.0;  // exponent for the power generator
  double rho = 0.0;   // weight exponent

  static GeneratorSpec power(double beta) {
    GeneratorSpec g;
    g.kind = GeneratorKind::power;
    g.beta = beta;
    g.rho = 1.0 - beta;
    return g;
  }

  static GeneratorSpec logarithm() {
    GeneratorSpec g;
    g.kind = GeneratorKind::logarithm;
    g.rho = 1.0;
    return g;
  }
};

// Weights s_i = w_i^rho / sum_j w_j^rho for positive segment sums.
std::vector<double> partition_weights(const std::vector<double>& segment_sums,
                                      double rho);

// Two-level evaluation of the partitioned vector; must reproduce the flat
// measure of the parent.  The power generator requires rho = 1 - beta; the
// log generator requires rho = 1 (proportional weights).
FairnessValue fairness_recursive(const Partition& p, const GeneratorSpec& gen);

// Measure generated by g = log:  (sum x_i)^r * prod_i x_i^(-r*x_i/w),
// i.e. exp(r * entropy of the shares).  At r = 1 this is the entropy limit.
double fairness_log_generator(const Allocation& x, double r);

// Numeric verification of the axiom set on the given samples and beta grid:
// continuity, scale invariance, saturation, partition irrelevance, two-user
// monotonicity toward the equal split, the equal-weight splitting identity
// for the scaled measure F, and F's homogeneity degree.
SuiteReport verify_axioms(const std::vector<Allocation>& samples,
                          const std::vector<double>& beta_grid, double tol,
                          std::uint64_t seed = 0x5eedULL,
                          Exec exec = Exec::parallel);

}  // namespace fairmetric
