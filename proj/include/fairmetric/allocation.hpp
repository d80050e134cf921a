#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairmetric {

/*
 * A resource allocation across n >= 1 users.  Entries are validated on
 * construction: every entry must be finite and non-negative, and at least
 * one entry must be strictly positive (the all-zero vector has no defined
 * normalized share vector, so it is rejected up front).
 */
class Allocation {
 public:
  explicit Allocation(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw std::invalid_argument("allocation: vector must have length >= 1");
    }
    bool any_positive = false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!std::isfinite(v)) {
        throw std::invalid_argument("allocation: entry " + std::to_string(i) +
                                    " is not finite");
      }
      if (v < 0.0) {
        throw std::invalid_argument("allocation: entry " + std::to_string(i) +
                                    " is negative");
      }
      if (v > 0.0) any_positive = true;
    }
    if (!any_positive) {
      throw std::invalid_argument("allocation: all-zero vector rejected");
    }
  }

  Allocation(std::initializer_list<double> values)
      : Allocation(std::vector<double>(values)) {}

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  // w(x), the total allocated resource.  Summation runs in ascending value
  // order so permuted vectors produce bit-identical totals.
  double total() const {
    std::vector<double> sorted(values_);
    std::sort(sorted.begin(), sorted.end());
    long double s = 0.0L;
    for (double v : sorted) s += v;
    return static_cast<double>(s);
  }

  double min_value() const {
    double m = values_[0];
    for (double v : values_) m = std::min(m, v);
    return m;
  }

  double max_value() const {
    double m = values_[0];
    for (double v : values_) m = std::max(m, v);
    return m;
  }

  // Smallest strictly positive entry.
  double min_positive() const {
    double m = max_value();
    for (double v : values_) {
      if (v > 0.0) m = std::min(m, v);
    }
    return m;
  }

  std::size_t positive_count() const {
    std::size_t k = 0;
    for (double v : values_) {
      if (v > 0.0) ++k;
    }
    return k;
  }

  bool strictly_positive() const { return positive_count() == size(); }

  void require_strictly_positive(const char* who) const {
    if (!strictly_positive()) {
      throw std::invalid_argument(std::string(who) +
                                  ": zero entries rejected");
    }
  }

 private:
  std::vector<double> values_;
};

}  // namespace fairmetric
