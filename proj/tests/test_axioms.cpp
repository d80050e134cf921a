#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fairmetric/axioms.hpp"
#include "fairmetric/measures.hpp"
#include "fairmetric/sampling.hpp"
#include "test_helpers.hpp"

using fairmetric::Allocation;
using fairmetric::GeneratorSpec;
using fairmetric::Partition;
using fairmetric::Sampler;
using testutil::kron;
using testutil::rel_err;

TEST_CASE("partition weights") {
  const auto w1 = fairmetric::partition_weights({3.0, 1.0}, 1.0);
  CHECK(w1[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(w1[1] == doctest::Approx(0.25).epsilon(1e-15));

  const auto w0 = fairmetric::partition_weights({3.0, 1.0}, 0.0);
  CHECK(w0[0] == 0.5);
  CHECK(w0[1] == 0.5);

  const auto w2 = fairmetric::partition_weights({2.0, 2.0, 4.0}, 2.0);
  CHECK(w2[0] == doctest::Approx(4.0 / 24.0).epsilon(1e-15));
  CHECK(w2[1] == doctest::Approx(4.0 / 24.0).epsilon(1e-15));
  CHECK(w2[2] == doctest::Approx(16.0 / 24.0).epsilon(1e-15));

  CHECK_THROWS_AS(fairmetric::partition_weights({1.0, 0.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::partition_weights({1.0, -2.0}, 1.0),
                  std::invalid_argument);

  Sampler rng(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> sums = rng.simplex(2 + rng.index(4), 0.5, 8.0);
    const double rho = rng.uniform(-3.0, 3.0);
    const auto w = fairmetric::partition_weights(sums, rho);
    double s = 0.0;
    for (double v : w) {
      CHECK(v > 0.0);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("recursion on an equal split reproduces the flat value") {
  const Partition p(Allocation{1, 1, 1, 1}, 2);
  const auto got = fairmetric::fairness_recursive(p, GeneratorSpec::power(-1.0));
  CHECK(got.value == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("recursion matches the flat evaluation across random partitions") {
  Sampler rng(5);
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = 3 + rng.index(7);
    const Allocation x = rng.allocation(n, 0.5, 4.0);
    const std::size_t cut = 1 + rng.index(n - 1);
    double beta = rng.uniform(-4.0, 4.0);
    if (std::abs(beta) < 0.05 || std::abs(beta - 1.0) < 0.05) beta = -1.0;
    const Partition p(x, cut);
    const auto got = fairmetric::fairness_recursive(p, GeneratorSpec::power(beta));
    const auto flat = fairmetric::fairness_unified(x, beta);
    CHECK(rel_err(got.value, flat.value) < 1e-9);
  }
}

TEST_CASE("recursion handles a segment whose users are mostly starved") {
  // [99 | 1,0,0,0] at beta = 0.5: both segment sums are positive, so the
  // two-level value must equal the flat one.
  const Allocation x{99, 1, 0, 0, 0};
  const Partition p(x, 1);
  const auto got = fairmetric::fairness_recursive(p, GeneratorSpec::power(0.5));
  CHECK(rel_err(got.value, fairmetric::fairness_unified(x, 0.5).value) < 1e-9);

  // Cutting after the second user leaves an all-zero segment, whose
  // normalized share vector is undefined; that cut must be refused.
  const Partition zero_tail(x, 2);
  CHECK_THROWS_AS(
      fairmetric::fairness_recursive(zero_tail, GeneratorSpec::power(0.5)),
      std::invalid_argument);
}

TEST_CASE("recursion rejects inconsistent weight exponents") {
  const Partition p(Allocation{1, 2, 3}, 1);
  GeneratorSpec bad = GeneratorSpec::power(-1.0);
  bad.rho = 0.5;  // consistent value would be 1 - beta = 2
  CHECK_THROWS_WITH_AS(fairmetric::fairness_recursive(p, bad),
                       doctest::Contains("partition irrelevance not guaranteed"),
                       std::invalid_argument);

  GeneratorSpec log_bad = GeneratorSpec::logarithm();
  log_bad.rho = 0.75;
  CHECK_THROWS_AS(fairmetric::fairness_recursive(p, log_bad),
                  std::invalid_argument);
}

TEST_CASE("log generator recursion reproduces the entropy measure") {
  Sampler rng(9);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + rng.index(5);
    const Allocation x = rng.allocation(n, 0.5, 4.0);
    const Partition p(x, 1 + rng.index(n - 1));
    const auto got = fairmetric::fairness_recursive(p, GeneratorSpec::logarithm());
    CHECK(rel_err(got.value, fairmetric::fairness_entropy_limit(x).value) < 1e-9);
  }
}

TEST_CASE("log-generated measure") {
  CHECK(fairmetric::fairness_log_generator(Allocation{1, 1, 1}, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fairmetric::fairness_log_generator(Allocation{1, 1, 2}, 1.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

  for (double theta : {0.1, 0.3, 0.5, 0.8}) {
    const double binary_entropy =
        -theta * std::log(theta) - (1.0 - theta) * std::log(1.0 - theta);
    CHECK(rel_err(fairmetric::fairness_log_generator(Allocation{theta, 1.0 - theta}, 1.0),
                  std::exp(binary_entropy)) < 1e-12);
  }

  Sampler rng(15);
  for (int k = 0; k < 50; ++k) {
    const Allocation x = rng.allocation(2 + rng.index(6), 0.5, 4.0);
    CHECK(rel_err(fairmetric::fairness_log_generator(x, 1.0),
                  fairmetric::fairness_entropy_limit(x).value) < 1e-12);
    CHECK(rel_err(fairmetric::fairness_log_generator(x, 1.0),
                  fairmetric::fairness_unified(x, 1e-6).value) < 1e-6);
    const double r = rng.uniform(0.25, 3.0);
    CHECK(rel_err(fairmetric::fairness_log_generator(x, r),
                  std::pow(fairmetric::fairness_entropy_limit(x).value, r)) < 1e-10);
  }

  CHECK_THROWS_AS(fairmetric::fairness_log_generator(Allocation{1, 0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("direct product identity") {
  const Allocation y{1, 2};
  const Allocation z{3, 1};
  const double lhs = fairmetric::fairness_unified(kron(y, z), -1.0).value;
  const double rhs = fairmetric::fairness_unified(y, -1.0).value *
                     fairmetric::fairness_unified(z, -1.0).value;
  CHECK(rel_err(lhs, rhs) < 1e-12);
  CHECK(lhs == doctest::Approx(2.88).epsilon(1e-12));

  Sampler rng(21);
  for (int k = 0; k < 200; ++k) {
    const Allocation a = rng.allocation(2 + rng.index(5), 0.5, 3.0);
    const Allocation b = rng.allocation(2 + rng.index(5), 0.5, 3.0);
    double beta = rng.uniform(-4.0, 4.0);
    if (std::abs(beta) < 0.05 || std::abs(beta - 1.0) < 0.05) beta = 0.5;
    const double prod = fairmetric::fairness_unified(kron(a, b), beta).value;
    const double fa = fairmetric::fairness_unified(a, beta).value;
    const double fb = fairmetric::fairness_unified(b, beta).value;
    // Both factors carry the sign convention, so the identity reads on
    // magnitudes with the product's own sign.
    const double expected = (beta < 1.0 ? 1.0 : -1.0) * std::abs(fa * fb);
    CHECK(rel_err(prod, expected) < 1e-10);
  }
}

TEST_CASE("axiom verification suite passes and is reproducible") {
  Sampler rng(777);
  std::vector<Allocation> samples;
  for (int i = 0; i < 40; ++i) {
    samples.push_back(rng.allocation(2 + rng.index(7), 0.1, 10.0));
  }
  const std::vector<double> grid{-2.5, -1.0, -0.5, 0.5, 2.0};

  const auto serial = fairmetric::verify_axioms(samples, grid, 1e-8, 42,
                                                fairmetric::Exec::serial);
  const auto parallel = fairmetric::verify_axioms(samples, grid, 1e-8, 42,
                                                  fairmetric::Exec::parallel);
  CHECK(serial.all_passed());
  for (const auto& c : serial.checks) {
    INFO(c.name, ": ", c.note);
    CHECK(c.passed);
    CHECK(c.trials > 0);
  }
  CHECK(serial.to_json().dump() == parallel.to_json().dump());
}

TEST_CASE("axiom suite flags the beta = 1 discontinuity") {
  Sampler rng(88);
  std::vector<Allocation> samples;
  for (int i = 0; i < 5; ++i) {
    samples.push_back(rng.allocation(3, 0.5, 2.0));
  }
  const auto report =
      fairmetric::verify_axioms(samples, {1.0, -1.0}, 1e-8, 1, fairmetric::Exec::serial);
  CHECK(report.all_passed());
  bool flagged = false;
  for (const auto& c : report.checks) {
    if (c.note.find("beta = 1") != std::string::npos ||
        c.note.find("discontinu") != std::string::npos) {
      flagged = true;
    }
  }
  CHECK(flagged);
}
