#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairmetric/axioms.hpp"
#include "fairmetric/bounds.hpp"
#include "fairmetric/majorization.hpp"
#include "fairmetric/parallel.hpp"
#include "fairmetric/sampling.hpp"

namespace fm = fairmetric;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

struct Timing {
  double serial = 0.0;
  double parallel = 0.0;
  bool identical = false;
};

void print_row(const std::string& name, const Timing& t) {
  std::cout << name << ": serial " << t.serial << " s, parallel " << t.parallel
            << " s, speedup " << (t.parallel > 0.0 ? t.serial / t.parallel : 0.0)
            << "x, reports " << (t.identical ? "identical" : "DIFFER") << "\n";
}

std::vector<fm::Allocation> bench_samples(std::uint64_t seed, int count) {
  fm::Sampler rng(fm::Sampler::mix(seed, 0xA11));
  std::vector<fm::Allocation> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 2 + rng.index(7);
    samples.push_back(rng.allocation(n, 0.1, 10.0));
  }
  return samples;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time the parallel kernels against the serial reference"};
  int samples = 200;
  long trials = 4000;
  std::uint64_t seed = 7;
  app.add_option("--samples", samples, "vectors for the axiom suite");
  app.add_option("--trials", trials, "per-beta trials for the schur suite");
  app.add_option("--seed", seed, "suite seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<double> grid{-4.0, -2.5, -1.0, -0.5, 0.5, 2.0, 3.0};
  const auto vectors = bench_samples(seed, samples);
  std::cout << "threads available: " << fm::effective_threads() << "\n";

  bool all_identical = true;

  {
    Timing t;
    auto t0 = std::chrono::steady_clock::now();
    const auto rs =
        fm::verify_axioms(vectors, grid, 1e-8, seed, fm::Exec::serial);
    t.serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto rp =
        fm::verify_axioms(vectors, grid, 1e-8, seed, fm::Exec::parallel);
    t.parallel = seconds_since(t0);
    t.identical = rs.to_json().dump() == rp.to_json().dump();
    all_identical = all_identical && t.identical;
    print_row("axiom suite", t);
  }
  {
    Timing t;
    auto t0 = std::chrono::steady_clock::now();
    const auto rs =
        fm::schur_concavity_suite(grid, trials, seed, fm::Exec::serial);
    t.serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto rp =
        fm::schur_concavity_suite(grid, trials, seed, fm::Exec::parallel);
    t.parallel = seconds_since(t0);
    t.identical = rs.to_json().dump() == rp.to_json().dump();
    all_identical = all_identical && t.identical;
    print_row("schur suite", t);
  }
  {
    Timing t;
    const fm::BoxConstraint box(1.0, 9.0);
    const int n = 20;
    auto t0 = std::chrono::steady_clock::now();
    const double vs = fm::box_boundary_minimum(box, 0.5, n, fm::Exec::serial);
    t.serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const double vp = fm::box_boundary_minimum(box, 0.5, n, fm::Exec::parallel);
    t.parallel = seconds_since(t0);
    t.identical = vs == vp;
    all_identical = all_identical && t.identical;
    print_row("box corner scan (n=20)", t);
  }

  if (!all_identical) {
    std::cout << "serial and parallel outputs disagree\n";
    return 1;
  }
  return 0;
}
