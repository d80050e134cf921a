#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairmetric/alpha_fair.hpp"
#include "fairmetric/axioms.hpp"
#include "fairmetric/bounds.hpp"
#include "fairmetric/io.hpp"
#include "fairmetric/majorization.hpp"
#include "fairmetric/measures.hpp"
#include "fairmetric/region.hpp"
#include "fairmetric/sampling.hpp"
#include "fairmetric/solver.hpp"

namespace fm = fairmetric;
using nlohmann::ordered_json;

namespace {

// Output sink: a file when --output is set, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw fm::parse_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(Sink& sink, const ordered_json& j) {
  sink.stream() << j.dump(2) << "\n";
}

int fail(const std::string& kind, const std::string& message,
         ordered_json extra = {}) {
  ordered_json err;
  err["kind"] = kind;
  err["message"] = message;
  if (!extra.empty()) {
    for (auto& [k, v] : extra.items()) err[k] = v;
  }
  ordered_json out;
  out["error"] = err;
  std::cout << out.dump(2) << "\n";
  return 1;
}

double parse_beta_value(const std::string& text) {
  if (text == "inf" || text == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw fm::parse_error("--beta: not a number: \"" + text + "\"");
  }
  return v;
}

std::vector<fm::Allocation> random_samples(std::uint64_t seed, int count) {
  fm::Sampler rng(fm::Sampler::mix(seed, 0xA11));
  std::vector<fm::Allocation> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 2 + rng.index(7);
    samples.push_back(rng.allocation(n, 0.1, 10.0));
  }
  return samples;
}

struct CommonOpts {
  std::string input;
  std::string output;
};

int run_measure(const CommonOpts& common, const std::string& beta_text,
                double r, double lambda_inv) {
  const auto rows = fm::parse_allocations(common.input);
  const double beta = parse_beta_value(beta_text);
  Sink sink(common.output);

  ordered_json values;
  std::vector<std::string> notes;

  if (std::isinf(beta)) {
    if (r != 1.0 || lambda_inv != 0.0) {
      return fail("precondition",
                  "measure: --r and --lambda-inv are incompatible with an "
                  "infinite --beta");
    }
    const fm::LimitDirection dir = beta > 0.0 ? fm::LimitDirection::plus_inf
                                              : fm::LimitDirection::minus_inf;
    notes.push_back(beta > 0.0 ? "beta = +inf evaluated as the max-ratio limit"
                               : "beta = -inf evaluated as the min-ratio limit");
    for (const auto& row : rows) {
      values[row.label] = fm::json_number(fm::fairness_ratio_limits(row.values, dir).value);
    }
  } else if (beta * r == 1.0) {
    // Report the one-sided limits instead of a value: the point itself is a
    // jump discontinuity at +/- (number of active users).
    ordered_json limits;
    for (const auto& row : rows) {
      const double k = static_cast<double>(row.values.positive_count());
      ordered_json pair;
      pair["from_below"] = k;
      pair["from_above"] = -k;
      limits[row.label] = pair;
    }
    ordered_json extra;
    extra["one_sided_limits"] = limits;
    return fail("singular_parameter",
                "measure: beta*r = 1 is a discontinuity with no defined "
                "value; one-sided limits reported",
                extra);
  } else if (beta == 0.0) {
    notes.push_back("beta = 0 evaluated as the entropy limit");
    for (const auto& row : rows) {
      double v = fm::fairness_entropy_limit(row.values).value;
      if (r != 1.0) v = std::pow(v, r);
      if (lambda_inv != 0.0) v *= std::pow(row.values.total(), lambda_inv);
      values[row.label] = fm::json_number(v);
    }
  } else {
    for (const auto& row : rows) {
      double v = r == 1.0 ? fm::fairness_unified(row.values, beta).value
                          : fm::fairness_general(row.values, beta, r).value;
      if (lambda_inv != 0.0) v *= std::pow(row.values.total(), lambda_inv);
      values[row.label] = fm::json_number(v);
    }
  }

  ordered_json out;
  out["beta"] = fm::json_number(beta);
  if (r != 1.0) out["r"] = r;
  if (lambda_inv != 0.0) out["lambda_inv"] = lambda_inv;
  out["values"] = values;
  if (!notes.empty()) out["notes"] = notes;
  emit_json(sink, out);
  return 0;
}

int run_jain(const CommonOpts& common, double beta) {
  const auto rows = fm::parse_allocations(common.input);
  Sink sink(common.output);
  ordered_json values;
  for (const auto& row : rows) {
    values[row.label] = fm::json_number(fm::jain_generalized(row.values, beta));
  }
  ordered_json out;
  out["beta"] = beta;
  out["jain"] = values;
  emit_json(sink, out);
  return 0;
}

int run_sweep(const CommonOpts& common, const std::string& grid_text) {
  const auto rows = fm::parse_allocations(common.input);
  const fm::GridSpec grid = fm::parse_grid(grid_text);
  if (grid.values.empty()) {
    return fail("precondition", "sweep: grid has no usable points");
  }
  if (grid.excluded_zero) {
    std::cerr << "notice: beta = 0 excluded from the sweep grid (singular); "
                 "the entropy-limit value fills that slot\n";
  }
  if (grid.excluded_one) {
    std::cerr << "notice: beta = 1 excluded from the sweep grid "
                 "(discontinuity)\n";
  }

  std::vector<std::string> labels;
  std::vector<fm::SweepReport> sweeps;
  for (const auto& row : rows) {
    labels.push_back(row.label);
    sweeps.push_back(fm::beta_monotonicity_sweep(row.values, grid.values,
                                                 grid.excluded_zero));
    if (sweeps.back().violations > 0) {
      std::cerr << "notice: monotonicity violation recorded for \""
                << row.label << "\" (worst "
                << fm::format_double(sweeps.back().worst_violation) << ")\n";
    }
  }
  Sink sink(common.output);
  fm::write_sweep_csv(sink.stream(), labels, sweeps);
  return 0;
}

int run_ratio(const CommonOpts& common, const std::string& grid_text,
              const std::string& label) {
  const auto rows = fm::parse_allocations(common.input);
  const fm::GridSpec grid =
      fm::parse_grid(grid_text.empty() ? "0:0.2:8" : grid_text, false);
  const fm::LabeledAllocation* chosen = &rows.front();
  if (!label.empty()) {
    chosen = nullptr;
    for (const auto& row : rows) {
      if (row.label == label) chosen = &row;
    }
    if (chosen == nullptr) {
      return fail("precondition", "ratio: no vector labeled \"" + label + "\"");
    }
  }
  std::vector<double> ratios;
  ratios.reserve(grid.values.size());
  for (double alpha : grid.values) {
    if (alpha < 0.0) {
      return fail("precondition", "ratio: alpha grid must be non-negative");
    }
    ratios.push_back(fm::reward_ratio(chosen->values, alpha).ratio);
  }
  Sink sink(common.output);
  fm::write_ratio_csv(sink.stream(), grid.values, ratios);
  return 0;
}

int run_bounds(const CommonOpts& common, const std::string& beta_text,
               double x_min, double x_max, int box_n, bool brute) {
  const double beta = parse_beta_value(beta_text);
  Sink sink(common.output);
  ordered_json out;
  out["beta"] = fm::json_number(beta);

  if (box_n > 0) {
    const fm::BoxConstraint box(x_min, x_max);
    const fm::BoxBound bb = fm::box_lower_bound(box, beta, box_n);
    ordered_json jb;
    jb["gamma"] = box.gamma();
    jb["n"] = box_n;
    jb["bound"] = fm::json_number(bb.bound);
    jb["bound_per_user"] = fm::json_number(bb.per_user);
    jb["mu_star"] = fm::json_number(bb.mu_star);
    jb["mu_degenerate"] = bb.mu_degenerate;
    if (brute) {
      if (box_n > 22) {
        return fail("precondition",
                    "bounds: --brute enumerates 2^n corners; use n <= 22");
      }
      jb["boundary_minimum"] =
          fm::json_number(fm::box_boundary_minimum(box, beta, box_n));
    }
    out["box"] = jb;
  }

  if (!common.input.empty()) {
    const auto rows = fm::parse_allocations(common.input);
    ordered_json per_vector;
    for (const auto& row : rows) {
      ordered_json e;
      if (beta < 1.0) {
        const fm::StarvationBounds sb = fm::starvation_bounds(row.values, beta);
        ordered_json js;
        js["max_zero_users"] = fm::json_number(sb.max_zero_users);
        js["min_max_resource"] = fm::json_number(sb.min_max_resource);
        e["starvation"] = js;
      } else {
        e["starvation"] =
            "undefined for beta >= 1 (zero entries force -inf instead)";
      }
      if (beta != 0.0 && beta != 1.0 && row.values.strictly_positive()) {
        e["threshold_resource"] =
            fm::json_number(fm::threshold_resource(row.values, beta));
      }
      per_vector[row.label] = e;
    }
    out["vectors"] = per_vector;
  } else if (box_n <= 0) {
    return fail("precondition", "bounds: provide --input and/or --box-n");
  }
  emit_json(sink, out);
  return 0;
}

int run_tradeoff(const CommonOpts& common, const std::string& region_path,
                 double beta, double lambda, const fm::SolveOptions& opts) {
  const fm::FeasibleRegion region = fm::load_region(region_path);
  const fm::TradeoffPoint p = fm::maximize_phi(region, beta, lambda, opts);
  Sink sink(common.output);
  ordered_json out;
  out["lambda"] = fm::json_number(p.lambda);
  auto xs = ordered_json::array();
  for (double v : p.allocation) xs.push_back(fm::json_number(v));
  out["allocation"] = xs;
  out["fairness"] = fm::json_number(p.fairness);
  out["throughput"] = fm::json_number(p.throughput);
  out["phi"] = fm::json_number(p.phi);
  out["pareto_flag"] =
      p.pareto_flag == fm::ParetoFlag::preserved ? "preserved" : "at_risk";
  out["lambda_max_preserving"] = fm::json_number(fm::pareto_lambda_max(beta));
  emit_json(sink, out);
  return 0;
}

int run_curve(const CommonOpts& common, const std::string& region_path,
              double beta, const std::string& grid_text,
              const std::string& allocations_path,
              const fm::SolveOptions& opts) {
  const fm::FeasibleRegion region = fm::load_region(region_path);
  const fm::GridSpec grid = fm::parse_grid(grid_text, false);
  for (double lambda : grid.values) {
    if (lambda < 0.0) {
      return fail("precondition", "curve: lambda grid must be non-negative");
    }
  }
  const auto curve = fm::tradeoff_curve(region, beta, grid.values, opts);
  Sink sink(common.output);
  fm::write_curve_csv(sink.stream(), curve);
  if (!allocations_path.empty()) {
    std::ofstream af(allocations_path, std::ios::binary);
    if (!af) {
      return fail("io", "curve: cannot open " + allocations_path);
    }
    af << fm::curve_allocations_json(curve).dump(2) << "\n";
  }
  return 0;
}

int run_verify(const CommonOpts& common, const std::string& suite,
               const std::string& grid_text, int samples, long trials,
               std::uint64_t seed, double tol, bool serial) {
  const fm::Exec exec = serial ? fm::Exec::serial : fm::Exec::parallel;
  const fm::GridSpec grid = fm::parse_grid(
      grid_text.empty() ? "-4,-2.5,-1,-0.5,0.5,2,3" : grid_text, false);
  auto suites = ordered_json::array();
  bool ok = true;

  if (suite == "axioms" || suite == "all") {
    const auto report = fm::verify_axioms(random_samples(seed, samples),
                                          grid.values, tol, seed, exec);
    ok = ok && report.all_passed();
    suites.push_back(report.to_json());
  }
  if (suite == "schur" || suite == "all") {
    const auto report =
        fm::schur_concavity_suite(grid.values, trials, seed, exec);
    ok = ok && report.all_passed();
    suites.push_back(report.to_json());
  }
  if (suites.empty()) {
    return fail("precondition",
                "verify: --suite must be one of axioms, schur, all");
  }
  Sink sink(common.output);
  ordered_json out;
  out["passed"] = ok;
  out["suites"] = suites;
  emit_json(sink, out);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness measures, diagnostics, and tradeoff curves for "
               "resource allocation vectors"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string beta_text = "-1";
  double beta = 2.0;
  double r = 1.0;
  double lambda_inv = 0.0;
  double lambda = 0.0;
  double jain_beta = -1.0;
  std::string grid_text;
  std::string label;
  std::string region_path;
  std::string allocations_path;
  double x_min = 1.0;
  double x_max = 1.0;
  int box_n = 0;
  bool brute = false;
  std::string suite = "all";
  int samples = 100;
  long trials = 1500;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  bool serial = false;
  fm::SolveOptions solve_opts;

  auto* measure = app.add_subcommand("measure", "evaluate the fairness measure");
  measure->add_option("--input", common.input, "CSV or JSON allocations")->required();
  measure->add_option("--beta", beta_text, "exponent (accepts inf and -inf)")->required();
  measure->add_option("--r", r, "growth exponent of the general family");
  measure->add_option("--lambda-inv", lambda_inv, "homogeneity degree of F");
  measure->add_option("--output", common.output, "write here instead of stdout");

  auto* jain = app.add_subcommand("jain", "generalized Jain index f_beta/n");
  jain->add_option("--input", common.input, "CSV or JSON allocations")->required();
  jain->add_option("--beta", jain_beta, "exponent, must be < 1");
  jain->add_option("--output", common.output, "write here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "fairness vs beta CSV");
  sweep->add_option("--input", common.input, "CSV or JSON allocations")->required();
  sweep->add_option("--beta-grid", grid_text, "start:step:stop or comma list")->required();
  sweep->add_option("--output", common.output, "write here instead of stdout");

  auto* ratio = app.add_subcommand("ratio", "fairness/efficiency reward ratio vs alpha");
  ratio->add_option("--input", common.input, "CSV or JSON allocations")->required();
  ratio->add_option("--alpha-grid", grid_text, "start:step:stop or comma list")
      ->default_str("0:0.2:8");
  ratio->add_option("--label", label, "vector to analyze (default: first)");
  ratio->add_option("--output", common.output, "write here instead of stdout");

  auto* bounds = app.add_subcommand("bounds", "starvation, threshold, and box bounds");
  bounds->add_option("--input", common.input, "CSV or JSON allocations");
  bounds->add_option("--beta", beta_text, "exponent")->required();
  bounds->add_option("--x-min", x_min, "box lower bound");
  bounds->add_option("--x-max", x_max, "box upper bound");
  bounds->add_option("--box-n", box_n, "box user count (enables the box bound)");
  bounds->add_flag("--brute", brute, "also enumerate the 2^n corner minimum");
  bounds->add_option("--output", common.output, "write here instead of stdout");

  auto* tradeoff = app.add_subcommand("tradeoff", "maximize the weighted objective once");
  tradeoff->add_option("--region", region_path, "region JSON")->required();
  tradeoff->add_option("--beta", beta, "exponent in (0,1) or (1,inf)")->required();
  tradeoff->add_option("--lambda", lambda, "fairness weight >= 0")->required();
  tradeoff->add_option("--starts", solve_opts.starts, "multi-start count");
  tradeoff->add_option("--seed", solve_opts.seed, "start sampling seed");
  tradeoff->add_option("--output", common.output, "write here instead of stdout");

  auto* curve = app.add_subcommand("curve", "tradeoff curve over a lambda grid");
  curve->add_option("--region", region_path, "region JSON")->required();
  curve->add_option("--beta", beta, "exponent in (0,1) or (1,inf)")->required();
  curve->add_option("--lambda-grid", grid_text, "start:step:stop or comma list")->required();
  curve->add_option("--allocations", allocations_path, "also write allocation JSON here");
  curve->add_option("--starts", solve_opts.starts, "multi-start count");
  curve->add_option("--seed", solve_opts.seed, "start sampling seed");
  curve->add_option("--output", common.output, "write here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", suite, "axioms, schur, or all");
  verify->add_option("--beta-grid", grid_text, "exponent grid for the suites")
      ->default_str("-4,-2.5,-1,-0.5,0.5,2,3");
  verify->add_option("--samples", samples, "random vectors for the axiom suite");
  verify->add_option("--trials", trials, "per-beta trials for the schur suite");
  verify->add_option("--seed", seed, "suite seed");
  verify->add_option("--tol", tol, "relative tolerance for value checks");
  verify->add_flag("--serial", serial, "disable the parallel fan-out");
  verify->add_option("--output", common.output, "write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure->parsed()) return run_measure(common, beta_text, r, lambda_inv);
    if (jain->parsed()) return run_jain(common, jain_beta);
    if (sweep->parsed()) return run_sweep(common, grid_text);
    if (ratio->parsed()) return run_ratio(common, grid_text, label);
    if (bounds->parsed())
      return run_bounds(common, beta_text, x_min, x_max, box_n, brute);
    if (tradeoff->parsed())
      return run_tradeoff(common, region_path, beta, lambda, solve_opts);
    if (curve->parsed())
      return run_curve(common, region_path, beta, grid_text, allocations_path,
                       solve_opts);
    if (verify->parsed())
      return run_verify(common, suite, grid_text, samples, trials, seed, tol,
                        serial);
  } catch (const fm::parse_error& e) {
    return fail("parse", e.what());
  } catch (const fm::use_limit_error& e) {
    return fail("singular_parameter", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("precondition", e.what());
  } catch (const std::domain_error& e) {
    return fail("precondition", e.what());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
  return 1;
}
