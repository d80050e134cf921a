#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fairmetric/allocation.hpp"
#include "fairmetric/bounds.hpp"
#include "fairmetric/region.hpp"
#include "fairmetric/solver.hpp"
#include "json.hpp"

namespace fairmetric {

// Input and output plumbing shared by the command-line tool and the tests.
// Numbers render through %.12g and infinities as "inf"/"-inf" so repeated
// runs produce byte-identical artifacts.

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledAllocation {
  std::string label;
  Allocation values;
};

// CSV rows "label,v1,v2,..." (label optional, defaults to row<k>) or a JSON
// object {"vectors": {label: [..]}}.  The format is sniffed from the first
// non-space byte.
std::vector<LabeledAllocation> parse_allocations(const std::string& path);
std::vector<LabeledAllocation> parse_allocations_text(const std::string& text,
                                                      const std::string& origin);

// "start:step:stop" ranges or comma-separated values.  With
// exclude_singular set (the default, for beta grids), 0 and 1 are dropped
// from the result with a flag so callers can insert the limit value or
// report the exclusion; alpha and lambda grids parse with it off.
struct GridSpec {
  std::vector<double> values;
  bool excluded_zero = false;
  bool excluded_one = false;
};

GridSpec parse_grid(const std::string& text, bool exclude_singular = true);

// {"A": [[...], ...], "b": [...]} with optional {"names": [...]}.
FeasibleRegion load_region(const std::string& path);
FeasibleRegion region_from_json(const nlohmann::json& j);

std::string format_double(double v);

// JSON scalar: finite values stay numeric, infinities become strings.
nlohmann::ordered_json json_number(double v);

void write_sweep_csv(std::ostream& os,
                     const std::vector<std::string>& labels,
                     const std::vector<SweepReport>& sweeps);
void write_ratio_csv(std::ostream& os, const std::vector<double>& alphas,
                     const std::vector<double>& ratios);
void write_curve_csv(std::ostream& os, const std::vector<TradeoffPoint>& curve);
nlohmann::ordered_json curve_allocations_json(
    const std::vector<TradeoffPoint>& curve);

}  // namespace fairmetric
