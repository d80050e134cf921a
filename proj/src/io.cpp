#include "fairmetric/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fairmetric {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool parse_number(const std::string& field, double* out) {
  if (field.empty()) return false;
  const char* s = field.c_str();
  char* end = nullptr;
  *out = std::strtod(s, &end);
  return end != s && *end == '\0';
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<LabeledAllocation> parse_csv(const std::string& text,
                                         const std::string& origin) {
  std::vector<LabeledAllocation> out;
  std::istringstream in(text);
  std::string line;
  int row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");

    std::string label;
    std::size_t first_value = 0;
    double probe = 0.0;
    if (!parse_number(fields[0], &probe)) {
      label = fields[0];
      first_value = 1;
    } else {
      label = "row" + std::to_string(out.size() + 1);
    }
    if (first_value >= fields.size()) {
      throw parse_error(origin + ": row \"" + label + "\" (line " +
                        std::to_string(row_number) + ") has no values");
    }
    std::vector<double> values;
    for (std::size_t i = first_value; i < fields.size(); ++i) {
      double v = 0.0;
      if (!parse_number(fields[i], &v)) {
        throw parse_error(origin + ": row \"" + label + "\", column " +
                          std::to_string(i + 1) + ": not a number: \"" +
                          fields[i] + "\"");
      }
      if (v < 0.0) {
        throw parse_error(origin + ": row \"" + label + "\", column " +
                          std::to_string(i + 1) + ": negative entry " +
                          format_double(v));
      }
      values.push_back(v);
    }
    try {
      out.push_back({label, Allocation(std::move(values))});
    } catch (const std::invalid_argument& e) {
      throw parse_error(origin + ": row \"" + label + "\": " + e.what());
    }
  }
  if (out.empty()) throw parse_error(origin + ": no allocation rows found");
  return out;
}

std::vector<LabeledAllocation> parse_json_vectors(const std::string& text,
                                                  const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_object()) {
    throw parse_error(origin + ": expected {\"vectors\": {label: [..]}}");
  }
  std::vector<LabeledAllocation> out;
  for (const auto& [label, arr] : j["vectors"].items()) {
    if (!arr.is_array() || arr.empty()) {
      throw parse_error(origin + ": vector \"" + label +
                        "\" must be a non-empty array");
    }
    std::vector<double> values;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) {
        throw parse_error(origin + ": vector \"" + label + "\", index " +
                          std::to_string(i) + ": not a number");
      }
      const double v = arr[i].get<double>();
      if (v < 0.0) {
        throw parse_error(origin + ": vector \"" + label + "\", index " +
                          std::to_string(i) + ": negative entry " +
                          format_double(v));
      }
      values.push_back(v);
    }
    try {
      out.push_back({label, Allocation(std::move(values))});
    } catch (const std::invalid_argument& e) {
      throw parse_error(origin + ": vector \"" + label + "\": " + e.what());
    }
  }
  if (out.empty()) throw parse_error(origin + ": \"vectors\" is empty");
  return out;
}

}  // namespace

std::vector<LabeledAllocation> parse_allocations_text(const std::string& text,
                                                      const std::string& origin) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_vectors(text, origin);
    break;
  }
  return parse_csv(text, origin);
}

std::vector<LabeledAllocation> parse_allocations(const std::string& path) {
  return parse_allocations_text(read_file(path), path);
}

GridSpec parse_grid(const std::string& text, bool exclude_singular) {
  GridSpec grid;
  std::vector<double> raw;
  if (text.find(':') != std::string::npos) {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
        !(in >> std::ws).eof()) {
      throw parse_error("grid: expected start:step:stop, got \"" + text + "\"");
    }
    if (!(step > 0.0)) throw parse_error("grid: step must be positive");
    if (stop < start) throw parse_error("grid: stop must be >= start");
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= count; ++k) raw.push_back(start + k * step);
  } else {
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
      double v = 0.0;
      if (!parse_number(trim(field), &v)) {
        throw parse_error("grid: not a number: \"" + trim(field) + "\"");
      }
      raw.push_back(v);
    }
    if (raw.empty()) throw parse_error("grid: empty");
  }
  for (double v : raw) {
    if (exclude_singular && std::abs(v) <= 1e-12) {
      grid.excluded_zero = true;
    } else if (exclude_singular && std::abs(v - 1.0) <= 1e-12) {
      grid.excluded_one = true;
    } else {
      grid.values.push_back(v);
    }
  }
  return grid;
}

FeasibleRegion region_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("b")) {
    throw parse_error("region: expected {\"A\": [[..],..], \"b\": [..]}");
  }
  if (!j["A"].is_array() || !j["b"].is_array()) {
    throw parse_error("region: \"A\" and \"b\" must be arrays");
  }
  std::vector<std::vector<double>> A;
  for (std::size_t i = 0; i < j["A"].size(); ++i) {
    const auto& row = j["A"][i];
    if (!row.is_array()) {
      throw parse_error("region: \"A\" row " + std::to_string(i) +
                        " is not an array");
    }
    std::vector<double> r;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        throw parse_error("region: \"A\" row " + std::to_string(i) +
                          ", column " + std::to_string(k) + ": not a number");
      }
      r.push_back(row[k].get<double>());
    }
    if (!A.empty() && r.size() != A.front().size()) {
      throw parse_error("region: \"A\" row " + std::to_string(i) +
                        " has ragged length");
    }
    A.push_back(std::move(r));
  }
  std::vector<double> b;
  for (std::size_t i = 0; i < j["b"].size(); ++i) {
    if (!j["b"][i].is_number()) {
      throw parse_error("region: \"b\" index " + std::to_string(i) +
                        ": not a number");
    }
    b.push_back(j["b"][i].get<double>());
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    for (const auto& name : j["names"]) {
      if (!name.is_string()) throw parse_error("region: names must be strings");
      names.push_back(name.get<std::string>());
    }
  }
  try {
    return make_region(std::move(A), std::move(b), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

FeasibleRegion load_region(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  return region_from_json(j);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void write_sweep_csv(std::ostream& os, const std::vector<std::string>& labels,
                     const std::vector<SweepReport>& sweeps) {
  if (sweeps.empty() || labels.size() != sweeps.size()) {
    throw std::invalid_argument("write_sweep_csv: labels and sweeps must align");
  }
  os << "beta";
  if (sweeps.size() == 1) {
    os << ",f";
  } else {
    for (const auto& label : labels) os << ",f_" << label;
  }
  os << "\n";
  const std::size_t rows = sweeps.front().points.size();
  for (const auto& s : sweeps) {
    if (s.points.size() != rows) {
      throw std::invalid_argument("write_sweep_csv: sweeps must share the grid");
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    os << format_double(sweeps.front().points[r].beta);
    for (const auto& s : sweeps) os << "," << format_double(s.points[r].value);
    os << "\n";
  }
}

void write_ratio_csv(std::ostream& os, const std::vector<double>& alphas,
                     const std::vector<double>& ratios) {
  os << "alpha,ratio\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    os << format_double(alphas[i]) << "," << format_double(ratios[i]) << "\n";
  }
}

void write_curve_csv(std::ostream& os, const std::vector<TradeoffPoint>& curve) {
  os << "lambda,fairness,throughput,pareto_flag\n";
  for (const auto& p : curve) {
    os << format_double(p.lambda) << "," << format_double(p.fairness) << ","
       << format_double(p.throughput) << ","
       << (p.pareto_flag == ParetoFlag::preserved ? "preserved" : "at_risk")
       << "\n";
  }
}

nlohmann::ordered_json curve_allocations_json(
    const std::vector<TradeoffPoint>& curve) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : curve) {
    nlohmann::ordered_json e;
    e["lambda"] = json_number(p.lambda);
    auto xs = nlohmann::ordered_json::array();
    for (double v : p.allocation) xs.push_back(json_number(v));
    e["allocation"] = xs;
    e["fairness"] = json_number(p.fairness);
    e["throughput"] = json_number(p.throughput);
    e["phi"] = json_number(p.phi);
    e["pareto_flag"] =
        p.pareto_flag == ParetoFlag::preserved ? "preserved" : "at_risk";
    arr.push_back(e);
  }
  nlohmann::ordered_json out;
  out["allocations"] = arr;
  return out;
}

}  // namespace fairmetric
