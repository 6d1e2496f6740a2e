#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "swwlab/catalog.hpp"
#include "swwlab/rsww.hpp"
#include "swwlab/verify.hpp"

namespace swwlab::cli {

struct RunConfig {
  SolutionDescriptor solution;
  PhysParams params;
  Grid grid{{0.0, 0.0, 1}, {-1.0, 1.0, 33}, {-1.0, 1.0, 33}};
  EvalOptions solver;
  int coarse_stride = 8;

  bool rsww = false;
  std::optional<double> shift; // default pi / (2 omega)

  double fd_step = 1e-3;
  double tol = 1e-6;
  int samples = 50;
  std::optional<SampleBox> box;

  std::string out_path; // empty: stdout
  std::string format = "csv";

  TimeShift time_shift() const {
    return shift ? TimeShift{*shift} : TimeShift::standard(params.omega);
  }
};

// Throws ConfigError (or the catalog's construction errors) on bad input.
// Unknown keys anywhere in the document are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

ProfileFn parse_profile(const nlohmann::json& j, const std::string& where);

} // namespace swwlab::cli
