#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace swwlab::cli {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitVerifyFailed = 2,
  kExitPartial = 3,
  kExitSingular = 4,
};

int cmd_list(std::ostream& out, const std::string& family);
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::optional<int> expect_rank, std::ostream& out);
int cmd_symmetry(double omega, int samples, double tol, std::ostream& out);

// Full command line, in-process. Never throws; returns one of ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace swwlab::cli
