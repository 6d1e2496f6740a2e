#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swwlab/catalog.hpp"

namespace swwlab::cli {

// shortest decimal text that parses back to the same double
std::string format_number(double x);

void write_csv(std::ostream& out, const GridField& f);
// one block per t-slice: "# t = ..." then x-major rows of
// "x y u v h r1 r2 converged catastrophe", a blank line after each x row and
// two blank lines between slices
void write_plotdata(std::ostream& out, const GridField& f);

struct CsvRow {
  Point pt;
  State state;
  RVec invariants{};
  bool has_r2 = false;
  bool converged = false;
  bool catastrophe = false;
};

std::vector<CsvRow> read_csv(std::istream& in);

} // namespace swwlab::cli
