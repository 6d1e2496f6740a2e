#include "swwlab/output.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "swwlab/errors.hpp"

namespace swwlab::cli {
namespace {

const char* kHeader = "t,x,y,u,v,h,r1,r2,converged,catastrophe";

double parse_number(const std::string& s) {
  if (s == "nan")
    return std::nan("");
  if (s == "inf" || s == "-inf")
    return s[0] == '-' ? -INFINITY : INFINITY;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("bad number '" + s + "' in field file");
  return v;
}

} // namespace

std::string format_number(double x) {
  if (std::isnan(x))
    return "nan";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? p : buf);
}

void write_csv(std::ostream& out, const GridField& f) {
  out << kHeader << '\n';
  for (const auto& c : f.cells) {
    out << format_number(c.pt.t) << ',' << format_number(c.pt.x) << ',' << format_number(c.pt.y)
        << ',' << format_number(c.state.u) << ',' << format_number(c.state.v) << ','
        << format_number(c.state.h) << ',' << format_number(c.invariants[0]) << ',';
    if (f.rank > 1)
      out << format_number(c.invariants[1]);
    out << ',' << (c.converged ? 1 : 0) << ',' << (c.catastrophe ? 1 : 0) << '\n';
  }
}

void write_plotdata(std::ostream& out, const GridField& f) {
  const Grid& g = f.grid;
  for (int it = 0; it < g.t.n; ++it) {
    if (it > 0)
      out << "\n\n";
    out << "# t = " << format_number(g.t.at(it)) << '\n';
    for (int ix = 0; ix < g.x.n; ++ix) {
      for (int iy = 0; iy < g.y.n; ++iy) {
        const GridCell& c = f.cells[g.index(it, ix, iy)];
        out << format_number(c.pt.x) << ' ' << format_number(c.pt.y) << ' '
            << format_number(c.state.u) << ' ' << format_number(c.state.v) << ' '
            << format_number(c.state.h) << ' ' << format_number(c.invariants[0]) << ' '
            << format_number(f.rank > 1 ? c.invariants[1] : std::nan("")) << ' '
            << (c.converged ? 1 : 0) << ' ' << (c.catastrophe ? 1 : 0) << '\n';
      }
      out << '\n';
    }
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw ConfigError("field file: unexpected header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cols.push_back(cell);
    if (line.back() == ',')
      cols.emplace_back();
    if (cols.size() != 10)
      throw ConfigError("field file: expected 10 columns");
    CsvRow r;
    r.pt = {parse_number(cols[0]), parse_number(cols[1]), parse_number(cols[2])};
    r.state = {parse_number(cols[3]), parse_number(cols[4]), parse_number(cols[5])};
    r.invariants[0] = parse_number(cols[6]);
    r.has_r2 = !cols[7].empty();
    r.invariants[1] = r.has_r2 ? parse_number(cols[7]) : std::nan("");
    r.converged = cols[8] == "1";
    r.catastrophe = cols[9] == "1";
    rows.push_back(r);
  }
  return rows;
}

} // namespace swwlab::cli
