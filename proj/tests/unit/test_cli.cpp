#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "swwlab/commands.hpp"
#include "swwlab/config.hpp"
#include "swwlab/output.hpp"
#include "swwlab/errors.hpp"

using namespace swwlab;
using namespace swwlab::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "swwlab");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_config(const std::string& name, const json& j) {
  const auto path = (std::filesystem::temp_directory_path() / ("swwlab_test_" + name + ".json")).string();
  std::ofstream(path) << j.dump(2);
  return path;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("list") {
  const auto all = run({"list"});
  CHECK(all.code == 0);
  CHECK(all.out.find("SS_RANK2") != std::string::npos);
  CHECK(all.out.find("EE_DEGENERATE") != std::string::npos);

  const auto es = run({"list", "--family", "ES_RANK2"});
  CHECK(es.code == 0);
  CHECK(es.out.find("F G lam21") != std::string::npos);

  const auto bad = run({"list", "--family", "NOPE"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown family") != std::string::npos);
}

TEST_CASE("eval of a constant state") {
  const auto cfg = write_config("const", {
      {"solution", {{"family", "E_GENERIC"}, {"profiles", {{"phi", 0.0}}}}},
      {"grid", {{"t", 0.0}, {"x", {{"lo", 0}, {"hi", 1}, {"n", 2}}}, {"y", {{"lo", 0}, {"hi", 1}, {"n", 2}}}}},
  });
  const auto r = run({"eval", "--config", cfg});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.converged);
    CHECK_FALSE(row.has_r2);
  }
  CHECK(r.out.rfind("t,x,y,u,v,h,r1,r2,converged,catastrophe\n", 0) == 0);
}

TEST_CASE("eval of the bump interaction reaches the aligned peak") {
  const auto cfg = write_config("bump", {
      {"solution", {{"table5", 3}}},
      {"params", {{"g", 1.0}}},
      {"grid", {{"t", 0.0}, {"x", {{"lo", -5}, {"hi", 5}, {"n", 41}}}, {"y", {{"lo", -5}, {"hi", 5}, {"n", 41}}}}},
  });
  const auto r = run({"eval", "--config", cfg});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  double hmax = 0.0;
  for (const auto& row : read_csv(in))
    hmax = std::max(hmax, row.state.h);
  CHECK(hmax >= 4.0 * (1 - 1e-6));
}

TEST_CASE("rotating eval at a singular time") {
  const auto cfg = write_config("singular", {
      {"solution", {{"family", "E_PERIODIC"}}},
      {"params", {{"omega", 1.0}}},
      {"rsww", {{"enabled", true}, {"shift", 0.0}}},
      {"grid", {{"t", 0.0}, {"x", {{"lo", -1}, {"hi", 1}, {"n", 3}}}, {"y", 0.0}}},
  });
  CHECK(run({"eval", "--config", cfg}).code == 4);
}

TEST_CASE("partial convergence") {
  // strong coupling folds the periodic wave inside the window
  const auto cfg = write_config("partial", {
      {"solution", {{"family", "E_PERIODIC"}, {"constants", {{"C", 5.0}}}}},
      {"grid", {{"t", {{"lo", 0}, {"hi", 2}, {"n", 21}}}, {"x", {{"lo", -1}, {"hi", 1}, {"n", 21}}}, {"y", 0.0}}},
  });
  CHECK(run({"eval", "--config", cfg}).code == 3);
}

TEST_CASE("config errors") {
  const auto unknown = write_config("unknown", {{"solution", {{"family", "E_PERIODIC"}}}, {"colour", 1}});
  CHECK(run({"eval", "--config", unknown}).code == 1);
  const auto family = write_config("family", {{"solution", {{"family", "X"}}}});
  CHECK(run({"verify", "--config", family}).code == 1);
  CHECK(run({"eval", "--config", "/nonexistent/swwlab.json"}).code == 1);
  CHECK(run({"eval"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK_THROWS_AS(parse_config(json{{"solution", {{"family", "E_PERIODIC"}}}, {"grid", {{"x", {{"n", 0}}}}}}),
                  Error);
}

TEST_CASE("default gravity on the command line") {
  const auto c = parse_config(json{{"solution", {{"family", "E_PERIODIC"}}}});
  CHECK(c.params.g == 9.81);
  const auto d = parse_config(json{{"solution", {{"family", "E_PERIODIC"}}}, {"params", {{"g", 1.0}}}});
  CHECK(d.params.g == 1.0);
}

TEST_CASE("verify") {
  const auto per = write_config("periodic", {{"solution", {{"family", "E_PERIODIC"}}}});
  const auto a = run({"verify", "--config", per, "--samples", "50", "--tol", "1e-6"});
  CHECK(a.code == 0);
  CHECK(a.out.find("result: PASS") != std::string::npos);

  const auto ee = write_config("ee", {{"solution", {{"family", "EE_DEGENERATE"}}}});
  CHECK(run({"verify", "--config", ee, "--expect-rank", "1"}).code == 0);
  CHECK(run({"verify", "--config", ee, "--expect-rank", "2"}).code == 2);

  const auto broken = write_config("broken", {
      {"solution",
       {{"family", "S_SIMPLE"},
        {"profiles",
         {{"phi", {{"kind", "custom_table"}, {"xs", {-2, 0, 2}}, {"ys", {0.1, 0.4, 0.1}}, {"interp", "linear"}}}}}}},
  });
  const auto b = run({"verify", "--config", broken});
  CHECK(b.code == 2);
  CHECK(b.out.find("FAIL") != std::string::npos);
}

TEST_CASE("symmetry") {
  CHECK(run({"symmetry", "--omega", "0.5", "--samples", "20", "--tol", "1e-6"}).code == 0);
  CHECK(run({"symmetry", "--omega", "2"}).code == 0);
  const auto r = run({"symmetry", "--samples", "3"});
  CHECK(r.code == 1);
}

TEST_CASE("numbers round trip") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 4.0})
    CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("plot data layout") {
  const auto d = representative(Family::E_PERIODIC);
  const auto f = eval_grid(d, {{0, 0.1, 2}, {-1, 1, 3}, {-1, 1, 4}});
  std::ostringstream out;
  write_plotdata(out, f);
  std::istringstream in(out.str());
  std::string line;
  int headers = 0, rows = 0, blanks = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# t = ", 0) == 0)
      ++headers;
    else if (line.empty())
      ++blanks;
    else {
      std::istringstream ls(line);
      std::vector<std::string> cols;
      for (std::string c; ls >> c;)
        cols.push_back(c);
      CHECK(cols.size() == 9);
      ++rows;
    }
  }
  CHECK(headers == 2);
  CHECK(rows == 24);
  // one blank per x row, then two more before the next slice
  CHECK(blanks == 2 * 3 + 2);
}

TEST_CASE("csv round trip reproduces the residual") {
  const double step = 1e-3;
  const Point c{0.1, 0.2, -0.3};
  auto axis = [&](double v) { return json{{"lo", v - 2 * step}, {"hi", v + 2 * step}, {"n", 9}}; };
  const auto cfg = write_config("roundtrip", {
      {"solution", {{"family", "S_ROTATING"}}},
      {"params", {{"g", 1.0}}},
      {"solver", {{"tol", 1e-14}}},
      {"grid", {{"t", axis(c.t)}, {"x", axis(c.x)}, {"y", axis(c.y)}}},
  });
  const auto r = run({"eval", "--config", cfg});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 729);
  const double h = step / 2;
  auto idx = [&](double v, double mid) { return static_cast<int>(std::lround((v - mid) / h)) + 4; };
  std::map<std::array<int, 3>, State> table;
  for (const auto& row : rows)
    table[{idx(row.pt.t, c.t), idx(row.pt.x, c.x), idx(row.pt.y, c.y)}] = row.state;
  const Field from_file = [&](const Point& q) {
    return table.at({idx(q.t, c.t), idx(q.x, c.x), idx(q.y, c.y)});
  };
  const auto d = representative(Family::S_ROTATING, {1.0, 0.0});
  const auto e = eval_sww(d, c);
  REQUIRE(e.report.converged);
  const double live =
      pde_residual(anchored_field(d, e.report.root, 1e-14), c, d.params, SystemKind::SWW, step).max_abs();
  const double file = pde_residual(from_file, c, d.params, SystemKind::SWW, step).max_abs();
  CHECK(file <= 2 * live + 1e-9);
}

}
