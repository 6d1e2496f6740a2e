#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>

#include "output.hpp"
#include "swwlab/errors.hpp"
#include "swwlab/symmetry.hpp"

namespace swwlab::cli {
namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

struct Check {
  std::string name;
  bool ok = true;
};

double worst_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v)
    m = std::isnan(x) ? INFINITY : std::max(m, std::abs(x));
  return m;
}

} // namespace

int cmd_list(std::ostream& out, const std::string& family) {
  if (family.empty()) {
    for (const auto& f : family_table()) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-14s rank %d  %s\n", f.id, f.rank, f.origin);
      out << buf;
    }
    return kExitOk;
  }
  const FamilyInfo& f = family_info(family_from_string(family));
  out << f.id << "\n"
      << "  rank       " << f.rank << "\n"
      << "  origin     " << f.origin << "\n"
      << "  constants  " << f.constants << "\n"
      << "  profiles   " << f.profiles << "\n"
      << "  solution   " << f.summary << "\n";
  if (f.family == Family::ES_RANK2)
    out << "  note       lam21 is the coefficient lambda_2^1 as a function of v (default 1)\n";
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  SweepOptions sweep;
  sweep.coarse_stride = cfg.coarse_stride;
  GridField f;
  if (cfg.rsww) {
    if (!(cfg.params.omega > 0.0))
      throw ConfigError("rsww evaluation needs params.omega > 0");
    f = eval_rsww_grid(cfg.solution, cfg.grid, cfg.params.omega, cfg.time_shift(), cfg.solver,
                       sweep);
  } else {
    f = eval_grid(cfg.solution, cfg.grid, cfg.solver, sweep);
  }

  std::ofstream file;
  std::ostream* dst = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file)
      throw ConfigError("cannot write '" + cfg.out_path + "'");
    dst = &file;
  }
  if (cfg.format == "plotdata")
    write_plotdata(*dst, f);
  else
    write_csv(*dst, f);
  dst->flush();

  const std::size_t n = f.cells.size(), bad = f.failures(), sing = f.singular_cells();
  log << "eval: " << cfg.solution.label << ", " << n << " cells, " << bad << " failed";
  if (cfg.rsww)
    log << ", " << sing << " on singular times";
  log << "\n";
  if (cfg.rsww && sing == n)
    return kExitSingular;
  return bad > 0 ? kExitPartial : kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::optional<int> expect_rank, std::ostream& out) {
  const SolutionDescriptor& d = cfg.solution;
  SuiteOptions o;
  o.system = cfg.rsww ? SystemKind::RSWW : SystemKind::SWW;
  if (cfg.rsww) {
    if (!(cfg.params.omega > 0.0))
      throw ConfigError("rsww verification needs params.omega > 0");
    o.omega = cfg.params.omega;
    o.shift = cfg.time_shift();
  }
  o.samples = cfg.samples;
  o.fd_step = cfg.fd_step;
  o.tol = cfg.tol;
  o.box = cfg.box ? *cfg.box : default_box(o.system, o.omega);
  std::vector<Check> checks;

  out << "verify: " << d.label << " as " << (cfg.rsww ? "RSWW" : "SWW") << " solution\n";

  const SuiteResult res = residual_suite(d, o);
  {
    const bool ok = res.passed(cfg.tol, cfg.samples);
    out << "  residual   max " << sci(res.max_residual) << " over " << res.accepted << "/"
        << cfg.samples << " points";
    if (res.accepted > 0)
      out << " (worst at t=" << format_number(res.worst.t) << " x=" << format_number(res.worst.x)
          << " y=" << format_number(res.worst.y) << ")";
    out << "  " << verdict(ok) << "\n";
    checks.push_back({"residual", ok});
  }

  const RankSuiteResult rk = rank_suite(d, o);
  {
    bool ok = true;
    if (expect_rank)
      ok = rk.accepted > 0 && rk.min_rank == *expect_rank && rk.max_rank == *expect_rank;
    out << "  rank       " << rk.min_rank << ".." << rk.max_rank << " at " << rk.accepted
        << " points, sigma2/sigma1 in [" << sci(rk.min_ratio) << ", " << sci(rk.max_ratio) << "]";
    if (expect_rank)
      out << "  expected " << *expect_rank << "  " << verdict(ok);
    out << "\n";
    if (expect_rank)
      checks.push_back({"rank", ok});
  }

  // the remaining checks live on the SWW side of the map
  SuiteOptions sw = o;
  sw.system = SystemKind::SWW;
  sw.shift.reset();
  sw.box = cfg.rsww ? default_box(SystemKind::SWW) : o.box;
  sw.samples = std::min(10, cfg.samples);
  std::vector<RVec> rvals, roots;
  std::vector<Point> pts;
  {
    const SuiteResult s = residual_suite(d, sw);
    pts = s.points;
    roots = s.roots;
    for (std::size_t i = 0; i < s.points.size(); ++i)
      rvals.push_back(d.invariants(s.roots[i], s.points[i]));
  }

  if (const auto a = make_ansatz(d)) {
    double tr = 0.0;
    for (const RVec& r : rvals)
      tr = std::max(tr, worst_abs(trace_condition_residual(*a, r, d.params)));
    const bool ok = !rvals.empty() && tr <= cfg.tol;
    out << "  trace      max " << sci(tr) << " at " << rvals.size() << " points  " << verdict(ok)
        << "\n";
    checks.push_back({"trace", ok});

    const auto fields = family_fields(d, *a);
    double ann = 0.0, inv = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Field f = anchored_field(d, roots[i], 1e-14);
      try {
        for (const auto& xi : fields) {
          const DCReport r = dc_check(*a, xi, f, pts[i]);
          ann = std::max(ann, r.annihilation);
          inv = std::max(inv, r.invariance);
        }
        ++used;
      } catch (const StencilFailure&) {
      }
    }
    const bool dok = used > 0 && ann <= cfg.tol && inv <= cfg.tol;
    out << "  invariance annihilation " << sci(ann) << ", flow " << sci(inv) << " over "
        << fields.size() << " field(s) at " << used << " points  " << verdict(dok) << "\n";
    checks.push_back({"invariance", dok});
  }

  if (d.family == Family::EE_DEGENERATE) {
    double c = 0.0;
    for (const RVec& r : roots) {
      const auto e = ee_constraint_residual(d, r);
      c = std::max({c, std::abs(e[0]), std::abs(e[1])});
    }
    const bool ok = !roots.empty() && c <= cfg.tol;
    out << "  constraint max " << sci(c) << " at " << roots.size() << " points  " << verdict(ok)
        << "\n";
    checks.push_back({"constraint", ok});
  }

  {
    double defect = 0.0;
    std::string where;
    const std::pair<const char*, const std::optional<ProfileFn>*> slots[] = {
        {"phi", &d.p.phi}, {"F", &d.p.F},   {"G", &d.p.G},
        {"h1", &d.p.h1},   {"h2", &d.p.h2}, {"lam21", &d.p.lam21}};
    for (const auto& [name, slot] : slots) {
      if (!*slot)
        continue;
      const double c = c1_defect(**slot);
      if (c > defect) {
        defect = c;
        where = name;
      }
    }
    const bool ok = defect <= cfg.tol;
    out << "  profiles   derivative jump " << sci(defect);
    if (!where.empty())
      out << " in " << where;
    out << "  " << verdict(ok) << "\n";
    checks.push_back({"profiles", ok});
  }

  std::string failed;
  for (const auto& c : checks)
    if (!c.ok)
      failed += (failed.empty() ? "" : ", ") + c.name;
  out << "result: " << (failed.empty() ? "PASS" : "FAIL (" + failed + ")") << "\n";
  return failed.empty() ? kExitOk : kExitVerifyFailed;
}

int cmd_symmetry(double omega, int samples, double tol, std::ostream& out) {
  const StructureTable t = structure_constants(omega, random_samples(samples));
  const StructureTable ref = reference_table(omega);
  out << "structure table, omega = " << format_number(omega) << ", " << samples << " samples\n";
  for (int i = 1; i <= 9; ++i)
    for (int j = i + 1; j <= 9; ++j) {
      const std::string e = format_expansion(t.at(i, j), std::max(tol, 1e-9));
      if (e != "0")
        out << "  [Y" << i << ", Y" << j << "] = " << e << "\n";
    }
  const double dev = max_deviation(t, ref);
  out << "expansion residual " << sci(t.max_expansion_residual) << "\n"
      << "ideal residual     " << sci(ideal_residual(t)) << "\n"
      << "max deviation      " << sci(dev) << "  " << verdict(dev <= tol) << "\n";
  return dev <= tol ? kExitOk : kExitVerifyFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"swwlab: Riemann-invariant solutions of the shallow water equations"};
  app.require_subcommand(1);

  std::string family;
  auto* list = app.add_subcommand("list", "list the solution families");
  list->add_option("--family", family, "show one family in detail");

  std::string config, out_path, format;
  std::optional<double> tol, fd_step, omega;
  std::optional<int> samples, expect_rank;
  const auto common = [&](CLI::App* c) {
    c->add_option("--config", config, "JSON run configuration")->required();
    c->add_option("--out", out_path, "output path (default stdout)");
    c->add_option("--format", format, "csv or plotdata");
    c->add_option("--tol", tol, "tolerance (solver for eval, residual for verify)");
    c->add_option("--fd-step", fd_step, "finite-difference step");
    c->add_option("--omega", omega, "rotation rate");
    c->add_option("--samples", samples, "number of sample points");
  };
  auto* eval = app.add_subcommand("eval", "evaluate the configured solution on its grid");
  common(eval);
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  common(verify);
  verify->add_option("--expect-rank", expect_rank, "require this Jacobian rank");

  double sym_omega = 0.5, sym_tol = 1e-6;
  int sym_samples = 20;
  auto* sym = app.add_subcommand("symmetry", "check the commutation table");
  sym->add_option("--omega", sym_omega, "rotation rate")->capture_default_str();
  sym->add_option("--samples", sym_samples, "sample points")->capture_default_str();
  sym->add_option("--tol", sym_tol, "allowed deviation")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "swwlab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (list->parsed())
      return cmd_list(out, family);
    if (sym->parsed()) {
      if (!(sym_omega > 0.0))
        throw ConfigError("--omega must be positive");
      return cmd_symmetry(sym_omega, sym_samples, sym_tol, out);
    }
    RunConfig cfg = load_config(config);
    if (!out_path.empty())
      cfg.out_path = out_path;
    if (!format.empty()) {
      if (format != "csv" && format != "plotdata")
        throw ConfigError("--format must be csv or plotdata");
      cfg.format = format;
    }
    if (omega) {
      cfg.params.omega = *omega;
      validate(cfg.params);
    }
    if (fd_step)
      cfg.fd_step = *fd_step;
    if (samples)
      cfg.samples = *samples;
    if (eval->parsed()) {
      if (tol)
        cfg.solver.tol = *tol;
      return cmd_eval(cfg, out, err);
    }
    if (tol)
      cfg.tol = *tol;
    return cmd_verify(cfg, expect_rank, out);
  } catch (const Error& e) {
    err << "swwlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "swwlab: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace swwlab::cli
