#include "swwlab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "swwlab/errors.hpp"

namespace swwlab::cli {
namespace {

using nlohmann::json;

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object())
    throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k))
      throw ConfigError(where + ": unknown key '" + k + "'");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number())
    throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key))
    return;
  const std::string w = where + "." + key;
  if constexpr (std::is_same_v<T, int>)
    out = integer(obj[key], w);
  else if constexpr (std::is_same_v<T, double>)
    out = number(obj[key], w);
  else if constexpr (std::is_same_v<T, bool>) {
    if (!obj[key].is_boolean())
      throw ConfigError(w + ": expected true or false");
    out = obj[key].get<bool>();
  } else {
    if (!obj[key].is_string())
      throw ConfigError(w + ": expected a string");
    out = obj[key].get<std::string>();
  }
}

std::array<double, 2> pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(where + ": expected [a, b]");
  return {number(j[0], where), number(j[1], where)};
}

Axis axis(const json& j, const std::string& where) {
  if (j.is_number())
    return {j.get<double>(), j.get<double>(), 1};
  allow_keys(j, where, {"lo", "hi", "n"});
  Axis a;
  if (!j.contains("lo") || !j.contains("hi") || !j.contains("n"))
    throw ConfigError(where + ": needs lo, hi and n");
  a.lo = number(j["lo"], where + ".lo");
  a.hi = number(j["hi"], where + ".hi");
  a.n = integer(j["n"], where + ".n");
  return a;
}

void read_constants(const json& j, Constants& c) {
  const std::string w = "solution.constants";
  allow_keys(j, w, {"u0", "v0", "h0", "C", "eps", "dir1", "dir2", "phi1", "phi2", "m", "c"});
  read(j, "u0", c.u0, w);
  read(j, "v0", c.v0, w);
  read(j, "h0", c.h0, w);
  read(j, "C", c.C, w);
  read(j, "eps", c.eps, w);
  read(j, "phi1", c.phi1, w);
  read(j, "phi2", c.phi2, w);
  read(j, "m", c.m, w);
  if (j.contains("dir1"))
    c.dir1 = pair(j["dir1"], w + ".dir1");
  if (j.contains("dir2"))
    c.dir2 = pair(j["dir2"], w + ".dir2");
  if (j.contains("c")) {
    const json& a = j["c"];
    if (!a.is_array() || a.size() != 5)
      throw ConfigError(w + ".c: expected five numbers");
    for (int i = 0; i < 5; ++i)
      c.c[i] = number(a[i], w + ".c");
  }
}

void read_profiles(const json& j, Profiles& p) {
  const std::string w = "solution.profiles";
  allow_keys(j, w, {"phi", "F", "G", "h1", "h2", "lam21"});
  const std::pair<const char*, std::optional<ProfileFn>*> slots[] = {
      {"phi", &p.phi}, {"F", &p.F}, {"G", &p.G}, {"h1", &p.h1}, {"h2", &p.h2}, {"lam21", &p.lam21}};
  for (const auto& [key, slot] : slots)
    if (j.contains(key))
      *slot = parse_profile(j[key], w + "." + key);
}

} // namespace

ProfileFn parse_profile(const json& j, const std::string& where) {
  if (j.is_number())
    return ProfileFn::constant(j.get<double>());
  allow_keys(j, where, {"kind", "A", "B", "offset", "scale", "xs", "ys", "interp"});
  std::string kind_name;
  read(j, "kind", kind_name, where);
  if (kind_name.empty())
    throw ConfigError(where + ": missing kind");
  const ProfileKind kind = profile_kind_from_string(kind_name);
  if (kind == ProfileKind::CustomTable) {
    if (!j.contains("xs") || !j.contains("ys") || !j["xs"].is_array() || !j["ys"].is_array())
      throw ConfigError(where + ": custom_table needs xs and ys arrays");
    std::vector<double> xs, ys;
    for (const auto& v : j["xs"])
      xs.push_back(number(v, where + ".xs"));
    for (const auto& v : j["ys"])
      ys.push_back(number(v, where + ".ys"));
    std::string interp = "pchip";
    read(j, "interp", interp, where);
    if (interp != "pchip" && interp != "linear")
      throw ConfigError(where + ".interp: expected pchip or linear");
    if (xs.size() != ys.size())
      throw ConfigError(where + ": xs and ys differ in length");
    return ProfileFn::table(std::move(xs), std::move(ys),
                            interp == "linear" ? Interp::Linear : Interp::Pchip);
  }
  ProfileFn p = ProfileFn::of(kind);
  read(j, "A", p.A, where);
  read(j, "B", p.B, where);
  read(j, "offset", p.offset, where);
  read(j, "scale", p.scale, where);
  return p;
}

RunConfig parse_config(const json& doc) {
  allow_keys(doc, "config", {"solution", "params", "grid", "solver", "rsww", "verify", "output"});
  RunConfig cfg;
  cfg.params.g = 9.81; // physical default on the command line; the library default is 1

  if (doc.contains("params")) {
    const json& p = doc["params"];
    allow_keys(p, "params", {"g", "omega"});
    read(p, "g", cfg.params.g, "params");
    read(p, "omega", cfg.params.omega, "params");
  }
  validate(cfg.params);

  if (!doc.contains("solution"))
    throw ConfigError("config: missing 'solution'");
  const json& s = doc["solution"];
  allow_keys(s, "solution", {"family", "table5", "constants", "profiles"});
  if (s.contains("table5")) {
    if (s.contains("family") || s.contains("profiles"))
      throw ConfigError("solution: 'table5' excludes 'family' and 'profiles'");
    Table5Options o;
    if (s.contains("constants")) {
      const json& c = s["constants"];
      allow_keys(c, "solution.constants", {"h0", "u0", "v0", "A1", "B1", "A2", "B2"});
      read(c, "h0", o.h0, "solution.constants");
      read(c, "u0", o.u0, "solution.constants");
      read(c, "v0", o.v0, "solution.constants");
      read(c, "A1", o.A1, "solution.constants");
      read(c, "B1", o.B1, "solution.constants");
      read(c, "A2", o.A2, "solution.constants");
      read(c, "B2", o.B2, "solution.constants");
    }
    cfg.solution = table5(integer(s["table5"], "solution.table5"), cfg.params, o);
  } else {
    std::string fam;
    read(s, "family", fam, "solution");
    if (fam.empty())
      throw ConfigError("solution: missing 'family'");
    const Family f = family_from_string(fam);
    // start from the representative instance so partial configs stay usable
    const SolutionDescriptor base = representative(f, cfg.params);
    Constants c = base.c;
    Profiles p = s.contains("profiles") ? Profiles{} : base.p;
    if (s.contains("constants"))
      read_constants(s["constants"], c);
    if (s.contains("profiles"))
      read_profiles(s["profiles"], p);
    cfg.solution = make_solution(f, c, p, cfg.params);
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    allow_keys(g, "grid", {"t", "x", "y"});
    if (g.contains("t"))
      cfg.grid.t = axis(g["t"], "grid.t");
    if (g.contains("x"))
      cfg.grid.x = axis(g["x"], "grid.x");
    if (g.contains("y"))
      cfg.grid.y = axis(g["y"], "grid.y");
  }
  validate(cfg.grid);

  if (doc.contains("solver")) {
    const json& j = doc["solver"];
    allow_keys(j, "solver", {"tol", "max_iter", "coarse_stride", "catastrophe_tol", "max_step"});
    read(j, "tol", cfg.solver.tol, "solver");
    read(j, "max_iter", cfg.solver.max_iter, "solver");
    read(j, "coarse_stride", cfg.coarse_stride, "solver");
    read(j, "catastrophe_tol", cfg.solver.catastrophe_tol, "solver");
    read(j, "max_step", cfg.solver.continuation.max_step, "solver");
    if (!(cfg.solver.tol > 0) || cfg.solver.max_iter < 1 || cfg.coarse_stride < 1 ||
        !(cfg.solver.continuation.max_step > 0))
      throw ConfigError("solver: tol, max_iter, coarse_stride and max_step must be positive");
  }

  if (doc.contains("rsww")) {
    const json& j = doc["rsww"];
    allow_keys(j, "rsww", {"enabled", "shift"});
    read(j, "enabled", cfg.rsww, "rsww");
    if (j.contains("shift") && !j["shift"].is_null())
      cfg.shift = number(j["shift"], "rsww.shift");
  }

  if (doc.contains("verify")) {
    const json& j = doc["verify"];
    allow_keys(j, "verify", {"fd_step", "tol", "samples", "box"});
    read(j, "fd_step", cfg.fd_step, "verify");
    read(j, "tol", cfg.tol, "verify");
    read(j, "samples", cfg.samples, "verify");
    if (j.contains("box")) {
      const json& b = j["box"];
      allow_keys(b, "verify.box", {"t", "x", "y"});
      SampleBox box;
      const auto range = [&b](const char* k, double& lo, double& hi) {
        if (!b.contains(k))
          return;
        const auto r = pair(b[k], std::string("verify.box.") + k);
        lo = r[0];
        hi = r[1];
      };
      range("t", box.t_lo, box.t_hi);
      range("x", box.x_lo, box.x_hi);
      range("y", box.y_lo, box.y_hi);
      cfg.box = box;
    }
    if (!(cfg.fd_step > 0) || !(cfg.tol > 0) || cfg.samples < 1)
      throw ConfigError("verify: fd_step, tol and samples must be positive");
  }

  if (doc.contains("output")) {
    const json& j = doc["output"];
    allow_keys(j, "output", {"path", "format"});
    read(j, "path", cfg.out_path, "output");
    read(j, "format", cfg.format, "output");
  }
  if (cfg.format != "csv" && cfg.format != "plotdata")
    throw ConfigError("output.format must be csv or plotdata");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

} // namespace swwlab::cli
