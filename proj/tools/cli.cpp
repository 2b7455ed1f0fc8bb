#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "liesym/classifier.hpp"
#include "liesym/determining.hpp"
#include "liesym/error.hpp"
#include "liesym/numerics.hpp"
#include "liesym/pde_check.hpp"
#include "liesym/reduction.hpp"

namespace liesym::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedExpression:
    case ErrorCode::InvalidCoefficient:
    case ErrorCode::ParameterConstraintViolated:
    case ErrorCode::UnboundSymbol:
    case ErrorCode::DegenerateDiffusion:
    case ErrorCode::NonRationalExponent: return kUsage;
    case ErrorCode::VerificationFailed:
    case ErrorCode::NonzeroRemainder:
    case ErrorCode::ProbableZero: return kFail;
    default: return kNumeric;
  }
}

/// "a:b" -> {a, b}
std::array<double, 2> range_of(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw UsageError("range must look like a:b, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const double a = std::stod(s.substr(0, c), &p1);
    const double b = std::stod(s.substr(c + 1), &p2);
    if (p1 != c || p2 != s.size() - c - 1) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + s + "'");
  }
}

/// Exact rational parameter such as "1/4".
double rational_param(const std::string& name, const std::string& s) {
  Expr e = parse(s);
  if (!e.is_rational()) throw UsageError(name + " must be a rational like p/q, got '" + s + "'");
  return e.value().to_double();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// ---- shared state between subcommands ------------------------------------------

struct Run {
  std::string subcommand;
  json params = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string out_path;
  std::string manifest_path;
};

void write_manifest(const Run& r, double seconds) {
  std::string path = r.manifest_path;
  if (path.empty() && !r.out_path.empty()) path = r.out_path + ".manifest.json";
  if (path.empty()) return;
  json m;
  m["subcommand"] = r.subcommand;
  m["params"] = r.params;
  m["inputs"] = r.inputs;
  m["outputs"] = r.outputs;
  m["version"] = kVersion;
  m["seed"] = probe_seed();
  json key{{"subcommand", r.subcommand}, {"params", r.params}, {"version", kVersion}, {"seed", probe_seed()}};
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(key.dump())));
  m["manifest_hash"] = hash;
  m["duration_s"] = seconds;
  std::ofstream(path) << m.dump(2) << "\n";
}

// ---- determine -----------------------------------------------------------------

int cmd_determine(std::ostream& out) {
  const auto sys = determining_system();
  json j;
  j["pde"] = "u_t = f + " + print(total_diff_x(sym::x() * Expr::func(Fn::G) * sym::u_x()) / sym::x());
  j["multiplier"] = "x^2";
  j["first_pass"] = json::array();
  for (const auto& [m, c] : sys.first_pass) j["first_pass"].push_back({{"monomial", print(m)}, {"coefficient", print(c)}});
  j["equations"] = json::array();
  for (const auto& e : sys.equations)
    j["equations"].push_back({{"label", e.label}, {"monomial", print(e.monomial)}, {"equation", print(e.equation)}});
  j["remainder"] = print(sys.remainder);
  out << j.dump(2) << "\n";
  return sys.remainder.is_zero() ? kOk : kFail;
}

// ---- verify --------------------------------------------------------------------

CaseTag tag_of(const std::string& s) {
  if (s == "a") return CaseTag::A;
  if (s == "b") return CaseTag::B;
  if (s == "c") return CaseTag::C;
  throw UsageError("case must be a, b or c");
}

int cmd_verify(const std::string& which, bool controls, const std::string& vf, const std::string& f,
               const std::string& g, std::ostream& out) {
  const int modes = !which.empty() + controls + !vf.empty();
  if (modes != 1) throw UsageError("verify needs exactly one of --case, --controls, --vf");
  bool ok = true;
  if (!which.empty()) {
    auto c = build_case(tag_of(which));
    auto pde = pde_of(c);
    out << "case " << to_string(c.tag) << ": f=" << print(c.f) << "; g=" << print(c.g) << "\n";
    for (const auto& gen : c.generators) {
      const bool pass = is_symmetry(gen.field, pde);
      ok = ok && pass;
      out << (pass ? "PASS " : "FAIL ") << gen.name << ": " << print(gen.field) << "\n";
    }
  } else if (controls) {
    for (const auto& ctl : negative_controls()) {
      const bool sym = is_symmetry(ctl.field, ctl.pde);
      const bool pass = sym == ctl.expected;
      ok = ok && pass;
      out << (pass ? "PASS " : "FAIL ") << ctl.name << ": " << (sym ? "symmetry" : "not a symmetry") << " (expected "
          << (ctl.expected ? "symmetry" : "not a symmetry") << ")\n";
    }
  } else {
    if (f.empty() || g.empty()) throw UsageError("--vf needs --f and --g");
    auto field = parse_vector_field(vf);
    auto pde = make_pde(parse(f), parse(g));
    ok = is_symmetry(field, pde);
    out << (ok ? "PASS " : "FAIL ") << print(field) << "\n";
    if (!ok) out << "condition: " << print(symmetry_condition(field, pde)) << "\n";
  }
  return ok ? kOk : kFail;
}

// ---- reduce --------------------------------------------------------------------

int cmd_reduce(const std::string& which, const std::string& branch, const std::array<std::string, 5>& k,
               std::ostream& out) {
  CaseParams p;
  Expr* slots[5] = {&p.k1, &p.k2, &p.k3, &p.k4, &p.k5};
  for (int i = 0; i < 5; ++i)
    if (!k[i].empty()) *slots[i] = parse(k[i]);
  SimilaritySolution s;
  if (which == "a") {
    s = reduce_case_a(p);
  } else if (which == "b") {
    s = reduce_case_b(p);
  } else if (which == "c") {
    if (branch != "log" && branch != "scale") throw UsageError("--branch must be log or scale");
    s = reduce_case_c(p, branch == "log" ? CBranch::Log : CBranch::Scale);
  } else {
    throw UsageError("case must be a, b or c");
  }
  json j;
  j["case"] = to_string(s.tag);
  j["f"] = print(s.pde.f);
  j["g"] = print(s.pde.g);
  j["generator"] = print(s.generator);
  j["z"] = print(s.z);
  j["ansatz"] = print(s.ansatz);
  j["reduced_ode"] = print(s.reduced_ode);
  j["multiplier"] = print(s.multiplier);
  if (s.closed_form) j["closed_form"] = print(*s.closed_form);
  if (!s.closed_form_text.empty()) j["closed_form_text"] = s.closed_form_text;
  j["verification"] = s.verification;
  j["notes"] = s.notes;
  out << j.dump(2) << "\n";
  return kOk;
}

// ---- solve / surface -------------------------------------------------------------

void write_trajectory(const Trajectory& tr, std::ostream& out) {
  out << "z,h,h_z\n";
  for (std::size_t i = 0; i < tr.s.size(); ++i)
    out << fmt17(tr.s[i]) << "," << fmt17(tr.y[i][0]) << "," << fmt17(tr.y[i][1]) << "\n";
}

Trajectory read_trajectory(const std::string& path, double k2) {
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  if (line.rfind("z,h,h_z", 0) != 0) throw UsageError("'" + path + "' is not a z,h,h_z trajectory");
  Trajectory tr;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double z = 0, h = 0, hz = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &z, &h, &hz) != 3) throw UsageError("bad trajectory row '" + line + "'");
    if (!tr.s.empty() && !(z > tr.s.back())) throw UsageError("trajectory z values must increase");
    tr.s.push_back(z);
    tr.y.push_back({h, hz});
    tr.dy.push_back({hz, example2_hzz(k2, z, h, hz)});
  }
  if (tr.s.size() < 2) throw UsageError("trajectory needs at least two rows");
  return tr;
}

int cmd_solve(double k2, double h0, double dh0, std::array<double, 2> span, double tol, std::ostream& out) {
  const auto tr = solve_example2(k2, h0, dh0, span[0], span[1], tol);
  write_trajectory(tr, out);
  return kOk;
}

struct GridFile {
  std::vector<double> x, t, u;  // u row-major in x
  json meta;
};

void write_surface(const SurfaceGrid& g, std::ostream& out) {
  out << "x\\t";
  for (double t : g.t) out << "," << fmt17(t);
  out << "\n";
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    out << fmt17(g.x[i]);
    for (std::size_t j = 0; j < g.t.size(); ++j) out << "," << fmt17(g.at(i, j));
    out << "\n";
  }
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      v.push_back(std::stod(cell));
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + cell + "'");
    }
  }
  return v;
}

GridFile read_surface(const std::string& path) {
  GridFile g;
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw UsageError("'" + path + "' is not a surface grid");
  g.t = split_numbers(line.substr(comma + 1));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_numbers(line);
    if (row.size() != g.t.size() + 1) throw UsageError("ragged surface row in '" + path + "'");
    g.x.push_back(row[0]);
    g.u.insert(g.u.end(), row.begin() + 1, row.end());
  }
  g.meta = json::parse(slurp(path + ".json"));
  return g;
}

int cmd_surface(const std::string& k2s, const std::string& k4s, const std::string& traj, std::array<double, 2> xr,
                std::array<double, 2> tr, int nx, int nt, Run& run, std::ostream& out) {
  const double k2 = rational_param("--k2", k2s);
  const double k4 = rational_param("--k4", k4s);
  if (parse(k4s) != 2 * parse(k2s)) throw UsageError("trajectories are for k4 = 2*k2 (k1 = k3 = 1)");
  const auto trajectory = read_trajectory(traj, k2);
  const auto g = surface_case_a(k2, k4, trajectory, xr, tr, nx, nt);
  write_surface(g, out);
  if (!run.out_path.empty()) {
    json side{{"k1", 1}, {"k2", k2s}, {"k3", 1}, {"k4", k4s}, {"traj", traj},
              {"xrange", xr}, {"trange", tr}, {"nx", nx}, {"nt", nt}};
    const std::string p = run.out_path + ".json";
    std::ofstream(p) << side.dump(2) << "\n";
    run.outputs.push_back(p);
  }
  return kOk;
}

// ---- check ---------------------------------------------------------------------

json report_json(const ResidualReport& r) {
  json j;
  j["rungs"] = json::array();
  for (const auto& g : r.rungs) j["rungs"].push_back({{"dx", g.dx}, {"dt", g.dt}, {"max", g.max_norm}, {"l2", g.l2_norm}});
  if (r.slope) j["slope"] = *r.slope;
  return j;
}

ResidualReport grid_ladder(const GridFile& g, const Model& m, int rungs) {
  const std::size_t nx = g.x.size();
  const std::size_t nt = g.t.size();
  const std::size_t top = std::size_t{1} << (rungs - 1);
  if (nx < 2 * top + 1 || nt < 2 * top + 1 || (nx - 1) % top || (nt - 1) % top)
    throw UsageError("grid size minus one must be divisible by 2^(ladder-1) with at least 3 coarse nodes");
  const double x0 = g.x.front();
  const double t0 = g.t.front();
  const double dx = g.x[1] - g.x[0];
  const double dt = g.t[1] - g.t[0];
  auto u = [&](double x, double t) {
    const auto i = static_cast<std::size_t>(std::lround((x - x0) / dx));
    const auto j = static_cast<std::size_t>(std::lround((t - t0) / dt));
    return g.u[i * nt + j];
  };
  ResidualReport rep;
  for (int r = 0; r < rungs; ++r) {
    const std::size_t stride = top >> r;
    std::vector<double> xs, ts;
    for (std::size_t i = 0; i < nx; i += stride) xs.push_back(g.x[i]);
    for (std::size_t j = 0; j < nt; j += stride) ts.push_back(g.t[j]);
    rep.rungs.push_back(fd_residual(u, m, xs, ts));
  }
  if (rep.rungs.size() >= 3) rep.slope = std::log2(rep.rungs[rep.rungs.size() - 2].max_norm / rep.rungs.back().max_norm);
  return rep;
}

int cmd_check(const std::vector<std::string>& solution, int ladder, Run& run, std::ostream& out) {
  if (solution.empty()) throw UsageError("--solution is required");
  if (ladder < 1 || ladder > 8) throw UsageError("--ladder must be in 1..8");
  const std::string& kind = solution[0];
  const Bindings unit{{"k1", 1.0}, {"k2", 1.0}, {"k3", 1.0}, {"k4", 1.0}, {"k5", 1.0}};
  ResidualReport rep;
  json j;
  j["solution"] = kind;
  if (kind == "case-b") {
    auto u = [](double x, double t) { return t + std::log(bessel_j0(x)); };
    rep = residual_ladder(u, numeric_model(pde_of_case(CaseTag::B), unit), {1, 2}, {0, 1}, 9, ladder);
    j["u"] = "t + ln(J0(x))";
  } else if (kind == "case-c-log") {
    auto u = [](double x, double t) { return t + std::log(2.0 + 0.5 * std::log(x)); };
    rep = residual_ladder(u, numeric_model(pde_of_case(CaseTag::C), unit), {1, 3}, {0, 1}, 9, ladder);
    j["u"] = "t + ln(2 + ln(x)/2)";
  } else if (kind == "case-c-scale") {
    auto b = unit;
    b["k5"] = -1.0;
    auto u = [](double x, double t) { return std::log(x * x / (4.0 + std::exp(t))); };
    rep = residual_ladder(u, numeric_model(pde_of_case(CaseTag::C), b), {1, 2}, {0, 1}, 9, ladder);
    j["u"] = "ln(x^2/(4 + exp(t)))";
  } else if (kind == "surface") {
    if (solution.size() != 2) throw UsageError("--solution surface needs a file");
    run.inputs.push_back(solution[1]);
    const auto g = read_surface(solution[1]);
    auto num = [&](const char* key) {
      const auto& v = g.meta.at(key);
      return v.is_string() ? rational_param(key, v.get<std::string>()) : v.get<double>();
    };
    const Bindings b{{"k1", num("k1")}, {"k2", num("k2")}, {"k3", num("k3")}, {"k4", num("k4")}};
    rep = grid_ladder(g, numeric_model(pde_of_case(CaseTag::A), b), ladder);
    j["file"] = solution[1];
  } else {
    throw UsageError("unknown solution '" + kind + "'");
  }
  j["report"] = report_json(rep);
  const bool pass = rep.slope && *rep.slope >= 1.7 && *rep.slope <= 2.3;
  j["window"] = {1.7, 2.3};
  j["verdict"] = pass ? "PASS" : "FAIL";
  out << j.dump(2) << "\n";
  out << (pass ? "PASS" : "FAIL") << " residual slope " << (rep.slope ? fmt17(*rep.slope) : "n/a") << "\n";
  return pass ? kOk : kFail;
}

// ---- bessel --------------------------------------------------------------------

int cmd_bessel(const std::string& fn, double x, std::ostream& out) {
  double v = 0;
  if (fn == "j0") {
    v = bessel_j0(x);
  } else if (fn == "j1") {
    v = bessel_j1(x);
  } else if (fn == "y0") {
    v = bessel_y0(x);
  } else if (fn == "y1") {
    v = bessel_y1(x);
  } else {
    throw UsageError("--fn must be j0, j1, y0 or y1");
  }
  out << fmt17(v) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie symmetry toolkit for u_t = f(u) + (1/x)(x g(u) u_x)_x", "liesym"};
  app.require_subcommand(1);
  Run r;
  app.add_option("--out", r.out_path, "write the primary output here instead of stdout");
  app.add_option("--manifest", r.manifest_path, "run manifest path (default <out>.manifest.json)");

  app.add_subcommand("determine", "determining system as JSON");

  auto* verify = app.add_subcommand("verify", "check generators");
  std::string vcase, vf, vfun, gfun;
  bool controls = false;
  verify->add_option("--case", vcase, "a, b or c");
  verify->add_flag("--controls", controls, "run the negative controls");
  verify->add_option("--vf", vf, "xi=...; tau=...; eta=...");
  verify->add_option("--f", vfun, "source f(u)");
  verify->add_option("--g", gfun, "diffusivity g(u)");

  auto* reduce = app.add_subcommand("reduce", "similarity reduction as JSON");
  std::string rcase, branch = "scale";
  std::array<std::string, 5> ks;
  reduce->add_option("--case", rcase, "a, b or c")->required();
  reduce->add_option("--branch", branch, "case c: log or scale");
  for (int i = 0; i < 5; ++i) reduce->add_option("--k" + std::to_string(i + 1), ks[i], "parameter (rational or symbol)");

  auto* solve = app.add_subcommand("solve", "integrate the reduced ODE");
  bool example2 = false;
  std::string sk2 = "1/4", span = "0.25:16";
  double h0 = 2.0, dh0 = 2.5, tol = 1e-10;
  solve->add_flag("--example2", example2, "k1 = k3 = 1, k4 = 2 k2")->required();
  solve->add_option("--k2", sk2, "rational k2");
  solve->add_option("--h0", h0, "h(1)");
  solve->add_option("--dh0", dh0, "h'(1)");
  solve->add_option("--span", span, "z0:z1");
  solve->add_option("--tol", tol, "local tolerance");

  auto* surface = app.add_subcommand("surface", "u(x,t) grid from a trajectory");
  std::string fk2, fk4, traj, xr, trs;
  int nx = 0, nt = 0;
  surface->add_option("--k2", fk2)->required();
  surface->add_option("--k4", fk4)->required();
  surface->add_option("--traj", traj)->required();
  surface->add_option("--xrange", xr)->required();
  surface->add_option("--trange", trs)->required();
  surface->add_option("--nx", nx)->required();
  surface->add_option("--nt", nt)->required();

  auto* check = app.add_subcommand("check", "finite-difference residual ladder");
  std::vector<std::string> solution;
  int ladder = 4;
  check->add_option("--solution", solution, "case-b | case-c-log | case-c-scale | surface <file>")->expected(1, 2);
  check->add_option("--ladder", ladder, "number of rungs");

  auto* bessel = app.add_subcommand("bessel", "evaluate J0, J1, Y0, Y1");
  std::string fn;
  double bx = 0;
  bessel->add_option("--fn", fn)->required();
  bessel->add_option("--x", bx)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  r.subcommand = sub->get_name();
  for (const auto* opt : sub->get_options())
    if (opt->count() > 0 && opt->get_name() != "--help") r.params[opt->get_name()] = opt->results();

  std::ofstream file;
  if (!r.out_path.empty()) {
    file.open(r.out_path);
    if (!file) {
      err << "usage: cannot write '" << r.out_path << "'\n";
      return kUsage;
    }
    r.outputs.push_back(r.out_path);
  }
  std::ostream& o = r.out_path.empty() ? out : file;

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (r.subcommand == "determine") {
      status = cmd_determine(o);
    } else if (r.subcommand == "verify") {
      status = cmd_verify(vcase, controls, vf, vfun, gfun, o);
    } else if (r.subcommand == "reduce") {
      status = cmd_reduce(rcase, branch, ks, o);
    } else if (r.subcommand == "solve") {
      status = cmd_solve(rational_param("--k2", sk2), h0, dh0, range_of(span), tol, o);
    } else if (r.subcommand == "surface") {
      r.inputs.push_back(traj);
      status = cmd_surface(fk2, fk4, traj, range_of(xr), range_of(trs), nx, nt, r, o);
    } else if (r.subcommand == "check") {
      status = cmd_check(solution, ladder, r, o);
    } else {
      status = cmd_bessel(fn, bx, o);
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return status_of(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  o.flush();
  write_manifest(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return status;
}

}  // namespace liesym::cli
