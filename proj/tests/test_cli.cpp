#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "liesym/error.hpp"
#include "liesym/numerics.hpp"
#include "liesym/prolongation.hpp"

using namespace liesym;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int c = cli::run(args, out, err);
  return {c, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_round_trip(const std::string& s) {
  CAPTURE(s);
  CHECK(print(parse(s)) == s);
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / ("liesym_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("determine emits the seven coefficient equations") {
  auto r = run({"determine"});
  REQUIRE(r.code == cli::kOk);
  auto j = json::parse(r.out);
  CHECK(j["equations"].size() == 7);
  CHECK(j["remainder"] == "0");
  for (const auto& e : j["equations"]) {
    check_round_trip(e["equation"]);
    check_round_trip(e["monomial"]);
  }
  for (const auto& e : j["first_pass"]) check_round_trip(e["coefficient"]);
}

TEST_CASE("verify exit codes") {
  for (const char* c : {"a", "b", "c"}) {
    auto r = run({"verify", "--case", c});
    CAPTURE(r.out);
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  auto ctl = run({"verify", "--controls"});
  CHECK(ctl.code == cli::kOk);
  auto scale = run({"verify", "--vf", "xi=x;tau=0;eta=0", "--f", "k3*exp(k4*u)", "--g", "k1*exp(k2*u)"});
  CHECK(scale.code == cli::kFail);
  CHECK(scale.out.rfind("FAIL", 0) == 0);
  auto trans = run({"verify", "--vf", "tau=1", "--f", "k3*exp(k4*u)", "--g", "k1*exp(k2*u)"});
  CHECK(trans.code == cli::kOk);
  CHECK(run({"verify"}).code == cli::kUsage);
  CHECK(run({"verify", "--vf", "xi=u_x", "--f", "0", "--g", "1"}).code == cli::kUsage);
  CHECK(run({"verify", "--vf", "xi=x", "--f", "x", "--g", "1"}).code == cli::kUsage);
}

TEST_CASE("reduce output re-parses") {
  for (std::vector<std::string> a : {std::vector<std::string>{"reduce", "--case", "a", "--k4", "2*k2"},
                                     {"reduce", "--case", "b"},
                                     {"reduce", "--case", "c", "--branch", "log"},
                                     {"reduce", "--case", "c", "--branch", "scale"}}) {
    auto r = run(a);
    REQUIRE(r.code == cli::kOk);
    auto j = json::parse(r.out);
    for (const char* k : {"f", "g", "z", "ansatz", "reduced_ode", "multiplier"}) check_round_trip(j[k]);
    check_round_trip(j["generator"].get<std::string>().substr(3, j["generator"].get<std::string>().find(';') - 3));
  }
  CHECK(run({"reduce", "--case", "c", "--branch", "up"}).code == cli::kUsage);
  CHECK(run({"reduce", "--case", "a", "--k2", "0"}).code == cli::kUsage);
}

TEST_CASE("vector fields print and parse") {
  VectorField v = make_vector_field(parse("k4*x - k2*x"), parse("2*k4*t"), parse("-2"));
  auto back = parse_vector_field(print(v));
  CHECK(back.xi == v.xi);
  CHECK(back.tau == v.tau);
  CHECK(back.eta == v.eta);
  CHECK(parse_vector_field("eta = 1").xi.is_zero());
  CHECK_THROWS_AS(parse_vector_field("zeta=1"), Error);
  CHECK_THROWS_AS(parse_vector_field("xi=1;xi=2"), Error);
}

TEST_CASE("solve, surface and check pipeline") {
  const auto dir = scratch();
  const auto traj = (dir / "tr.csv").string();
  const auto surf = (dir / "s.csv").string();

  auto bad = run({"solve", "--example2", "--k2", "1/4", "--h0", "2", "--dh0", "2.5", "--span", "0.25:16"});
  CHECK(bad.code == cli::kNumeric);
  CHECK(bad.err.find("SingularityApproached") != std::string::npos);

  REQUIRE(run({"--out", traj, "solve", "--example2", "--k2", "1/4", "--span", "0.5:16"}).code == cli::kOk);
  const std::string first = slurp(traj);
  const auto m1 = json::parse(slurp(traj + ".manifest.json"));
  REQUIRE(run({"--out", traj, "solve", "--example2", "--k2", "1/4", "--span", "0.5:16"}).code == cli::kOk);
  CHECK(slurp(traj) == first);
  const auto m2 = json::parse(slurp(traj + ".manifest.json"));
  CHECK(m1["manifest_hash"] == m2["manifest_hash"]);
  CHECK(m1["outputs"][0] == traj);
  CHECK(first.rfind("z,h,h_z\n", 0) == 0);

  auto direct = solve_example2(0.25, 2.0, 2.5, 0.5, 16.0, 1e-10);
  std::istringstream rows(first);
  std::string line;
  std::getline(rows, line);
  std::size_t n = 0;
  while (std::getline(rows, line)) {
    double z, h, hz;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &z, &h, &hz) == 3);
    CHECK(z == direct.s[n]);
    CHECK(h == direct.y[n][0]);
    ++n;
  }
  CHECK(n == direct.s.size());

  std::vector<std::string> sargs{"--out", surf, "surface", "--k2", "1/4", "--k4", "1/2", "--traj", traj,
                                 "--xrange", "1:2", "--trange", "0.5:2", "--nx", "65", "--nt", "65"};
  REQUIRE(run(sargs).code == cli::kOk);
  const std::string grid = slurp(surf);
  REQUIRE(run(sargs).code == cli::kOk);
  CHECK(slurp(surf) == grid);
  auto side = json::parse(slurp(surf + ".json"));
  CHECK(side["k2"] == "1/4");
  CHECK(grid.rfind("x\\t,0.5,", 0) == 0);

  auto chk = run({"check", "--solution", "surface", surf, "--ladder", "3"});
  CAPTURE(chk.out);
  auto j = json::parse(chk.out.substr(0, chk.out.rfind('}') + 1));
  CHECK(j["report"]["rungs"].size() == 3);
  CHECK(j.contains("verdict"));
  CHECK(run({"check", "--solution", "surface", surf, "--ladder", "8"}).code == cli::kUsage);

  auto wrong = sargs;
  wrong[6] = "1/3";
  CHECK(run(wrong).code == cli::kUsage);
  auto gap = sargs;
  gap[10] = "0.5:2";
  CHECK(run(gap).code == cli::kNumeric);
  fs::remove_all(dir);
}

TEST_CASE("check on exact solutions") {
  for (const char* s : {"case-b", "case-c-log", "case-c-scale"}) {
    auto r = run({"check", "--solution", s, "--ladder", "4"});
    CAPTURE(r.out);
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("PASS residual slope") != std::string::npos);
  }
  auto two = run({"check", "--solution", "case-b", "--ladder", "2"});
  CHECK(two.code == cli::kFail);
  CHECK(run({"check", "--solution", "nothing"}).code == cli::kUsage);
}

TEST_CASE("bessel and usage errors") {
  auto r = run({"bessel", "--fn", "j0", "--x", "2.5"});
  CHECK(r.code == cli::kOk);
  CHECK(std::stod(r.out) == bessel_j0(2.5));
  CHECK(run({"bessel", "--fn", "y0", "--x", "-1"}).code == cli::kNumeric);
  CHECK(run({"bessel", "--fn", "k0", "--x", "1"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"solve", "--example2", "--span", "1-2"}).code == cli::kUsage);
  CHECK(run({"solve", "--example2", "--k2", "k"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}
