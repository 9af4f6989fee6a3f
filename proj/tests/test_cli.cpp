#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string(FUZZYF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fuzzyf_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

nlohmann::json load_json(const fs::path& p) {
  return nlohmann::json::parse(slurp(p));
}

}  // namespace

TEST_CASE("axioms subcommand passes the canonical example") {
  const fs::path dir = fresh_dir("axioms");
  const fs::path out = dir / "report.json";
  const int rc = run("axioms --metric canonical --samples 1000 "
                     "--chain-samples 500 --seed 7 --out " + out.string());
  CHECK(rc == 0);
  auto j = load_json(out);
  REQUIRE(j.contains("checks"));
  CHECK(j["checks"].size() == 5);
  for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
  CHECK(j["seed"] == 7);
}

TEST_CASE("axioms report is identical across serial and parallel scans") {
  const fs::path dir = fresh_dir("axioms_det");
  const fs::path a = dir / "par.json";
  const fs::path b = dir / "ser.json";
  CHECK(run("axioms --samples 800 --chain-samples 800 --seed 3 --out " +
            a.string()) == 0);
  CHECK(run("axioms --samples 800 --chain-samples 800 --seed 3 --serial "
            "--out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("no-such-subcommand") == 2);
  CHECK(run("net") == 2);               // missing required --points
  CHECK(run("axioms --metric bogus") == 2);
}

TEST_CASE("net subcommand finds the separated family") {
  const fs::path dir = fresh_dir("net");
  const fs::path pts = dir / "points.txt";
  {
    std::ofstream os(pts);
    os << "# odd lattice\n1\n3\n5\n7\n9\n";
  }
  const fs::path out = dir / "net.json";
  const int rc = run("net --points " + pts.string() +
                     " --epsilon 0.47140452079103173 "
                     "--r 0.29289321881345254 --out " + out.string());
  CHECK(rc == 0);
  auto j = load_json(out);
  CHECK(j["points"] == 5);
  CHECK(j["greedy"]["is_net"] == true);
  CHECK(j["greedy"]["size"] == 5);
  CHECK(j["brute_force"]["exists"] == true);
  CHECK(j["brute_force"]["size"] == 5);
  CHECK(j["boundedness"]["beta"].get<double>() > 0.0);
}

TEST_CASE("net subcommand reports an impossible candidate pool") {
  const fs::path dir = fresh_dir("net_fail");
  const fs::path pts = dir / "points.txt";
  const fs::path cand = dir / "cand.txt";
  {
    std::ofstream os(pts);
    os << "0\n";
  }
  {
    std::ofstream os(cand);
    os << "100\n";
  }
  CHECK(run("net --points " + pts.string() + " --candidates " + cand.string() +
            " --epsilon 1 --r 0.5") == 1);
}

TEST_CASE("net subcommand rejects a missing file") {
  CHECK(run("net --points /nonexistent/points.txt") == 2);
}

TEST_CASE("fixpoint subcommand on the contracting and expanding maps") {
  const fs::path dir = fresh_dir("fixpoint");
  const fs::path out = dir / "fp.json";
  const fs::path trace = dir / "trace.csv";
  const int ok = run("fixpoint --samples 2000 --seed 5 --out " + out.string() +
                     " --trace " + trace.string());
  CHECK(ok == 0);
  auto j = load_json(out);
  CHECK(j["contraction"]["holds"] == true);
  CHECK(j["iteration"]["converged"] == true);
  CHECK(std::abs(j["iteration"]["fixed_point"].get<double>()) < 1e-5);
  const std::string tr = slurp(trace);
  CHECK(tr.rfind("iter,point,one_minus_m_t0.5,one_minus_m_t1,one_minus_m_t2,"
                 "psi_bound_t0.5,psi_bound_t1,psi_bound_t2",
                 0) == 0);
  CHECK(tr.find("\n0,5,") != std::string::npos);  // row 0 starts at x0 = 5

  const int bad = run("fixpoint --scale 10 --domain evens --x0 2 "
                      "--max-iter 10 --samples 500 --out " + out.string());
  CHECK(bad == 1);
  auto jb = load_json(out);
  CHECK(jb["contraction"]["holds"] == false);
  CHECK(jb["contraction"].contains("witness"));
  CHECK(jb["iteration"]["converged"] == false);
}

TEST_CASE("satellite subcommand writes a solution profile") {
  const fs::path dir = fresh_dir("satellite");
  const fs::path csv = dir / "w.csv";
  const fs::path rep = dir / "rep.json";
  const int rc = run("satellite --grid 101 --out " + csv.string() +
                     " --report " + rep.string());
  CHECK(rc == 0);
  auto j = load_json(rep);
  CHECK(j["converged"] == true);
  CHECK(j["solution_mid"].get<double>() ==
        doctest::Approx(0.9088887).epsilon(1e-4));
  const std::string body = slurp(csv);
  CHECK(body.rfind("t,omega", 0) == 0);
}

TEST_CASE("seeded commands rerun to byte-identical outputs") {
  const fs::path dir = fresh_dir("rerun");
  const fs::path f1 = dir / "one";
  const fs::path f2 = dir / "two";
  CHECK(run("figure1 --out " + f1.string()) == 0);
  CHECK(run("figure1 --out " + f2.string()) == 0);
  CHECK(slurp(f1.string() + "_a.csv") == slurp(f2.string() + "_a.csv"));
  CHECK(slurp(f1.string() + "_b.csv") == slurp(f2.string() + "_b.csv"));

  const fs::path s1 = dir / "s1.csv";
  const fs::path s2 = dir / "s2.csv";
  CHECK(run("satellite --grid 51 --out " + s1.string()) == 0);
  CHECK(run("satellite --grid 51 --out " + s2.string()) == 0);
  CHECK(slurp(s1) == slurp(s2));
}
