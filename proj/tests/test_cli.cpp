#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(AHNN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(AHNN_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("ahnn_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check") {
  const auto sym = run("check " + data("symmetric2.txt") + " --scale 10,10");
  CHECK(sym.code == 0);
  CHECK(sym.out.find("verdict: certified-stable") != std::string::npos);

  const auto swap = run("check " + data("swap2.txt"));
  CHECK(swap.code == 1);
  CHECK(swap.out.find("not-certified") != std::string::npos);

  const auto bad = temp_file("bad.txt", "2\n4 3 1\n3 5\n");
  const auto malformed = run("check " + bad);
  CHECK(malformed.code == 2);
  CHECK(malformed.out.find("line 3") != std::string::npos);

  CHECK(run("check /nonexistent/system.txt").code == 2);

  const auto minors = temp_file("minors.csv", "");
  CHECK(run("check " + data("symmetric2.txt") + " --scale 10,10 --minors " + minors).code == 0);
  CHECK(read_file(minors).rfind("index,minor\n", 0) == 0);
}

TEST_CASE("solve") {
  const auto three = run("solve " + data("three_var.txt") + " --scale 10,10,10");
  CHECK(three.code == 0);
  CHECK(three.out.find("V: 0.99") != std::string::npos);
  CHECK(three.out.find("outcome: success") != std::string::npos);

  const auto strict = run("solve " + data("swap2.txt") + " --strict");
  CHECK(strict.code == 1);
  CHECK(strict.out.find("status:") == std::string::npos);

  CHECK(run("solve " + data("symmetric2.txt") + " --tmax 0.001").code == 3);

  const auto trace = temp_file("trace.csv", "");
  CHECK(run("solve " + data("symmetric2.txt") + " --scale 10,10 --trace " + trace + " --stride 10").code == 0);
  CHECK(read_file(trace).rfind("t,u1,u2,V1,V2,E\n", 0) == 0);

  const auto rails = temp_file("rails.txt", "1\n1 40\n");
  const auto sat = run("solve " + rails);
  CHECK(sat.code == 4);
  CHECK(sat.out.find("warning") != std::string::npos);

  CHECK(run("solve " + data("symmetric2.txt") + " --scale 1,1").code == 2);
  CHECK(run("solve " + data("symmetric2.txt") + " --init noise:0.1:3").code == 0);
  CHECK(run("solve " + data("symmetric2.txt") + " --init bogus").code == 2);
}

TEST_CASE("synth") {
  const auto sym = run("synth " + data("symmetric2.txt") + " --scale 10,10");
  CHECK(sym.code == 0);
  CHECK(sym.out.find("2.5 3.33333") != std::string::npos);
  CHECK(sym.out.find("R_self (kOhm): 3.33333 5") != std::string::npos);

  const auto id = temp_file("identity.txt", "2\n1 0 0\n0 1 0\n");
  const auto ident = run("synth " + id);
  CHECK(ident.code == 0);
  CHECK(ident.out.find("R_self (kOhm): inf inf") != std::string::npos);
  CHECK(ident.out.find("  1 inf") != std::string::npos);

  const auto neg = temp_file("negative.txt", "2\n3 -1 1\n0 1 1\n");
  CHECK(run("synth " + neg).code == 2);
  CHECK(run("synth " + neg + " --mode idealized").code == 0);

  const auto netlist = temp_file("net.cir", "");
  CHECK(run("synth " + data("symmetric2.txt") + " --scale 10,10 --netlist " + netlist).code == 0);
  const auto text = read_file(netlist);
  CHECK(text.rfind("* ahnn netlist generator", 0) == 0);
  CHECK(text.find("RS2 node_sum2 0 5") != std::string::npos);
}

TEST_CASE("surface") {
  const auto id = temp_file("surface_id.txt", "2\n1 0 0\n0 1 0\n");
  const auto out = temp_file("surface.csv", "");
  CHECK(run("surface " + id + " --form modified --grid 101 --out " + out).code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "V1,V2,E");
  double best = 1e300, b1 = 1, b2 = 1;
  int rows = 0;
  while (std::getline(in, line)) {
    double v1, v2, e;
    char c;
    std::istringstream ss(line);
    ss >> v1 >> c >> v2 >> c >> e;
    if (e < best) best = e, b1 = v1, b2 = v2;
    ++rows;
  }
  CHECK(rows == 101 * 101);
  CHECK(std::abs(b1) < 1e-9);
  CHECK(std::abs(b2) < 1e-9);

  CHECK(run("surface " + data("three_var.txt")).code == 2);
}

TEST_CASE("bench") {
  const auto a = run("bench --sizes 2,3 --trials 2 --seed 5 --gain 1e4");
  const auto b = run("bench --sizes 2,3 --trials 2 --seed 5 --gain 1e4 --threads 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("size,trial,certified,converged,rel_err,residual,t_converge\n", 0) == 0);
  CHECK(run("bench --sizes 0").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("solve").code == 2);
  CHECK(run("frobnicate").code == 2);
}
