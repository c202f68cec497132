#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string output;
};

/// Runs the tool inside `dir`, capturing stdout and stderr together.
Outcome run(const fs::path& dir, const std::string& args) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = "cd '" + dir.string() + "' && '" + std::string(CQED_CLI_PATH) + "' " +
                          args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream os;
  os << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, os.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cqed_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("simulate writes a trajectory, a plot script and a summary") {
  const fs::path dir = scratch("simulate");
  const Outcome r = run(dir, "simulate --variant qubit --out run.csv");
  CHECK(r.code == 0);
  CHECK(r.output.find("fidelity_unconditional") != std::string::npos);
  CHECK(fs::exists(dir / "run.csv"));
  CHECK(fs::exists(dir / "run.gp"));
  CHECK(slurp(dir / "run.csv").rfind("t,stage,P1,P2,P3,P4,P5,Pp,norm2\n", 0) == 0);
}

TEST_CASE("unknown config key exits with 2") {
  const fs::path dir = scratch("badkey");
  std::ofstream(dir / "bad.cfg") << "variant = qubit\nomega_x = 3\n";
  const Outcome r = run(dir, "simulate --config bad.cfg");
  CHECK(r.code == 2);
  CHECK(r.output.find("omega_x") != std::string::npos);
  CHECK(r.output.find("bad.cfg:2") != std::string::npos);

  CHECK(run(dir, "simulate --set omega_x=3").code == 2);
  CHECK(run(dir, "simulate --kappa nope").code == 2);
  CHECK(run(dir, "simulate --n-max 0").code == 2);
  CHECK(run(dir, "frobnicate").code == 2);
  CHECK(run(dir, "").code == 2);
  CHECK(run(dir, "--help").code == 0);
}

TEST_CASE("command-line flags override the config file") {
  const fs::path dir = scratch("override");
  std::ofstream(dir / "run.cfg") << "variant = qubit\nkappa = 0.05\n";
  const Outcome r = run(dir, "simulate --config run.cfg --kappa 0 --variant qutrit");
  CHECK(r.code == 0);
  CHECK(r.output.find("qutrit") != std::string::npos);
  CHECK(r.output.find("success_probability       1\n") != std::string::npos);
}

TEST_CASE("sweep output") {
  const fs::path dir = scratch("sweep");
  const std::string args = "sweep --sweep-steps 50 --n-max 1 --out k.csv";
  CHECK(run(dir, args).code == 0);
  const std::string first = slurp(dir / "k.csv");
  CHECK(first.rfind("kappa,P_A,F_A,P_B,F_B\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : first) lines += c == '\n';
  CHECK(lines == 51);
  CHECK(fs::exists(dir / "k.gp"));

  CHECK(run(dir, args).code == 0);
  CHECK(slurp(dir / "k.csv") == first);
}

TEST_CASE("failed sweep points give exit code 1") {
  const fs::path dir = scratch("sweepfail");
  const Outcome r = run(dir, "sweep --sweep-parameter delta --sweep-min 0 --sweep-max 10 "
                             "--sweep-steps 2 --n-max 1 --out d.csv");
  CHECK(r.code == 1);
  CHECK(slurp(dir / "d.csv").find("nan") != std::string::npos);
}

TEST_CASE("diagnose") {
  const fs::path dir = scratch("diagnose");
  const Outcome r = run(dir, "diagnose --kappa 0.003467 --gamma 0.004667");
  CHECK(r.code == 0);
  CHECK(r.output.find("stage_a.cooperativity") != std::string::npos);
  CHECK(r.output.find("strong_coupling") != std::string::npos);
}

TEST_CASE("verify") {
  const fs::path dir = scratch("verify");
  const Outcome r = run(dir, "verify --draws 10 --tolerance 1e-7");
  CHECK(r.code == 0);
  CHECK(r.output.find("10/10 checks passed") != std::string::npos);
}
