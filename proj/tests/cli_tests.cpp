// Black-box tests for the lshmc command-line tool.  Invoked by ctest with the
// CLI binary path as argv[1]; spawns real processes and inspects exit codes
// and output files.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-lshmc>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path work = fs::temp_directory_path() / "lshmc_cli_tests";
  fs::remove_all(work);
  fs::create_directories(work);

  {
    fs::path out = work / "sample";
    int rc = run(bin +
                 " sample --target gaussian-iso --dim 4 --eps 0.1 --seed 42"
                 " --k 300 --out-dir " +
                 out.string() + " > " + (work / "sample.out").string());
    check(rc == 0, "sample smoke run exits 0");
    check(fs::exists(out / "chains.csv"), "sample writes chains.csv");
    check(fs::exists(out / "summary.json"), "sample writes summary.json");
    std::string stdout_line = slurp(work / "sample.out");
    check(!stdout_line.empty() && stdout_line[0] == '{',
          "sample prints a one-line JSON summary");
    check(slurp(out / "chains.csv").rfind("# tool=lshmc", 0) == 0,
          "chains.csv embeds a provenance block");
  }

  {
    int rc = run(bin +
                 " equivalence --target gaussian-diag --dim 8 --kappa 10"
                 " --trials 1000 --eta 0.15 > /dev/null");
    check(rc == 0, "equivalence reports agreement and exits 0");
  }

  {
    int rc = run(bin + " sample --no-such-flag 1 > /dev/null 2>&1");
    check(rc == 2, "unknown flag exits 2");
    rc = run(bin + " sample --dim 2 --eta 0.1 --paper-step > /dev/null 2>&1");
    check(rc == 2, "conflicting --eta and --paper-step exits 2");
    rc = run(bin + " sample --target no-such-kind --dim 2 > /dev/null 2>&1");
    check(rc == 2, "unknown target kind exits 2");
    rc = run(bin + " > /dev/null 2>&1");
    check(rc == 2, "missing subcommand exits 2");
  }

  {
    fs::path a = work / "det_a", b = work / "det_b";
    std::string common =
        " sample --target hard --kappa 9 --dim 3 --eps 0.2 --seed 7 --k 200"
        " --out-dir ";
    check(run(bin + common + a.string() + " > /dev/null") == 0,
          "deterministic run A exits 0");
    check(run(bin + common + b.string() + " > /dev/null") == 0,
          "deterministic run B exits 0");
    check(slurp(a / "chains.csv") == slurp(b / "chains.csv"),
          "same seed gives byte-identical chains.csv");
    check(slurp(a / "summary.json") == slurp(b / "summary.json"),
          "same seed gives byte-identical summary.json");
  }

  {
    fs::path out = work / "lb";
    int rc = run(bin +
                 " lower-bound --kappa 100 --dim 4 --c-values 1,2"
                 " --mc-draws 500 --seed 3 --out-dir " +
                 out.string() + " > /dev/null");
    check(rc == 0, "lower-bound run exits 0");
    check(fs::exists(out / "lower_bound.csv"), "lower-bound writes its CSV");
  }

  {
    fs::path out = work / "validate";
    int rc = run(bin +
                 " validate-target --target quartic --dim 3 --blend 2"
                 " --probes 200 > /dev/null");
    check(rc == 0, "validate-target passes on a consistent target");
  }

  {
    // Config file keys mirror the flags; explicit flags win.
    fs::path cfg = work / "run.cfg";
    std::ofstream(cfg) << "target=gaussian-iso\ndim=3\nk=50\nseed=5\n";
    fs::path out = work / "cfg_out";
    int rc = run(bin + " sample --config " + cfg.string() + " --out-dir " +
                 out.string() + " > /dev/null");
    check(rc == 0, "config-file driven run exits 0");
    std::string csv = slurp(out / "chains.csv");
    check(csv.find("x_2") != std::string::npos &&
              csv.find("x_3") == std::string::npos,
          "config file sets the dimension");
  }

  if (failures == 0) std::cout << "all CLI checks passed\n";
  return failures == 0 ? 0 : 1;
}
