// End-to-end checks of the command-line tool: exit codes, file outputs and
// byte-identical reruns.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "pass" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

int main() {
  const std::string bin = SBTK_BIN_PATH;
  const std::string dir = "/tmp/sbtk_cli_test";
  run("rm -rf " + dir);
  run("mkdir -p " + dir);

  // minimal exactly-solvable config: one row, known ground energy
  write_file(dir + "/vanhove.cfg", R"([scenario]
kind = single_mode
omega = 1.0
coupling = 0.5

[model]
eta = 0.0
g_list = 1.0
n_max = 40

[sweep]
kind = strong_coupling
frame = lab

[output]
formats = csv,jsonl
)");
  int rc = run(bin + " run --config " + dir + "/vanhove.cfg --out " + dir + "/a > " + dir +
               "/run1.log 2>&1");
  expect(rc == 0, "run exits 0 on the minimal config");
  std::string csv = slurp(dir + "/a/strong_coupling.csv");
  expect(csv.find("g,fiber_energy,delta") == 0, "csv header starts with the documented columns");
  expect(csv.find("-2.5000000000000") != std::string::npos,
         "csv carries the exactly solvable fiber energy -0.25");
  expect(slurp(dir + "/a/strong_coupling.jsonl").find("\"fiber_energy\":") != std::string::npos,
         "jsonl mirrors the columns");

  // determinism: identical config, byte-identical output
  rc = run(bin + " run --config " + dir + "/vanhove.cfg --out " + dir + "/b > /dev/null 2>&1");
  expect(rc == 0, "second run exits 0");
  expect(slurp(dir + "/a/strong_coupling.csv") == slurp(dir + "/b/strong_coupling.csv"),
         "identical config gives byte-identical csv");

  // a five-point coupling sweep produces five rows with the documented columns
  write_file(dir + "/strong.cfg", R"([scenario]
kind = single_mode
omega = 1.0
coupling = 1.0

[model]
eta = -1.0
g_list = 0,1,2,4,8

[sweep]
kind = strong_coupling

[output]
formats = csv
)");
  rc = run(bin + " run --config " + dir + "/strong.cfg --out " + dir + "/s > /dev/null 2>&1");
  expect(rc == 0, "five-point sweep exits 0");
  std::string sweep_csv = slurp(dir + "/s/strong_coupling.csv");
  int lines = 0;
  for (char ch : sweep_csv)
    if (ch == '\n') ++lines;
  expect(lines == 6, "five rows plus the header");
  expect(sweep_csv.find("delta") != std::string::npos &&
             sweep_csv.find("overlap") != std::string::npos &&
             sweep_csv.find("nu1") != std::string::npos &&
             sweep_csv.find("trunc_error") != std::string::npos,
         "sweep csv carries the shifted energy, overlap, number-defect and truncation columns");

  // config errors exit with code 2
  write_file(dir + "/bad.cfg", "[model]\nn_max = 0\n");
  rc = run(bin + " run --config " + dir + "/bad.cfg > /dev/null 2>&1");
  expect(rc == 2, "n_max = 0 is a config error (exit 2)");

  write_file(dir + "/unknown.cfg", "[scenario]\nkindd = single_mode\n");
  rc = run(bin + " run --config " + dir + "/unknown.cfg > /dev/null 2>&1");
  expect(rc == 2, "unknown keys are config errors (exit 2)");

  rc = run(bin + " run --config " + dir + "/missing.cfg > /dev/null 2>&1");
  expect(rc == 2, "missing config file is a config error (exit 2)");

  // check suites through the CLI
  rc = run(bin + " check ccr > " + dir + "/ccr.log 2>&1");
  expect(rc == 0, "check ccr passes");
  rc = run(bin + " check van_hove > /dev/null 2>&1");
  expect(rc == 0, "check van_hove passes");
  rc = run(bin + " check no_such_suite > /dev/null 2>&1");
  expect(rc == 1, "unknown suite exits 1");

  // describe
  rc = run(bin + " describe massive_generic > " + dir + "/describe.log 2>&1");
  expect(rc == 0, "describe massive_generic exits 0");
  std::string desc = slurp(dir + "/describe.log");
  expect(desc.find("min omega: 1") != std::string::npos, "massive preset reports min omega = mass");
  rc = run(bin + " describe nope > /dev/null 2>&1");
  expect(rc == 1, "unknown scenario exits nonzero");

  std::printf("%s\n", failures == 0 ? "cli tests passed" : "cli tests FAILED");
  return failures == 0 ? 0 : 1;
}
