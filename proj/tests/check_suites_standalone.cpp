// Runs every verification suite against the core library alone: the suites
// must pass without the sweep harness linked in.

#include <cstdio>
#include <cstdlib>

#include "sbtk/check_suites.hpp"

int main() {
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  bool ok = true;
  for (const std::string& name : sbtk::check_suite_names()) {
    sbtk::CheckReport rep;
    try {
      rep = sbtk::run_check_suite(name);
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s: threw: %s\n", name.c_str(), e.what());
      ok = false;
      continue;
    }
    for (const sbtk::CheckItem& item : rep.items) {
      std::printf("[%s] %s: %s  (%.3e <= %.3e)\n", item.pass ? "pass" : "FAIL", name.c_str(),
                  item.name.c_str(), item.value, item.bound);
      ok = ok && item.pass;
    }
  }
  return ok ? 0 : 1;
}
