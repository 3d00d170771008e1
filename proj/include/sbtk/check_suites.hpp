#ifndef SBTK_CHECK_SUITES_HPP
#define SBTK_CHECK_SUITES_HPP

#include <string>
#include <vector>

namespace sbtk {

struct CheckItem {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  bool pass() const {
    for (const CheckItem& it : items)
      if (!it.pass) return false;
    return true;
  }
};

// Self-contained verification suites on built-in small models:
// ccr, parity_decomposition, van_hove, pullthrough, feshbach,
// sign_structure, pointwise_bound, weyl_algebra.
CheckReport run_check_suite(const std::string& name);
std::vector<std::string> check_suite_names();

}  // namespace sbtk

#endif
