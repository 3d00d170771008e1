#ifndef SBTK_CONFIG_HPP
#define SBTK_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "sbtk/scenario.hpp"
#include "sbtk/sweeps.hpp"

namespace sbtk {

// Configuration problems carry their own type so the CLI can map them to
// exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SweepKind {
  strong_coupling,
  excited_state,
  uv_renorm,
  massless,
  counterexample,
  gap_criterion,
};

struct RunConfig {
  ScenarioSpec scenario;
  std::string scenario_name;  // preset name when given instead of inline keys

  double eta = 0.0;
  std::vector<double> g_list;
  int n_max = 0;  // 0: automatic policy
  std::size_t state_cap = FockBasis::default_state_cap;

  SweepKind sweep = SweepKind::strong_coupling;
  std::vector<double> lambda_list;
  std::vector<double> epsilon_list;
  double weyl_h = 1.0;
  SweepOptions::Frame frame = SweepOptions::Frame::automatic;
  double trunc_rtol = 1e-8;

  SolveOptions solver;
  int threads = 0;

  std::string out_dir = "out";
  bool write_csv_file = true;
  bool write_jsonl_file = false;

  SweepOptions sweep_options() const;
  void validate() const;  // cross-field rules; throws ConfigError
};

// Strict schema: unknown sections or keys are errors.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

const char* sweep_kind_name(SweepKind kind);

}  // namespace sbtk

#endif
