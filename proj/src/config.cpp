#include "sbtk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sbtk {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + value);
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + value);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty entry in list '" + key + "'");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

ScenarioKind parse_scenario_kind(const std::string& value) {
  if (value == "single_mode") return ScenarioKind::single_mode;
  if (value == "explicit") return ScenarioKind::explicit_modes;
  if (value == "massive_generic") return ScenarioKind::massive_generic;
  if (value == "spin_boson_3d_cutoff") return ScenarioKind::spin_boson_3d_cutoff;
  if (value == "massless_infrared_regular") return ScenarioKind::massless_infrared_regular;
  if (value == "counterexample_3d") return ScenarioKind::counterexample_3d;
  throw ConfigError("config: unknown scenario kind '" + value + "'");
}

SweepKind parse_sweep_kind(const std::string& value) {
  if (value == "strong_coupling") return SweepKind::strong_coupling;
  if (value == "excited_state") return SweepKind::excited_state;
  if (value == "uv_renorm") return SweepKind::uv_renorm;
  if (value == "massless") return SweepKind::massless;
  if (value == "counterexample") return SweepKind::counterexample;
  if (value == "gap_criterion") return SweepKind::gap_criterion;
  throw ConfigError("config: unknown sweep kind '" + value + "'");
}

}  // namespace

const char* sweep_kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::strong_coupling: return "strong_coupling";
    case SweepKind::excited_state: return "excited_state";
    case SweepKind::uv_renorm: return "uv_renorm";
    case SweepKind::massless: return "massless";
    case SweepKind::counterexample: return "counterexample";
    case SweepKind::gap_criterion: return "gap_criterion";
  }
  return "?";
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.frame = frame;
  o.n_max = n_max;
  o.state_cap = state_cap;
  o.trunc_rtol = trunc_rtol;
  o.solver = solver;
  o.threads = threads;
  o.weyl_h = weyl_h;
  return o;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  bool scenario_from_preset = false;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool n_max_set = false;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "model" && section != "sweep" &&
          section != "solver" && section != "output")
        throw ConfigError("config: unknown section [" + section + "]");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");

    if (section == "scenario") {
      if (key == "preset") {
        cfg.scenario = preset_by_name(value);
        cfg.scenario_name = value;
        scenario_from_preset = true;
      } else if (key == "kind") {
        cfg.scenario.kind = parse_scenario_kind(value);
      } else if (key == "omega") {
        cfg.scenario.omega_list = {parse_double(key, value)};
      } else if (key == "coupling") {
        cfg.scenario.coupling_list = {parse_double(key, value)};
      } else if (key == "omega_list") {
        cfg.scenario.omega_list = parse_list(key, value);
      } else if (key == "coupling_list") {
        cfg.scenario.coupling_list = parse_list(key, value);
      } else if (key == "mass") {
        cfg.scenario.mass = parse_double(key, value);
      } else if (key == "cutoff") {
        cfg.scenario.cutoff = parse_double(key, value);
      } else if (key == "nu") {
        cfg.scenario.nu = static_cast<int>(parse_int(key, value));
      } else if (key == "nodes") {
        cfg.scenario.nodes = static_cast<int>(parse_int(key, value));
      } else if (key == "amplitude") {
        cfg.scenario.amplitude = parse_double(key, value);
      } else if (key == "ir_split") {
        cfg.scenario.ir_split = parse_double(key, value);
      } else if (key == "ir_nodes") {
        cfg.scenario.ir_nodes = static_cast<int>(parse_int(key, value));
      } else if (key == "uv_nodes") {
        cfg.scenario.uv_nodes = static_cast<int>(parse_int(key, value));
      } else if (key == "range") {
        cfg.scenario.range = parse_double(key, value);
      } else if (key == "gap_anchor") {
        cfg.scenario.gap_anchor = value == "true" || value == "1";
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [scenario]");
      }
    } else if (section == "model") {
      if (key == "eta") {
        cfg.eta = parse_double(key, value);
      } else if (key == "g_list") {
        cfg.g_list = parse_list(key, value);
      } else if (key == "n_max") {
        if (value == "auto") {
          cfg.n_max = 0;
        } else {
          long n = parse_int(key, value);
          if (n < 1)
            throw ConfigError("config: n_max must be 'auto' or a positive integer");
          cfg.n_max = static_cast<int>(n);
        }
        n_max_set = true;
      } else if (key == "state_cap") {
        long n = parse_int(key, value);
        if (n < 1) throw ConfigError("config: state_cap must be positive");
        cfg.state_cap = static_cast<std::size_t>(n);
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [model]");
      }
    } else if (section == "sweep") {
      if (key == "kind") {
        cfg.sweep = parse_sweep_kind(value);
      } else if (key == "lambda_list") {
        cfg.lambda_list = parse_list(key, value);
      } else if (key == "epsilon_list") {
        cfg.epsilon_list = parse_list(key, value);
      } else if (key == "weyl_h") {
        cfg.weyl_h = parse_double(key, value);
      } else if (key == "frame") {
        if (value == "auto")
          cfg.frame = SweepOptions::Frame::automatic;
        else if (value == "lab")
          cfg.frame = SweepOptions::Frame::lab;
        else if (value == "polaron")
          cfg.frame = SweepOptions::Frame::polaron;
        else
          throw ConfigError("config: frame must be auto, lab or polaron");
      } else if (key == "trunc_rtol") {
        cfg.trunc_rtol = parse_double(key, value);
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [sweep]");
      }
    } else if (section == "solver") {
      if (key == "dense_cap") {
        cfg.solver.dense_cap = static_cast<std::size_t>(parse_int(key, value));
      } else if (key == "max_iterations") {
        cfg.solver.max_iterations = static_cast<int>(parse_int(key, value));
      } else if (key == "tolerance") {
        cfg.solver.tolerance = parse_double(key, value);
      } else if (key == "seed") {
        cfg.solver.seed = static_cast<std::uint64_t>(parse_int(key, value));
      } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_int(key, value));
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [solver]");
      }
    } else if (section == "output") {
      if (key == "directory") {
        cfg.out_dir = value;
      } else if (key == "formats") {
        cfg.write_csv_file = false;
        cfg.write_jsonl_file = false;
        std::stringstream ss(value);
        std::string fmt;
        while (std::getline(ss, fmt, ',')) {
          fmt = trim(fmt);
          if (fmt == "csv")
            cfg.write_csv_file = true;
          else if (fmt == "jsonl")
            cfg.write_jsonl_file = true;
          else
            throw ConfigError("config: unknown format '" + fmt + "' (csv, jsonl)");
        }
        if (!cfg.write_csv_file && !cfg.write_jsonl_file)
          throw ConfigError("config: at least one output format required");
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [output]");
      }
    }
  }
  (void)scenario_from_preset;
  (void)n_max_set;
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void RunConfig::validate() const {
  try {
    scenario.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (trunc_rtol <= 0.0 || solver.tolerance <= 0.0)
    throw ConfigError("config: tolerances must be positive");
  if (solver.max_iterations < 1) throw ConfigError("config: max_iterations must be positive");

  const bool needs_g = sweep == SweepKind::strong_coupling || sweep == SweepKind::excited_state ||
                       sweep == SweepKind::massless || sweep == SweepKind::counterexample;
  if (needs_g) {
    if (g_list.empty()) throw ConfigError("config: this sweep needs a g_list");
    for (double g : g_list) {
      if (g < 0.0) throw ConfigError("config: couplings must be nonnegative");
      if (g > 0.0 && n_max != 0 && n_max < 1)
        throw ConfigError("config: n_max must be positive for a coupled model");
    }
  }

  switch (sweep) {
    case SweepKind::strong_coupling:
    case SweepKind::excited_state:
      if (scenario.kind == ScenarioKind::massless_infrared_regular ||
          scenario.kind == ScenarioKind::counterexample_3d)
        throw ConfigError("config: " + std::string(sweep_kind_name(sweep)) +
                          " needs a massive scenario");
      break;
    case SweepKind::uv_renorm:
      if (scenario.kind != ScenarioKind::spin_boson_3d_cutoff)
        throw ConfigError("config: uv_renorm requires the spin_boson_3d_cutoff scenario");
      if (lambda_list.size() < 2)
        throw ConfigError("config: uv_renorm needs a lambda_list with at least two cutoffs");
      for (std::size_t i = 0; i < lambda_list.size(); ++i) {
        if (lambda_list[i] <= scenario.ir_split)
          throw ConfigError("config: cutoffs must exceed ir_split");
        if (i > 0 && lambda_list[i] <= lambda_list[i - 1])
          throw ConfigError("config: lambda_list must be strictly increasing");
      }
      break;
    case SweepKind::massless:
      if (scenario.kind != ScenarioKind::massless_infrared_regular)
        throw ConfigError("config: massless sweep requires massless_infrared_regular");
      if (eta > 0.0) throw ConfigError("config: massless sweep needs eta <= 0");
      break;
    case SweepKind::counterexample:
      if (scenario.kind != ScenarioKind::counterexample_3d)
        throw ConfigError("config: counterexample sweep requires counterexample_3d");
      if (eta >= 0.0) throw ConfigError("config: counterexample sweep needs eta < 0");
      if (weyl_h == 0.0) throw ConfigError("config: counterexample sweep needs weyl_h != 0");
      break;
    case SweepKind::gap_criterion:
      if (scenario.kind != ScenarioKind::massive_generic)
        throw ConfigError("config: gap_criterion requires the massive_generic scenario");
      if (epsilon_list.size() < 2)
        throw ConfigError("config: gap_criterion needs an epsilon_list");
      for (double e : epsilon_list)
        if (e <= 0.0) throw ConfigError("config: epsilons must be positive");
      break;
  }
}

}  // namespace sbtk
