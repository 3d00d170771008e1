#include "sbtk/scenario.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace sbtk {

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  require(n >= 1, "gauss_legendre: need at least one node");
  require(b > a, "gauss_legendre: empty interval");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > eps);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

void ScenarioSpec::validate() const {
  switch (kind) {
    case ScenarioKind::single_mode:
    case ScenarioKind::explicit_modes:
      require(omega_list.size() >= 1 && omega_list.size() == coupling_list.size(),
              "scenario: omega/coupling lists must match and be nonempty");
      for (double w : omega_list) require(w > 0.0, "scenario: frequencies must be positive");
      if (kind == ScenarioKind::single_mode)
        require(omega_list.size() == 1, "scenario: single_mode takes exactly one mode");
      break;
    case ScenarioKind::massive_generic:
      require(mass > 0.0, "scenario: massive preset needs a positive mass");
      require(cutoff > mass, "scenario: cutoff must exceed the mass");
      require(nu == 2 || nu == 3, "scenario: radial presets support nu in {2,3}");
      require(nodes >= 1, "scenario: need at least one node");
      break;
    case ScenarioKind::spin_boson_3d_cutoff:
      require(ir_split > 0.0, "scenario: ir_split must be positive");
      require(ir_nodes >= 1 && uv_nodes >= 1, "scenario: node counts must be positive");
      break;
    case ScenarioKind::massless_infrared_regular:
      require(range > 0.0 && nodes >= 1, "scenario: bad massless parameters");
      break;
    case ScenarioKind::counterexample_3d:
      require(nodes >= 1, "scenario: need at least one panel");
      break;
  }
  require(amplitude > 0.0 || kind == ScenarioKind::single_mode ||
              kind == ScenarioKind::explicit_modes,
          "scenario: amplitude must be positive");
}

namespace {

ModeGrid radial_massive(const ScenarioSpec& s) {
  // quadrature in k over [0, K] with omega = sqrt(m^2+k^2), measure k^(nu-1) dk
  const double K = std::sqrt(s.cutoff * s.cutoff - s.mass * s.mass);
  std::vector<double> k, w;
  gauss_legendre(s.nodes, 0.0, K, k, w);
  ModeGrid g;
  for (int i = 0; i < s.nodes; ++i) {
    double omega = std::sqrt(s.mass * s.mass + k[i] * k[i]);
    double meas = w[i] * std::pow(k[i], s.nu - 1);
    g.omega.push_back(omega);
    g.v.push_back(s.amplitude * std::sqrt(meas / omega));
    g.weight.push_back(w[i]);
  }
  if (s.gap_anchor) {
    // zero-coupling mode at the spectral bottom so min omega equals the mass
    g.omega.push_back(s.mass);
    g.v.push_back(0.0);
    g.weight.push_back(1.0);
  }
  std::ostringstream os;
  os << "massive_generic(m=" << s.mass << ",L=" << s.cutoff << ",nu=" << s.nu
     << ",n=" << s.nodes << ")";
  g.label = os.str();
  g.validate();
  return g;
}

ModeGrid uv_family(const ScenarioSpec& s, double L) {
  require(L > s.ir_split, "scenario: running cutoff must exceed ir_split");
  std::vector<double> k1, w1, k2, w2;
  gauss_legendre(s.ir_nodes, 0.0, s.ir_split, k1, w1);
  gauss_legendre(s.uv_nodes, s.ir_split, L, k2, w2);
  ModeGrid g;
  auto add = [&](const std::vector<double>& k, const std::vector<double>& w) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      double meas = w[i] * k[i] * k[i];  // nu = 3
      g.omega.push_back(k[i]);
      g.v.push_back(s.amplitude * std::sqrt(meas / k[i]));
      g.weight.push_back(w[i]);
    }
  };
  add(k1, w1);
  add(k2, w2);
  std::ostringstream os;
  os << "spin_boson_3d_cutoff(L=" << L << ",split=" << s.ir_split << ")";
  g.label = os.str();
  g.validate();
  return g;
}

ModeGrid massless_ir_regular(const ScenarioSpec& s) {
  std::vector<double> k, w;
  gauss_legendre(s.nodes, 0.0, s.range, k, w);
  ModeGrid g;
  for (int i = 0; i < s.nodes; ++i) {
    double meas = w[i] * k[i] * k[i];
    g.omega.push_back(k[i]);
    g.v.push_back(s.amplitude * k[i] * std::exp(-k[i]) * std::sqrt(meas));
    g.weight.push_back(w[i]);
  }
  std::ostringstream os;
  os << "massless_infrared_regular(range=" << s.range << ",n=" << s.nodes << ")";
  g.label = os.str();
  g.validate();
  return g;
}

ModeGrid counterexample(const ScenarioSpec& s, double gpar) {
  require(gpar > 0.5, "scenario: counterexample family needs g > 1/2");
  const double lo = 1.0 / gpar, hi = 2.0;
  const double ratio = std::pow(hi / lo, 1.0 / s.nodes);
  ModeGrid g;
  // geometric midpoint panels: the infrared widening makes norm(omega^-1 v)
  // provably increasing in the family parameter
  double a = lo;
  for (int i = 0; i < s.nodes; ++i) {
    double b = a * ratio;
    double mid = 0.5 * (a + b);
    double w = b - a;
    g.omega.push_back(mid);
    g.v.push_back(s.amplitude * std::sqrt(w * mid * mid / mid));
    g.weight.push_back(w);
    a = b;
  }
  std::ostringstream os;
  os << "counterexample_3d(g=" << gpar << ",panels=" << s.nodes << ")";
  g.label = os.str();
  g.validate();
  return g;
}

}  // namespace

ModeGrid make_scenario(const ScenarioSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ScenarioKind::single_mode:
    case ScenarioKind::explicit_modes: {
      ModeGrid g;
      for (std::size_t i = 0; i < spec.omega_list.size(); ++i) {
        g.omega.push_back(spec.omega_list[i]);
        g.v.push_back(spec.coupling_list[i]);
        g.weight.push_back(1.0);
      }
      g.label = spec.kind == ScenarioKind::single_mode ? "single_mode" : "explicit";
      g.validate();
      return g;
    }
    case ScenarioKind::massive_generic:
      return radial_massive(spec);
    case ScenarioKind::massless_infrared_regular:
      return massless_ir_regular(spec);
    case ScenarioKind::spin_boson_3d_cutoff:
      return uv_family(spec, spec.cutoff);
    case ScenarioKind::counterexample_3d:
      fail("make_scenario: counterexample_3d needs the family parameter g");
  }
  fail("make_scenario: unknown kind");
}

ModeGrid make_scenario(const ScenarioSpec& spec, double family_param) {
  spec.validate();
  switch (spec.kind) {
    case ScenarioKind::spin_boson_3d_cutoff:
      return uv_family(spec, family_param);
    case ScenarioKind::counterexample_3d:
      return counterexample(spec, family_param);
    default:
      require(false, "make_scenario: not a parametrised family");
  }
  fail("unreachable");
}

const char* kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::single_mode: return "single_mode";
    case ScenarioKind::explicit_modes: return "explicit";
    case ScenarioKind::massive_generic: return "massive_generic";
    case ScenarioKind::spin_boson_3d_cutoff: return "spin_boson_3d_cutoff";
    case ScenarioKind::massless_infrared_regular: return "massless_infrared_regular";
    case ScenarioKind::counterexample_3d: return "counterexample_3d";
  }
  return "?";
}

ScenarioSpec preset_by_name(const std::string& name) {
  ScenarioSpec s;
  if (name == "single_mode") {
    s.kind = ScenarioKind::single_mode;
    return s;
  }
  if (name == "massive_generic") {
    s.kind = ScenarioKind::massive_generic;
    s.mass = 1.0;
    s.cutoff = 2.0;
    s.nu = 3;
    s.nodes = 32;
    s.amplitude = 1.0;
    return s;
  }
  if (name == "spin_boson_3d_cutoff") {
    s.kind = ScenarioKind::spin_boson_3d_cutoff;
    s.ir_split = 1.0;
    s.ir_nodes = 2;
    s.uv_nodes = 3;
    s.cutoff = 16.0;
    s.amplitude = 0.5;
    return s;
  }
  if (name == "massless_infrared_regular") {
    s.kind = ScenarioKind::massless_infrared_regular;
    s.range = 6.0;
    s.nodes = 3;
    s.amplitude = 0.3;
    return s;
  }
  if (name == "counterexample_3d") {
    s.kind = ScenarioKind::counterexample_3d;
    s.nodes = 3;
    s.amplitude = std::sqrt(0.2);
    return s;
  }
  std::string names;
  for (const std::string& n : preset_names()) names += " " + n;
  fail("unknown scenario '" + name + "'; available presets:" + names);
}

std::vector<std::string> preset_names() {
  return {"single_mode", "massive_generic", "spin_boson_3d_cutoff", "massless_infrared_regular",
          "counterexample_3d"};
}

}  // namespace sbtk
