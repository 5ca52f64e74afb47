#include "ccspec/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "ccspec/errors.hpp"

namespace ccspec {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_value(const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ValidationError("'" + v + "' is not a number");
  if (!std::isfinite(x))
    throw ValidationError("'" + v + "' is not a finite number");
  return x;
}

int parse_int_value(const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long long x = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ValidationError("'" + v + "' is not an integer");
  if (x < -2147483648LL || x > 2147483647LL)
    throw ValidationError("'" + v + "' is out of range for an integer setting");
  return static_cast<int>(x);
}

std::uint64_t parse_uint64_value(const std::string& v) {
  if (v.empty() || v[0] == '-')
    throw ValidationError("'" + v + "' is not a nonnegative integer");
  const char* begin = v.c_str();
  char* end = nullptr;
  const unsigned long long x = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ValidationError("'" + v + "' is not a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

std::string noise_kind_to_string(NoiseKind k) {
  return k == NoiseKind::white ? "white" : "ornstein_uhlenbeck";
}

NoiseKind noise_kind_from_string(const std::string& v) {
  if (v == "white") return NoiseKind::white;
  if (v == "ornstein_uhlenbeck" || v == "ou") return NoiseKind::ornstein_uhlenbeck;
  throw ValidationError("unknown noise kind '" + v +
                        "' (expected white or ornstein_uhlenbeck)");
}

std::string format_number(double v) {
  char buf[64];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string format_number(int v) { return std::to_string(v); }

std::string format_number(std::uint64_t v) { return std::to_string(v); }

// Keys whose defaults are derived from other keys are only filled in when the
// file did not assign them explicitly.
struct ParseState {
  bool idle_electron_set = false;
  bool idle_carbon_set = false;
  bool carbon_state_set = false;
};

struct KeyDef {
  std::string section;  // "" = top level
  std::string name;
  std::function<void(Scenario&, ParseState&, const std::string&)> set;
  std::function<std::string(const Scenario&)> get;

  std::string qualified() const {
    return section.empty() ? name : section + "." + name;
  }
};

KeyDef double_key(const char* section, const char* name,
                  std::function<void(Scenario&, double)> set,
                  std::function<double(const Scenario&)> get) {
  return {section, name,
          [set](Scenario& s, ParseState&, const std::string& v) {
            set(s, parse_double_value(v));
          },
          [get](const Scenario& s) { return format_number(get(s)); }};
}

KeyDef int_key(const char* section, const char* name,
               std::function<void(Scenario&, int)> set,
               std::function<int(const Scenario&)> get) {
  return {section, name,
          [set](Scenario& s, ParseState&, const std::string& v) {
            set(s, parse_int_value(v));
          },
          [get](const Scenario& s) { return format_number(get(s)); }};
}

// Canonical order: top-level keys first, then sections; serialize_scenario
// walks this list verbatim.
const std::vector<KeyDef>& registry() {
  static const std::vector<KeyDef> defs = [] {
    std::vector<KeyDef> r;

    r.push_back(double_key(
        "", "bias_field_parallel",
        [](Scenario& s, double v) { s.bias_field_parallel = v; },
        [](const Scenario& s) { return s.bias_field_parallel; }));
    r.push_back({"", "seed",
                 [](Scenario& s, ParseState&, const std::string& v) {
                   s.seed = parse_uint64_value(v);
                 },
                 [](const Scenario& s) { return format_number(s.seed); }});

    r.push_back({"spin", "species",
                 [](Scenario& s, ParseState&, const std::string& v) {
                   s.spin.species = species_from_string(v);
                 },
                 [](const Scenario& s) { return to_string(s.spin.species); }});
    r.push_back({"spin", "carbon_state",
                 [](Scenario& s, ParseState& st, const std::string& v) {
                   s.carbon_state = electron_state_from_string(v);
                   st.carbon_state_set = true;
                 },
                 [](const Scenario& s) { return to_string(s.carbon_state); }});
    r.push_back(double_key(
        "spin", "eta", [](Scenario& s, double v) { s.spin.eta = v; },
        [](const Scenario& s) { return s.spin.eta; }));
    r.push_back(double_key(
        "spin", "hyperfine_par",
        [](Scenario& s, double v) { s.spin.hyperfine_par = v; },
        [](const Scenario& s) { return s.spin.hyperfine_par; }));
    r.push_back(double_key(
        "spin", "hyperfine_perp",
        [](Scenario& s, double v) { s.spin.hyperfine_perp = v; },
        [](const Scenario& s) { return s.spin.hyperfine_perp; }));
    r.push_back(double_key(
        "spin", "gamma_e",
        [](Scenario& s, double v) { s.spin.constants.gamma_e = v; },
        [](const Scenario& s) { return s.spin.constants.gamma_e; }));
    r.push_back(double_key(
        "spin", "gamma_c",
        [](Scenario& s, double v) { s.spin.constants.gamma_c = v; },
        [](const Scenario& s) { return s.spin.constants.gamma_c; }));
    r.push_back(double_key(
        "spin", "zero_field_splitting_gs",
        [](Scenario& s, double v) { s.spin.constants.zero_field_splitting_gs = v; },
        [](const Scenario& s) { return s.spin.constants.zero_field_splitting_gs; }));
    r.push_back(double_key(
        "spin", "mu0", [](Scenario& s, double v) { s.spin.constants.mu0 = v; },
        [](const Scenario& s) { return s.spin.constants.mu0; }));

    r.push_back(double_key(
        "budget", "target_fidelity",
        [](Scenario& s, double v) { s.budget.target_fidelity = v; },
        [](const Scenario& s) { return s.budget.target_fidelity; }));
    r.push_back(int_key(
        "budget", "n_components_op",
        [](Scenario& s, int v) { s.budget.n_components_op = v; },
        [](const Scenario& s) { return s.budget.n_components_op; }));
    r.push_back(int_key(
        "budget", "n_components_idle",
        [](Scenario& s, int v) { s.budget.n_components_idle = v; },
        [](const Scenario& s) { return s.budget.n_components_idle; }));
    r.push_back(double_key(
        "budget", "T_op_electron",
        [](Scenario& s, double v) { s.budget.t_op_electron = v; },
        [](const Scenario& s) { return s.budget.t_op_electron; }));
    r.push_back(double_key(
        "budget", "T_op_carbon",
        [](Scenario& s, double v) { s.budget.t_op_carbon = v; },
        [](const Scenario& s) { return s.budget.t_op_carbon; }));
    r.push_back({"budget", "T_idle_electron",
                 [](Scenario& s, ParseState& st, const std::string& v) {
                   s.budget.t_idle_electron = parse_double_value(v);
                   st.idle_electron_set = true;
                 },
                 [](const Scenario& s) {
                   return format_number(s.budget.t_idle_electron);
                 }});
    r.push_back({"budget", "T_idle_carbon",
                 [](Scenario& s, ParseState& st, const std::string& v) {
                   s.budget.t_idle_carbon = parse_double_value(v);
                   st.idle_carbon_set = true;
                 },
                 [](const Scenario& s) {
                   return format_number(s.budget.t_idle_carbon);
                 }});

    r.push_back(double_key(
        "coils", "k_x", [](Scenario& s, double v) { s.coils.k_x = v; },
        [](const Scenario& s) { return s.coils.k_x; }));
    r.push_back(double_key(
        "coils", "k_y", [](Scenario& s, double v) { s.coils.k_y = v; },
        [](const Scenario& s) { return s.coils.k_y; }));
    r.push_back(double_key(
        "coils", "k_z", [](Scenario& s, double v) { s.coils.k_z = v; },
        [](const Scenario& s) { return s.coils.k_z; }));
    r.push_back(double_key(
        "coils", "R_coil", [](Scenario& s, double v) { s.coils.r_coil = v; },
        [](const Scenario& s) { return s.coils.r_coil; }));

    r.push_back(double_key(
        "power", "R_on", [](Scenario& s, double v) { s.power.net.r_on = v; },
        [](const Scenario& s) { return s.power.net.r_on; }));
    r.push_back(double_key(
        "power", "R_IC", [](Scenario& s, double v) { s.power.net.r_ic = v; },
        [](const Scenario& s) { return s.power.net.r_ic; }));
    r.push_back(double_key(
        "power", "R_coil", [](Scenario& s, double v) { s.power.net.r_coil = v; },
        [](const Scenario& s) { return s.power.net.r_coil; }));
    r.push_back(double_key(
        "power", "P_cir", [](Scenario& s, double v) { s.power.net.p_cir = v; },
        [](const Scenario& s) { return s.power.net.p_cir; }));
    r.push_back(int_key(
        "power", "N_cells", [](Scenario& s, int v) { s.power.net.n_cells = v; },
        [](const Scenario& s) { return s.power.net.n_cells; }));
    r.push_back(double_key(
        "power", "f_space_LO",
        [](Scenario& s, double v) { s.power.clock.f_space_lo = v; },
        [](const Scenario& s) { return s.power.clock.f_space_lo; }));
    r.push_back(double_key(
        "power", "f_comp",
        [](Scenario& s, double v) { s.power.clock.f_comp = v; },
        [](const Scenario& s) { return s.power.clock.f_comp; }));
    r.push_back(double_key(
        "power", "E_bit", [](Scenario& s, double v) { s.power.clock.e_bit = v; },
        [](const Scenario& s) { return s.power.clock.e_bit; }));
    r.push_back(double_key(
        "power", "activity_factor",
        [](Scenario& s, double v) { s.power.clock.activity_factor = v; },
        [](const Scenario& s) { return s.power.clock.activity_factor; }));
    r.push_back(int_key(
        "power", "n_nco_electron",
        [](Scenario& s, int v) { s.power.clock.n_nco_electron = v; },
        [](const Scenario& s) { return s.power.clock.n_nco_electron; }));
    r.push_back(int_key(
        "power", "n_nco_nuclear",
        [](Scenario& s, int v) { s.power.clock.n_nco_nuclear = v; },
        [](const Scenario& s) { return s.power.clock.n_nco_nuclear; }));
    r.push_back(double_key(
        "power", "V_DD", [](Scenario& s, double v) { s.power.amp.v_dd = v; },
        [](const Scenario& s) { return s.power.amp.v_dd; }));
    r.push_back(double_key(
        "power", "V_sup", [](Scenario& s, double v) { s.power.amp.v_sup = v; },
        [](const Scenario& s) { return s.power.amp.v_sup; }));
    r.push_back(double_key(
        "power", "duty_electron",
        [](Scenario& s, double v) { s.power.amp.duty_electron = v; },
        [](const Scenario& s) { return s.power.amp.duty_electron; }));
    r.push_back(double_key(
        "power", "duty_nuclear",
        [](Scenario& s, double v) { s.power.amp.duty_nuclear = v; },
        [](const Scenario& s) { return s.power.amp.duty_nuclear; }));
    r.push_back({"power", "strategy",
                 [](Scenario& s, ParseState&, const std::string& v) {
                   s.power.strategy = strategy_from_string(v);
                 },
                 [](const Scenario& s) { return to_string(s.power.strategy); }});
    r.push_back(double_key(
        "power", "delta_B", [](Scenario& s, double v) { s.power.delta_b = v; },
        [](const Scenario& s) { return s.power.delta_b; }));

    r.push_back(double_key(
        "readout", "d_gs", [](Scenario& s, double v) { s.readout.d_gs = v; },
        [](const Scenario& s) { return s.readout.d_gs; }));
    r.push_back(double_key(
        "readout", "d_es", [](Scenario& s, double v) { s.readout.d_es = v; },
        [](const Scenario& s) { return s.readout.d_es; }));
    r.push_back(int_key(
        "readout", "n_cycles",
        [](Scenario& s, int v) { s.readout.n_cycles = v; },
        [](const Scenario& s) { return s.readout.n_cycles; }));
    r.push_back(double_key(
        "readout", "strain", [](Scenario& s, double v) { s.readout.strain = v; },
        [](const Scenario& s) { return s.readout.strain; }));
    r.push_back(double_key(
        "readout", "readout_budget",
        [](Scenario& s, double v) { s.readout_budget = v; },
        [](const Scenario& s) { return s.readout_budget; }));

    r.push_back({"noise", "kind",
                 [](Scenario& s, ParseState&, const std::string& v) {
                   s.noise.kind = noise_kind_from_string(v);
                 },
                 [](const Scenario& s) { return noise_kind_to_string(s.noise.kind); }});
    r.push_back(double_key(
        "noise", "level", [](Scenario& s, double v) { s.noise.level = v; },
        [](const Scenario& s) { return s.noise.level; }));
    r.push_back(double_key(
        "noise", "T2_star", [](Scenario& s, double v) { s.noise.t2_star = v; },
        [](const Scenario& s) { return s.noise.t2_star; }));
    r.push_back(double_key(
        "noise", "tau_c", [](Scenario& s, double v) { s.noise.tau_c = v; },
        [](const Scenario& s) { return s.noise.tau_c; }));

    return r;
  }();
  return defs;
}

bool known_section(const std::string& name) {
  static const std::set<std::string> sections = {"spin",  "budget",  "coils",
                                                 "power", "readout", "noise"};
  return sections.count(name) > 0;
}

// `section_hint` is the enclosing [section] (empty at top level). Qualified
// `section.key` names resolve exactly; bare names try the enclosing section
// first, then a unique match across all sections.
const KeyDef& resolve_key(const std::string& section_hint, const std::string& key) {
  const auto& defs = registry();
  const std::size_t dot = key.find('.');
  if (dot != std::string::npos) {
    const std::string sec = key.substr(0, dot);
    const std::string name = key.substr(dot + 1);
    for (const KeyDef& d : defs)
      if (d.section == sec && d.name == name) return d;
    throw ValidationError("unknown key '" + key + "'");
  }
  if (!section_hint.empty()) {
    for (const KeyDef& d : defs)
      if (d.section == section_hint && d.name == key) return d;
  }
  const KeyDef* found = nullptr;
  std::vector<std::string> candidates;
  for (const KeyDef& d : defs) {
    if (d.name != key) continue;
    found = &d;
    candidates.push_back(d.qualified());
  }
  if (candidates.empty()) throw ValidationError("unknown key '" + key + "'");
  if (candidates.size() > 1) {
    std::string msg = "ambiguous key '" + key + "' (candidates:";
    for (const std::string& c : candidates) msg += " " + c;
    msg += "); qualify it with its section";
    throw ValidationError(msg);
  }
  return *found;
}

// Fills the defaults that depend on other keys: idle windows mirror the gate
// durations, the carbon branch follows the species, and the readout model
// shares the spin gyromagnetic ratio.
void finalize_defaults(Scenario& s, const ParseState& st) {
  if (!st.idle_electron_set) s.budget.t_idle_electron = s.budget.t_op_electron;
  if (!st.idle_carbon_set) s.budget.t_idle_carbon = s.budget.t_op_carbon;
  if (!st.carbon_state_set)
    s.carbon_state = s.spin.species == Species::snv ? ElectronState::plusHalf
                                                    : ElectronState::ms0;
  s.readout.gamma_e = s.spin.constants.gamma_e;
}

std::string read_file(std::ifstream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void Scenario::validate(std::vector<std::string>* warnings) const {
  const auto positive = [](double v, const char* key) {
    if (!(v > 0.0))
      throw ValidationError(std::string(key) + " must be positive, got " +
                            format_number(v));
  };
  const auto nonnegative = [](double v, const char* key) {
    if (!(v >= 0.0))
      throw ValidationError(std::string(key) + " must be nonnegative, got " +
                            format_number(v));
  };
  const auto at_least_one = [](int v, const char* key) {
    if (v < 1)
      throw ValidationError(std::string(key) + " must be at least 1, got " +
                            format_number(v));
  };

  positive(spin.constants.gamma_e, "gamma_e");
  positive(spin.constants.gamma_c, "gamma_c");
  if (spin.constants.gamma_e <= spin.constants.gamma_c)
    throw ValidationError("gamma_e must exceed gamma_c");
  positive(spin.constants.zero_field_splitting_gs, "zero_field_splitting_gs");
  positive(spin.constants.mu0, "mu0");
  if (!(spin.eta > 0.0) || spin.eta > 1.0)
    throw ValidationError("eta must lie in (0, 1], got " + format_number(spin.eta));
  spin.validate();

  const bool nv_state = carbon_state == ElectronState::ms0 ||
                        carbon_state == ElectronState::msMinus1;
  if ((spin.species == Species::nv) != nv_state)
    throw ValidationError("carbon_state " + to_string(carbon_state) +
                          " is not valid for species " + to_string(spin.species));

  if (!(bias_field_parallel >= 0.0) || !(bias_field_parallel <= 20000.0))
    throw ValidationError("bias_field_parallel must lie in [0, 20000] G, got " +
                          format_number(bias_field_parallel));
  if (warnings && (bias_field_parallel < 2000.0 || bias_field_parallel > 10000.0))
    warnings->push_back("bias_field_parallel = " + format_number(bias_field_parallel) +
                        " G is outside the expected 2000-10000 G operating window");

  if (!(budget.target_fidelity > 0.0) || !(budget.target_fidelity < 1.0))
    throw ValidationError("target_fidelity must lie in (0, 1), got " +
                          format_number(budget.target_fidelity));
  at_least_one(budget.n_components_op, "n_components_op");
  at_least_one(budget.n_components_idle, "n_components_idle");
  positive(budget.t_op_electron, "T_op_electron");
  positive(budget.t_op_carbon, "T_op_carbon");
  positive(budget.t_idle_electron, "T_idle_electron");
  positive(budget.t_idle_carbon, "T_idle_carbon");

  nonnegative(coils.k_x, "k_x");
  nonnegative(coils.k_y, "k_y");
  positive(coils.k_z, "k_z");
  positive(coils.r_coil, "coils.R_coil");

  nonnegative(power.net.r_on, "R_on");
  nonnegative(power.net.r_ic, "R_IC");
  nonnegative(power.net.r_coil, "power.R_coil");
  nonnegative(power.net.p_cir, "P_cir");
  at_least_one(power.net.n_cells, "N_cells");
  positive(power.clock.f_space_lo, "f_space_LO");
  nonnegative(power.clock.f_comp, "f_comp");
  positive(power.clock.e_bit, "E_bit");
  positive(power.clock.activity_factor, "activity_factor");
  if (power.clock.n_nco_electron < 0)
    throw ValidationError("n_nco_electron must be nonnegative, got " +
                          format_number(power.clock.n_nco_electron));
  if (power.clock.n_nco_nuclear < 0)
    throw ValidationError("n_nco_nuclear must be nonnegative, got " +
                          format_number(power.clock.n_nco_nuclear));
  positive(power.amp.v_dd, "V_DD");
  positive(power.amp.v_sup, "V_sup");
  if (!(power.amp.duty_electron >= 0.0) || power.amp.duty_electron > 1.0)
    throw ValidationError("duty_electron must lie in [0, 1], got " +
                          format_number(power.amp.duty_electron));
  if (!(power.amp.duty_nuclear >= 0.0) || power.amp.duty_nuclear > 1.0)
    throw ValidationError("duty_nuclear must lie in [0, 1], got " +
                          format_number(power.amp.duty_nuclear));
  nonnegative(power.delta_b, "delta_B");

  positive(readout.d_gs, "d_gs");
  positive(readout.d_es, "d_es");
  at_least_one(readout.n_cycles, "n_cycles");
  if (!std::isfinite(readout.strain) || readout.strain < 0.0)
    throw ValidationError("strain must be nonnegative and finite, got " +
                          format_number(readout.strain));
  if (!(readout_budget >= 0.0) || !(readout_budget < 1.0))
    throw ValidationError("readout_budget must lie in [0, 1), got " +
                          format_number(readout_budget));

  if (noise.kind == NoiseKind::white) {
    nonnegative(noise.level, "level");
  } else {
    positive(noise.t2_star, "T2_star");
    positive(noise.tau_c, "tau_c");
  }

  // Structural checks the per-key scan cannot express (closed-form couplings
  // between fields) live in the component validators.
  budget.validate();
  coils.validate();
  power.validate();
  readout.validate();
  noise.validate();
}

Scenario parse_scenario(const std::string& text, const std::string& label) {
  Scenario s;
  ParseState st;
  std::set<std::string> assigned;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ParseError(label + ": malformed section header '" + line + "'",
                         line_no);
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!known_section(name))
        throw ParseError(label + ": unknown section '" + name + "'", line_no);
      section = name;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(label + ": expected 'key = value', got '" + line + "'",
                       line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(label + ": missing key before '='", line_no);
    if (value.empty())
      throw ParseError(label + ": missing value for '" + key + "'", line_no);
    const KeyDef* def = nullptr;
    try {
      def = &resolve_key(section, key);
    } catch (const ValidationError& e) {
      throw ParseError(label + ": " + e.what(), line_no);
    }
    if (!assigned.insert(def->qualified()).second)
      throw ParseError(
          label + ": duplicate assignment of '" + def->qualified() + "'", line_no);
    try {
      def->set(s, st, value);
    } catch (const ValidationError& e) {
      throw ParseError(label + ": invalid value for '" + def->qualified() +
                           "': " + e.what(),
                       line_no);
    }
  }
  finalize_defaults(s, st);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string label = path;
  if (!in) {
    const bool relative = path.empty() || path.front() != '/';
    const char* dir = std::getenv("CCSPEC_CONFIG_DIR");
    if (relative && dir && *dir) {
      std::string alt(dir);
      if (alt.back() != '/') alt += '/';
      alt += path;
      in.open(alt, std::ios::binary);
      label = alt;
      if (!in)
        throw ValidationError("cannot open scenario file '" + path +
                              "' (also tried '" + alt + "')");
    } else {
      throw ValidationError("cannot open scenario file '" + path + "'");
    }
  }
  Scenario s = parse_scenario(read_file(in), label);
  s.validate(nullptr);
  return s;
}

void apply_override(Scenario& s, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ValidationError("override '" + assignment +
                          "' must have the form key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty())
    throw ValidationError("override '" + assignment + "' is missing a key");
  if (value.empty())
    throw ValidationError("override '" + assignment + "' is missing a value");
  const KeyDef& def = resolve_key("", key);
  ParseState st;
  try {
    def.set(s, st, value);
  } catch (const ValidationError& e) {
    throw ValidationError("invalid value for '" + def.qualified() +
                          "': " + e.what());
  }
  // Overrides mutate a fully assembled scenario: only the shared gyromagnetic
  // ratio needs to be kept in sync here.
  s.readout.gamma_e = s.spin.constants.gamma_e;
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  std::string section;
  bool first = true;
  for (const KeyDef& d : registry()) {
    if (d.section != section || first) {
      if (!first) out += "\n";
      if (!d.section.empty()) out += "[" + d.section + "]\n";
      section = d.section;
    }
    out += d.name + " = " + d.get(s) + "\n";
    first = false;
  }
  return out;
}

}  // namespace ccspec
