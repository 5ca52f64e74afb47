#include "ccspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccspec/config.hpp"
#include "ccspec/constants.hpp"
#include "ccspec/errors.hpp"
#include "ccspec/fidelity.hpp"
#include "ccspec/magnetics.hpp"
#include "ccspec/noise.hpp"
#include "ccspec/power.hpp"
#include "ccspec/pulse.hpp"
#include "ccspec/readout.hpp"
#include "ccspec/report.hpp"
#include "ccspec/spin.hpp"

namespace ccspec::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  std::string scenario_path;
  std::string out_path;
  std::string format = "csv";
  std::string geometry_path;  // coil only
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

struct Io {
  std::ostream& out;
  std::ostream& summary;
  std::ostream& err;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--scenario", c.scenario_path,
                  "Scenario file (key = value sections)");
  sub->add_option("--out", c.out_path, "Write the CSV artifact to this path");
  sub->add_option("--seed", c.seed, "Replace the scenario RNG seed");
  sub->add_option("--override", c.overrides,
                  "key=value scenario override (repeatable)");
  sub->add_option("--format", c.format,
                  "Stdout artifact format when --out is absent")
      ->check(CLI::IsMember({"csv", "table"}));
}

Scenario make_scenario(const Common& c, Io io) {
  Scenario s =
      c.scenario_path.empty() ? Scenario{} : load_scenario(c.scenario_path);
  for (const std::string& ov : c.overrides) apply_override(s, ov);
  if (c.seed_set) s.seed = c.seed;
  std::vector<std::string> warnings;
  s.validate(&warnings);
  for (const std::string& w : warnings) io.err << "warning: " << w << "\n";
  return s;
}

// With --out the CSV goes to the file and the aligned rendering plus notes to
// the summary stream; without it the artifact itself goes to `out` (pure CSV
// by default, aligned text with notes under --format table).
int deliver(const Table& t, const std::vector<std::string>& notes,
            const Common& c, Io io) {
  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f)
      throw ValidationError("cannot open output file '" + c.out_path + "'");
    write_csv(f, t);
    write_aligned(io.summary, t);
    for (const std::string& n : notes) io.summary << n << "\n";
  } else if (c.format == "table") {
    write_aligned(io.out, t);
    for (const std::string& n : notes) io.summary << n << "\n";
  } else {
    write_csv(io.out, t);
  }
  return 0;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> g;
  const double decades = std::log10(hi / lo);
  const int n = static_cast<int>(std::lround(decades * per_decade));
  g.reserve(n + 1);
  for (int i = 0; i <= n; ++i)
    g.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  return g;
}

// --- spec -------------------------------------------------------------------

int cmd_spec(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  const SpecSheet sheet = build_spec_sheet(
      s.spin, s.bias_field_parallel, s.carbon_state, s.budget, s.readout,
      s.effective_readout_budget(), s.seed);
  Table t;
  t.header = {"name", "qubit", "value", "unit", "equation", "budget_share"};
  for (const SpecRow& r : sheet.rows)
    t.rows.push_back(
        {r.name, to_string(r.qubit), r.value, r.unit, r.equation, r.budget_share});
  const double rt = spec_sheet_round_trip_error(
      sheet, s.spin, s.bias_field_parallel, s.carbon_state, s.budget);
  std::vector<std::string> notes = {
      "rows: " + std::to_string(sheet.rows.size()) + " (" + to_string(s.spin.species) +
          " at " + format_double(s.bias_field_parallel) + " G)",
      "closed-form round-trip worst relative error: " + format_double(rt)};
  return deliver(t, notes, c, io);
}

// --- noise ------------------------------------------------------------------

int cmd_noise(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  const double t_idle = s.budget.t_idle_electron;
  const double omega0 = 2.0 * kPi * electron_larmor(s.spin, s.bias_field_parallel);
  const FilterFunction par{NoiseAxis::parallel_idle, t_idle, 0.0};
  const FilterFunction tr{NoiseAxis::transverse, t_idle, omega0};
  Table t;
  t.header = {"omega_rad_s",        "psd",
              "filter_parallel_s2", "filter_transverse_s2",
              "integrand_parallel", "integrand_transverse"};
  for (double w : log_grid(1e3, 1e11, 25)) {
    const double sw = psd(s.noise, w);
    const double hp = filter_sq(par, w);
    const double ht = filter_sq(tr, w);
    t.rows.push_back({w, sw, hp, ht, sw * hp / kPi, sw * ht / kPi});
  }
  const double inf_par = infidelity_from_noise(s.noise, par);
  const double inf_tr = infidelity_from_noise(s.noise, tr);
  std::vector<std::string> notes = {
      "idle window: " + format_double(t_idle) + " s; carrier omega0 = " +
          format_double(omega0) + " rad/s",
      "parallel-axis infidelity: " + format_double(inf_par),
      "transverse-axis infidelity: " + format_double(inf_tr)};
  if (inf_par > 0.1 || inf_tr > 0.1)
    notes.push_back(
        "note: infidelities above 0.1 are outside the small-error validity of "
        "these filter formulas");
  return deliver(t, notes, c, io);
}

// --- coil -------------------------------------------------------------------

CoilGeometry load_segment_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open geometry file '" + path + "'");
  CoilGeometry g;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<double> v;
    std::string cell;
    bool numeric = true;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric && line_no == 1) continue;  // header row
    if (!numeric || v.size() != 6)
      throw ParseError(path + ": expected 6 numeric fields ax,ay,az,bx,by,bz",
                       line_no);
    g.segments.push_back({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
  }
  return g;
}

int cmd_coil(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  Table t;
  t.header = {"param", "k_x", "k_y", "k_z", "R_coil"};
  std::vector<std::string> notes;
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  if (!c.geometry_path.empty()) {
    const CoilGeometry g = load_segment_csv(c.geometry_path);
    const Eigen::Vector3d b = field_at_point(g, 1.0, origin, s.spin.constants);
    t.rows.push_back({0.0, b.x(), b.y(), b.z(), s.coils.r_coil});
    notes.push_back("geometry '" + c.geometry_path + "': " +
                    std::to_string(g.segments.size()) +
                    " segments; columns give G/A along x, y, z at the qubit");
  } else {
    const std::vector<double> widths = {0.5e-6, 1e-6, 1.5e-6, 2e-6,
                                        2.5e-6, 3e-6, 4e-6,   5e-6};
    for (const CouplingSweepRow& r :
         sweep_coupling("x_width", widths, -1.0))
      t.rows.push_back({r.param, r.k_x, r.k_y, r.k_z, r.r_coil});
    notes.push_back(
        "param: drive-coil trace width (m); k_y and k_z stay at the default "
        "stack values");
  }
  const double kx = coupling(default_x_coil(), origin, 0, s.spin.constants);
  const double ky = coupling(default_y_coil(), origin, 1, s.spin.constants);
  const double kz = coupling(default_z_coil(), origin, 2, s.spin.constants);
  notes.push_back("default stack couplings: k_x = " + format_double(kx) +
                  ", k_y = " + format_double(ky) + ", k_z = " + format_double(kz) +
                  " G/A (scenario uses " + format_double(s.coils.k_x) + "/" +
                  format_double(s.coils.k_y) + "/" + format_double(s.coils.k_z) +
                  ")");
  return deliver(t, notes, c, io);
}

// --- helmholtz --------------------------------------------------------------

int cmd_helmholtz(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  constexpr double kInnerRadius = 50e-3;
  constexpr double kGap = 40e-3;
  constexpr double kRadialWidth = 50e-3;
  constexpr double kAxialWidth = 50e-3;
  constexpr double kRegionEdge = 10e-3;
  const HelmholtzResult r = helmholtz_inhomogeneity(
      kInnerRadius, kGap, kRadialWidth, kAxialWidth, s.bias_field_parallel,
      kRegionEdge, 24, 17, s.spin.constants);
  Table t;
  t.header = {"b_center_G", "delta_b_G",  "ampere_turns_per_pack",
              "inner_radius_m", "gap_m",  "region_edge_m"};
  t.rows.push_back({r.b_center, r.delta_b, r.current, kInnerRadius, kGap,
                    kRegionEdge});
  std::vector<std::string> notes = {
      "bias pair: " + format_double(r.b_center) + " G center field, delta_B = " +
          format_double(r.delta_b) + " G over the " +
          format_double(kRegionEdge) + " m square chip region",
      "drive: " + format_double(r.current) + " ampere-turns per winding pack"};
  return deliver(t, notes, c, io);
}

// --- readout ----------------------------------------------------------------

int cmd_readout(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  std::vector<double> biases = {45.0, 400.0, 2000.0};
  if (std::none_of(biases.begin(), biases.end(), [&](double b) {
        return std::abs(b - s.bias_field_parallel) < 1e-9;
      }))
    biases.push_back(s.bias_field_parallel);
  std::sort(biases.begin(), biases.end());
  Table t;
  t.header = {"b_par_G", "b_perp_G", "infidelity"};
  for (double b_par : biases) {
    for (int i = 0; i <= 40; ++i) {
      const double b_perp = 0.25 * i;
      t.rows.push_back(
          {b_par, b_perp, readout_infidelity(s.readout, b_par, b_perp)});
    }
  }
  const double budget = s.effective_readout_budget();
  const double limit = bperp_limit(s.readout, budget, s.bias_field_parallel);
  std::vector<std::string> notes = {
      "transverse-field ceiling at " + format_double(s.bias_field_parallel) +
      " G for readout budget " + format_double(budget) + ": " +
      format_double(limit) + " G over " + std::to_string(s.readout.n_cycles) +
      " cycles"};
  return deliver(t, notes, c, io);
}

// --- crosstalk --------------------------------------------------------------

int cmd_crosstalk(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  const double f_rabi = s.budget.f_rabi(DriveTarget::electron);
  const double i_local =
      field_for_rabi(s.spin, DriveTarget::electron, f_rabi) / s.coils.k_x;
  constexpr double kWireCurrent = 20e-3;
  const CoilGeometry wire = default_lo_wire();
  const double beta =
      crosstalk_beta(wire, Eigen::Vector3d::Zero(), s.coils.k_x, kWireCurrent,
                     i_local, s.spin.constants);
  CrosstalkScenario x;
  x.f_rabi_addressed = f_rabi;
  x.f_rabi_unaddressed = beta * f_rabi;
  x.theta = kPi;
  Table t;
  t.header = {"f_space_Hz", "alpha", "infidelity", "envelope"};
  for (double f_space : log_grid(1e6, 1e8, 25)) {
    x.f_space = f_space;
    t.rows.push_back({f_space, x.alpha(), infidelity_offresonant_drive(x),
                      crosstalk_envelope(x)});
  }
  x.f_space = s.power.clock.f_space_lo;
  const double env_lo = crosstalk_envelope(x);
  std::vector<std::string> notes = {
      "stray-drive ratio beta = " + format_double(beta) + " at " +
          format_double(kWireCurrent) + " A feed current and " +
          format_double(i_local) + " A local drive",
      "envelope at the channel spacing (" +
          format_double(s.power.clock.f_space_lo) +
          " Hz): " + format_double(env_lo)};
  return deliver(t, notes, c, io);
}

// --- power ------------------------------------------------------------------

std::vector<Cell> power_row(const SweepRow& r) {
  return {r.delta_b,
          static_cast<long long>(r.n_cells),
          to_string(r.strategy),
          r.breakdown.p_dc,
          r.breakdown.p_nco_total,
          r.breakdown.p_amp_electron,
          r.breakdown.p_amp_nuclear,
          r.breakdown.p_total};
}

int cmd_power(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  const PowerBreakdown b = unit_cell_power(s.spin, s.budget, s.coils, s.power,
                                           s.power.delta_b, s.power.strategy);
  const Strategy other = s.power.strategy == Strategy::dc_compensation
                             ? Strategy::frequency_compensation
                             : Strategy::dc_compensation;
  const PowerBreakdown alt =
      unit_cell_power(s.spin, s.budget, s.coils, s.power, s.power.delta_b, other);
  Table t;
  t.header = {"delta_B", "N",       "strategy", "p_dc",
              "p_nco",   "p_amp_e", "p_amp_n",  "p_total"};
  t.rows.push_back(power_row(
      {s.power.delta_b, s.power.net.n_cells, s.power.strategy, b}));
  std::vector<std::string> notes = {
      "per-cell total: " + format_double(b.p_total) + " W with " +
          to_string(b.strategy),
      "processor total for " + std::to_string(s.power.net.n_cells) +
          " cells: " + format_double(b.p_total * s.power.net.n_cells) + " W",
      to_string(other) + " would dissipate " + format_double(alt.p_total) +
          " W per cell"};
  return deliver(t, notes, c, io);
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  const std::vector<int> n_list = {100, 10000};
  const std::vector<SweepRow> rows =
      tradeoff_sweep(s.spin, s.budget, s.coils, s.power, grid, n_list);
  Table t;
  t.header = {"delta_B", "N",       "strategy", "p_dc",
              "p_nco",   "p_amp_e", "p_amp_n",  "p_total"};
  for (const SweepRow& r : rows) t.rows.push_back(power_row(r));
  std::vector<std::string> notes;
  for (const auto& [n, field] : crossover_fields(rows))
    notes.push_back("N = " + std::to_string(n) +
                    ": cheaper strategy flips near delta_B = " +
                    format_double(field) + " G");
  if (notes.empty())
    notes.push_back("no strategy crossover inside the swept delta_B range");
  return deliver(t, notes, c, io);
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const Common& c, Io io) {
  const Scenario s = make_scenario(c, io);
  Table t;
  t.header = {"check", "computed", "reference", "ratio", "status"};
  bool all_pass = true;
  const auto add = [&](const std::string& name, double computed,
                       double reference, bool pass) {
    const double ratio = reference != 0.0 ? computed / reference : computed;
    t.rows.push_back({name, computed, reference, ratio,
                      std::string(pass ? "PASS" : "FAIL")});
    all_pass = all_pass && pass;
  };
  const auto in_band = [](double ratio, double lo, double hi) {
    return ratio >= lo && ratio <= hi;
  };

  const double share = s.budget.op_share();
  const double f_rabi = s.budget.f_rabi(DriveTarget::electron);
  const double t_op = s.budget.t_op_electron;
  const StaticErrorLimits lim = static_error_infidelities(share, f_rabi, t_op);
  PulseSpec p;
  p.f_rabi = f_rabi;
  p.duration = t_op;
  const Eigen::Matrix2cd u_id = ideal_gate(p);
  const double conv = rabi_slope(s.spin, DriveTarget::electron);
  const auto worst_with = [&](const ErrorRealization& e) {
    return worst_case_infidelity(simulate_gate(p, e, conv), u_id);
  };

  ErrorRealization e;
  e.delta_f = lim.delta_f_max;
  const double inf_detuning = worst_with(e);
  add("pulse_detuning_limit", inf_detuning, share,
      in_band(inf_detuning / share, 0.8, 1.2));

  e = ErrorRealization{};
  e.delta_phase = lim.phase_max;
  const double inf_phase = worst_with(e);
  add("pulse_phase_limit", inf_phase, share, in_band(inf_phase / share, 0.8, 1.2));

  e = ErrorRealization{};
  e.delta_duration = lim.duration_max;
  const double inf_duration = worst_with(e);
  add("pulse_duration_limit", inf_duration, share,
      in_band(inf_duration / share, 0.8, 1.2));

  e = ErrorRealization{};
  e.rel_amplitude = lim.rel_amplitude_max;
  const double inf_amplitude = worst_with(e);
  add("pulse_amplitude_limit", inf_amplitude, share,
      in_band(inf_amplitude / share, 0.8, 1.2));

  e = ErrorRealization{};
  e.delta_f = 3.7e6 * (f_rabi / 5e6);
  e.rel_amplitude = 0.13;
  const Eigen::Matrix2cd u_act = simulate_gate(p, e, conv);
  const double transfer = std::norm(u_act(1, 0));
  const double transfer_ref =
      analytic_transfer_probability(p, e.delta_f, e.rel_amplitude);
  add("rabi_formula_agreement", transfer, transfer_ref,
      std::abs(transfer - transfer_ref) <= 1e-10);

  e = ErrorRealization{};
  e.delta_f = 0.5 * lim.delta_f_max;
  const double inf_half = worst_with(e);
  const double scaling = inf_half / inf_detuning;
  add("quadratic_error_scaling", scaling, 0.25,
      in_band(scaling / 0.25, 0.9, 1.1));

  NoiseModel white;
  white.kind = NoiseKind::white;
  white.level = 4.0 * share / t_op;
  const FilterFunction par{NoiseAxis::parallel_idle, t_op, 0.0};
  const double white_num = infidelity_from_noise(white, par);
  const double white_ref = white_parallel_infidelity_exact(white.level, t_op);
  add("white_noise_quadrature", white_num, white_ref,
      in_band(white_num / white_ref, 0.995, 1.005));

  NoiseModel ou;
  ou.kind = NoiseKind::ornstein_uhlenbeck;
  ou.t2_star = 1e-6;
  ou.tau_c = 1e3 * t_op;
  const double ou_num = infidelity_from_noise(ou, par);
  const double ou_ref = infidelity_dephasing(ou.t2_star, t_op);
  add("ou_slow_noise_limit", ou_num, ou_ref, in_band(ou_num / ou_ref, 0.95, 1.05));

  const double power_num = noise_total_power(ou);
  const double power_ref = kPi * ou.omega2s() * ou.omega2s();
  add("ou_total_power", power_num, power_ref,
      in_band(power_num / power_ref, 0.999, 1.001));

  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  const double loop_num = coupling(
      circular_loop({0.0, 0.0, -15e-6}, 10e-6), origin, 2, s.spin.constants);
  const double loop_ref =
      loop_axial_field_analytic(10e-6, 15e-6, 1.0, s.spin.constants);
  add("loop_field_axial", loop_num, loop_ref,
      in_band(loop_num / loop_ref, 0.99, 1.01));

  const CoilGeometry wire = default_lo_wire(0.0, 15e-6, 10e-3, 9.5e-3);
  const Eigen::Vector3d wire_field =
      field_at_point(wire, 1.0, origin, s.spin.constants);
  const double wire_num = wire_field.norm();
  const double wire_ref =
      s.spin.constants.mu0 / (2.0 * kPi * 15e-6) * kTeslaToGauss;
  add("straight_wire_field", wire_num, wire_ref,
      in_band(wire_num / wire_ref, 0.99, 1.01));

  ErrorDistribution dist;
  dist.delta_f_sigma = lim.delta_f_max;
  const MonteCarloResult mc = monte_carlo_infidelity(p, dist, 400, s.seed, conv);
  add("mc_detuning_sampling", mc.mean, share, in_band(mc.mean / share, 0.7, 1.3));

  int passed = 0;
  for (const auto& row : t.rows)
    if (std::get<std::string>(row.back()) == "PASS") ++passed;
  std::vector<std::string> notes = {
      "checks passed: " + std::to_string(passed) + "/" +
      std::to_string(t.rows.size())};
  const int rc = deliver(t, notes, c, io);
  if (!all_pass) {
    io.err << "error: " << (t.rows.size() - passed)
           << " oracle check(s) failed\n";
    return 1;
  }
  return rc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& summary, std::ostream& err) {
  CLI::App app{
      "Electrical-interface specification and power budgeting for color-center "
      "quantum processors"};
  app.name("ccspec");
  app.require_subcommand(1);
  Common c;
  CLI::App* spec = app.add_subcommand(
      "spec", "Derive the per-qubit electrical requirement sheet");
  CLI::App* noise = app.add_subcommand(
      "noise", "Emit noise PSD, filter functions, and infidelity integrand");
  CLI::App* coil = app.add_subcommand(
      "coil", "Coil coupling sweep or field of a segment-list geometry");
  CLI::App* helmholtz = app.add_subcommand(
      "helmholtz", "Bias-pair field inhomogeneity over the chip region");
  CLI::App* readout = app.add_subcommand(
      "readout", "Spin-mixing readout infidelity versus transverse field");
  CLI::App* crosstalk = app.add_subcommand(
      "crosstalk", "Off-resonant drive leakage versus channel spacing");
  CLI::App* power = app.add_subcommand(
      "power", "Unit-cell power breakdown for the configured strategy");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Power trade-off over compensation field and cell count");
  CLI::App* validate = app.add_subcommand(
      "validate", "Run the oracle-versus-closed-form consistency suite");
  for (CLI::App* sub : {spec, noise, coil, helmholtz, readout, crosstalk, power,
                        sweep, validate})
    add_common(sub, c);
  coil->add_option("--geometry", c.geometry_path,
                   "CSV segment list (ax,ay,az,bx,by,bz per row)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      summary << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (CLI::App* sub : {spec, noise, coil, helmholtz, readout, crosstalk, power,
                        sweep, validate})
    if (sub->parsed()) c.seed_set = sub->count("--seed") > 0;

  Io io{out, summary, err};
  try {
    if (spec->parsed()) return cmd_spec(c, io);
    if (noise->parsed()) return cmd_noise(c, io);
    if (coil->parsed()) return cmd_coil(c, io);
    if (helmholtz->parsed()) return cmd_helmholtz(c, io);
    if (readout->parsed()) return cmd_readout(c, io);
    if (crosstalk->parsed()) return cmd_crosstalk(c, io);
    if (power->parsed()) return cmd_power(c, io);
    if (sweep->parsed()) return cmd_sweep(c, io);
    if (validate->parsed()) return cmd_validate(c, io);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command selected\n";
  return 1;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cout, std::cerr);
}

}  // namespace ccspec::cli
