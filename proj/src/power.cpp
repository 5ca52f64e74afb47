#include "ccspec/power.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "ccspec/errors.hpp"

namespace ccspec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
}  // namespace

void ElectricalNetwork::validate() const {
  if (!(r_on >= 0.0) || !(r_ic >= 0.0) || !(r_coil >= 0.0))
    throw ValidationError("resistances must be nonnegative");
  if (!(p_cir >= 0.0)) throw ValidationError("P_cir must be nonnegative");
  if (n_cells < 1) throw ValidationError("N_cells must be at least 1");
}

void ClockPlan::validate() const {
  if (!(f_space_lo > 0.0)) throw ValidationError("f_space_LO must be positive");
  if (!(f_comp >= 0.0)) throw ValidationError("f_comp must be nonnegative");
  if (!(e_bit > 0.0)) throw ValidationError("E_bit must be positive");
  if (!(activity_factor > 0.0))
    throw ValidationError("activity_factor must be positive");
  if (n_nco_electron < 0 || n_nco_nuclear < 0)
    throw ValidationError("tracker counts must be nonnegative");
}

void AmplifierConfig::validate() const {
  if (!(v_dd > 0.0) || !(v_sup > 0.0))
    throw ValidationError("supply voltages must be positive");
  if (!(duty_electron >= 0.0) || duty_electron > 1.0 ||
      !(duty_nuclear >= 0.0) || duty_nuclear > 1.0)
    throw ValidationError("duty cycles must lie in [0, 1]");
}

void PowerScenario::validate() const {
  net.validate();
  clock.validate();
  amp.validate();
  if (!(delta_b >= 0.0)) throw ValidationError("delta_B must be nonnegative");
}

std::string to_string(Strategy s) {
  return s == Strategy::dc_compensation ? "dc_compensation"
                                        : "frequency_compensation";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "dc_compensation" || s == "dc") return Strategy::dc_compensation;
  if (s == "frequency_compensation" || s == "frequency" || s == "freq")
    return Strategy::frequency_compensation;
  throw ValidationError("unknown strategy: " + s +
                        " (expected dc_compensation or frequency_compensation)");
}

double p_dc(double i_coil, const ElectricalNetwork& net) {
  net.validate();
  if (!(i_coil >= 0.0)) throw ValidationError("coil current must be nonnegative");
  const double r_path = net.n_cells * net.r_ic + net.r_on + net.r_coil;
  return i_coil * i_coil * r_path + net.p_cir;
}

double dc_current_for_compensation(double delta_b, double k_z) {
  if (!(k_z > 0.0)) throw ValidationError("k_z must be positive");
  if (!(delta_b >= 0.0)) throw ValidationError("delta_B must be nonnegative");
  return delta_b / k_z;
}

double required_fs(const ClockPlan& plan) {
  plan.validate();
  return 2.5 * std::max(plan.f_space_lo, plan.f_comp);
}

int nco_bits(double f_s, double t_op, double fidelity) {
  if (!(f_s > 0.0)) throw ValidationError("f_s must be positive");
  if (!(t_op > 0.0)) throw ValidationError("t_op must be positive");
  if (!(fidelity > 0.0) || fidelity > 1.0)
    throw ValidationError("fidelity must lie in (0, 1]");
  if (fidelity == 1.0)
    throw ValidationError(
        "fidelity of exactly 1 needs unbounded tracker resolution");
  const double tolerance_angle = std::acos(std::sqrt(fidelity));
  const double bits =
      std::ceil(std::log2(kPi * f_s * t_op / tolerance_angle) - 1.0);
  if (bits < 1.0) return 1;
  return static_cast<int>(bits);
}

double p_nco(const ClockPlan& plan, double f_s, int bits) {
  plan.validate();
  if (bits < 1) throw ValidationError("tracker needs at least one bit");
  if (!(f_s > 0.0)) throw ValidationError("f_s must be positive");
  return plan.activity_factor * plan.e_bit * f_s * bits;
}

double p_amp_electron(double f_rabi, const SpinSystem& sys, double k,
                      const AmplifierConfig& amp) {
  if (!(f_rabi >= 0.0)) throw ValidationError("f_rabi must be nonnegative");
  if (!(k > 0.0)) throw ValidationError("coupling k must be positive");
  if (f_rabi == 0.0) return 0.0;
  const double i_pk = field_for_rabi(sys, DriveTarget::electron, f_rabi) / k;
  return (i_pk / kSqrt2) * amp.v_dd * amp.duty_electron;
}

double p_amp_nuclear(double f_rabi_c, const SpinSystem& sys, double k,
                     const AmplifierConfig& amp) {
  if (!(f_rabi_c >= 0.0)) throw ValidationError("f_rabi must be nonnegative");
  if (!(k > 0.0)) throw ValidationError("coupling k must be positive");
  if (f_rabi_c == 0.0) return 0.0;
  const double i_pk = field_for_rabi(sys, DriveTarget::carbon, f_rabi_c) / k;
  return (i_pk / kSqrt2) * amp.v_sup * amp.duty_nuclear;
}

PowerBreakdown unit_cell_power(const SpinSystem& sys,
                               const FidelityBudget& budget,
                               const CoilSet& coils, const PowerScenario& scn,
                               double delta_b, Strategy strategy) {
  sys.validate();
  budget.validate();
  coils.validate();
  scn.net.validate();
  scn.amp.validate();
  if (!(delta_b >= 0.0)) throw ValidationError("delta_B must be nonnegative");

  ClockPlan clock = scn.clock;
  double i_coil = 0.0;
  if (strategy == Strategy::dc_compensation) {
    clock.f_comp = 0.0;
    i_coil = dc_current_for_compensation(delta_b, coils.k_z);
  } else {
    clock.f_comp = sys.constants.gamma_e * delta_b;
    i_coil = 0.0;
  }
  const double f_s = required_fs(clock);
  const double op_fidelity = 1.0 - budget.op_share();
  const int bits_e = nco_bits(f_s, budget.t_op_electron, op_fidelity);
  const int bits_c = nco_bits(f_s, budget.t_op_carbon, op_fidelity);

  PowerBreakdown out;
  out.strategy = strategy;
  out.p_dc = p_dc(i_coil, scn.net);
  out.p_nco_total = clock.n_nco_electron * p_nco(clock, f_s, bits_e) +
                    clock.n_nco_nuclear * p_nco(clock, f_s, bits_c);
  out.p_amp_electron = p_amp_electron(budget.f_rabi(DriveTarget::electron), sys,
                                      coils.k_x, scn.amp);
  out.p_amp_nuclear = p_amp_nuclear(budget.f_rabi(DriveTarget::carbon), sys,
                                    coils.k_x, scn.amp);
  out.p_total =
      out.p_dc + out.p_nco_total + out.p_amp_electron + out.p_amp_nuclear;
  return out;
}

std::vector<SweepRow> tradeoff_sweep(const SpinSystem& sys,
                                     const FidelityBudget& budget,
                                     const CoilSet& coils,
                                     const PowerScenario& scn,
                                     const std::vector<double>& delta_b_grid,
                                     const std::vector<int>& n_cells_list) {
  if (delta_b_grid.empty() || n_cells_list.empty())
    throw ValidationError("sweep grids must not be empty");
  std::vector<SweepRow> rows;
  rows.reserve(delta_b_grid.size() * n_cells_list.size() * 2);
  for (double delta_b : delta_b_grid) {
    for (int n : n_cells_list) {
      PowerScenario local = scn;
      local.net.n_cells = n;
      for (Strategy strategy :
           {Strategy::dc_compensation, Strategy::frequency_compensation}) {
        rows.push_back({delta_b, n, strategy,
                        unit_cell_power(sys, budget, coils, local, delta_b,
                                        strategy)});
      }
    }
  }
  return rows;
}

std::vector<std::pair<int, double>> crossover_fields(
    const std::vector<SweepRow>& rows) {
  // Collect (delta_b -> p_dc_total, p_freq_total) curves per n_cells.
  struct Pair {
    double dc = 0.0;
    double freq = 0.0;
    bool have_dc = false;
    bool have_freq = false;
  };
  std::map<int, std::map<double, Pair>> curves;
  for (const SweepRow& r : rows) {
    Pair& p = curves[r.n_cells][r.delta_b];
    if (r.strategy == Strategy::dc_compensation) {
      p.dc = r.breakdown.p_total;
      p.have_dc = true;
    } else {
      p.freq = r.breakdown.p_total;
      p.have_freq = true;
    }
  }
  std::vector<std::pair<int, double>> crossings;
  for (const auto& [n, curve] : curves) {
    double prev_diff = 0.0;
    double prev_b = 0.0;
    bool first = true;
    for (const auto& [b, p] : curve) {
      if (!p.have_dc || !p.have_freq) continue;
      const double diff = p.dc - p.freq;
      if (!first && diff * prev_diff < 0.0) {
        const double t = prev_diff / (prev_diff - diff);
        crossings.emplace_back(n, prev_b + t * (b - prev_b));
      }
      prev_diff = diff;
      prev_b = b;
      first = false;
    }
  }
  return crossings;
}

}  // namespace ccspec
