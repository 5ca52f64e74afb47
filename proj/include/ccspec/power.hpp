#pragma once

#include <string>
#include <vector>

#include "ccspec/fidelity.hpp"
#include "ccspec/magnetics.hpp"
#include "ccspec/spin.hpp"

namespace ccspec {

// Resistive path seen by one unit cell's DC coil current: N_cells interconnect
// hops in series with the access switch and the coil itself, plus fixed
// auxiliary circuit power.
struct ElectricalNetwork {
  double r_on = 0.25;     // ohm, access switch
  double r_ic = 0.0125;   // ohm per interconnect hop
  double r_coil = 1.0;    // ohm
  double p_cir = 1.0e-4;  // W, fixed auxiliary power per cell
  int n_cells = 100;

  void validate() const;
};

// Digital clocking of the frequency trackers. One tracker per electron qubit
// and one per nuclear qubit hold the rotating-frame phase; the sample clock
// must cover the LO channel spacing and any compensation offset with margin.
struct ClockPlan {
  double f_space_lo = 1.0e7;     // Hz
  double f_comp = 0.0;           // Hz, frequency-compensation offset
  double e_bit = 8.4e-14;        // J per bit-toggle
  double activity_factor = 2.0;  // toggles per bit per cycle
  int n_nco_electron = 1;
  int n_nco_nuclear = 9;

  void validate() const;
};

struct AmplifierConfig {
  double v_dd = 1.1;           // V, electron driver supply
  double v_sup = 0.1;          // V, nuclear driver supply
  double duty_electron = 0.1;  // fraction of time the electron driver is on
  double duty_nuclear = 1.0;

  void validate() const;
};

enum class Strategy { dc_compensation, frequency_compensation };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct PowerScenario {
  ElectricalNetwork net;
  ClockPlan clock;
  AmplifierConfig amp;
  Strategy strategy = Strategy::dc_compensation;
  double delta_b = 2.4;  // gauss of bias inhomogeneity to compensate

  void validate() const;
};

struct PowerBreakdown {
  double p_dc = 0.0;
  double p_nco_total = 0.0;
  double p_amp_electron = 0.0;
  double p_amp_nuclear = 0.0;
  double p_total = 0.0;
  Strategy strategy = Strategy::dc_compensation;
};

// I^2 * (N*R_IC + R_on + R_coil) + P_cir.
double p_dc(double i_coil, const ElectricalNetwork& net);

// delta_B / k_z.
double dc_current_for_compensation(double delta_b, double k_z);

// 2.5 * max(f_space_lo, f_comp).
double required_fs(const ClockPlan& plan);

// Tracker word length so that the worst-case frequency-truncation error
// f_s/2^bits dephases less than acos(sqrt(F)) over t_op:
// ceil(log2(pi*f_s*t_op/acos(sqrt(F))) - 1). F = 1 raises ValidationError.
int nco_bits(double f_s, double t_op, double fidelity);

// activity_factor * e_bit * f_s * bits.
double p_nco(const ClockPlan& plan, double f_s, int bits);

// Electron driver: rms drive current (f_r/(gamma_e*k)) times V_DD, duty-weighted.
double p_amp_electron(double f_rabi, const SpinSystem& sys, double k,
                      const AmplifierConfig& amp);

// Nuclear driver: (f_rc/(sqrt(2)*gamma_c*k)) * V_sup, duty-weighted.
double p_amp_nuclear(double f_rabi_c, const SpinSystem& sys, double k,
                     const AmplifierConfig& amp);

// Full per-cell budget for one compensation strategy. DC compensation drives
// delta_b/k_z through the coil with the baseline clock; frequency compensation
// leaves the coil idle and widens the clock by f_comp = gamma_e*delta_b.
// Tracker word lengths are recomputed at the resulting sample rate for both
// qubit types.
PowerBreakdown unit_cell_power(const SpinSystem& sys, const FidelityBudget& budget,
                               const CoilSet& coils, const PowerScenario& scn,
                               double delta_b, Strategy strategy);

struct SweepRow {
  double delta_b;
  int n_cells;
  Strategy strategy;
  PowerBreakdown breakdown;
};

// Every (delta_b, n_cells, strategy) combination, row-major in that order.
std::vector<SweepRow> tradeoff_sweep(const SpinSystem& sys, const FidelityBudget& budget,
                                     const CoilSet& coils, const PowerScenario& scn,
                                     const std::vector<double>& delta_b_grid,
                                     const std::vector<int>& n_cells_list);

// delta_b values where the cheaper strategy flips, per n_cells (linear
// interpolation between grid points).
std::vector<std::pair<int, double>> crossover_fields(const std::vector<SweepRow>& rows);

}  // namespace ccspec
