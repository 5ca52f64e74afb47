#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccspec/spin.hpp"

namespace ccspec {

struct ReadoutModel;  // readout.hpp

// Error budget for one- qubit gates: the total infidelity 1 - target_fidelity is
// split equally among n_components_op error sources during operations and
// n_components_idle sources while idling. Idle windows default to the gate
// duration of the matching qubit.
struct FidelityBudget {
  double target_fidelity = 0.9999;
  int n_components_op = 8;
  int n_components_idle = 4;
  double t_op_electron = 100e-9;
  double t_op_carbon = 100e-6;
  double t_idle_electron = 100e-9;
  double t_idle_carbon = 100e-6;

  double op_share() const { return (1.0 - target_fidelity) / n_components_op; }
  double idle_share() const { return (1.0 - target_fidelity) / n_components_idle; }
  double t_op(DriveTarget t) const {
    return t == DriveTarget::electron ? t_op_electron : t_op_carbon;
  }
  double t_idle(DriveTarget t) const {
    return t == DriveTarget::electron ? t_idle_electron : t_idle_carbon;
  }
  // Rabi rate putting a pi rotation inside t_op.
  double f_rabi(DriveTarget t) const { return 0.5 / t_op(t); }

  void validate() const;
};

// Single unwanted tone in the drive spectrum, assumed at worst case to sit on
// the qubit resonance.
struct SpurTone {
  double amplitude_field = 0.0;  // gauss
  double frequency = 0.0;        // Hz, informational
};

// Off-resonant drive leaking onto an unaddressed qubit whose transition sits
// f_space away from the addressed one. theta is the rotation angle applied to
// the addressed qubit.
struct CrosstalkScenario {
  double f_space = 1.0e7;
  double f_rabi_addressed = 5.0e6;
  double f_rabi_unaddressed = 0.0;
  double theta = 3.14159265358979323846;

  double alpha() const { return f_space / f_rabi_addressed; }
  double beta() const { return f_rabi_unaddressed / f_rabi_addressed; }
  void validate() const;
};

// --- Closed-form worst-case-state infidelities (rectangular pi pulse / idle) ---

// Frequency-tracking error delta_f held for an idle window T: sin^2(pi*delta_f*T).
double infidelity_idle_detuning(double delta_f, double t_idle);

// Quasi-static dephasing over T for a Gaussian-distributed Larmor offset with
// 1/e time t2_star: (1/4)*(sqrt(2)/t2_star)^2*T^2. Raw quadratic form; values
// above 0.1 are outside the small-error validity of the expansion.
double infidelity_dephasing(double t2_star, double t_idle);

// Resonant spurious tone of given field amplitude driving the qubit for T:
// (1/4)*omega_spur^2*T^2 with omega_spur = 2*pi*rabi_frequency(amplitude).
double infidelity_spur(const SpurTone& spur, const SpinSystem& sys, DriveTarget target,
                       double t_idle);

// Detuned drive on an unaddressed qubit: (beta^2/alpha^2)*sin^2(theta*alpha/2),
// continued analytically to beta^2*theta^2/4 at alpha = 0.
double infidelity_offresonant_drive(const CrosstalkScenario& x);

// Upper envelope of the above over the oscillation: beta^2/alpha^2 (beta^2*theta^2/4
// at alpha = 0).
double crosstalk_envelope(const CrosstalkScenario& x);

// Static pulse-parameter errors at which a rectangular pi pulse of rate f_rabi
// and duration t_op consumes exactly budget_share:
//   detuning   1-F = (delta_f/f_rabi)^2
//   phase      1-F = sin^2(delta_phase)
//   duration   1-F = sin^2(pi*delta_t/(2*t_op))
//   amplitude  1-F = sin^2(pi*eps/2)
struct StaticErrorLimits {
  double delta_f_max;        // Hz
  double phase_max;          // rad
  double duration_max;       // s
  double rel_amplitude_max;  // dimensionless
};
StaticErrorLimits static_error_infidelities(double budget_share, double f_rabi,
                                            double t_op);

// Spur amplitude consuming exactly `budget` (inverse of infidelity_spur, 1e-9
// relative round trip).
double spur_field_limit(double budget, const SpinSystem& sys, DriveTarget target,
                        double t_idle);

// --- Specification sheet (requirement table) ---

struct SpecRow {
  std::string name;
  DriveTarget qubit;
  double value;
  std::string unit;
  std::string equation;  // closed form the value was inverted from
  double budget_share;   // infidelity allocation backing the value (0 = informational)
};

struct SpecSheet {
  std::vector<SpecRow> rows;
};

// Derives every requirement row for both qubits: transition frequencies, static
// accuracy limits, rms noise limits, drive amplitudes, wideband additive noise
// (Monte Carlo bisection against the pulse simulator), spur ceiling, DC-field
// accuracy, field-noise PSDs, and the transverse-field ceiling from the readout
// model (allotted `readout_budget`). `seed` fixes the Monte Carlo stream;
// `carbon_state` selects the carbon transition branch.
SpecSheet build_spec_sheet(const SpinSystem& sys, double bias_field_parallel,
                           ElectronState carbon_state, const FidelityBudget& budget,
                           const ReadoutModel& readout, double readout_budget,
                           std::uint64_t seed);

// Largest relative error over all budget-backed rows when each value is pushed
// back through its closed form and compared to its budget share. Wideband rows
// are excluded (they are calibrated against the stochastic oracle instead).
double spec_sheet_round_trip_error(const SpecSheet& sheet, const SpinSystem& sys,
                                   double bias_field_parallel,
                                   ElectronState carbon_state,
                                   const FidelityBudget& budget);

}  // namespace ccspec
