#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ccspec/spin.hpp"

namespace ccspec {

enum class Envelope { rectangular };

// Drive applied in the frame rotating at the nominal transition frequency.
struct PulseSpec {
  double f_rabi = 0.0;    // Hz
  double detuning = 0.0;  // Hz, deliberate offset from resonance
  double phase = 0.0;     // rad, drive axis in the equatorial plane
  double duration = 0.0;  // s
  Envelope envelope = Envelope::rectangular;

  void validate() const;
};

// One concrete draw of control errors applied to a pulse: static offsets plus
// additive white transverse field noise of the given rms (gauss, quasi-static
// equivalent over the pulse) band-limited to `bandwidth`.
struct ErrorRealization {
  double delta_f = 0.0;         // Hz
  double delta_phase = 0.0;     // rad
  double delta_duration = 0.0;  // s
  double rel_amplitude = 0.0;   // fractional Rabi-rate error
  double field_rms = 0.0;       // gauss
  double bandwidth = 0.0;       // Hz, required when field_rms > 0
  std::uint64_t seed = 0;
};

// Distribution over realizations for Monte Carlo estimates; each sigma is the
// standard deviation of an independent zero-mean Gaussian.
struct ErrorDistribution {
  double delta_f_sigma = 0.0;
  double delta_phase_sigma = 0.0;
  double delta_duration_sigma = 0.0;
  double rel_amplitude_sigma = 0.0;
  double field_rms = 0.0;   // applied to every sample when > 0
  double bandwidth = 0.0;
};

// Unitary of the ideal (error-free) pulse.
Eigen::Matrix2cd ideal_gate(const PulseSpec& p);

// Evolves the pulse with errors applied, stepping the noise as piecewise-
// constant segments of width 1/(10*bandwidth) with an exact 2x2 exponential
// per segment. field_to_rabi (Hz/G) converts the noise field into a Rabi-rate
// perturbation on both drive quadratures. Raises NumericalError when the step
// count would exceed the safety cap (coarsen the bandwidth).
Eigen::Matrix2cd simulate_gate(const PulseSpec& p, const ErrorRealization& e,
                               double field_to_rabi);

// 1 - min over pure states of the state fidelity between U_ideal|psi> and
// U_actual|psi>, from the rotation angle of U_ideal^dagger * U_actual. Inputs
// must be unitary to 1e-9.
double worst_case_infidelity(const Eigen::Matrix2cd& u_actual,
                             const Eigen::Matrix2cd& u_ideal);

// Average gate infidelity over Haar-random pure states, for cross-checks.
double average_infidelity(const Eigen::Matrix2cd& u_actual,
                          const Eigen::Matrix2cd& u_ideal);

// Analytic transfer probability |<1|U|0>|^2 of a rectangular pulse at constant
// detuning (generalized Rabi formula), used as an oracle for simulate_gate.
double analytic_transfer_probability(const PulseSpec& p, double delta_f,
                                     double rel_amplitude);

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// Mean worst-case infidelity over n sampled realizations. Per-sample RNG
// streams are derived from (seed, sample index), so the result is independent
// of evaluation order.
MonteCarloResult monte_carlo_infidelity(const PulseSpec& p, const ErrorDistribution& d,
                                        int n, std::uint64_t seed,
                                        double field_to_rabi);

// Bisects the wideband-noise rms (gauss) at which the Monte Carlo mean
// infidelity equals `budget`, reusing the same sample seeds at every trial
// level so the objective is monotone and deterministic.
double noise_rms_for_budget(const PulseSpec& p, double budget, double bandwidth,
                            int n, std::uint64_t seed, double field_to_rabi);

}  // namespace ccspec
