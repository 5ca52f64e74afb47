#pragma once

#include "ccspec/spin.hpp"

namespace ccspec {

// Noise on the qubit's angular Larmor frequency. White noise is a flat
// one-sided PSD of `level` (rad/s)^2/Hz. Ornstein-Uhlenbeck noise is the
// Lorentzian S(omega) = 2*pi*omega2s^2/(pi*tau_c)/(omega^2 + 1/tau_c^2) with
// omega2s = sqrt(2)/t2_star, whose total power int_0^inf S domega = pi*omega2s^2.
enum class NoiseKind { white, ornstein_uhlenbeck };

struct NoiseModel {
  NoiseKind kind = NoiseKind::white;
  double level = 0.0;    // white only, (rad/s)^2/Hz
  double t2_star = 0.0;  // OU only, s
  double tau_c = 0.0;    // OU only, s

  double omega2s() const;  // sqrt(2)/t2_star
  void validate() const;
};

// Frequency-domain sensitivity of an idle qubit. parallel_idle weighs noise
// along the quantization axis: sin^2(T*omega/2)/omega^2. transverse weighs
// noise around a carrier at omega0: 2*sin^2((T/2)(omega-omega0))/(omega-omega0)^2,
// carrying twice the peak weight of the parallel filter.
enum class NoiseAxis { parallel_idle, transverse };

struct FilterFunction {
  NoiseAxis axis = NoiseAxis::parallel_idle;
  double t_op = 0.0;   // s
  double omega0 = 0.0; // rad/s, transverse only

  void validate() const;
};

// S(omega); omega in rad/s.
double psd(const NoiseModel& model, double omega);

// |H(omega)|^2 in s^2, with the removable singularities evaluated analytically.
double filter_sq(const FilterFunction& f, double omega);

// (1/pi) * int_0^inf S(omega)|H(omega)|^2 domega. Adaptive panel quadrature
// split at the filter nodes (first 100 lobes) with an analytic-envelope tail;
// convergence failure raises QuadratureError carrying the estimate.
double infidelity_from_noise(const NoiseModel& model, const FilterFunction& f);

// int_0^inf S(omega) domega for the OU model (pi*omega2s^2 analytically);
// white noise has unbounded power and raises ValidationError.
double noise_total_power(const NoiseModel& model);

// Largest flat field PSD (G^2/Hz) an idle window of t_op can absorb while the
// resulting infidelity stays at `budget`. The field couples through the
// transition slope d(nu)/dB of the given qubit. The transverse allowance is
// exactly half the parallel one at equal budget.
double allowed_field_psd(double budget, NoiseAxis axis, const SpinSystem& sys,
                         DriveTarget target, double bias_field_parallel,
                         ElectronState state, double t_op);

// Exact references used to pin the quadrature in tests.
double white_parallel_infidelity_exact(double level, double t_op);        // L*T/4
double ou_parallel_infidelity_exact(const NoiseModel& model, double t_op); // closed form

}  // namespace ccspec
