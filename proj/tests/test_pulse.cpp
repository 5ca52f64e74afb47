#include <cmath>
#include <complex>

#include "ccspec/errors.hpp"
#include "ccspec/fidelity.hpp"
#include "ccspec/pulse.hpp"
#include "ccspec/spin.hpp"
#include "doctest.h"

using namespace ccspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

PulseSpec pi_pulse(double f_rabi = 5e6) {
  PulseSpec p;
  p.f_rabi = f_rabi;
  p.duration = 0.5 / f_rabi;
  return p;
}

// |<1|U|0>|^2 from the generalized Rabi formula, written out independently.
double rabi_formula(double f_rabi, double delta_f, double rel_amp, double t) {
  const double omega = 2.0 * kPi * f_rabi * (1.0 + rel_amp);
  const double delta = 2.0 * kPi * delta_f;
  const double w = std::sqrt(omega * omega + delta * delta);
  if (w == 0.0) return 0.0;
  const double s = std::sin(w * t / 2.0);
  return (omega * omega) / (w * w) * s * s;
}

}  // namespace

TEST_CASE("ideal pi pulse is a pi rotation about x") {
  const PulseSpec p = pi_pulse();
  const Eigen::Matrix2cd u = ideal_gate(p);
  // Full population transfer and unitarity.
  CHECK(std::norm(u(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(u(0, 0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  const Eigen::Matrix2cd id = u.adjoint() * u;
  CHECK((id - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
}

TEST_CASE("simulator agrees with the generalized Rabi formula") {
  const PulseSpec p = pi_pulse();
  for (const double df : {0.0, 1e5, 7.7e5, 3e6, -2e6}) {
    for (const double ra : {0.0, 0.02, -0.05}) {
      ErrorRealization e;
      e.delta_f = df;
      e.rel_amplitude = ra;
      const Eigen::Matrix2cd u = simulate_gate(p, e, 0.0);
      const double p_sim = std::norm(u(1, 0));
      const double p_ref = analytic_transfer_probability(p, df, ra);
      CHECK(p_sim == doctest::Approx(p_ref).epsilon(1e-10).scale(1.0));
      CHECK(p_ref == doctest::Approx(rabi_formula(5e6, df, ra, p.duration))
                         .epsilon(1e-12)
                         .scale(1.0));
    }
  }
}

TEST_CASE("closed-form error budgets match the simulated worst case") {
  const double share = 1.25e-5;
  const PulseSpec p = pi_pulse();
  const Eigen::Matrix2cd ideal = ideal_gate(p);
  const StaticErrorLimits lim =
      static_error_infidelities(share, p.f_rabi, p.duration);

  // Detuning: the quadratic form is exact to O(share) corrections.
  {
    ErrorRealization e;
    e.delta_f = lim.delta_f_max;
    const double wc = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
    CHECK(wc == doctest::Approx(share).epsilon(0.01));
  }
  // Phase offset: exactly sin^2(delta_phi) for a pi pulse.
  {
    ErrorRealization e;
    e.delta_phase = lim.phase_max;
    const double wc = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
    CHECK(wc == doctest::Approx(share).epsilon(1e-9));
  }
  // Duration error: exactly sin^2(pi*dt/(2T)).
  {
    ErrorRealization e;
    e.delta_duration = lim.duration_max;
    const double wc = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
    CHECK(wc == doctest::Approx(share).epsilon(1e-9));
  }
  // Amplitude error: exactly sin^2(pi*eps/2).
  {
    ErrorRealization e;
    e.rel_amplitude = lim.rel_amplitude_max;
    const double wc = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
    CHECK(wc == doctest::Approx(share).epsilon(1e-9));
  }
}

TEST_CASE("average infidelity is two thirds of worst case for rotation errors") {
  const PulseSpec p = pi_pulse();
  const Eigen::Matrix2cd ideal = ideal_gate(p);
  ErrorRealization e;
  e.rel_amplitude = 3e-3;
  const Eigen::Matrix2cd u = simulate_gate(p, e, 0.0);
  const double wc = worst_case_infidelity(u, ideal);
  const double avg = average_infidelity(u, ideal);
  CHECK(avg / wc == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("worst case rejects non-unitary input") {
  const Eigen::Matrix2cd bad = Eigen::Matrix2cd::Identity() * 1.5;
  CHECK_THROWS_AS(
      worst_case_infidelity(bad, ideal_gate(pi_pulse())), ValidationError);
}

TEST_CASE("quadratic scaling of small static errors") {
  const PulseSpec p = pi_pulse();
  const Eigen::Matrix2cd ideal = ideal_gate(p);
  ErrorRealization e;
  e.delta_f = 1.7e4;
  const double full = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
  e.delta_f /= 2.0;
  const double half = worst_case_infidelity(simulate_gate(p, e, 0.0), ideal);
  CHECK(half / full == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("monte carlo sampling reproduces the static budget") {
  const PulseSpec p = pi_pulse();
  const double share = 1.25e-5;
  const StaticErrorLimits lim =
      static_error_infidelities(share, p.f_rabi, p.duration);
  ErrorDistribution d;
  d.delta_f_sigma = lim.delta_f_max;
  const MonteCarloResult r = monte_carlo_infidelity(p, d, 400, 11, 0.0);
  // A Gaussian detuning of sigma = the static limit spends the share on
  // average (the quadratic form makes the mean track sigma^2).
  CHECK(r.mean / share > 0.7);
  CHECK(r.mean / share < 1.3);
  CHECK(r.stderr_mean > 0.0);
  CHECK(r.stderr_mean < r.mean);

  // Deterministic in the seed.
  const MonteCarloResult r2 = monte_carlo_infidelity(p, d, 400, 11, 0.0);
  CHECK(r2.mean == r.mean);
  CHECK(r2.stderr_mean == r.stderr_mean);

  // Common random numbers: halving sigma divides the mean by 4.
  ErrorDistribution dh = d;
  dh.delta_f_sigma /= 2.0;
  const MonteCarloResult rh = monte_carlo_infidelity(p, dh, 400, 11, 0.0);
  CHECK(rh.mean / r.mean == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("monte carlo requires a sane sample count") {
  const PulseSpec p = pi_pulse();
  CHECK_THROWS_AS(monte_carlo_infidelity(p, ErrorDistribution{}, 50, 1, 0.0),
                  ValidationError);
}

TEST_CASE("wideband noise rms bisection hits the budget") {
  const SpinSystem sys;
  const PulseSpec p = pi_pulse();
  const double budget = 1.25e-5;
  const double bandwidth = 10.0 / p.duration;
  const double conv = rabi_slope(sys, DriveTarget::electron);
  const double rms = noise_rms_for_budget(p, budget, bandwidth, 300, 1, conv);
  CHECK(rms > 0.0);

  // Deterministic in the seed.
  CHECK(noise_rms_for_budget(p, budget, bandwidth, 300, 1, conv) == rms);

  // Feeding the result back through the estimator returns the budget.
  ErrorDistribution d;
  d.field_rms = rms;
  d.bandwidth = bandwidth;
  const MonteCarloResult r = monte_carlo_infidelity(p, d, 300, 1, conv);
  CHECK(r.mean == doctest::Approx(budget).epsilon(0.02));
}

TEST_CASE("noise stepping rejects absurd step counts") {
  const PulseSpec p = pi_pulse();
  ErrorRealization e;
  e.field_rms = 1e-3;
  e.bandwidth = 1e13;  // duration * 10 * bandwidth = 1e7 steps
  e.seed = 3;
  CHECK_THROWS_AS(simulate_gate(p, e, 1.98e6), NumericalError);
}

TEST_CASE("pulse validation") {
  PulseSpec p;
  p.f_rabi = 0.0;  // zero amplitude is free evolution, a legitimate pulse
  p.duration = 1e-7;
  CHECK_NOTHROW(p.validate());
  p.f_rabi = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = pi_pulse();
  p.duration = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  CHECK_NOTHROW(pi_pulse().validate());
}
