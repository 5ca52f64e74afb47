#include "ccspec/pulse.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ccspec/errors.hpp"

namespace ccspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kMaxSteps = 2'000'000;

// Exact exponential exp(-i*(ax*sx + ay*sy + az*sz)*dt) for Pauli matrices s.
Eigen::Matrix2cd pauli_exp(double ax, double ay, double az, double dt) {
  using C = std::complex<double>;
  const double r = std::sqrt(ax * ax + ay * ay + az * az);
  Eigen::Matrix2cd u;
  if (r * dt == 0.0) {
    u.setIdentity();
    return u;
  }
  const double c = std::cos(r * dt);
  const double s = std::sin(r * dt) / r;
  u(0, 0) = C(c, -s * az);
  u(0, 1) = C(-s * ay, -s * ax);
  u(1, 0) = C(s * ay, -s * ax);
  u(1, 1) = C(c, s * az);
  return u;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Portable Gaussian stream: mt19937_64 plus an explicit Box-Muller transform,
// so identical seeds give identical draws on every platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();        // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  bool have_ = false;
  double spare_ = 0.0;
};

void check_unitary(const Eigen::Matrix2cd& u, const char* label) {
  const Eigen::Matrix2cd residual =
      u.adjoint() * u - Eigen::Matrix2cd::Identity();
  if (residual.cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError(std::string(label) + " is not unitary to 1e-9");
  }
}

}  // namespace

void PulseSpec::validate() const {
  if (!(f_rabi >= 0.0)) throw ValidationError("pulse f_rabi must be nonnegative");
  if (!(duration >= 0.0)) throw ValidationError("pulse duration must be nonnegative");
  if (!std::isfinite(detuning) || !std::isfinite(phase))
    throw ValidationError("pulse detuning and phase must be finite");
  if (envelope != Envelope::rectangular)
    throw ValidationError("only the rectangular envelope is supported");
}

Eigen::Matrix2cd ideal_gate(const PulseSpec& p) {
  p.validate();
  const double omega = kTwoPi * p.f_rabi;
  const double delta = kTwoPi * p.detuning;
  return pauli_exp(0.5 * omega * std::cos(p.phase),
                   0.5 * omega * std::sin(p.phase), 0.5 * delta, p.duration);
}

Eigen::Matrix2cd simulate_gate(const PulseSpec& p, const ErrorRealization& e,
                               double field_to_rabi) {
  p.validate();
  if (!(e.field_rms >= 0.0))
    throw ValidationError("noise field_rms must be nonnegative");
  const double duration = p.duration + e.delta_duration;
  if (!(duration >= 0.0))
    throw ValidationError("total pulse duration is negative");
  const double omega = kTwoPi * p.f_rabi * (1.0 + e.rel_amplitude);
  const double delta = kTwoPi * (p.detuning + e.delta_f);
  const double phase = p.phase + e.delta_phase;
  const double ax = 0.5 * omega * std::cos(phase);
  const double ay = 0.5 * omega * std::sin(phase);
  const double az = 0.5 * delta;

  if (e.field_rms == 0.0 || duration == 0.0) {
    return pauli_exp(ax, ay, az, duration);
  }
  if (!(e.bandwidth > 0.0))
    throw ValidationError("noise bandwidth must be positive when field_rms > 0");

  const double step_target = 1.0 / (10.0 * e.bandwidth);
  const long n_steps =
      std::max(1L, static_cast<long>(std::ceil(duration / step_target)));
  if (n_steps > kMaxSteps) {
    throw NumericalError(
        "pulse simulation would need " + std::to_string(n_steps) +
        " steps; coarsen the noise bandwidth or shorten the pulse");
  }
  const double dt = duration / static_cast<double>(n_steps);
  // Per-step standard deviation scaled by sqrt(n_steps): the time average of
  // the sampled noise over the pulse then has standard deviation field_rms,
  // i.e. field_rms is the quasi-static-equivalent level of the white noise.
  const double sigma_rabi =
      e.field_rms * std::sqrt(static_cast<double>(n_steps)) * field_to_rabi;
  GaussianStream noise(e.seed);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (long i = 0; i < n_steps; ++i) {
    const double bx = kPi * sigma_rabi * noise.next();  // 0.5 * 2*pi * rabi
    const double by = kPi * sigma_rabi * noise.next();
    u = pauli_exp(ax + bx, ay + by, az, dt) * u;
  }
  return u;
}

double worst_case_infidelity(const Eigen::Matrix2cd& u_actual,
                             const Eigen::Matrix2cd& u_ideal) {
  check_unitary(u_actual, "actual gate");
  check_unitary(u_ideal, "ideal gate");
  const std::complex<double> tr = (u_ideal.adjoint() * u_actual).trace();
  // |tr|/2 = |cos(theta/2)| for the residual rotation angle theta; the worst
  // input state lies in the plane orthogonal to the residual axis.
  double c = 0.5 * std::abs(tr);
  if (c > 1.0) c = 1.0;
  return 1.0 - c * c;
}

double average_infidelity(const Eigen::Matrix2cd& u_actual,
                          const Eigen::Matrix2cd& u_ideal) {
  check_unitary(u_actual, "actual gate");
  check_unitary(u_ideal, "ideal gate");
  const std::complex<double> tr = (u_ideal.adjoint() * u_actual).trace();
  double t2 = std::norm(tr);
  if (t2 > 4.0) t2 = 4.0;
  return 1.0 - (t2 + 2.0) / 6.0;
}

double analytic_transfer_probability(const PulseSpec& p, double delta_f,
                                     double rel_amplitude) {
  p.validate();
  const double omega = kTwoPi * p.f_rabi * (1.0 + rel_amplitude);
  const double delta = kTwoPi * (p.detuning + delta_f);
  const double w2 = omega * omega + delta * delta;
  if (w2 == 0.0) return 0.0;
  const double w = std::sqrt(w2);
  const double s = std::sin(0.5 * w * p.duration);
  return omega * omega / w2 * s * s;
}

namespace {

// Sample-index stream derivation: every sample owns two decorrelated streams
// (static offsets, noise trajectory) derived from (seed, index) alone, so
// results do not depend on evaluation order.
struct SampleSeeds {
  std::uint64_t statics;
  std::uint64_t noise;
};

SampleSeeds seeds_for_sample(std::uint64_t master, int index) {
  const std::uint64_t base =
      splitmix64(master + 0x9E3779B97F4A7C15ULL *
                              static_cast<std::uint64_t>(index + 1));
  return {splitmix64(base ^ 0xA3EC4F1DB1B0C66FULL),
          splitmix64(base ^ 0xD1B54A32D192ED03ULL)};
}

}  // namespace

MonteCarloResult monte_carlo_infidelity(const PulseSpec& p,
                                        const ErrorDistribution& d, int n,
                                        std::uint64_t seed,
                                        double field_to_rabi) {
  p.validate();
  if (n < 100) throw ValidationError("monte carlo needs at least 100 samples");
  if (d.field_rms > 0.0 && !(d.bandwidth > 0.0))
    throw ValidationError("noise bandwidth must be positive when field_rms > 0");
  const Eigen::Matrix2cd u_ideal = ideal_gate(p);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const SampleSeeds s = seeds_for_sample(seed, k);
    GaussianStream statics(s.statics);
    ErrorRealization e;
    e.delta_f = d.delta_f_sigma * statics.next();
    e.delta_phase = d.delta_phase_sigma * statics.next();
    e.delta_duration = d.delta_duration_sigma * statics.next();
    e.rel_amplitude = d.rel_amplitude_sigma * statics.next();
    e.field_rms = d.field_rms;
    e.bandwidth = d.bandwidth;
    e.seed = s.noise;
    const double inf =
        worst_case_infidelity(simulate_gate(p, e, field_to_rabi), u_ideal);
    sum += inf;
    sum_sq += inf * inf;
  }
  MonteCarloResult result;
  result.mean = sum / n;
  if (n > 1) {
    double var = (sum_sq - sum * sum / n) / (n - 1);
    if (var < 0.0) var = 0.0;
    result.stderr_mean = std::sqrt(var / n);
  }
  return result;
}

double noise_rms_for_budget(const PulseSpec& p, double budget, double bandwidth,
                            int n, std::uint64_t seed, double field_to_rabi) {
  p.validate();
  if (!(budget > 0.0) || !(budget < 1.0))
    throw ValidationError("noise budget must lie in (0, 1)");
  if (!(bandwidth > 0.0)) throw ValidationError("bandwidth must be positive");
  if (!(field_to_rabi > 0.0))
    throw ValidationError("field_to_rabi must be positive");

  ErrorDistribution d;
  d.bandwidth = bandwidth;
  auto mean_at = [&](double rms) {
    d.field_rms = rms;
    return monte_carlo_infidelity(p, d, n, seed, field_to_rabi).mean;
  };

  // Initial scale from the small-angle amplitude-error analogy, then a
  // doubling bracket; common random numbers keep the objective monotone.
  double hi = 2.0 * std::sqrt(budget) * (2.0 / kPi) * p.f_rabi / field_to_rabi;
  if (!(hi > 0.0)) hi = 1e-6;
  int doublings = 0;
  while (mean_at(hi) < budget) {
    hi *= 2.0;
    if (++doublings > 60)
      throw NumericalError(
          "noise bracket failed to reach the requested budget");
  }
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mean_at(mid) < budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ccspec
