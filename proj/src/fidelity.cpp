#include "ccspec/fidelity.hpp"

#include <cmath>
#include <numbers>

#include "ccspec/noise.hpp"
#include "ccspec/pulse.hpp"
#include "ccspec/readout.hpp"

namespace ccspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FidelityBudget::validate() const {
  if (!(target_fidelity > 0.0) || !(target_fidelity < 1.0))
    throw ValidationError(
        "budget.target_fidelity must lie in (0, 1); 1.0 would demand an unreachable "
        "zero-tolerance sheet");
  if (n_components_op < 1)
    throw ValidationError("budget.n_components_op must be at least 1");
  if (n_components_idle < 1)
    throw ValidationError("budget.n_components_idle must be at least 1");
  if (!(t_op_electron > 0.0))
    throw ValidationError("budget.T_op_electron must be positive");
  if (!(t_op_carbon > 0.0))
    throw ValidationError("budget.T_op_carbon must be positive");
  if (!(t_idle_electron > 0.0))
    throw ValidationError("budget.T_idle_electron must be positive");
  if (!(t_idle_carbon > 0.0))
    throw ValidationError("budget.T_idle_carbon must be positive");
}

void CrosstalkScenario::validate() const {
  if (!(f_rabi_addressed > 0.0))
    throw ValidationError("crosstalk.f_rabi_addressed must be positive");
  if (!(f_rabi_unaddressed >= 0.0))
    throw ValidationError("crosstalk.f_rabi_unaddressed must be nonnegative");
  if (!(f_space >= 0.0))
    throw ValidationError("crosstalk.f_space must be nonnegative");
  if (!std::isfinite(theta))
    throw ValidationError("crosstalk.theta must be finite");
}

double infidelity_idle_detuning(double delta_f, double t_idle) {
  if (!(t_idle >= 0.0)) throw ValidationError("idle duration must be nonnegative");
  const double s = std::sin(kPi * delta_f * t_idle);
  return s * s;
}

double infidelity_dephasing(double t2_star, double t_idle) {
  if (!(t2_star > 0.0)) throw ValidationError("t2_star must be positive");
  if (!(t_idle >= 0.0)) throw ValidationError("idle duration must be nonnegative");
  const double x = std::sqrt(2.0) / t2_star * t_idle;
  return 0.25 * x * x;
}

double infidelity_spur(const SpurTone& spur, const SpinSystem& sys, DriveTarget target,
                       double t_idle) {
  if (!(spur.amplitude_field >= 0.0))
    throw ValidationError("spur.amplitude_field must be nonnegative");
  if (!(t_idle >= 0.0)) throw ValidationError("idle duration must be nonnegative");
  const double omega_spur =
      2.0 * kPi * rabi_frequency(sys, target, spur.amplitude_field);
  const double x = omega_spur * t_idle;
  return 0.25 * x * x;
}

double spur_field_limit(double budget, const SpinSystem& sys, DriveTarget target,
                        double t_idle) {
  if (!(budget >= 0.0) || !(budget < 1.0))
    throw ValidationError("spur budget must lie in [0, 1)");
  if (!(t_idle > 0.0)) throw ValidationError("idle duration must be positive");
  return std::sqrt(budget) / (kPi * rabi_slope(sys, target) * t_idle);
}

double infidelity_offresonant_drive(const CrosstalkScenario& x) {
  x.validate();
  const double beta = x.beta();
  const double alpha = x.alpha();
  // (beta^2/alpha^2)*sin^2(theta*alpha/2) written through sinc so the
  // alpha -> 0 limit beta^2*theta^2/4 falls out of the same expression.
  const double arg = 0.5 * x.theta * alpha;
  double sinc;
  if (std::abs(arg) < 1e-8) {
    sinc = 1.0 - arg * arg / 6.0;
  } else {
    sinc = std::sin(arg) / arg;
  }
  const double amp = 0.5 * beta * x.theta * sinc;
  return amp * amp;
}

double crosstalk_envelope(const CrosstalkScenario& x) {
  x.validate();
  const double beta = x.beta();
  const double alpha = x.alpha();
  if (alpha == 0.0) {
    const double amp = 0.5 * beta * x.theta;
    return amp * amp;
  }
  const double r = beta / alpha;
  return r * r;
}

StaticErrorLimits static_error_infidelities(double budget_share, double f_rabi,
                                            double t_op) {
  if (!(budget_share > 0.0) || !(budget_share < 1.0))
    throw ValidationError("budget share must lie in (0, 1)");
  if (!(f_rabi > 0.0)) throw ValidationError("f_rabi must be positive");
  if (!(t_op > 0.0)) throw ValidationError("t_op must be positive");
  const double root = std::sqrt(budget_share);
  const double angle = std::asin(root);
  StaticErrorLimits lim;
  lim.delta_f_max = f_rabi * root;
  lim.phase_max = angle;
  lim.duration_max = 2.0 * t_op / kPi * angle;
  lim.rel_amplitude_max = 2.0 / kPi * angle;
  return lim;
}

namespace {

struct QubitContext {
  DriveTarget target;
  double t_op;
  double t_idle;
  double f_rabi;
  double larmor;
  double slope;       // |d nu / dB|, Hz/G
  double drive_conv;  // rabi per gauss, Hz/G
};

QubitContext make_context(const SpinSystem& sys, double bias, ElectronState state,
                          const FidelityBudget& budget, DriveTarget target) {
  QubitContext q;
  q.target = target;
  q.t_op = budget.t_op(target);
  q.t_idle = budget.t_idle(target);
  q.f_rabi = budget.f_rabi(target);
  q.larmor = target == DriveTarget::electron ? electron_larmor(sys, bias)
                                             : carbon_larmor(sys, bias, state);
  q.slope = std::abs(larmor_slope(sys, target, bias, state));
  q.drive_conv = rabi_slope(sys, target);
  return q;
}

double wideband_noise_row(const SpinSystem&, const QubitContext& q,
                          double share, std::uint64_t seed) {
  PulseSpec p;
  p.f_rabi = q.f_rabi;
  p.duration = q.t_op;
  const double bandwidth = 10.0 / q.t_op;
  const int n_samples = 300;
  return noise_rms_for_budget(p, share, bandwidth, n_samples, seed, q.drive_conv);
}

}  // namespace

SpecSheet build_spec_sheet(const SpinSystem& sys, double bias_field_parallel,
                           ElectronState carbon_state, const FidelityBudget& budget,
                           const ReadoutModel& readout, double readout_budget,
                           std::uint64_t seed) {
  sys.validate();
  budget.validate();
  readout.validate();
  const double op = budget.op_share();
  const double idle = budget.idle_share();

  SpecSheet sheet;
  int qubit_index = 0;
  for (DriveTarget target : {DriveTarget::electron, DriveTarget::carbon}) {
    const QubitContext q =
        make_context(sys, bias_field_parallel, carbon_state, budget, target);
    const StaticErrorLimits lim = static_error_infidelities(op, q.f_rabi, q.t_op);
    const double b_ac = field_for_rabi(sys, target, q.f_rabi);
    const double phase_deg = lim.phase_max * 180.0 / kPi;
    const double amp_field = lim.rel_amplitude_max * b_ac;
    const double z_acc =
        std::asin(std::sqrt(idle)) / (kPi * q.t_idle) / q.slope;
    const double spur_lim = spur_field_limit(idle, sys, target, q.t_idle);
    const double psd_par =
        allowed_field_psd(idle, NoiseAxis::parallel_idle, sys, target,
                          bias_field_parallel, carbon_state, q.t_idle);
    const double psd_perp =
        allowed_field_psd(idle, NoiseAxis::transverse, sys, target,
                          bias_field_parallel, carbon_state, q.t_idle);
    const double wideband =
        wideband_noise_row(sys, q, op, seed + 0x9E3779B97F4A7C15ULL * qubit_index);

    auto add = [&](const std::string& name, double value, const std::string& unit,
                   const std::string& eq, double share) {
      sheet.rows.push_back({name, target, value, unit, eq, share});
    };
    add("target_frequency", q.larmor, "Hz", "f0 at bias field", 0.0);
    add("frequency_inaccuracy", lim.delta_f_max, "Hz", "1-F=(df/f_r)^2", op);
    add("frequency_noise_rms", lim.delta_f_max, "Hz",
        "1-F=(df_rms/f_r)^2 quasi-static", op);
    add("phase_inaccuracy", phase_deg, "deg", "1-F=sin^2(dphi)", op);
    add("duration_inaccuracy", lim.duration_max, "s",
        "1-F=sin^2(pi*dt/(2*T_op))", op);
    add("timing_jitter_rms", lim.duration_max, "s",
        "1-F=sin^2(pi*dt_rms/(2*T_op)) quasi-static", op);
    add("drive_amplitude", b_ac, "G", "B_ac=f_r/rabi_slope", 0.0);
    add("amplitude_inaccuracy", amp_field, "G", "1-F=sin^2(pi*(dB/B_ac)/2)", op);
    add("amplitude_noise_rms", amp_field, "G",
        "1-F=sin^2(pi*(dB_rms/B_ac)/2) quasi-static", op);
    add("wideband_noise_rms", wideband, "G",
        "MC bisection, white transverse noise to 10/T_op", op);
    add("spur_max", spur_lim, "G", "1-F=(pi*rabi_slope*B*T_idle)^2", idle);
    add("z_field_accuracy", z_acc, "G", "1-F=sin^2(pi*slope*dB*T_idle)", idle);
    add("z_field_noise_psd", psd_par, "G^2/Hz",
        "white parallel: 1-F=(2pi*slope)^2*S*T_idle/4", idle);
    add("xy_field_noise_psd", psd_perp, "G^2/Hz",
        "white transverse: half of parallel allowance", idle);
    if (target == DriveTarget::electron) {
      add("xy_field_max", bperp_limit(readout, readout_budget, bias_field_parallel),
          "G", "readout mixing: 1-p_ov^N=budget", readout_budget);
    }
    ++qubit_index;
  }
  return sheet;
}

double spec_sheet_round_trip_error(const SpecSheet& sheet, const SpinSystem& sys,
                                   double bias_field_parallel,
                                   ElectronState carbon_state,
                                   const FidelityBudget& budget) {
  double worst = 0.0;
  for (const SpecRow& row : sheet.rows) {
    if (row.budget_share <= 0.0) continue;
    const QubitContext q =
        make_context(sys, bias_field_parallel, carbon_state, budget, row.qubit);
    double inf = -1.0;
    if (row.name == "frequency_inaccuracy" || row.name == "frequency_noise_rms") {
      const double r = row.value / q.f_rabi;
      inf = r * r;
    } else if (row.name == "phase_inaccuracy") {
      const double s = std::sin(row.value * kPi / 180.0);
      inf = s * s;
    } else if (row.name == "duration_inaccuracy" || row.name == "timing_jitter_rms") {
      const double s = std::sin(kPi * row.value / (2.0 * q.t_op));
      inf = s * s;
    } else if (row.name == "amplitude_inaccuracy" ||
               row.name == "amplitude_noise_rms") {
      const double b_ac = field_for_rabi(sys, row.qubit, q.f_rabi);
      const double s = std::sin(kPi * (row.value / b_ac) / 2.0);
      inf = s * s;
    } else if (row.name == "spur_max") {
      inf = infidelity_spur({row.value, 0.0}, sys, row.qubit, q.t_idle);
    } else if (row.name == "z_field_accuracy") {
      inf = infidelity_idle_detuning(q.slope * row.value, q.t_idle);
    } else if (row.name == "z_field_noise_psd") {
      const double l = std::pow(2.0 * kPi * q.slope, 2) * row.value;
      inf = l * q.t_idle / 4.0;
    } else if (row.name == "xy_field_noise_psd") {
      const double l = std::pow(2.0 * kPi * q.slope, 2) * row.value;
      inf = l * q.t_idle / 2.0;
    } else {
      continue;  // oracle-calibrated or informational rows
    }
    const double rel = std::abs(inf - row.budget_share) / row.budget_share;
    if (rel > worst) worst = rel;
  }
  return worst;
}

}  // namespace ccspec
