#include "ccspec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ccspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

double NoiseModel::omega2s() const {
  if (!(t2_star > 0.0)) throw ValidationError("noise.t2_star must be positive");
  return std::sqrt(2.0) / t2_star;
}

void NoiseModel::validate() const {
  if (kind == NoiseKind::white) {
    if (!(level >= 0.0)) throw ValidationError("noise.level must be nonnegative");
  } else {
    if (!(t2_star > 0.0)) throw ValidationError("noise.t2_star must be positive");
    if (!(tau_c > 0.0)) throw ValidationError("noise.tau_c must be positive");
  }
}

void FilterFunction::validate() const {
  if (!(t_op > 0.0)) throw ValidationError("filter.t_op must be positive");
  if (!(omega0 >= 0.0)) throw ValidationError("filter.omega0 must be nonnegative");
}

double psd(const NoiseModel& model, double omega) {
  if (!(omega >= 0.0)) throw ValidationError("omega must be nonnegative");
  if (model.kind == NoiseKind::white) return model.level;
  const double s = model.omega2s();
  const double inv_tau = 1.0 / model.tau_c;
  return 2.0 * s * s * inv_tau / (omega * omega + inv_tau * inv_tau);
}

namespace {

// sin^2(x)/x^2 with the removable singularity made explicit.
double sinc_sq(double x) {
  if (std::abs(x) < 1e-8) {
    const double c = 1.0 - x * x / 6.0;
    return c * c;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

}  // namespace

double filter_sq(const FilterFunction& f, double omega) {
  f.validate();
  if (!(omega >= 0.0)) throw ValidationError("omega must be nonnegative");
  const double half_t = 0.5 * f.t_op;
  if (f.axis == NoiseAxis::parallel_idle) {
    return half_t * half_t * sinc_sq(half_t * omega);
  }
  const double u = omega - f.omega0;
  return 2.0 * half_t * half_t * sinc_sq(half_t * u);
}

namespace {

struct Integrand {
  const NoiseModel* model;
  const FilterFunction* filter;
  double operator()(double omega) const { return psd(*model, omega) * filter_sq(*filter, omega); }
};

// Iterative adaptive Simpson on [a, b]; throws QuadratureError when the
// subdivision budget is exhausted before the tolerance is met.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol,
                        double abs_floor) {
  struct Panel {
    double a, b, fa, fm, fb, estimate;
    int depth;
  };
  auto simpson = [](double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };
  if (!(b > a)) return 0.0;
  double m0 = 0.5 * (a + b);
  std::vector<Panel> stack;
  stack.push_back({a, b, f(a), f(m0), f(b),
                   simpson(f(a), f(m0), f(b), b - a), 0});
  double total = 0.0;
  long evals = 0;
  const long max_evals = 2'000'000;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    const double left = simpson(p.fa, flm, p.fm, m - p.a);
    const double right = simpson(p.fm, frm, p.fb, p.b - m);
    const double better = left + right;
    const double err = std::abs(better - p.estimate) / 15.0;
    const double scale = std::max(std::abs(better), abs_floor);
    if (err <= rel_tol * scale || p.depth >= 48) {
      total += better + (better - p.estimate) / 15.0;
      continue;
    }
    if (evals > max_evals)
      throw QuadratureError(
          "noise quadrature failed to converge; error estimate attached", err);
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, p.depth + 1});
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, p.depth + 1});
  }
  return total;
}

}  // namespace

double infidelity_from_noise(const NoiseModel& model, const FilterFunction& f) {
  model.validate();
  f.validate();
  if (model.kind == NoiseKind::white && model.level == 0.0) return 0.0;

  const double node_step = 2.0 * kPi / f.t_op;
  const double center = f.axis == NoiseAxis::transverse ? f.omega0 : 0.0;
  const double upper = center + 100.0 * node_step;

  // Breakpoints: filter nodes on both sides of the carrier plus the noise
  // corner scales, so no feature hides inside a panel.
  std::vector<double> pts{0.0, upper};
  for (int k = 1; k <= 100; ++k) {
    const double up = center + k * node_step;
    if (up > 0.0 && up < upper) pts.push_back(up);
    const double down = center - k * node_step;
    if (down > 0.0) pts.push_back(down);
  }
  if (center > 0.0) pts.push_back(center);
  if (model.kind == NoiseKind::ornstein_uhlenbeck) {
    for (double scale : {1.0, 10.0, 100.0}) {
      const double w = scale / model.tau_c;
      if (w > 0.0 && w < upper) pts.push_back(w);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Integrand g{&model, &f};
  // Scale for the absolute floor: peak integrand times a lobe width.
  const double peak = g(center > 0.0 ? center : std::min(node_step * 1e-3, 1.0 / f.t_op));
  const double abs_floor = std::max(peak * node_step * 1e-14, 1e-300);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    integral += adaptive_simpson(g, pts[i], pts[i + 1], 1e-8, abs_floor);
  }

  // Tail beyond the last node: the oscillation averages to half the filter
  // envelope; integrate S(omega)*env(omega) exactly in the w = 1/omega chart.
  const double env_factor =
      f.axis == NoiseAxis::transverse ? 1.0 : 0.5;  // 2 * 1/2 vs 1 * 1/2
  auto tail_integrand = [&](double w) {
    if (w <= 0.0) {
      // limit w -> 0 of S(1/w)*env(1/w)/w^2
      if (model.kind == NoiseKind::white) return env_factor * model.level;
      const double s = model.omega2s();
      return 0.0 * s;  // OU decays as w^2
    }
    const double omega = 1.0 / w;
    const double u = omega - center;
    return psd(model, omega) * env_factor / (u * u) / (w * w);
  };
  integral += adaptive_simpson(tail_integrand, 0.0, 1.0 / upper, 1e-8, 1e-300);

  return integral / kPi;
}

double noise_total_power(const NoiseModel& model) {
  model.validate();
  if (model.kind == NoiseKind::white)
    throw ValidationError("white noise has unbounded total power");
  const double inv_tau = 1.0 / model.tau_c;
  const double cutoff = 1000.0 * inv_tau;
  auto s = [&](double w) { return psd(model, w); };
  double integral = adaptive_simpson(s, 0.0, inv_tau, 1e-9, 1e-300) +
                    adaptive_simpson(s, inv_tau, 10.0 * inv_tau, 1e-9, 1e-300) +
                    adaptive_simpson(s, 10.0 * inv_tau, cutoff, 1e-9, 1e-300);
  // Analytic Lorentzian remainder beyond the numeric cutoff.
  const double sig = model.omega2s();
  integral += 2.0 * sig * sig * (kPi / 2.0 - std::atan(cutoff * model.tau_c));
  return integral;
}

double allowed_field_psd(double budget, NoiseAxis axis, const SpinSystem& sys,
                         DriveTarget target, double bias_field_parallel,
                         ElectronState state, double t_op) {
  if (!(budget > 0.0) || !(budget < 1.0))
    throw ValidationError("noise budget must lie in (0, 1)");
  if (!(t_op > 0.0)) throw ValidationError("t_op must be positive");
  const double slope =
      std::abs(larmor_slope(sys, target, bias_field_parallel, state));
  const double conv = 2.0 * kPi * slope;
  // White-noise inversion: parallel infidelity = L*T/4, transverse = L*T/2,
  // with L = conv^2 * S_field. The shared subexpression keeps the
  // parallel/transverse ratio exactly 2 in floating point.
  const double transverse_psd = 2.0 * budget / (conv * conv * t_op);
  if (axis == NoiseAxis::transverse) return transverse_psd;
  return 2.0 * transverse_psd;
}

double white_parallel_infidelity_exact(double level, double t_op) {
  return level * t_op / 4.0;
}

double ou_parallel_infidelity_exact(const NoiseModel& model, double t_op) {
  if (model.kind != NoiseKind::ornstein_uhlenbeck)
    throw ValidationError("exact OU reference requires an OU model");
  model.validate();
  const double s = model.omega2s();
  const double tau = model.tau_c;
  // Phase variance of integrated OU noise over T, divided by 4:
  // sigma^2*tau*(T/2 - (tau/2)*(1 - exp(-T/tau))).
  const double decay = -std::expm1(-t_op / tau);
  return s * s * tau * (0.5 * t_op - 0.5 * tau * decay);
}

}  // namespace ccspec
