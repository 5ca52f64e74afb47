#include "ccspec/readout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "ccspec/errors.hpp"

namespace ccspec {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}  // namespace

// Basis {|+1>, |0>, |-1>}; entries in Hz.
Eigen::Matrix3d spin_hamiltonian(double d, double gamma_e, double b_par,
                                 double b_perp, double strain) {
  if (!std::isfinite(d) || !std::isfinite(b_par) || !std::isfinite(b_perp) ||
      !std::isfinite(strain))
    throw ValidationError("spin hamiltonian inputs must be finite");
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = d + gamma_e * b_par;
  h(2, 2) = d - gamma_e * b_par;
  const double off = gamma_e * b_perp * kSqrtHalf;  // Sx couples 0 <-> +/-1
  h(0, 1) = h(1, 0) = off;
  h(1, 2) = h(2, 1) = off;
  // Sx^2 - Sy^2 couples |+1> <-> |-1>.
  h(0, 2) = h(2, 0) = strain;
  return h;
}

namespace {

// Eigenvector continued from |ms=0> at b_perp = 0 by stepping b_perp upward
// and assigning by maximum overlap with the previous step's vector.
Eigen::Vector3d follow_branch(double d, double gamma_e, double b_par,
                              double b_perp, double strain,
                              const char* manifold) {
  // Degeneracy check at the start of the continuation: the |ms=0> level must
  // be separated from both |ms=+/-1> levels at b_perp = 0.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> start(
      spin_hamiltonian(d, gamma_e, b_par, 0.0, strain));
  int zero_index = 0;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double w = std::abs(start.eigenvectors()(1, i));
    if (w > best) {
      best = w;
      zero_index = i;
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (i == zero_index) continue;
    min_gap = std::min(min_gap, std::abs(start.eigenvalues()(i) -
                                         start.eigenvalues()(zero_index)));
  }
  const double crossing_field = gamma_e > 0.0 ? d / gamma_e : 0.0;
  if (best * best < 0.9 || min_gap < 1e6) {
    throw DegenerateLevelError(
        std::string("readout branch is degenerate in the ") + manifold +
        " manifold at bias field " + std::to_string(b_par) +
        " G (level crossing near " + std::to_string(crossing_field) + " G)");
  }

  Eigen::Vector3d prev = start.eigenvectors().col(zero_index);
  if (prev(1) < 0.0) prev = -prev;
  if (b_perp == 0.0) return prev;

  const int n_steps = std::max(
      50, static_cast<int>(std::ceil(b_perp / 0.05)));
  for (int s = 1; s <= n_steps; ++s) {
    const double b = b_perp * static_cast<double>(s) / n_steps;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(
        spin_hamiltonian(d, gamma_e, b_par, b, strain));
    int pick = 0;
    double best_ov = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double ov = std::abs(prev.dot(solver.eigenvectors().col(i)));
      if (ov > best_ov) {
        best_ov = ov;
        pick = i;
      }
    }
    if (best_ov * best_ov < 0.6) {
      throw DegenerateLevelError(
          std::string("readout branch became ambiguous in the ") + manifold +
          " manifold at bias field " + std::to_string(b_par) +
          " G, transverse field " + std::to_string(b) + " G");
    }
    Eigen::Vector3d next = solver.eigenvectors().col(pick);
    if (prev.dot(next) < 0.0) next = -next;
    prev = next;
  }
  return prev;
}

}  // namespace

void ReadoutModel::validate() const {
  if (!(d_gs > 0.0)) throw ValidationError("readout d_gs must be positive");
  if (!(d_es > 0.0)) throw ValidationError("readout d_es must be positive");
  if (!(gamma_e > 0.0)) throw ValidationError("readout gamma_e must be positive");
  if (n_cycles < 1) throw ValidationError("readout n_cycles must be at least 1");
  if (!std::isfinite(strain) || strain < 0.0)
    throw ValidationError("readout strain must be a nonnegative finite value");
}

double overlap_probability(const ReadoutModel& m, double b_par, double b_perp) {
  m.validate();
  if (!(b_par >= 0.0)) throw ValidationError("b_par must be nonnegative");
  if (!std::isfinite(b_perp))
    throw ValidationError("b_perp must be finite");
  const double b = std::abs(b_perp);  // even in b_perp (Sx sign symmetry)
  const Eigen::Vector3d gs =
      follow_branch(m.d_gs, m.gamma_e, b_par, b, 0.0, "ground");
  const Eigen::Vector3d es =
      follow_branch(m.d_es, m.gamma_e, b_par, b, m.strain, "excited");
  const double ov = gs.dot(es);
  return ov * ov;
}

double readout_infidelity(const ReadoutModel& m, double b_par, double b_perp) {
  const double p = overlap_probability(m, b_par, b_perp);
  return 1.0 - std::pow(p, static_cast<double>(m.n_cycles));
}

double bperp_limit(const ReadoutModel& m, double budget, double b_par) {
  m.validate();
  if (!(budget > 0.0) || !(budget < 1.0))
    throw ValidationError("readout budget must lie in (0, 1)");
  const double b_max = 100.0;
  if (readout_infidelity(m, b_par, b_max) < budget) {
    throw ValidationError(
        "readout budget is not reached by any transverse field in [0, 100] G");
  }
  double lo = 0.0;
  double hi = b_max;
  while (hi - lo > 0.01 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (readout_infidelity(m, b_par, mid) < budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ccspec
