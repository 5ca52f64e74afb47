#pragma once

#include <Eigen/Dense>

#include "ccspec/constants.hpp"

namespace ccspec {

// Spin-1 ground/excited model for optical readout. Repeated optical cycling
// preserves the spin only while the ground and excited eigenstates carry the
// same spin character; transverse field mixes the two manifolds differently
// (their zero-field splittings differ), so each cycle leaks population with
// probability 1 - p_ov.
struct ReadoutModel {
  double d_gs = 2.88e9;    // ground-state zero-field splitting, Hz
  double d_es = 1.42e9;    // excited-state zero-field splitting, Hz
  double gamma_e = 2.8e6;  // Hz/G
  int n_cycles = 100;      // optical cycles per readout
  double strain = 0.0;     // excited-state transverse strain splitting, Hz

  void validate() const;
};

// 3x3 Hamiltonian D*Sz^2 + gamma_e*(B_par*Sz + B_perp*Sx) + strain*(Sx^2-Sy^2)
// on the basis {|+1>,|0>,|-1>}, entries in Hz. Real symmetric by construction.
Eigen::Matrix3d spin_hamiltonian(double d, double gamma_e, double b_par,
                                 double b_perp, double strain = 0.0);

// p_ov = |<gs_branch|es_branch>|^2 for the readout branch (the states that are
// pure |ms=0> at B_perp = 0), eigenvectors matched by stepping |B_perp| up from
// 0 with maximum-overlap assignment; even in B_perp. Raises
// DegenerateLevelError when the branch is degenerate at B_perp = 0 (bias at a
// level crossing), naming the field.
double overlap_probability(const ReadoutModel& m, double b_par, double b_perp);

// 1 - p_ov^n_cycles.
double readout_infidelity(const ReadoutModel& m, double b_par, double b_perp);

// Largest B_perp (gauss) keeping readout_infidelity at `budget`, bisected to 1%
// relative. Raises ValidationError when the budget is unreachable in [0, 100 G].
double bperp_limit(const ReadoutModel& m, double budget, double b_par);

}  // namespace ccspec
