#pragma once

#include <string>

#include "ccspec/constants.hpp"

namespace ccspec {

enum class Species { nv, snv };

// Electron spin state conditioning the carbon transition. ms0/msMinus1 apply to
// nv; plusHalf/minusHalf apply to snv.
enum class ElectronState { ms0, msMinus1, plusHalf, minusHalf };

// Which qubit a drive or budget row refers to.
enum class DriveTarget { electron, carbon };

struct SpinSystem {
  Species species = Species::nv;
  PhysicalConstants constants;
  double eta = 1.0;              // orbital drive efficiency, only used for snv electron Rabi
  double hyperfine_par = 1.0e5;  // parallel hyperfine coupling to the carbon, Hz (signed)
  double hyperfine_perp = 5.0e4; // transverse hyperfine coupling to the carbon, Hz (signed)

  void validate() const;
};

std::string to_string(Species s);
std::string to_string(ElectronState s);
std::string to_string(DriveTarget t);
Species species_from_string(const std::string& s);
ElectronState electron_state_from_string(const std::string& s);
DriveTarget drive_target_from_string(const std::string& s);

// Electron transition frequency at parallel bias field b_par (gauss), Hz.
// nv: |D - gamma_e*B| for the ms0 <-> ms-1 transition; snv: gamma_e*B.
double electron_larmor(const SpinSystem& sys, double b_par);

// Carbon transition frequency conditioned on the electron state, Hz.
double carbon_larmor(const SpinSystem& sys, double b_par, ElectronState state);

// Signed d(nu)/dB of the relevant transition at b_par, Hz/G. `state` is only
// consulted for the carbon qubit.
double larmor_slope(const SpinSystem& sys, DriveTarget target, double b_par,
                    ElectronState state = ElectronState::ms0);

// Rabi frequency produced by a resonant transverse drive of amplitude b_drive
// (gauss): nv electron gamma_e*B/sqrt(2), snv electron eta*gamma_e*B, carbon
// gamma_c*B.
double rabi_frequency(const SpinSystem& sys, DriveTarget target, double b_drive);

// Inverse of rabi_frequency: drive amplitude (gauss) for a requested Rabi rate.
double field_for_rabi(const SpinSystem& sys, DriveTarget target, double f_rabi);

// Rabi frequency per gauss of drive amplitude, Hz/G.
double rabi_slope(const SpinSystem& sys, DriveTarget target);

}  // namespace ccspec
