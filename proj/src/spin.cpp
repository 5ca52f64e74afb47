#include "ccspec/spin.hpp"

#include <cmath>

namespace ccspec {

void SpinSystem::validate() const {
  constants.validate();
  if (!(eta > 0.0) || eta > 1.0)
    throw ValidationError("spin.eta must lie in (0, 1]");
  if (!(std::abs(hyperfine_par) <= 1.0e6))
    throw ValidationError("spin.hyperfine_par magnitude must be at most 1e6 Hz");
  if (!(std::abs(hyperfine_perp) <= 1.0e6))
    throw ValidationError("spin.hyperfine_perp magnitude must be at most 1e6 Hz");
}

std::string to_string(Species s) { return s == Species::nv ? "nv" : "snv"; }

std::string to_string(ElectronState s) {
  switch (s) {
    case ElectronState::ms0: return "ms0";
    case ElectronState::msMinus1: return "msMinus1";
    case ElectronState::plusHalf: return "plusHalf";
    case ElectronState::minusHalf: return "minusHalf";
  }
  return "ms0";
}

std::string to_string(DriveTarget t) {
  return t == DriveTarget::electron ? "electron" : "carbon";
}

Species species_from_string(const std::string& s) {
  if (s == "nv") return Species::nv;
  if (s == "snv") return Species::snv;
  throw ValidationError("unknown species '" + s + "' (expected nv or snv)");
}

ElectronState electron_state_from_string(const std::string& s) {
  if (s == "ms0") return ElectronState::ms0;
  if (s == "msMinus1") return ElectronState::msMinus1;
  if (s == "plusHalf") return ElectronState::plusHalf;
  if (s == "minusHalf") return ElectronState::minusHalf;
  throw ValidationError("unknown electron state '" + s + "'");
}

DriveTarget drive_target_from_string(const std::string& s) {
  if (s == "electron") return DriveTarget::electron;
  if (s == "carbon") return DriveTarget::carbon;
  throw ValidationError("unknown drive target '" + s + "' (expected electron or carbon)");
}

namespace {

void check_state(const SpinSystem& sys, ElectronState state) {
  const bool nv_state =
      state == ElectronState::ms0 || state == ElectronState::msMinus1;
  if ((sys.species == Species::nv) != nv_state)
    throw ValidationError("electron state " + to_string(state) +
                          " does not belong to species " + to_string(sys.species));
}

// Effective parallel field seen by the carbon, in frequency units (Hz), and the
// matching transverse hyperfine component. The transition frequency is the norm
// of (parallel, transverse).
struct CarbonBranch {
  double par_hz;
  double perp_hz;
};

CarbonBranch carbon_branch(const SpinSystem& sys, double b_par, ElectronState state) {
  check_state(sys, state);
  const double nuc = sys.constants.gamma_c * b_par;
  switch (state) {
    case ElectronState::ms0: return {nuc, 0.0};
    case ElectronState::msMinus1: return {nuc - sys.hyperfine_par, sys.hyperfine_perp};
    case ElectronState::plusHalf:
      return {nuc + 0.5 * sys.hyperfine_par, 0.5 * sys.hyperfine_perp};
    case ElectronState::minusHalf:
      return {nuc - 0.5 * sys.hyperfine_par, 0.5 * sys.hyperfine_perp};
  }
  return {nuc, 0.0};
}

}  // namespace

double electron_larmor(const SpinSystem& sys, double b_par) {
  const double zeeman = sys.constants.gamma_e * b_par;
  if (sys.species == Species::nv)
    return std::abs(sys.constants.zero_field_splitting_gs - zeeman);
  return zeeman;
}

double carbon_larmor(const SpinSystem& sys, double b_par, ElectronState state) {
  const CarbonBranch br = carbon_branch(sys, b_par, state);
  return std::hypot(br.par_hz, br.perp_hz);
}

double larmor_slope(const SpinSystem& sys, DriveTarget target, double b_par,
                    ElectronState state) {
  if (target == DriveTarget::electron) {
    if (sys.species == Species::snv) return sys.constants.gamma_e;
    const double zeeman = sys.constants.gamma_e * b_par;
    return zeeman < sys.constants.zero_field_splitting_gs ? -sys.constants.gamma_e
                                                          : sys.constants.gamma_e;
  }
  const CarbonBranch br = carbon_branch(sys, b_par, state);
  const double nu = std::hypot(br.par_hz, br.perp_hz);
  if (nu == 0.0) return sys.constants.gamma_c;  // on-branch zero crossing: use the asymptote
  return sys.constants.gamma_c * br.par_hz / nu;
}

double rabi_slope(const SpinSystem& sys, DriveTarget target) {
  if (target == DriveTarget::carbon) return sys.constants.gamma_c;
  if (sys.species == Species::nv)
    return sys.constants.gamma_e / std::sqrt(2.0);
  return sys.eta * sys.constants.gamma_e;
}

double rabi_frequency(const SpinSystem& sys, DriveTarget target, double b_drive) {
  if (!(b_drive >= 0.0))
    throw ValidationError("drive amplitude must be nonnegative");
  return rabi_slope(sys, target) * b_drive;
}

double field_for_rabi(const SpinSystem& sys, DriveTarget target, double f_rabi) {
  if (!(f_rabi >= 0.0))
    throw ValidationError("Rabi frequency must be nonnegative");
  return f_rabi / rabi_slope(sys, target);
}

}  // namespace ccspec
