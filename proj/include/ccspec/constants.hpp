#pragma once

#include <numbers>

#include "ccspec/errors.hpp"

namespace ccspec {

// Unit discipline used throughout: magnetic fields in gauss, frequencies in Hz,
// angular frequencies in rad/s, times in seconds, lengths in meters, powers in W.
// Conversions between Hz and rad/s are explicit 2*pi factors at the call site.
struct PhysicalConstants {
  double gamma_e = 2.8e6;                  // electron gyromagnetic ratio, Hz/G
  double gamma_c = 1.0705e3;               // carbon-13 gyromagnetic ratio, Hz/G
  double zero_field_splitting_gs = 2.88e9; // NV ground-state zero-field splitting D, Hz
  double mu0 = 4.0e-7 * std::numbers::pi;  // vacuum permeability, T*m/A

  void validate() const {
    if (!(gamma_e > 0.0) || !(gamma_c > 0.0) || gamma_e <= gamma_c)
      throw ValidationError("physical constants require gamma_e > gamma_c > 0");
    if (!(zero_field_splitting_gs > 0.0))
      throw ValidationError("zero_field_splitting_gs must be positive");
  }
};

inline constexpr double kTeslaToGauss = 1.0e4;

}  // namespace ccspec
