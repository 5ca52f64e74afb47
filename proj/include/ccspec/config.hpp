#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccspec/fidelity.hpp"
#include "ccspec/magnetics.hpp"
#include "ccspec/noise.hpp"
#include "ccspec/power.hpp"
#include "ccspec/readout.hpp"
#include "ccspec/spin.hpp"

namespace ccspec {

// Complete description of one operating point: the spin system and bias, the
// fidelity budget, coil couplings, electrical/power parameters, the readout
// model, an optional noise model, and the RNG seed.
struct Scenario {
  SpinSystem spin;
  double bias_field_parallel = 2000.0;  // gauss
  ElectronState carbon_state = ElectronState::ms0;
  FidelityBudget budget;
  CoilSet coils;
  PowerScenario power;
  ReadoutModel readout;
  double readout_budget = 0.0;  // 0 -> use 1 - budget.target_fidelity
  NoiseModel noise;
  std::uint64_t seed = 1;

  double effective_readout_budget() const {
    return readout_budget > 0.0 ? readout_budget : 1.0 - budget.target_fidelity;
  }

  // Throws ValidationError naming the offending key; appends advisory notes
  // (bias outside the expected 2000-10000 G window) to `warnings` if given.
  void validate(std::vector<std::string>* warnings = nullptr) const;
};

// Parses the key/value scenario format:
//   - `key = value` lines; `#` or `;` starts a comment; blank lines ignored
//   - `[section]` headers scope the keys that follow; keys before any header
//     (or any unambiguous key anywhere) resolve by unique-name lookup
//   - unknown keys, malformed lines, and duplicate assignments raise
//     ParseError with the 1-based line number
// Relative paths that do not resolve are retried under $CCSPEC_CONFIG_DIR.
Scenario load_scenario(const std::string& path);

// Parses scenario text (used by load_scenario; path only labels errors).
Scenario parse_scenario(const std::string& text, const std::string& label);

// Applies one `key=value` or `section.key=value` override in place.
// Unknown or ambiguous keys raise ValidationError naming the key.
void apply_override(Scenario& s, const std::string& assignment);

// Canonical text form: every key in a fixed order with full precision;
// serialize(load(f)) round-trips to an equal scenario, byte-identically.
std::string serialize_scenario(const Scenario& s);

}  // namespace ccspec
