#include <cmath>
#include <vector>

#include "ccspec/config.hpp"
#include "ccspec/errors.hpp"
#include "ccspec/power.hpp"
#include "doctest.h"

using namespace ccspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

Scenario reference_scenario() { return Scenario{}; }

}  // namespace

TEST_CASE("resistive dissipation of the coil path") {
  const ElectricalNetwork net;  // 100 hops, 0.0125 ohm each, 0.25 + 1.0 ohm
  const double i = 2.4 / 706.0;
  const double r_total = 100 * 0.0125 + 0.25 + 1.0;
  CHECK(p_dc(i, net) == doctest::Approx(i * i * r_total + 1e-4).epsilon(1e-12));
  CHECK(p_dc(i, net) == doctest::Approx(1.2889e-4).epsilon(1e-4));
  // No current: only the fixed auxiliary power remains.
  CHECK(p_dc(0.0, net) == doctest::Approx(1e-4).epsilon(1e-12));

  ElectricalNetwork big = net;
  big.n_cells = 10000;
  CHECK(p_dc(i, big) == doctest::Approx(1.5596e-3).epsilon(1e-3));

  CHECK(dc_current_for_compensation(2.4, 706.0) ==
        doctest::Approx(2.4 / 706.0).epsilon(1e-12));
  CHECK_THROWS_AS(dc_current_for_compensation(1.0, 0.0), ValidationError);
}

TEST_CASE("sample clock and tracker word length") {
  ClockPlan plan;
  CHECK(required_fs(plan) == doctest::Approx(2.5e7).epsilon(1e-12));
  plan.f_comp = 3e7;
  CHECK(required_fs(plan) == doctest::Approx(7.5e7).epsilon(1e-12));

  // Word lengths at the reference operating point.
  CHECK(nco_bits(25e6, 100e-9, 1.0 - 1e-5) == 11);
  CHECK(nco_bits(25e6, 100e-6, 1.0 - 1e-5) == 21);
  CHECK(nco_bits(50e6, 100e-9, 1.0 - 1e-5) == 12);

  // Longer pulses demand finer frequency resolution.
  CHECK(nco_bits(25e6, 1e-3, 1.0 - 1e-5) > nco_bits(25e6, 1e-4, 1.0 - 1e-5));
  // The requested phase error must be a real number: F = 1 is degenerate.
  CHECK_THROWS_AS(nco_bits(25e6, 100e-9, 1.0), ValidationError);
  CHECK(nco_bits(25e6, 1e-12, 0.99) >= 1);
}

TEST_CASE("tracker power") {
  const ClockPlan plan;
  // activity * E_bit * f_s * bits.
  CHECK(p_nco(plan, 2.5e7, 11) ==
        doctest::Approx(2.0 * 8.4e-14 * 2.5e7 * 11).epsilon(1e-12));
  CHECK(p_nco(plan, 2.5e7, 11) == doctest::Approx(4.62e-5).epsilon(1e-9));
  CHECK(p_nco(plan, 2.5e7, 21) == doctest::Approx(8.82e-5).epsilon(1e-9));
}

TEST_CASE("driver amplifier power") {
  const SpinSystem sys;
  AmplifierConfig amp;

  // Electron: rms coil current f_r/(gamma_e*k) into the 1.1 V supply.
  amp.duty_electron = 1.0;
  const double i_rms_e = 5e6 / (2.8e6 * 290.0);
  CHECK(p_amp_electron(5e6, sys, 290.0, amp) ==
        doctest::Approx(i_rms_e * 1.1).epsilon(1e-12));
  CHECK(p_amp_electron(5e6, sys, 290.0, amp) ==
        doctest::Approx(6.773e-3).epsilon(1e-3));
  amp.duty_electron = 0.1;
  CHECK(p_amp_electron(5e6, sys, 290.0, amp) ==
        doctest::Approx(6.773e-4).epsilon(1e-3));

  // Nuclear: f_rc/(sqrt(2)*gamma_c*k) into the 0.1 V supply, full duty.
  const double i_rms_n = 5e3 / (std::sqrt(2.0) * 1.0705e3 * 290.0);
  CHECK(p_amp_nuclear(5e3, sys, 290.0, amp) ==
        doctest::Approx(i_rms_n * 0.1).epsilon(1e-12));
  CHECK(p_amp_nuclear(5e3, sys, 290.0, amp) ==
        doctest::Approx(1.1388e-3).epsilon(1e-3));
}

TEST_CASE("unit-cell budget at the reference operating point") {
  const Scenario s = reference_scenario();
  const PowerBreakdown dc = unit_cell_power(s.spin, s.budget, s.coils, s.power,
                                            2.4, Strategy::dc_compensation);
  CHECK(dc.p_dc == doctest::Approx(1.2889e-4).epsilon(1e-3));
  // 1 electron tracker at 11 bits + 9 nuclear trackers at 21 bits.
  CHECK(dc.p_nco_total ==
        doctest::Approx(2.0 * 8.4e-14 * 2.5e7 * (11.0 + 9.0 * 21.0))
            .epsilon(1e-9));
  CHECK(dc.p_nco_total == doctest::Approx(8.4e-4).epsilon(1e-9));
  CHECK(dc.p_amp_electron == doctest::Approx(6.773e-4).epsilon(1e-3));
  CHECK(dc.p_amp_nuclear == doctest::Approx(1.1388e-3).epsilon(1e-3));
  CHECK(dc.p_total == doctest::Approx(dc.p_dc + dc.p_nco_total +
                                      dc.p_amp_electron + dc.p_amp_nuclear)
                          .epsilon(1e-12));
  // Lands on the ~3 mW/cell design scale.
  CHECK(dc.p_total > 3e-3 * 0.75);
  CHECK(dc.p_total < 3e-3 * 1.25);

  // Frequency compensation at 2.4 G: the offset (6.72 MHz) still fits under
  // the 10 MHz channel spacing, so the clock stays put and the coil is idle.
  const PowerBreakdown fr = unit_cell_power(s.spin, s.budget, s.coils, s.power,
                                            2.4, Strategy::frequency_compensation);
  CHECK(fr.p_dc == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(fr.p_nco_total == doctest::Approx(dc.p_nco_total).epsilon(1e-12));
  CHECK(fr.p_total == doctest::Approx(2.7562e-3).epsilon(1e-3));

  // Past the spacing threshold the widened clock costs tracker power.
  const PowerBreakdown fr5 = unit_cell_power(s.spin, s.budget, s.coils, s.power,
                                             5.0, Strategy::frequency_compensation);
  CHECK(fr5.p_nco_total > fr.p_nco_total);

  // A 100-cell tile stays below 1 W.
  CHECK(100.0 * dc.p_total < 1.0);
}

TEST_CASE("strategy trade-off sweep and crossovers") {
  const Scenario s = reference_scenario();
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  const auto rows =
      tradeoff_sweep(s.spin, s.budget, s.coils, s.power, grid, {100, 10000});
  REQUIRE(rows.size() == grid.size() * 2 * 2);

  const auto total = [&](double db, int n, Strategy st) {
    for (const SweepRow& r : rows)
      if (r.delta_b == db && r.n_cells == n && r.strategy == st)
        return r.breakdown.p_total;
    FAIL("missing sweep row");
    return 0.0;
  };

  // Below the spacing threshold (f_comp < f_space at ~3.57 G) the frequency
  // strategy is flat in delta_B.
  const double fr_base = total(0.0, 100, Strategy::frequency_compensation);
  for (double db : {0.5, 1.5, 2.5, 3.5})
    CHECK(total(db, 100, Strategy::frequency_compensation) ==
          doctest::Approx(fr_base).epsilon(1e-12));
  CHECK(total(4.0, 100, Strategy::frequency_compensation) > fr_base);

  // DC cost rises monotonically with the compensated field.
  CHECK(total(1.0, 100, Strategy::dc_compensation) <
        total(3.0, 100, Strategy::dc_compensation));
  CHECK(total(3.0, 100, Strategy::dc_compensation) <
        total(5.0, 100, Strategy::dc_compensation));

  // Long interconnect chains (N = 10000) make DC compensation strictly worse
  // everywhere on the positive grid.
  for (double db : {1.0, 2.5, 5.0})
    CHECK(total(db, 10000, Strategy::dc_compensation) >
          total(db, 10000, Strategy::frequency_compensation));

  // At N = 100 frequency compensation wins below ~3.9 G and DC wins above:
  // one crossover inside the grid.
  CHECK(total(4.0, 100, Strategy::dc_compensation) <
        total(4.0, 100, Strategy::frequency_compensation));
  CHECK(total(5.0, 100, Strategy::dc_compensation) <
        total(5.0, 100, Strategy::frequency_compensation));
  CHECK(total(3.5, 100, Strategy::dc_compensation) >
        total(3.5, 100, Strategy::frequency_compensation));

  const auto xo = crossover_fields(rows);
  REQUIRE(xo.size() == 1);
  CHECK(xo[0].first == 100);
  CHECK(xo[0].second == doctest::Approx(3.895).epsilon(0.01));
}

TEST_CASE("strategy names") {
  CHECK(to_string(Strategy::dc_compensation) == "dc_compensation");
  CHECK(to_string(Strategy::frequency_compensation) == "frequency_compensation");
  CHECK(strategy_from_string("dc") == Strategy::dc_compensation);
  CHECK(strategy_from_string("dc_compensation") == Strategy::dc_compensation);
  CHECK(strategy_from_string("freq") == Strategy::frequency_compensation);
  CHECK(strategy_from_string("frequency") == Strategy::frequency_compensation);
  CHECK(strategy_from_string("frequency_compensation") ==
        Strategy::frequency_compensation);
  CHECK_THROWS_AS(strategy_from_string("bogus"), ValidationError);
}

TEST_CASE("electrical validation") {
  ElectricalNetwork net;
  net.r_on = -1.0;
  CHECK_THROWS_AS(net.validate(), ValidationError);
  net = ElectricalNetwork{};
  net.n_cells = 0;
  CHECK_THROWS_AS(net.validate(), ValidationError);

  ClockPlan plan;
  plan.f_space_lo = 0.0;
  CHECK_THROWS_AS(plan.validate(), ValidationError);
  plan = ClockPlan{};
  plan.n_nco_electron = -1;
  CHECK_THROWS_AS(plan.validate(), ValidationError);

  AmplifierConfig amp;
  amp.duty_electron = 1.5;
  CHECK_THROWS_AS(amp.validate(), ValidationError);

  PowerScenario scn;
  scn.delta_b = -1.0;
  CHECK_THROWS_AS(scn.validate(), ValidationError);
  CHECK_NOTHROW(PowerScenario{}.validate());
}
