#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccspec/cli.hpp"
#include "doctest.h"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string summary;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, summary, err;
  const int code = ccspec::cli::run(args, out, summary, err);
  return {code, out.str(), summary.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("cli: requirement sheet CSV") {
  const RunResult r = run_cli({"spec"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "name,qubit,value,unit,equation,budget_share");
  CHECK(count_lines(r.out) == 30);  // header + 29 rows
  CHECK(contains(r.out, "target_frequency,electron,2.720000e+09,Hz"));
  CHECK(contains(r.out, "xy_field_max,electron"));
  CHECK(r.err.empty());
}

TEST_CASE("cli: table format goes to the summary-style layout") {
  const RunResult r = run_cli({"spec", "--format", "table"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out).find(',') == std::string::npos);
  CHECK(contains(first_line(r.out), "name"));
  CHECK(contains(first_line(r.out), "budget_share"));
}

TEST_CASE("cli: --out writes the CSV to a file") {
  const std::string path = "/tmp/ccspec_cli_test_out.csv";
  std::remove(path.c_str());
  const RunResult r = run_cli({"spec", "--out", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "name,qubit,value,unit,equation,budget_share");
  std::remove(path.c_str());
}

TEST_CASE("cli: deterministic output for a fixed seed") {
  const RunResult a = run_cli({"validate", "--seed", "7"});
  const RunResult b = run_cli({"validate", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.summary == b.summary);

  const RunResult c = run_cli({"spec", "--seed", "3"});
  const RunResult d = run_cli({"spec", "--seed", "3"});
  CHECK(c.out == d.out);
  const RunResult e = run_cli({"spec", "--seed", "4"});
  CHECK(e.out != c.out);
}

TEST_CASE("cli: oracle suite passes and reports per-check rows") {
  const RunResult r = run_cli({"validate"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "check,computed,reference,ratio,status");
  CHECK(count_lines(r.out) == 13);
  CHECK(contains(r.out, "rabi_formula_agreement"));
  CHECK(contains(r.out, "white_noise_quadrature"));
  CHECK(contains(r.out, "loop_field_axial"));
  CHECK(!contains(r.out, "FAIL"));
  // The tally note accompanies the human-readable table rendering (the
  // binary interleaves both streams on stdout).
  const RunResult t = run_cli({"validate", "--format", "table"});
  CHECK(t.code == 0);
  CHECK(contains(t.out + t.summary, "checks passed: 12/12"));
}

TEST_CASE("cli: subcommand row counts") {
  CHECK(count_lines(run_cli({"noise"}).out) == 202);
  CHECK(count_lines(run_cli({"crosstalk"}).out) == 52);
  CHECK(count_lines(run_cli({"readout"}).out) == 124);
  CHECK(count_lines(run_cli({"power"}).out) == 2);
  CHECK(count_lines(run_cli({"sweep"}).out) == 85);
  CHECK(count_lines(run_cli({"coil"}).out) == 9);
  CHECK(count_lines(run_cli({"helmholtz"}).out) == 2);
}

TEST_CASE("cli: column headers") {
  CHECK(first_line(run_cli({"noise"}).out) ==
        "omega_rad_s,psd,filter_parallel_s2,filter_transverse_s2,"
        "integrand_parallel,integrand_transverse");
  CHECK(first_line(run_cli({"coil"}).out) == "param,k_x,k_y,k_z,R_coil");
  CHECK(first_line(run_cli({"helmholtz"}).out) ==
        "b_center_G,delta_b_G,ampere_turns_per_pack,inner_radius_m,gap_m,"
        "region_edge_m");
  CHECK(first_line(run_cli({"readout"}).out) == "b_par_G,b_perp_G,infidelity");
  CHECK(first_line(run_cli({"crosstalk"}).out) ==
        "f_space_Hz,alpha,infidelity,envelope");
  CHECK(first_line(run_cli({"power"}).out) ==
        "delta_B,N,strategy,p_dc,p_nco,p_amp_e,p_amp_n,p_total");
  CHECK(first_line(run_cli({"sweep"}).out) ==
        "delta_B,N,strategy,p_dc,p_nco,p_amp_e,p_amp_n,p_total");
}

TEST_CASE("cli: crosstalk hits the channel-spacing node") {
  const RunResult r = run_cli({"crosstalk"});
  CHECK(r.code == 0);
  // At f_space = 10 MHz (alpha = 2, pi rotation) the leakage nulls out and
  // the envelope sits well under 1e-5.
  bool found = false;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.rfind("1.000000e+07,", 0) == 0) {
      found = true;
      std::istringstream fields(line);
      std::string f, alpha, inf, env;
      std::getline(fields, f, ',');
      std::getline(fields, alpha, ',');
      std::getline(fields, inf, ',');
      std::getline(fields, env, ',');
      CHECK(alpha == "2.000000e+00");
      CHECK(std::stod(inf) < 1e-12);
      CHECK(std::stod(env) < 1e-5);
    }
  }
  CHECK(found);
}

TEST_CASE("cli: scenario loading and overrides") {
  const std::string cfg = std::string(CCSPEC_SOURCE_DIR) + "/configs/nv2000.cfg";
  const RunResult base = run_cli({"spec"});
  const RunResult from_file = run_cli({"spec", "--scenario", cfg});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == base.out);

  const RunResult overridden =
      run_cli({"power", "--override", "power.N_cells=10000", "--override",
               "strategy=freq"});
  CHECK(overridden.code == 0);
  CHECK(contains(overridden.out, "10000,frequency_compensation"));
}

TEST_CASE("cli: validation failures exit 1 with a named error") {
  const RunResult unknown = run_cli({"spec", "--override", "R_bogus=1"});
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "error:"));
  CHECK(contains(unknown.err, "R_bogus"));

  const RunResult ambiguous = run_cli({"spec", "--override", "R_coil=2"});
  CHECK(ambiguous.code == 1);
  CHECK(contains(ambiguous.err, "coils.R_coil"));
  CHECK(contains(ambiguous.err, "power.R_coil"));

  const RunResult range =
      run_cli({"spec", "--override", "bias_field_parallel=30000"});
  CHECK(range.code == 1);
  CHECK(contains(range.err, "bias_field_parallel"));

  const RunResult missing = run_cli({"spec", "--scenario", "/no/such/file.cfg"});
  CHECK(missing.code == 1);
  CHECK(contains(missing.err, "error:"));
}

TEST_CASE("cli: advisory bias window prints a warning but runs") {
  const RunResult r =
      run_cli({"power", "--override", "bias_field_parallel=1500"});
  CHECK(r.code == 0);
  CHECK(contains(r.err, "warning:"));
  CHECK(contains(r.err, "operating window"));
}

TEST_CASE("cli: numerical failures exit 2") {
  // Biasing exactly at the ground-state level crossing makes the readout
  // branch tracking degenerate.
  const RunResult r =
      run_cli({"readout", "--override", "bias_field_parallel=1028.5714285714287"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "error:"));
  CHECK(contains(r.err, "degenerate"));
}

TEST_CASE("cli: geometry file field evaluation") {
  const std::string path = "/tmp/ccspec_cli_test_geom.csv";
  {
    std::ofstream g(path);
    g << "ax,ay,az,bx,by,bz\n";
    // 400x400 um square loop 15 um below the origin.
    g << "-2e-4,-2e-4,-1.5e-5,2e-4,-2e-4,-1.5e-5\n";
    g << "2e-4,-2e-4,-1.5e-5,2e-4,2e-4,-1.5e-5\n";
    g << "2e-4,2e-4,-1.5e-5,-2e-4,2e-4,-1.5e-5\n";
    g << "-2e-4,2e-4,-1.5e-5,-2e-4,-2e-4,-1.5e-5\n";
  }
  const RunResult r = run_cli({"coil", "--geometry", path});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 2);  // header + one field row
  // The loop's field at the origin points along +-z; the z column of the row
  // carries it.
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::istringstream fields(row);
  std::string param, bx, by, bz;
  std::getline(fields, param, ',');
  std::getline(fields, bx, ',');
  std::getline(fields, by, ',');
  std::getline(fields, bz, ',');
  CHECK(std::abs(std::stod(bx)) < 1e-9);
  CHECK(std::abs(std::stod(by)) < 1e-9);
  CHECK(std::abs(std::stod(bz)) > 10.0);  // tens of G/A at 15 um depth

  const RunResult bad = run_cli({"coil", "--geometry", "/no/such/geom.csv"});
  CHECK(bad.code == 1);
  std::remove(path.c_str());
}

TEST_CASE("cli: usage errors") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"not_a_subcommand"}).code == 1);
  const RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.summary, "spec"));
  CHECK(contains(help.summary, "validate"));
  const RunResult bad_format = run_cli({"spec", "--format", "yaml"});
  CHECK(bad_format.code == 1);
}
