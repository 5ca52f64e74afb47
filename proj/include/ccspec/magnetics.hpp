#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccspec/constants.hpp"

namespace ccspec {

// Straight conductor segment carrying current from a to b (meters).
struct Segment {
  Eigen::Vector3d a;
  Eigen::Vector3d b;
};

// Piecewise-straight conductor path. Segments must chain into closed loops
// (gap < 1e-9 m); a path may contain several loops back to back.
struct CoilGeometry {
  std::vector<Segment> segments;

  void validate() const;
};

// Current-to-field couplings at the qubit location, with the coil's series
// resistance at 4 K.
struct CoilSet {
  double k_x = 290.0;  // G/A
  double k_y = 230.0;  // G/A
  double k_z = 706.0;  // G/A
  double r_coil = 1.0; // ohm
  Eigen::Vector3d qubit_point{0.0, 0.0, 0.0};

  void validate() const;
};

// Field (gauss) of the geometry at `point` carrying `current` amperes, by the
// exact finite-segment kernel. Raises SingularityError when the point lies on
// a conductor (distance <= 1e-12 m).
Eigen::Vector3d field_at_point(const CoilGeometry& g, double current,
                               const Eigen::Vector3d& point,
                               const PhysicalConstants& c = PhysicalConstants{});

// Field per ampere along one axis (0 = x, 1 = y, 2 = z), G/A.
double coupling(const CoilGeometry& g, const Eigen::Vector3d& point, int axis,
                const PhysicalConstants& c = PhysicalConstants{});

// --- Geometry builders -----------------------------------------------------

// Circular loop of given radius centered at `center`, normal along z,
// discretized into n_segments straight pieces (default 720).
CoilGeometry circular_loop(const Eigen::Vector3d& center, double radius,
                           int n_segments = 720);

// Axis-aligned rectangle in the plane z = center.z().
CoilGeometry rectangle_loop(const Eigen::Vector3d& center, double half_x,
                            double half_y);

// Concatenates paths (superposition of same-current loops).
CoilGeometry combine(const std::vector<CoilGeometry>& parts);

// Built-in default coil stack for one unit cell, qubit at the origin:
//  x coil: two nested rectangular turns one metal layer (15 um) below the
//          qubit, long legs straddling the qubit to produce in-plane field;
//  y coil: the same shape rotated 90 degrees, one layer lower;
//  z coil: single circular turn, 7 um radius, 3 um below the qubit.
CoilGeometry default_x_coil();
CoilGeometry default_y_coil();
CoilGeometry default_z_coil(int turns = 1, double radius = 7e-6,
                            double layer_pitch = 0.5e-6);

// Parameter sweep over a geometry family; one row per parameter value.
struct CouplingSweepRow {
  double param;
  double k_x, k_y, k_z;
  double r_coil;
};
// family: "x_width" (x-coil leg separation scale), "z_radius" (z-coil radius),
// "z_turns" (stacked turns).
std::vector<CouplingSweepRow> sweep_coupling(const std::string& family,
                                             const std::vector<double>& grid,
                                             double r_coil);

// On-axis circular-loop field (gauss) from the analytic closed form, for
// oracle comparisons.
double loop_axial_field_analytic(double radius, double z, double current,
                                 const PhysicalConstants& c = PhysicalConstants{});

// Exact filamentary-loop field (gauss) off axis via complete elliptic
// integrals: loop of `radius` centered at z = z_loop, field at (rho, z).
// Returns {B_rho, B_z}.
Eigen::Vector2d loop_field_elliptic(double radius, double z_loop, double rho,
                                    double z, double current,
                                    const PhysicalConstants& c = PhysicalConstants{});

// --- Bias coil pair --------------------------------------------------------

struct HelmholtzResult {
  double b_center;  // gauss at the requested target
  double delta_b;   // max |B - B_center| over the region, gauss
  double current;   // ampere-turns per pack after scaling
};

// Thick coaxial pair: winding packs of rectangular cross-section
// (radial extent `radial_width` outward from `inner_radius`, axial extent
// `axial_width`) separated by `gap` between their facing sides, modeled as
// >= 20x20 filament loops per pack (convergence-checked by refinement).
// Current is scaled so the center field equals b_center_target; delta_b is
// taken over an n_grid x n_grid sampling of the centered square chip region
// of side region_edge in the midplane. Raises QuadratureError with a
// refinement hint when filament refinement has not converged.
HelmholtzResult helmholtz_inhomogeneity(double inner_radius, double gap,
                                        double radial_width, double axial_width,
                                        double b_center_target, double region_edge,
                                        int n_filaments = 24, int n_grid = 17,
                                        const PhysicalConstants& c = PhysicalConstants{});

// Ideal filamentary pair (spacing = radius) center field per ampere-turn:
// (4/5)^{3/2} mu0 n I / r, for oracle tests.
double helmholtz_center_field_ideal(double radius, double n_turns, double current,
                                    const PhysicalConstants& c = PhysicalConstants{});

// --- Crosstalk -------------------------------------------------------------

// Ratio of the transverse (x,y) stray field of `wire` at the victim location
// to the drive field k_local*I_local the addressed qubit receives.
double crosstalk_beta(const CoilGeometry& wire, const Eigen::Vector3d& victim_point,
                      double k_local, double i_wire, double i_local,
                      const PhysicalConstants& c = PhysicalConstants{});

// Long LO feed line: thin rectangle whose near leg runs parallel to y at
// lateral offset `lateral` and depth `height` below the qubit plane, with the
// return leg routed `loop_width` further out.
CoilGeometry default_lo_wire(double lateral = 500e-6, double height = 15e-6,
                             double length = 10e-3, double loop_width = 9.5e-3);

// Trace resistance from length and cross-section at 4 K (resistivity
// rho_300k/4 for the default copper-like metal).
double estimate_resistance(double length, double width, double thickness,
                           double rho_300k = 1.7e-8);

}  // namespace ccspec
