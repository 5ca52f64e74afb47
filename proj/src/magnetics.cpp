#include "ccspec/magnetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "ccspec/errors.hpp"

namespace ccspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularDistance = 1e-12;  // m

double point_segment_distance(const Eigen::Vector3d& p, const Segment& s) {
  const Eigen::Vector3d d = s.b - s.a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - s.a).norm();
  double t = (p - s.a).dot(d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (s.a + t * d)).norm();
}

}  // namespace

void CoilGeometry::validate() const {
  if (segments.empty())
    throw ValidationError("coil geometry has no segments");
  for (const Segment& s : segments) {
    if (!s.a.allFinite() || !s.b.allFinite())
      throw ValidationError("coil geometry has non-finite coordinates");
  }
  // Segments must chain into closed loops (possibly several back to back).
  constexpr double kGap = 1e-9;
  Eigen::Vector3d loop_start = segments.front().a;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const bool chains = i + 1 < segments.size() &&
                        (segments[i].b - segments[i + 1].a).norm() < kGap;
    if (chains) continue;
    if ((segments[i].b - loop_start).norm() >= kGap)
      throw ValidationError(
          "coil geometry segments do not close into loops (gap >= 1e-9 m)");
    if (i + 1 < segments.size()) loop_start = segments[i + 1].a;
  }
}

void CoilSet::validate() const {
  if (!(k_x >= 0.0) || !(k_y >= 0.0) || !(k_z >= 0.0))
    throw ValidationError("coil couplings must be nonnegative");
  if (!(r_coil > 0.0)) throw ValidationError("R_coil must be positive");
}

Eigen::Vector3d field_at_point(const CoilGeometry& g, double current,
                               const Eigen::Vector3d& point,
                               const PhysicalConstants& c) {
  g.validate();
  Eigen::Vector3d total_per_amp = Eigen::Vector3d::Zero();
  for (const Segment& s : g.segments) {
    if ((s.b - s.a).norm() < 1e-15) continue;  // degenerate, zero contribution
    if (point_segment_distance(point, s) <= kSingularDistance)
      throw SingularityError("field point lies on a conductor segment");
    const Eigen::Vector3d r1 = point - s.a;
    const Eigen::Vector3d r2 = point - s.b;
    const double n1 = r1.norm();
    const double n2 = r2.norm();
    const double denom = n1 * n2 * (n1 * n2 + r1.dot(r2));
    total_per_amp += r1.cross(r2) * ((n1 + n2) / denom);
  }
  return total_per_amp * (c.mu0 / (4.0 * kPi)) * current * kTeslaToGauss;
}

double coupling(const CoilGeometry& g, const Eigen::Vector3d& point, int axis,
                const PhysicalConstants& c) {
  if (axis < 0 || axis > 2) throw ValidationError("axis must be 0, 1, or 2");
  return field_at_point(g, 1.0, point, c)(axis);
}

CoilGeometry circular_loop(const Eigen::Vector3d& center, double radius,
                           int n_segments) {
  if (!(radius > 0.0)) throw ValidationError("loop radius must be positive");
  if (n_segments < 360)
    throw ValidationError("circular loops need at least 360 segments");
  CoilGeometry g;
  g.segments.reserve(n_segments);
  auto vertex = [&](int k) {
    const double th = 2.0 * kPi * k / n_segments;
    return Eigen::Vector3d(center.x() + radius * std::cos(th),
                           center.y() + radius * std::sin(th), center.z());
  };
  for (int k = 0; k < n_segments; ++k)
    g.segments.push_back({vertex(k), vertex((k + 1) % n_segments)});
  return g;
}

CoilGeometry rectangle_loop(const Eigen::Vector3d& center, double half_x,
                            double half_y) {
  if (!(half_x > 0.0) || !(half_y > 0.0))
    throw ValidationError("rectangle half-sizes must be positive");
  const double z = center.z();
  const Eigen::Vector3d p0(center.x() + half_x, center.y() - half_y, z);
  const Eigen::Vector3d p1(center.x() + half_x, center.y() + half_y, z);
  const Eigen::Vector3d p2(center.x() - half_x, center.y() + half_y, z);
  const Eigen::Vector3d p3(center.x() - half_x, center.y() - half_y, z);
  CoilGeometry g;
  g.segments = {{p0, p1}, {p1, p2}, {p2, p3}, {p3, p0}};
  return g;
}

CoilGeometry combine(const std::vector<CoilGeometry>& parts) {
  CoilGeometry g;
  for (const CoilGeometry& p : parts)
    g.segments.insert(g.segments.end(), p.segments.begin(), p.segments.end());
  return g;
}

namespace {

// Two nested rectangular turns whose near legs straddle the qubit at
// +/- leg_offset, return legs 400 um away, one 400 um x 400 um rectangle per
// turn, at depth `depth` below the qubit plane.
CoilGeometry nested_turn_pair(double leg_offset, double depth, bool along_y) {
  const double half = 200e-6;
  std::vector<CoilGeometry> turns;
  for (double sign : {-1.0, 1.0}) {
    const double near_leg = sign * leg_offset;
    if (along_y) {
      // Near legs parallel to y at x = near_leg; the x = center+half_x leg of
      // a counter-clockwise rectangle carries +y current.
      turns.push_back(rectangle_loop(
          Eigen::Vector3d(near_leg - half, 0.0, -depth), half, half));
    } else {
      // Near legs parallel to x at y = near_leg; the y = center+half_y leg of
      // a counter-clockwise rectangle carries -x current, which gives +B_y at
      // the qubit above.
      turns.push_back(rectangle_loop(
          Eigen::Vector3d(0.0, near_leg - half, -depth), half, half));
    }
  }
  return combine(turns);
}

}  // namespace

CoilGeometry default_x_coil() { return nested_turn_pair(1.5e-6, 15e-6, true); }

CoilGeometry default_y_coil() { return nested_turn_pair(1.5e-6, 16.5e-6, false); }

CoilGeometry default_z_coil(int turns, double radius, double layer_pitch) {
  if (turns < 1) throw ValidationError("z coil needs at least one turn");
  if (!(layer_pitch >= 0.0))
    throw ValidationError("layer pitch must be nonnegative");
  std::vector<CoilGeometry> loops;
  for (int t = 0; t < turns; ++t) {
    loops.push_back(circular_loop(
        Eigen::Vector3d(0.0, 0.0, -3e-6 - t * layer_pitch), radius));
  }
  return combine(loops);
}

namespace {

double geometry_length(const CoilGeometry& g) {
  double total = 0.0;
  for (const Segment& s : g.segments) total += (s.b - s.a).norm();
  return total;
}

}  // namespace

std::vector<CouplingSweepRow> sweep_coupling(const std::string& family,
                                             const std::vector<double>& grid,
                                             double r_coil) {
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  const double default_kx = coupling(default_x_coil(), origin, 0);
  const double default_ky = coupling(default_y_coil(), origin, 1);
  const double default_kz = coupling(default_z_coil(), origin, 2);
  constexpr double kThickness = 1e-6;
  constexpr double kDefaultWidth = 2e-6;

  std::vector<CouplingSweepRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    CouplingSweepRow row{p, default_kx, default_ky, default_kz, r_coil};
    if (family == "x_width") {
      if (!(p > 0.0)) throw ValidationError("trace width must be positive");
      const CoilGeometry g = nested_turn_pair(0.5 * (p + 1e-6), 15e-6, true);
      row.k_x = coupling(g, origin, 0);
      if (r_coil < 0.0)
        row.r_coil = estimate_resistance(geometry_length(g), p, kThickness);
    } else if (family == "z_radius") {
      if (!(p > 0.0)) throw ValidationError("coil radius must be positive");
      const CoilGeometry g = default_z_coil(1, p);
      row.k_z = coupling(g, origin, 2);
      if (r_coil < 0.0)
        row.r_coil =
            estimate_resistance(geometry_length(g), kDefaultWidth, kThickness);
    } else if (family == "z_turns") {
      const int turns = static_cast<int>(std::lround(p));
      if (turns < 1 || std::abs(p - turns) > 1e-9)
        throw ValidationError("turn counts must be positive integers");
      const CoilGeometry g = default_z_coil(turns);
      row.k_z = coupling(g, origin, 2);
      if (r_coil < 0.0)
        row.r_coil =
            estimate_resistance(geometry_length(g), kDefaultWidth, kThickness);
    } else {
      throw ValidationError("unknown sweep family: " + family +
                            " (expected x_width, z_radius, or z_turns)");
    }
    rows.push_back(row);
  }
  return rows;
}

double loop_axial_field_analytic(double radius, double z, double current,
                                 const PhysicalConstants& c) {
  if (!(radius > 0.0)) throw ValidationError("loop radius must be positive");
  const double r2 = radius * radius;
  const double d2 = r2 + z * z;
  return c.mu0 * current * r2 / (2.0 * std::pow(d2, 1.5)) * kTeslaToGauss;
}

Eigen::Vector2d loop_field_elliptic(double radius, double z_loop, double rho,
                                    double z, double current,
                                    const PhysicalConstants& c) {
  if (!(radius > 0.0)) throw ValidationError("loop radius must be positive");
  if (!(rho >= 0.0)) throw ValidationError("rho must be nonnegative");
  const double a = radius;
  const double dz = z - z_loop;
  const double near2 = (a - rho) * (a - rho) + dz * dz;
  if (near2 <= kSingularDistance * kSingularDistance)
    throw SingularityError("field point lies on the filament loop");
  if (rho == 0.0) {
    return {0.0, loop_axial_field_analytic(a, dz, current, c)};
  }
  const double far2 = (a + rho) * (a + rho) + dz * dz;
  const double k = std::sqrt(4.0 * a * rho / far2);
  const double ek = std::comp_ellint_1(k);
  const double ee = std::comp_ellint_2(k);
  const double pre = c.mu0 * current / (2.0 * kPi * std::sqrt(far2));
  const double bz =
      pre * (ek + (a * a - rho * rho - dz * dz) / near2 * ee);
  const double brho =
      pre * dz / rho * (-ek + (a * a + rho * rho + dz * dz) / near2 * ee);
  return {brho * kTeslaToGauss, bz * kTeslaToGauss};
}

namespace {

struct FilamentStack {
  std::vector<double> radii;
  std::vector<double> axial;  // signed positions, both packs
};

FilamentStack make_filaments(double inner_radius, double gap,
                             double radial_width, double axial_width, int n) {
  FilamentStack f;
  for (int i = 0; i < n; ++i)
    f.radii.push_back(inner_radius + (i + 0.5) * radial_width / n);
  for (int j = 0; j < n; ++j) {
    const double off = 0.5 * gap + (j + 0.5) * axial_width / n;
    f.axial.push_back(off);
    f.axial.push_back(-off);
  }
  return f;
}

// |B| at (rho, 0) for unit current in every filament.
double stack_field(const FilamentStack& f, double rho,
                   const PhysicalConstants& c) {
  double brho = 0.0;
  double bz = 0.0;
  for (double a : f.radii) {
    for (double zf : f.axial) {
      const Eigen::Vector2d b = loop_field_elliptic(a, zf, rho, 0.0, 1.0, c);
      brho += b(0);
      bz += b(1);
    }
  }
  return std::hypot(brho, bz);
}

double stack_delta(const FilamentStack& f, double region_edge, int n_grid,
                   double* b_center, const PhysicalConstants& c) {
  *b_center = stack_field(f, 0.0, c);
  std::unordered_map<double, double> cache;
  double delta = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double x = n_grid == 1 ? 0.0
                                   : -0.5 * region_edge +
                                         region_edge * i / (n_grid - 1);
      const double y = n_grid == 1 ? 0.0
                                   : -0.5 * region_edge +
                                         region_edge * j / (n_grid - 1);
      const double rho = std::hypot(x, y);
      auto it = cache.find(rho);
      double b;
      if (it != cache.end()) {
        b = it->second;
      } else {
        b = stack_field(f, rho, c);
        cache.emplace(rho, b);
      }
      delta = std::max(delta, std::abs(b - *b_center));
    }
  }
  return delta;
}

}  // namespace

HelmholtzResult helmholtz_inhomogeneity(double inner_radius, double gap,
                                        double radial_width, double axial_width,
                                        double b_center_target,
                                        double region_edge, int n_filaments,
                                        int n_grid,
                                        const PhysicalConstants& c) {
  if (!(inner_radius > 0.0))
    throw ValidationError("inner_radius must be positive");
  if (!(gap >= 0.0)) throw ValidationError("gap must be nonnegative");
  if (!(radial_width > 0.0) || !(axial_width > 0.0))
    throw ValidationError("winding cross-section must be positive");
  if (!(b_center_target > 0.0))
    throw ValidationError("b_center_target must be positive");
  if (!(region_edge >= 0.0))
    throw ValidationError("region_edge must be nonnegative");
  if (region_edge / std::numbers::sqrt2 >= inner_radius)
    throw ValidationError("chip region must lie strictly inside the coil bore");
  if (n_filaments < 20)
    throw ValidationError("winding discretization needs at least 20x20 filaments");
  if (n_grid < 1) throw ValidationError("n_grid must be at least 1");

  const FilamentStack fine = make_filaments(inner_radius, gap, radial_width,
                                            axial_width, n_filaments);
  double b_center_raw = 0.0;
  const double delta_raw = stack_delta(fine, region_edge, n_grid,
                                       &b_center_raw, c);

  // Refinement check at half the filament count.
  const int n_half = std::max(4, n_filaments / 2);
  const FilamentStack coarse = make_filaments(inner_radius, gap, radial_width,
                                              axial_width, n_half);
  double b_center_half = 0.0;
  const double delta_half = stack_delta(coarse, region_edge, n_grid,
                                        &b_center_half, c);
  const double scale_fine = delta_raw / b_center_raw;
  const double scale_half = delta_half / b_center_half;
  const double ref = std::max(std::abs(scale_fine), 1e-18);
  if (region_edge > 0.0 && std::abs(scale_fine - scale_half) > 0.05 * ref) {
    throw QuadratureError(
        "bias-pair filament grid has not converged; increase n_filaments "
        "beyond " + std::to_string(n_filaments),
        scale_fine * b_center_target);
  }

  HelmholtzResult result;
  result.b_center = b_center_target;
  result.delta_b = scale_fine * b_center_target;
  result.current =
      b_center_target / b_center_raw * n_filaments * n_filaments;
  return result;
}

double helmholtz_center_field_ideal(double radius, double n_turns,
                                    double current,
                                    const PhysicalConstants& c) {
  if (!(radius > 0.0)) throw ValidationError("radius must be positive");
  return std::pow(0.8, 1.5) * c.mu0 * n_turns * current / radius *
         kTeslaToGauss;
}

double crosstalk_beta(const CoilGeometry& wire,
                      const Eigen::Vector3d& victim_point, double k_local,
                      double i_wire, double i_local,
                      const PhysicalConstants& c) {
  if (!(k_local > 0.0)) throw ValidationError("k_local must be positive");
  if (!(i_local > 0.0)) throw ValidationError("i_local must be positive");
  if (!(i_wire >= 0.0)) throw ValidationError("i_wire must be nonnegative");
  const Eigen::Vector3d b = field_at_point(wire, i_wire, victim_point, c);
  // Only the transverse (x, y) stray field drives spin transitions.
  return std::hypot(b.x(), b.y()) / (k_local * i_local);
}

CoilGeometry default_lo_wire(double lateral, double height, double length,
                             double loop_width) {
  if (!(lateral >= 0.0) || !(height >= 0.0) || !(length > 0.0) ||
      !(loop_width > 0.0))
    throw ValidationError(
        "lo wire length and loop width must be positive, offsets nonnegative");
  return rectangle_loop(
      Eigen::Vector3d(lateral + 0.5 * loop_width, 0.0, -height),
      0.5 * loop_width, 0.5 * length);
}

double estimate_resistance(double length, double width, double thickness,
                           double rho_300k) {
  if (!(length > 0.0) || !(width > 0.0) || !(thickness > 0.0) ||
      !(rho_300k > 0.0))
    throw ValidationError("resistance inputs must be positive");
  // 4x conductivity improvement at 4 K over room temperature.
  return (rho_300k / 4.0) * length / (width * thickness);
}

}  // namespace ccspec
