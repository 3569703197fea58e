#pragma once

#include <optional>
#include <vector>

#include "classes2d.hpp"
#include "geometry.hpp"

namespace ppdm {

inline constexpr const char* kClassRank1Corridor3D = "Rank1Corridor3D";
inline constexpr const char* kClassRank2Parallelepiped = "Rank2Parallelepiped";
inline constexpr const char* kClassRank2Prism = "Rank2Prism";
inline constexpr const char* kClassRank3Misc = "Rank3Misc";
inline constexpr const char* kClassRank3TwoParallelSets = "Rank3TwoParallelSets";
inline constexpr const char* kClassRank4PlanarTrajectory = "Rank4PlanarTrajectory";
inline constexpr const char* kClassRank5LinearTrajectory = "Rank5LinearTrajectory";

Eigen::Vector3d spherical_normal(double theta, double phi);

// ---------------------------------------------------------------------------
// Rank-1: all walls parallel, normals along (1, a, b) up to sign. Equivalent
// room is axis-aligned; waypoints keep one coordinate, slide in the other two.
// ---------------------------------------------------------------------------

struct corridor3d_params {
  double a = 0.0;
  double b = 0.0;
  std::vector<int> signs;       // s_k in {0,1}; default alternates
  std::vector<double> offsets;  // K >= 2
  std::vector<Eigen::Vector3d> waypoints0;
  std::vector<Eigen::Vector2d> free_yz;  // default (y0, z0) per waypoint
};

class_pair gen_corridor3d_pair(const corridor3d_params& p);

// ---------------------------------------------------------------------------
// Rank-2 with two azimuth classes: a (possibly tilted) parallelepiped of
// walls parallel to one line. (c, d) are solved from the two base azimuths;
// f is the free parameter; (a, b) tilt the reference walls (0 = upright).
// ---------------------------------------------------------------------------

struct parallelepiped_params {
  double phi1 = 0.0;
  double phi3 = 1.5707963267948966;
  double f = 0.6;
  double a = 0.0;
  double b = 0.0;
  int branch = 0;  // sign pair for the (c, d) solve, index into (+,+),(+,-),(-,+),(-,-)
  std::vector<int> extra_walls;  // indices into the four base azimuths
  std::vector<double> offsets;
  std::vector<Eigen::Vector3d> waypoints0;
  std::vector<double> free_z;  // default z0 per waypoint
};

struct parallelepiped_result {
  class_pair pair;
  double c = 0.0;
  double d = 0.0;
};

parallelepiped_result gen_parallelepiped_pair(const parallelepiped_params& p);

// ---------------------------------------------------------------------------
// Rank-2, arbitrary azimuths: a prismatic room. The normal map factors into a
// rotation, so both rooms are congruent; trajectories differ by sliding along
// the prism axis (a, b, -1)/L.
// ---------------------------------------------------------------------------

struct prism_params {
  double a = 1.0;
  double b = 0.0;
  int sign_c = 1;
  int sign_f = 1;
  int sign_r = 1;  // axis-image sign; flipped internally if needed to keep det > 0
  std::vector<double> wall_azimuths;
  std::vector<double> offsets;
  std::vector<Eigen::Vector3d> waypoints0;
  std::vector<double> slide;  // per-waypoint displacement along the axis
};

struct prism_result {
  class_pair pair;
  Eigen::Matrix3d rotation;
  double c = 0.0, d = 0.0, f = 0.0;
};

prism_result gen_prism_pair(const prism_params& p);

// ---------------------------------------------------------------------------
// Rank-3, generic upper-triangular map. For each azimuth the unit-length
// condition on the mapped normal is a quadratic in cos(2 theta); valid
// inclinations come in antipodal pairs [t1, t1+pi, t2, t2+pi].
// ---------------------------------------------------------------------------

struct rank3_map {
  double a = 1.0, b = 0.0, c = 0.0;
  double e = 1.0, f = 0.0;
  double i = 1.0;

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d t;
    t << a, b, c, 0.0, e, f, 0.0, 0.0, i;
    return t;
  }
};

// All theta with || T n(theta, phi) || = 1, ordered as antipodal pairs.
// Empty when the quadratic has no usable root; nullopt when the condition
// holds identically in theta (the map preserves the whole vertical circle).
std::optional<std::vector<double>> rank3_theta_roots(const rank3_map& t, double phi);

struct rank3_params {
  int alpha = 1;  // walls generated per azimuth, 1..4
  std::vector<double> azimuths;
  // One entry per azimuth. alpha=1: root index; alpha=2: antipodal pair
  // index; alpha=3: excluded root index; alpha=4: ignored.
  std::vector<int> branch_choices;
  rank3_map t;
  std::vector<double> offsets;  // one per generated wall (alpha * azimuths)
  std::vector<Eigen::Vector3d> waypoints0;
};

class_pair gen_rank3_pair(const rank3_params& p);

// ---------------------------------------------------------------------------
// Rank-3 special case: the admissible azimuths collapse to two values, so the
// walls split into two sets, each parallel to its own line; inclinations are
// free. Roots of the azimuth condition, exposed for reuse.
// ---------------------------------------------------------------------------

struct tps_roots {
  double z1 = 0.0, z2 = 0.0;
  // phis[g] = the two antipodal azimuths for group g (differ by pi exactly).
  double phis[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

tps_roots two_parallel_sets_roots(double a, double b, double e);

struct two_parallel_sets_params {
  double a = 2.0;
  double b = 2.0;
  double e = 1.0;
  int i = 1;  // +/- 1
  std::vector<double> inclinations;   // theta0 per wall, arbitrary
  std::vector<int> set_assignment;    // 0 or 1 per wall
  std::vector<int> antipodal;         // 0 or 1 per wall; default 0
  std::vector<double> offsets;
  std::vector<Eigen::Vector3d> waypoints0;
};

class_pair gen_two_parallel_sets_pair(const two_parallel_sets_params& p);

// ---------------------------------------------------------------------------
// Rank-4: arbitrary room, both trajectories planar through the origin. The
// equivalent normal is solved per wall from a scalar quadratic.
// ---------------------------------------------------------------------------

struct planar_trajectory_params {
  std::vector<Eigen::Vector2d> reference_walls;  // (theta0, phi0) per wall
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double e = 0.0, f = 0.0, g = 0.0, h = 0.0;
  std::vector<int> root_bits;  // 0/1 per wall; default 0
  std::vector<double> offsets;
  std::vector<Eigen::Vector2d> gammas;  // (gamma1, gamma2) per waypoint
};

class_pair gen_planar_trajectory_pair(const planar_trajectory_params& p);

// ---------------------------------------------------------------------------
// Rank-5: arbitrary room, both trajectories collinear through the origin.
// Caller picks the equivalent azimuths; inclinations follow.
// ---------------------------------------------------------------------------

struct linear_trajectory3d_params {
  std::vector<Eigen::Vector2d> reference_walls;  // (theta0, phi0) per wall
  std::vector<double> equivalent_azimuths;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 1.0;
  std::vector<int> signs;  // s_k in {-1,+1}; default +1
  std::vector<double> offsets;
  std::vector<double> gammas;
  // Optional: explicit reference waypoints; must be multiples of (c, d, e).
  std::vector<Eigen::Vector3d> waypoints0;
};

class_pair gen_linear_trajectory3d_pair(const linear_trajectory3d_params& p);

}  // namespace ppdm
