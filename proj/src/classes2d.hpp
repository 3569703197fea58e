#pragma once

#include <optional>
#include <vector>

#include "geometry.hpp"

namespace ppdm {

// A reference configuration together with one provably distance-equivalent
// companion. Generators fill both sides; verification is up to the caller.
struct class_pair {
  configuration reference;
  configuration equivalent;
};

inline constexpr const char* kClassRank1Corridor = "Rank1Corridor";
inline constexpr const char* kClassRank2Parallelogram = "Rank2Parallelogram";
inline constexpr const char* kClassRank3LinearTrajectory = "Rank3LinearTrajectory";

// ---------------------------------------------------------------------------
// Rank-2 room map: walls in two direction classes (a parallelogram, possibly
// extended by parallel walls). The shear map [[a, b], [0, d]] keeps every wall
// normal unit-length; d is free, (a, b) are solved from the two base angles.
// ---------------------------------------------------------------------------

struct parallelogram_params {
  double phi1 = 0.0;
  double phi3 = 1.5707963267948966;
  double d = 0.6;
  // Sign branch for (a, b): index into (+,+), (+,-), (-,+), (-,-).
  // -1 picks the lexicographically smallest non-reflection solution.
  int branch = -1;
  // Extra parallel walls, each an index into the four base angles
  // {phi1, phi1+pi, phi3, phi3+pi}; appended after the base walls.
  std::vector<int> extra_walls;
  std::vector<double> offsets;  // one per wall (4 + extras)
  std::vector<Eigen::Vector2d> waypoints;
};

struct parallelogram_result {
  class_pair pair;
  double a = 0.0;
  double b = 0.0;
};

parallelogram_result gen_parallelogram_pair(const parallelogram_params& p);

// ---------------------------------------------------------------------------
// Rank-1 room: all walls parallel (an infinite corridor). The equivalent room
// is axis-aligned; waypoints keep their across-corridor coordinate and slide
// freely along it.
// ---------------------------------------------------------------------------

struct corridor_params {
  double a = 0.0;                // reference wall angle is atan(a) (+ s_k pi)
  std::vector<int> signs;        // s_k in {0,1}; default alternates 0,1,0,...
  std::vector<double> offsets;   // one per wall, K >= 2
  std::vector<Eigen::Vector2d> waypoints0;
  std::vector<double> free_coords;  // equivalent y per waypoint; default y0
};

class_pair gen_corridor_pair(const corridor_params& p);

// ---------------------------------------------------------------------------
// Rank-3 stacked system: arbitrary walls, both trajectories collinear through
// the origin. Wall angles of the companion follow from (a, b, c) and a sign
// choice per wall; waypoints are gamma multiples of fixed directions.
// ---------------------------------------------------------------------------

struct linear_trajectory2d_params {
  std::vector<double> wall_angles;  // reference angles, arbitrary
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  std::vector<int> signs;           // s_k in {-1,+1}; default all +1
  std::vector<double> offsets;
  std::vector<double> gammas;       // one per waypoint
};

class_pair gen_linear_trajectory_pair_2d(const linear_trajectory2d_params& p);

}  // namespace ppdm
