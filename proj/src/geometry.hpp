#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ppdm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Oriented wall: unit normal plus signed offset from the origin. Orientation
// matters — flipping (normal, offset) flips every signed distance against it.
struct plane {
  VectorXd normal;
  double offset = 0.0;
};

// Room (ordered walls) plus trajectory (ordered waypoints) in dimension 2 or 3.
struct configuration {
  int dimension = 0;
  std::vector<plane> planes;
  std::vector<VectorXd> waypoints;

  int wall_count() const { return static_cast<int>(planes.size()); }
  int waypoint_count() const { return static_cast<int>(waypoints.size()); }

  MatrixXd normal_matrix() const;    // m x K, one column per wall
  MatrixXd waypoint_matrix() const;  // m x N, one column per waypoint
  VectorXd offset_vector() const;    // K

  // max(1, largest waypoint norm, largest |offset|); scales tolerances.
  double bounding_radius() const;
};

struct rigid_motion {
  MatrixXd rotation;  // orthogonal, det +/-1 (reflections allowed)
  VectorXd translation;
};

// Throws errc::invalid_input on dimension mismatches or non-unit normals.
void validate(const configuration& c);

double distance_from_tof(double tau_seconds, double speed);

// Signed distance offset - <point, normal>.
double point_plane_distance(const plane& p, const VectorXd& point);

// N x K matrix of signed distances; row = waypoint, column = wall.
MatrixXd compute_ppdm(const configuration& c);

// Waypoints x -> Qx + t; walls (n, q) -> (Qn, q + <t, Qn>). Distances are
// preserved exactly up to roundoff.
configuration apply_rigid_motion(const configuration& c, const rigid_motion& g);

rigid_motion random_rigid_motion(int dimension, class rng& r);

// Residuals of the coupling condition two configurations with equal distance
// matrices must satisfy once each is translated so its first waypoint sits at
// the origin: the stacked trajectories must annihilate the stacked normals,
// and the offset vectors must agree.
struct equivalence_residual_t {
  double coupling;    // max |<r0_n, n0_k> - <r_n, n_k>| after translation
  double offset_gap;  // max_k |q0_k - q_k| after translation
};
equivalence_residual_t equivalence_residual(const configuration& a,
                                            const configuration& b);

// Congruence testing under index correspondence (walls and waypoints are
// matched by position; the distance matrix fixes the labeling).
struct congruence_report {
  // Best joint alignment of waypoints and walls over rotations, reflections
  // and translations; infinity norm over waypoint and wall mismatches.
  double residual = 0.0;
  // Best wall-only alignment, ignoring waypoints.
  double room_residual = 0.0;
  // Waypoint mismatch minimized over the motions that keep the rooms
  // aligned (sliding/spinning along directions the walls do not pin down).
  double trajectory_mismatch = 0.0;
};

congruence_report congruence_details(const configuration& a,
                                     const configuration& b);
double congruence_residual(const configuration& a, const configuration& b);

}  // namespace ppdm
