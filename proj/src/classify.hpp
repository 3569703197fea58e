#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classes3d.hpp"
#include "geometry.hpp"

namespace ppdm {

// Rank of the centered point matrix; singular values below tol * largest are
// treated as zero.
int affine_rank(const std::vector<VectorXd>& points, double tol);

struct normal_structure_t {
  int rank = 0;
  std::vector<std::pair<int, int>> parallel_pairs;  // |<n_i, n_j>| >= 1 - tol
  // Set when rank == m - 1: the direction every normal is orthogonal to.
  std::optional<VectorXd> common_direction;
};

normal_structure_t normal_structure(const std::vector<plane>& planes, double tol);

struct rank3_solution {
  rank3_map t;
  double residual = 0.0;            // max |  ||T n_k||^2 - 1  |
  double congruence = 0.0;          // distance of the induced companion from a rigid copy
};

// Search for a non-trivial unit-norm-preserving upper-triangular map for the
// room's normals. Sign-diagonal maps (plain reflections) and maps whose
// induced companion is congruent to the input do not count. Deterministic for
// a fixed seed; absence is a value, not an error.
std::optional<rank3_solution> rank3_feasibility_solve(const configuration& c, int restarts = 128,
                                                      double tol = 1e-8, std::uint64_t seed = 0);

// One predictor-corrector step along the manifold { T : ||T n_k|| = 1 for all
// k } through t. step is signed; returns nullopt if the correction stalls or
// the manifold is locally rigid.
std::optional<rank3_map> rank3_manifold_step(const Eigen::Matrix3Xd& normals, const rank3_map& t,
                                             double step);

struct matched_class {
  std::string class_id;
  std::map<std::string, double> evidence;
};

struct classification_report {
  bool ambiguous = false;
  std::vector<matched_class> matched_classes;
  int waypoint_affine_rank = 0;
  int normal_rank = 0;
  std::map<std::string, double> details;
};

classification_report classify(const configuration& c, double tol = 1e-8, int restarts = 128,
                               std::uint64_t seed = 0);

}  // namespace ppdm
