#pragma once

#include <utility>

#include "geometry.hpp"

namespace ppdm {

// Subtract the anchor row: the returned matrix has rank <= dimension and the
// anchor row of the input becomes the offset vector (frame with the anchor
// waypoint at the origin).
std::pair<MatrixXd, VectorXd> center_ppdm(const MatrixXd& d, int anchor_row = 0);

struct metric_upgrade_result {
  MatrixXd waypoints;      // m x N, anchor column exactly zero
  MatrixXd normals;        // m x K, unit columns
  double gram_min_eig = 0.0;  // smallest eigenvalue of the recovered metric factor
  int system_rank = 0;        // rank of the unit-norm least-squares system
};

// Rank-m factorization of the centered matrix followed by the linear solve
// for the metric factor that makes all normal columns unit length.
metric_upgrade_result metric_upgrade(const MatrixXd& c, int m, double tol = 1e-8);

struct reconstruction_result {
  configuration config;
  double ppdm_residual = 0.0;     // recomputed from config, not from algebra
  double gram_conditioning = 0.0;
  int system_rank = 0;
  bool underdetermined_metric = false;  // system_rank < m(m+1)/2
};

reconstruction_result reconstruct_configuration(const MatrixXd& d, int m, double tol = 1e-8,
                                                int anchor_row = 0);

}  // namespace ppdm
