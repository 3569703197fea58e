#include "geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace ppdm {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kRankTol = 1e-9;

// Both orthogonal maximizers (proper and improper) of <Q, cross>.
std::array<MatrixXd, 2> procrustes_branches(const MatrixXd& cross) {
  Eigen::JacobiSVD<MatrixXd> svd(cross,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXd& u = svd.matrixU();
  const MatrixXd& v = svd.matrixV();
  MatrixXd q0 = u * v.transpose();
  VectorXd flip = VectorXd::Ones(cross.rows());
  flip(cross.rows() - 1) = -1.0;  // flip the least-significant direction
  MatrixXd q1 = u * flip.asDiagonal() * v.transpose();
  return {q0, q1};
}

// Residual of mapping configuration a by (q, t) onto configuration b.
double alignment_residual(const configuration& a, const configuration& b,
                          const MatrixXd& q, const VectorXd& t) {
  double worst = 0.0;
  for (int n = 0; n < a.waypoint_count(); ++n) {
    VectorXd d = q * a.waypoints[n] + t - b.waypoints[n];
    worst = std::max(worst, d.lpNorm<Eigen::Infinity>());
  }
  for (int k = 0; k < a.wall_count(); ++k) {
    VectorXd qn = q * a.planes[k].normal;
    worst = std::max(worst, (qn - b.planes[k].normal).lpNorm<Eigen::Infinity>());
    worst = std::max(worst,
                     std::abs(a.planes[k].offset + t.dot(qn) - b.planes[k].offset));
  }
  return worst;
}

void require_comparable(const configuration& a, const configuration& b) {
  validate(a);
  validate(b);
  require(a.dimension == b.dimension, errc::invalid_input,
          "configurations have different dimensions");
  require(a.wall_count() == b.wall_count(), errc::invalid_input,
          "configurations have different wall counts");
  require(a.waypoint_count() == b.waypoint_count(), errc::invalid_input,
          "configurations have different waypoint counts");
}

}  // namespace

MatrixXd configuration::normal_matrix() const {
  MatrixXd n(dimension, wall_count());
  for (int k = 0; k < wall_count(); ++k) n.col(k) = planes[k].normal;
  return n;
}

MatrixXd configuration::waypoint_matrix() const {
  MatrixXd w(dimension, waypoint_count());
  for (int i = 0; i < waypoint_count(); ++i) w.col(i) = waypoints[i];
  return w;
}

VectorXd configuration::offset_vector() const {
  VectorXd q(wall_count());
  for (int k = 0; k < wall_count(); ++k) q(k) = planes[k].offset;
  return q;
}

double configuration::bounding_radius() const {
  double r = 1.0;
  for (const auto& w : waypoints) r = std::max(r, w.norm());
  for (const auto& p : planes) r = std::max(r, std::abs(p.offset));
  return r;
}

void validate(const configuration& c) {
  require(c.dimension == 2 || c.dimension == 3, errc::invalid_input,
          "dimension must be 2 or 3");
  require(c.wall_count() >= 1, errc::invalid_input, "need at least one wall");
  require(c.waypoint_count() >= 1, errc::invalid_input,
          "need at least one waypoint");
  for (int k = 0; k < c.wall_count(); ++k) {
    const plane& p = c.planes[k];
    require(p.normal.size() == c.dimension, errc::invalid_input,
            "wall " + std::to_string(k + 1) + " has wrong dimension");
    require(std::abs(p.normal.norm() - 1.0) <= kUnitTol, errc::invalid_input,
            "wall " + std::to_string(k + 1) + " normal is not unit length");
  }
  for (int n = 0; n < c.waypoint_count(); ++n)
    require(c.waypoints[n].size() == c.dimension, errc::invalid_input,
            "waypoint " + std::to_string(n + 1) + " has wrong dimension");
}

double distance_from_tof(double tau_seconds, double speed) {
  require(tau_seconds >= 0.0, errc::invalid_input,
          "time of flight must be non-negative");
  require(speed > 0.0, errc::invalid_input, "propagation speed must be positive");
  return 0.5 * speed * tau_seconds;
}

double point_plane_distance(const plane& p, const VectorXd& point) {
  require(p.normal.size() == point.size(), errc::invalid_input,
          "plane and point dimensions differ");
  return p.offset - point.dot(p.normal);
}

MatrixXd compute_ppdm(const configuration& c) {
  validate(c);
  MatrixXd d(c.waypoint_count(), c.wall_count());
  for (int n = 0; n < c.waypoint_count(); ++n)
    for (int k = 0; k < c.wall_count(); ++k)
      d(n, k) = c.planes[k].offset - c.waypoints[n].dot(c.planes[k].normal);
  return d;
}

configuration apply_rigid_motion(const configuration& c, const rigid_motion& g) {
  validate(c);
  require(g.rotation.rows() == c.dimension && g.rotation.cols() == c.dimension &&
              g.translation.size() == c.dimension,
          errc::invalid_input, "motion dimension mismatch");
  MatrixXd gram = g.rotation.transpose() * g.rotation;
  require((gram - MatrixXd::Identity(c.dimension, c.dimension))
                  .lpNorm<Eigen::Infinity>() <= kUnitTol,
          errc::invalid_input, "rotation matrix is not orthogonal");
  configuration out;
  out.dimension = c.dimension;
  out.waypoints.reserve(c.waypoints.size());
  for (const auto& w : c.waypoints)
    out.waypoints.push_back(g.rotation * w + g.translation);
  out.planes.reserve(c.planes.size());
  for (const auto& p : c.planes) {
    VectorXd n = g.rotation * p.normal;
    out.planes.push_back({n, p.offset + g.translation.dot(n)});
  }
  return out;
}

rigid_motion random_rigid_motion(int dimension, rng& r) {
  MatrixXd gauss(dimension, dimension);
  for (int i = 0; i < dimension; ++i)
    for (int j = 0; j < dimension; ++j) gauss(i, j) = r.normal();
  Eigen::HouseholderQR<MatrixXd> qr(gauss);
  MatrixXd q = qr.householderQ();
  MatrixXd rd = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dimension; ++i)
    if (rd(i, i) < 0) q.col(i) *= -1.0;  // make the factorization unique
  if (r.coin()) q.col(0) *= -1.0;        // reflections allowed
  VectorXd t(dimension);
  for (int i = 0; i < dimension; ++i) t(i) = 2.0 * r.normal();
  return {q, t};
}

equivalence_residual_t equivalence_residual(const configuration& a,
                                            const configuration& b) {
  require_comparable(a, b);
  const VectorXd ra1 = a.waypoints[0];
  const VectorXd rb1 = b.waypoints[0];
  double coupling = 0.0;
  for (int n = 0; n < a.waypoint_count(); ++n)
    for (int k = 0; k < a.wall_count(); ++k) {
      double lhs = (a.waypoints[n] - ra1).dot(a.planes[k].normal);
      double rhs = (b.waypoints[n] - rb1).dot(b.planes[k].normal);
      coupling = std::max(coupling, std::abs(lhs - rhs));
    }
  double offset_gap = 0.0;
  for (int k = 0; k < a.wall_count(); ++k) {
    double qa = a.planes[k].offset - ra1.dot(a.planes[k].normal);
    double qb = b.planes[k].offset - rb1.dot(b.planes[k].normal);
    offset_gap = std::max(offset_gap, std::abs(qa - qb));
  }
  return {coupling, offset_gap};
}

congruence_report congruence_details(const configuration& a,
                                     const configuration& b) {
  require_comparable(a, b);
  const int m = a.dimension;
  const MatrixXd wa = a.waypoint_matrix();
  const MatrixXd wb = b.waypoint_matrix();
  const MatrixXd na = a.normal_matrix();
  const MatrixXd nb = b.normal_matrix();
  const VectorXd ca = wa.rowwise().mean();
  const VectorXd cb = wb.rowwise().mean();
  const MatrixXd wat = wa.colwise() - ca;
  const MatrixXd wbt = wb.colwise() - cb;

  congruence_report rep;

  // Full congruence: waypoint-driven alignment, then a joint fallback that
  // also pulls on the normals when the waypoints alone do not pin the
  // rotation (collinear/coplanar trajectories).
  double best = std::numeric_limits<double>::infinity();
  std::vector<MatrixXd> crosses;
  if (a.waypoint_count() >= 2) crosses.push_back(wbt * wat.transpose());
  crosses.push_back(wbt * wat.transpose() + nb * na.transpose());
  for (const MatrixXd& cross : crosses)
    for (const MatrixXd& q : procrustes_branches(cross)) {
      VectorXd t = cb - q * ca;
      best = std::min(best, alignment_residual(a, b, q, t));
    }
  rep.residual = best;

  // Room-only alignment plus the trajectory mismatch within the motions that
  // keep the room fixed. Walls only pin the component of a motion inside the
  // span of their normals; the orthogonal complement can still spin/slide.
  Eigen::JacobiSVD<MatrixXd> nsvd(nb, Eigen::ComputeFullU);
  const VectorXd& sig = nsvd.singularValues();
  int span_rank = 0;
  for (int i = 0; i < sig.size(); ++i)
    if (sig(i) > kRankTol * sig(0)) ++span_rank;
  const int free_dim = m - span_rank;
  const MatrixXd span_basis = nsvd.matrixU().leftCols(span_rank);
  const MatrixXd free_basis = nsvd.matrixU().rightCols(free_dim);

  double best_room = std::numeric_limits<double>::infinity();
  double best_traj = std::numeric_limits<double>::infinity();
  for (const MatrixXd& q : procrustes_branches(nb * na.transpose())) {
    // Translation from the offset constraints, minimum-norm least squares.
    MatrixXd rows = (q * na).transpose();
    VectorXd rhs = b.offset_vector() - a.offset_vector();
    VectorXd t =
        rows.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

    double room = 0.0;
    for (int k = 0; k < a.wall_count(); ++k) {
      VectorXd qn = q * a.planes[k].normal;
      room = std::max(room, (qn - b.planes[k].normal).lpNorm<Eigen::Infinity>());
      room = std::max(
          room, std::abs(a.planes[k].offset + t.dot(qn) - b.planes[k].offset));
    }

    double traj = 0.0;
    if (free_dim == 0) {
      for (int n = 0; n < a.waypoint_count(); ++n)
        traj = std::max(traj, (q * a.waypoints[n] + t - b.waypoints[n])
                                  .lpNorm<Eigen::Infinity>());
    } else {
      // Pinned coordinates are fixed; on the free complement the best
      // orthogonal spin + slide is fitted independently.
      MatrixXd moved = (q * wa).colwise() + t;
      MatrixXd pinned = span_basis.transpose() * (moved - wb);
      MatrixXd fa = free_basis.transpose() * moved;
      MatrixXd fb = free_basis.transpose() * wb;
      VectorXd fam = fa.rowwise().mean();
      VectorXd fbm = fb.rowwise().mean();
      MatrixXd cross =
          (fb.colwise() - fbm) * (fa.colwise() - fam).transpose();
      double sub_best = std::numeric_limits<double>::infinity();
      for (const MatrixXd& w : procrustes_branches(cross)) {
        VectorXd shift = fbm - w * fam;
        double worst = 0.0;
        for (int n = 0; n < a.waypoint_count(); ++n) {
          double pin = span_rank > 0
                           ? pinned.col(n).lpNorm<Eigen::Infinity>()
                           : 0.0;
          double fre =
              (w * fa.col(n) + shift - fb.col(n)).lpNorm<Eigen::Infinity>();
          worst = std::max(worst, std::max(pin, fre));
        }
        sub_best = std::min(sub_best, worst);
      }
      traj = sub_best;
    }

    if (room < best_room - 1e-12) {
      best_room = room;
      best_traj = traj;
    } else if (room <= best_room + 1e-12) {
      best_room = std::min(best_room, room);
      best_traj = std::min(best_traj, traj);
    }
  }
  rep.room_residual = best_room;
  rep.trajectory_mismatch = best_traj;
  return rep;
}

double congruence_residual(const configuration& a, const configuration& b) {
  return congruence_details(a, b).residual;
}

}  // namespace ppdm
