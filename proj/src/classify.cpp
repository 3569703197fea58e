#include "classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace ppdm {

namespace {

// Greedy grouping of unit vectors into direction classes modulo sign; two
// vectors share a class when their cross component is below ctol.
int direction_class_count(const std::vector<Eigen::Vector2d>& dirs, double ctol) {
  std::vector<Eigen::Vector2d> reps;
  for (const auto& d : dirs) {
    bool placed = false;
    for (const auto& r : reps)
      if (std::abs(d.x() * r.y() - d.y() * r.x()) <= ctol) {
        placed = true;
        break;
      }
    if (!placed) reps.push_back(d);
  }
  return static_cast<int>(reps.size());
}

Eigen::VectorXd rank3_residuals(const Eigen::Matrix3Xd& normals, const rank3_map& t) {
  const Eigen::Matrix3d tm = t.matrix();
  Eigen::VectorXd r(normals.cols());
  for (int k = 0; k < normals.cols(); ++k) r(k) = (tm * normals.col(k)).squaredNorm() - 1.0;
  return r;
}

Eigen::MatrixXd rank3_jacobian(const Eigen::Matrix3Xd& normals, const rank3_map& t) {
  const Eigen::Matrix3d tm = t.matrix();
  Eigen::MatrixXd j(normals.cols(), 6);
  for (int k = 0; k < normals.cols(); ++k) {
    const Eigen::Vector3d n = normals.col(k);
    const Eigen::Vector3d v = tm * n;
    j(k, 0) = 2.0 * v(0) * n(0);  // a
    j(k, 1) = 2.0 * v(0) * n(1);  // b
    j(k, 2) = 2.0 * v(0) * n(2);  // c
    j(k, 3) = 2.0 * v(1) * n(1);  // e
    j(k, 4) = 2.0 * v(1) * n(2);  // f
    j(k, 5) = 2.0 * v(2) * n(2);  // i
  }
  return j;
}

rank3_map map_from_params(const Eigen::Matrix<double, 6, 1>& p) {
  return {p(0), p(1), p(2), p(3), p(4), p(5)};
}

Eigen::Matrix<double, 6, 1> params_from_map(const rank3_map& t) {
  Eigen::Matrix<double, 6, 1> p;
  p << t.a, t.b, t.c, t.e, t.f, t.i;
  return p;
}

double sign_diagonal_distance(const rank3_map& t) {
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < 8; ++mask) {
    const double sa = (mask & 1) ? -1.0 : 1.0;
    const double se = (mask & 2) ? -1.0 : 1.0;
    const double si = (mask & 4) ? -1.0 : 1.0;
    const double dist =
        std::max({std::abs(t.a - sa), std::abs(t.e - se), std::abs(t.i - si), std::abs(t.b),
                  std::abs(t.c), std::abs(t.f)});
    best = std::min(best, dist);
  }
  return best;
}

// Levenberg-Marquardt on the squared-norm residuals; returns the final point.
Eigen::Matrix<double, 6, 1> lm_minimize(const Eigen::Matrix3Xd& normals,
                                        Eigen::Matrix<double, 6, 1> p) {
  double lambda = 1e-3;
  double cost = rank3_residuals(normals, map_from_params(p)).squaredNorm();
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd r = rank3_residuals(normals, map_from_params(p));
    if (r.cwiseAbs().maxCoeff() < 1e-13) break;
    const Eigen::MatrixXd j = rank3_jacobian(normals, map_from_params(p));
    const Eigen::Matrix<double, 6, 6> jtj = j.transpose() * j;
    const Eigen::Matrix<double, 6, 1> g = j.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 24; ++tries) {
      Eigen::Matrix<double, 6, 6> lhs = jtj;
      lhs.diagonal().array() += lambda;
      const Eigen::Matrix<double, 6, 1> delta = lhs.ldlt().solve(-g);
      const Eigen::Matrix<double, 6, 1> cand = p + delta;
      const double cand_cost = rank3_residuals(normals, map_from_params(cand)).squaredNorm();
      if (cand_cost < cost) {
        p = cand;
        cost = cand_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 3.0;
      if (lambda > 1e12) break;
    }
    if (!stepped) break;
  }
  return p;
}

configuration induced_companion(const configuration& c, const rank3_map& t) {
  const Eigen::Matrix3d tm = t.matrix();
  const Eigen::Matrix3d t_invT = tm.transpose().inverse();
  configuration out;
  out.dimension = 3;
  for (const auto& pl : c.planes)
    out.planes.push_back({(tm * Eigen::Vector3d(pl.normal)).normalized(), pl.offset});
  for (const auto& w : c.waypoints) out.waypoints.push_back(t_invT * Eigen::Vector3d(w));
  return out;
}

struct acceptance {
  bool ok = false;
  double residual = 0.0;
  double congruence = 0.0;
};

acceptance evaluate_candidate(const configuration& c, const Eigen::Matrix3Xd& normals,
                              const rank3_map& t, double tol) {
  acceptance a;
  a.residual = rank3_residuals(normals, t).cwiseAbs().maxCoeff();
  if (a.residual > tol) return a;
  if (std::abs(t.a * t.e * t.i) < 1e-6) return a;
  if (sign_diagonal_distance(t) < 0.05) return a;
  a.congruence = congruence_residual(c, induced_companion(c, t));
  a.ok = a.congruence >= 1e-3;
  return a;
}

// ---------------------------------------------------------------------------
// Two-parallel-sets pattern: normals split into two nonempty groups, each
// orthogonal to its own line. Candidate lines come from normal cross
// products; the leftover group is checked for a shared orthogonal direction.
// ---------------------------------------------------------------------------

bool leftover_has_common_line(const Eigen::Matrix3Xd& leftover, double tol, double* residual) {
  if (leftover.cols() == 0) {
    *residual = 0.0;
    return true;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(leftover, Eigen::ComputeFullU);
  const Eigen::Vector3d v = svd.matrixU().col(2);
  *residual = (leftover.transpose() * v).cwiseAbs().maxCoeff();
  return *residual <= tol;
}

bool two_parallel_sets_pattern(const Eigen::Matrix3Xd& normals, double tol, double* evidence) {
  const int K = static_cast<int>(normals.cols());
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) {
      Eigen::Vector3d u = normals.col(i).cross(normals.col(j));
      if (u.norm() < 1e-6) continue;
      u.normalize();
      std::vector<int> rest;
      double in_set = 0.0;
      for (int k = 0; k < K; ++k) {
        const double dot = std::abs(normals.col(k).dot(u));
        if (dot <= tol)
          in_set = std::max(in_set, dot);
        else
          rest.push_back(k);
      }
      if (rest.empty()) continue;  // single line: prism pattern, not this one
      Eigen::Matrix3Xd leftover(3, static_cast<int>(rest.size()));
      for (size_t k = 0; k < rest.size(); ++k) leftover.col(static_cast<int>(k)) = normals.col(rest[k]);
      double res = 0.0;
      if (leftover_has_common_line(leftover, tol, &res)) {
        *evidence = std::max(in_set, res);
        return true;
      }
    }
  return false;
}

}  // namespace

int affine_rank(const std::vector<VectorXd>& points, double tol) {
  require(!points.empty(), errc::invalid_input, "need at least one point");
  const int m = static_cast<int>(points[0].size());
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd x(m, n);
  for (int j = 0; j < n; ++j) x.col(j) = points[static_cast<size_t>(j)];
  const Eigen::VectorXd mean = x.rowwise().mean();
  x.colwise() -= mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++rank;
  return rank;
}

normal_structure_t normal_structure(const std::vector<plane>& planes, double tol) {
  require(!planes.empty(), errc::invalid_input, "need at least one plane");
  const int m = static_cast<int>(planes[0].normal.size());
  const int K = static_cast<int>(planes.size());
  Eigen::MatrixXd n(m, K);
  for (int k = 0; k < K; ++k) n.col(k) = planes[static_cast<size_t>(k)].normal;

  normal_structure_t out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(n, Eigen::ComputeFullU);
  const Eigen::VectorXd s = svd.singularValues();
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++out.rank;
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j)
      if (std::abs(n.col(i).dot(n.col(j))) >= 1.0 - tol) out.parallel_pairs.emplace_back(i, j);
  if (out.rank == m - 1) out.common_direction = svd.matrixU().col(m - 1);
  return out;
}

std::optional<rank3_map> rank3_manifold_step(const Eigen::Matrix3Xd& normals, const rank3_map& t,
                                             double step) {
  const Eigen::MatrixXd j = rank3_jacobian(normals, t);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > std::max(1e-10, 1e-9 * smax)) ++rank;
  if (rank >= 6) return std::nullopt;  // locally rigid

  Eigen::Matrix<double, 6, 1> dir = svd.matrixV().col(5);
  for (int k = 0; k < 6; ++k) {
    if (std::abs(dir(k)) > 1e-8) {
      if (dir(k) < 0.0) dir = -dir;
      break;
    }
  }
  Eigen::Matrix<double, 6, 1> p = params_from_map(t) + step * dir;
  // Gauss-Newton correction back onto the manifold.
  for (int it = 0; it < 25; ++it) {
    const Eigen::VectorXd r = rank3_residuals(normals, map_from_params(p));
    if (r.cwiseAbs().maxCoeff() <= 1e-11) break;
    const Eigen::MatrixXd jc = rank3_jacobian(normals, map_from_params(p));
    const Eigen::Matrix<double, 6, 1> delta =
        jc.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);
    p += delta;
  }
  if (rank3_residuals(normals, map_from_params(p)).cwiseAbs().maxCoeff() > 1e-9)
    return std::nullopt;
  if ((p - params_from_map(t)).cwiseAbs().maxCoeff() < std::abs(step) / 4.0)
    return std::nullopt;  // corrector pulled the step back; nothing to walk
  return map_from_params(p);
}

std::optional<rank3_solution> rank3_feasibility_solve(const configuration& c, int restarts,
                                                      double tol, std::uint64_t seed) {
  require(c.dimension == 3, errc::invalid_input, "solver expects a 3-d configuration");
  const Eigen::Matrix3Xd normals = c.normal_matrix();
  rng root(seed);

  auto try_accept = [&](const rank3_map& t) -> std::optional<rank3_solution> {
    const acceptance a = evaluate_candidate(c, normals, t, tol);
    if (a.ok) return rank3_solution{t, a.residual, a.congruence};
    return std::nullopt;
  };

  for (int restart = 0; restart < restarts; ++restart) {
    rng r = root.fork("restart-" + std::to_string(restart));
    Eigen::Matrix<double, 6, 1> p0;
    p0 << (r.coin() ? 1.0 : -1.0) + 0.5 * r.normal(), 0.5 * r.normal(), 0.5 * r.normal(),
        (r.coin() ? 1.0 : -1.0) + 0.5 * r.normal(), 0.5 * r.normal(),
        (r.coin() ? 1.0 : -1.0) + 0.5 * r.normal();
    const Eigen::Matrix<double, 6, 1> p = lm_minimize(normals, p0);
    const rank3_map t = map_from_params(p);
    if (rank3_residuals(normals, t).cwiseAbs().maxCoeff() > tol) continue;
    if (auto sol = try_accept(t)) return sol;
    // Converged onto the feasible set but at an excluded point (typically a
    // plain reflection). Walk the feasible manifold away from it.
    for (double dir : {1.0, -1.0}) {
      rank3_map cur = t;
      for (int step = 0; step < 40; ++step) {
        auto next = rank3_manifold_step(normals, cur, dir * 0.08);
        if (!next) break;
        cur = *next;
        if (auto sol = try_accept(cur)) return sol;
      }
    }
  }
  return std::nullopt;
}

classification_report classify(const configuration& c, double tol, int restarts,
                               std::uint64_t seed) {
  validate(c);
  classification_report rep;
  rep.waypoint_affine_rank = affine_rank(c.waypoints, tol);
  const normal_structure_t ns = normal_structure(c.planes, tol);
  rep.normal_rank = ns.rank;

  auto match = [&](const std::string& id, std::map<std::string, double> evidence) {
    rep.matched_classes.push_back({id, std::move(evidence)});
  };

  if (c.dimension == 2) {
    std::vector<Eigen::Vector2d> dirs;
    for (const auto& pl : c.planes) dirs.push_back(pl.normal);
    const int classes = direction_class_count(dirs, std::max(tol, 1e-9));
    rep.details["direction_classes"] = classes;
    if (classes == 1)
      match(kClassRank1Corridor, {{"direction_classes", 1.0}, {"normal_rank", ns.rank}});
    else if (classes == 2)
      match(kClassRank2Parallelogram, {{"direction_classes", 2.0}});
    if (rep.waypoint_affine_rank <= 1)
      match(kClassRank3LinearTrajectory,
            {{"waypoint_affine_rank", rep.waypoint_affine_rank}});
  } else {
    const int K = c.wall_count();
    if (K < 6) match("TooFewWalls", {{"wall_count", static_cast<double>(K)}});
    if (rep.waypoint_affine_rank <= 1)
      match(kClassRank5LinearTrajectory,
            {{"waypoint_affine_rank", rep.waypoint_affine_rank}});
    if (rep.waypoint_affine_rank <= 2)
      match(kClassRank4PlanarTrajectory,
            {{"waypoint_affine_rank", rep.waypoint_affine_rank}});

    if (ns.rank == 1) {
      match(kClassRank1Corridor3D, {{"normal_rank", 1.0}});
    } else if (ns.rank == 2) {
      match(kClassRank2Prism, {{"normal_rank", 2.0}});
      // Within the span, two direction classes make it a parallelepiped.
      Eigen::MatrixXd n(3, K);
      for (int k = 0; k < K; ++k) n.col(k) = c.planes[static_cast<size_t>(k)].normal;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(n, Eigen::ComputeFullU);
      const Eigen::MatrixXd basis = svd.matrixU().leftCols(2);
      std::vector<Eigen::Vector2d> coords;
      for (int k = 0; k < K; ++k) coords.push_back(basis.transpose() * n.col(k));
      const int classes = direction_class_count(coords, std::max(tol, 1e-9));
      rep.details["span_direction_classes"] = classes;
      if (classes <= 2) match(kClassRank2Parallelepiped, {{"span_direction_classes", classes}});
    } else {
      double tps_evidence = 0.0;
      if (two_parallel_sets_pattern(c.normal_matrix(), std::max(tol, 1e-9), &tps_evidence))
        match(kClassRank3TwoParallelSets, {{"max_line_residual", tps_evidence}});
      if (auto sol = rank3_feasibility_solve(c, restarts, tol, seed)) {
        match(kClassRank3Misc,
              {{"solver_residual", sol->residual}, {"companion_congruence", sol->congruence}});
        rep.details["solver_residual"] = sol->residual;
      }
    }
  }

  rep.ambiguous = !rep.matched_classes.empty();
  return rep;
}

}  // namespace ppdm
