#include "classes2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppdm {

namespace {

Eigen::Vector2d unit2(double phi) { return {std::cos(phi), std::sin(phi)}; }

configuration make_config2(const Eigen::Matrix2Xd& normals, const std::vector<double>& offsets,
                           const Eigen::Matrix2Xd& waypoints) {
  configuration c;
  c.dimension = 2;
  for (int k = 0; k < normals.cols(); ++k) {
    Eigen::Vector2d n = normals.col(k).normalized();
    c.planes.push_back({n, offsets[static_cast<size_t>(k)]});
  }
  for (int n = 0; n < waypoints.cols(); ++n) c.waypoints.push_back(waypoints.col(n));
  validate(c);
  return c;
}

bool is_reflection2(const Eigen::Matrix2d& t) {
  // Orthogonal with det -1; the companion would be a mirrored copy, not a
  // genuinely different room.
  if ((t.transpose() * t - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > 1e-9) return false;
  return t.determinant() < 0.0;
}

}  // namespace

parallelogram_result gen_parallelogram_pair(const parallelogram_params& p) {
  require(std::abs(std::sin(p.phi3 - p.phi1)) > 1e-9, errc::degenerate_class_parameters,
          "base angles phi1 and phi3 are parallel; use the corridor generator");

  const double r1 = 1.0 - p.d * p.d * std::sin(p.phi1) * std::sin(p.phi1);
  const double r3 = 1.0 - p.d * p.d * std::sin(p.phi3) * std::sin(p.phi3);
  if (r1 < 0.0)
    fail(errc::infeasible_parameters, "no real solution at phi1: d^2 sin^2(phi1) exceeds 1");
  if (r3 < 0.0)
    fail(errc::infeasible_parameters, "no real solution at phi3: d^2 sin^2(phi3) exceeds 1");

  Eigen::Matrix2d m;
  m << std::cos(p.phi1), std::sin(p.phi1), std::cos(p.phi3), std::sin(p.phi3);
  const Eigen::Matrix2d m_inv = m.inverse();

  struct candidate {
    double a, b;
    bool reflection;
  };
  std::vector<candidate> cands;
  for (int s1 : {1, -1})
    for (int s3 : {1, -1}) {
      Eigen::Vector2d uv(s1 * std::sqrt(r1), s3 * std::sqrt(r3));
      Eigen::Vector2d ab = m_inv * uv;
      Eigen::Matrix2d t;
      t << ab(0), ab(1), 0.0, p.d;
      cands.push_back({ab(0), ab(1), is_reflection2(t)});
    }

  int pick = p.branch;
  if (pick < 0) {
    pick = -1;
    for (int i = 0; i < 4; ++i) {
      if (cands[static_cast<size_t>(i)].reflection) continue;
      if (pick < 0 || cands[static_cast<size_t>(i)].a < cands[static_cast<size_t>(pick)].a ||
          (cands[static_cast<size_t>(i)].a == cands[static_cast<size_t>(pick)].a &&
           cands[static_cast<size_t>(i)].b < cands[static_cast<size_t>(pick)].b))
        pick = i;
    }
    require(pick >= 0, errc::degenerate_class_parameters,
            "every sign branch yields a reflection; the companion would be a mirror image");
  } else {
    require(pick < 4, errc::invalid_input, "branch index must be in 0..3 (or -1 for automatic)");
    require(!cands[static_cast<size_t>(pick)].reflection, errc::degenerate_class_parameters,
            "selected branch yields a reflection; the companion would be a mirror image");
  }
  const double a = cands[static_cast<size_t>(pick)].a;
  const double b = cands[static_cast<size_t>(pick)].b;

  Eigen::Matrix2d t;
  t << a, b, 0.0, p.d;
  require(std::abs(a * p.d) > 1e-12, errc::degenerate_class_parameters,
          "room map is singular; waypoints cannot be carried over");

  const double pi = 3.14159265358979323846;
  std::vector<double> base = {p.phi1, p.phi1 + pi, p.phi3, p.phi3 + pi};
  std::vector<double> phis = base;
  for (int idx : p.extra_walls) {
    require(idx >= 0 && idx < 4, errc::invalid_input, "extra wall index must be in 0..3");
    phis.push_back(base[static_cast<size_t>(idx)]);
  }
  require(p.offsets.size() == phis.size(), errc::invalid_input,
          "need one offset per wall (4 base walls plus extras)");
  require(!p.waypoints.empty(), errc::invalid_input, "need at least one waypoint");

  const int K = static_cast<int>(phis.size());
  const int N = static_cast<int>(p.waypoints.size());
  Eigen::Matrix2Xd n0(2, K), n1(2, K), w0(2, N), w1(2, N);
  for (int k = 0; k < K; ++k) {
    n0.col(k) = unit2(phis[static_cast<size_t>(k)]);
    n1.col(k) = t * n0.col(k);
  }
  const Eigen::Matrix2d t_invT = t.transpose().inverse();
  for (int n = 0; n < N; ++n) {
    w0.col(n) = p.waypoints[static_cast<size_t>(n)];
    w1.col(n) = t_invT * w0.col(n);
  }

  parallelogram_result out;
  out.a = a;
  out.b = b;
  out.pair.reference = make_config2(n0, p.offsets, w0);
  out.pair.equivalent = make_config2(n1, p.offsets, w1);
  return out;
}

class_pair gen_corridor_pair(const corridor_params& p) {
  const size_t K = p.offsets.size();
  require(K >= 2, errc::invalid_input, "corridor needs at least two walls");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  std::vector<int> s = p.signs;
  if (s.empty())
    for (size_t k = 0; k < K; ++k) s.push_back(static_cast<int>(k % 2));
  require(s.size() == K, errc::invalid_input, "need one sign per wall");

  const double pi = 3.14159265358979323846;
  const double b = std::sqrt(p.a * p.a + 1.0);
  const size_t N = p.waypoints0.size();
  std::vector<double> free_y = p.free_coords;
  if (free_y.empty())
    for (const auto& w : p.waypoints0) free_y.push_back(w.y());
  require(free_y.size() == N, errc::invalid_input, "need one free coordinate per waypoint");

  Eigen::Matrix2Xd n0(2, static_cast<int>(K)), n1(2, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const double phi0 = std::atan(p.a) + s[k] * pi;
    n0.col(static_cast<int>(k)) = unit2(phi0);
    n1.col(static_cast<int>(k)) = Eigen::Vector2d(b * std::cos(phi0), 0.0);
  }
  Eigen::Matrix2Xd w0(2, static_cast<int>(N)), w1(2, static_cast<int>(N));
  for (size_t n = 0; n < N; ++n) {
    w0.col(static_cast<int>(n)) = p.waypoints0[n];
    w1.col(static_cast<int>(n)) =
        Eigen::Vector2d((p.waypoints0[n].x() + p.a * p.waypoints0[n].y()) / b, free_y[n]);
  }

  class_pair out;
  out.reference = make_config2(n0, p.offsets, w0);
  out.equivalent = make_config2(n1, p.offsets, w1);
  return out;
}

class_pair gen_linear_trajectory_pair_2d(const linear_trajectory2d_params& p) {
  const size_t K = p.wall_angles.size();
  require(K >= 1, errc::invalid_input, "need at least one wall");
  require(p.offsets.size() == K, errc::invalid_input, "need one offset per wall");
  require(!p.gammas.empty(), errc::invalid_input, "need at least one waypoint coefficient");
  std::vector<int> s = p.signs;
  if (s.empty()) s.assign(K, 1);
  require(s.size() == K, errc::invalid_input, "need one sign per wall");

  const double root = std::sqrt(p.a * p.a + 1.0);
  Eigen::Matrix2Xd n0(2, static_cast<int>(K)), n1(2, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const double phi0 = p.wall_angles[k];
    const double w = p.b * std::cos(phi0) + p.c * std::sin(phi0);
    double arg = w / root;
    if (std::abs(arg) > 1.0 + 1e-12)
      fail(errc::infeasible_parameters,
           "wall " + std::to_string(k) + ": |b cos + c sin| exceeds sqrt(a^2+1)");
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = s[k] * std::acos(arg) - std::atan(p.a);
    n0.col(static_cast<int>(k)) = unit2(phi0);
    n1.col(static_cast<int>(k)) = unit2(phi);
  }

  const size_t N = p.gammas.size();
  Eigen::Matrix2Xd w0(2, static_cast<int>(N)), w1(2, static_cast<int>(N));
  for (size_t n = 0; n < N; ++n) {
    w0.col(static_cast<int>(n)) = p.gammas[n] * Eigen::Vector2d(-p.b, -p.c);
    w1.col(static_cast<int>(n)) = p.gammas[n] * Eigen::Vector2d(-1.0, p.a);
  }

  class_pair out;
  out.reference = make_config2(n0, p.offsets, w0);
  out.equivalent = make_config2(n1, p.offsets, w1);
  return out;
}

}  // namespace ppdm
