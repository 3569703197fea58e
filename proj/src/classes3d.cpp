#include "classes3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppdm {

namespace {

constexpr double kPi = 3.14159265358979323846;

configuration make_config3(const Eigen::Matrix3Xd& normals, const std::vector<double>& offsets,
                           const Eigen::Matrix3Xd& waypoints) {
  configuration c;
  c.dimension = 3;
  for (int k = 0; k < normals.cols(); ++k)
    c.planes.push_back({normals.col(k).normalized(), offsets[static_cast<size_t>(k)]});
  for (int n = 0; n < waypoints.cols(); ++n) c.waypoints.push_back(waypoints.col(n));
  validate(c);
  return c;
}

double sq(double x) { return x * x; }

}  // namespace

Eigen::Vector3d spherical_normal(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

class_pair gen_corridor3d_pair(const corridor3d_params& p) {
  const size_t K = p.offsets.size();
  require(K >= 2, errc::invalid_input, "corridor needs at least two walls");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  std::vector<int> s = p.signs;
  if (s.empty())
    for (size_t k = 0; k < K; ++k) s.push_back(static_cast<int>(k % 2));
  require(s.size() == K, errc::invalid_input, "need one sign per wall");
  const size_t N = p.waypoints0.size();
  std::vector<Eigen::Vector2d> free_yz = p.free_yz;
  if (free_yz.empty())
    for (const auto& w : p.waypoints0) free_yz.push_back({w.y(), w.z()});
  require(free_yz.size() == N, errc::invalid_input, "need one free pair per waypoint");

  const double big_l = std::sqrt(1.0 + p.a * p.a + p.b * p.b);
  Eigen::Matrix3Xd n0(3, static_cast<int>(K)), n1(3, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const double phi0 = std::atan(p.a) + s[k] * kPi;
    const double theta0 = std::atan2(1.0, p.b * std::cos(phi0));
    n0.col(static_cast<int>(k)) = spherical_normal(theta0, phi0);
    n1.col(static_cast<int>(k)) =
        Eigen::Vector3d(big_l * std::sin(theta0) * std::cos(phi0), 0.0, 0.0);
  }
  Eigen::Matrix3Xd w0(3, static_cast<int>(N)), w1(3, static_cast<int>(N));
  for (size_t n = 0; n < N; ++n) {
    const Eigen::Vector3d& r0 = p.waypoints0[n];
    w0.col(static_cast<int>(n)) = r0;
    w1.col(static_cast<int>(n)) = Eigen::Vector3d(
        (r0.x() + p.a * r0.y() + p.b * r0.z()) / big_l, free_yz[n].x(), free_yz[n].y());
  }

  class_pair out;
  out.reference = make_config3(n0, p.offsets, w0);
  out.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

parallelepiped_result gen_parallelepiped_pair(const parallelepiped_params& p) {
  require(std::abs(std::sin(p.phi3 - p.phi1)) > 1e-9, errc::degenerate_class_parameters,
          "base azimuths are parallel; use the prism or corridor generator");
  require(p.branch >= 0 && p.branch < 4, errc::invalid_input, "branch index must be in 0..3");

  const int s1 = (p.branch / 2 == 0) ? 1 : -1;
  const int s3 = (p.branch % 2 == 0) ? 1 : -1;
  Eigen::Vector2d rhs;
  {
    int idx = 0;
    for (double phi : {p.phi1, p.phi3}) {
      const double w = p.a * std::cos(phi) + p.b * std::sin(phi);
      const double r = 1.0 + w * w - p.f * p.f * sq(std::sin(phi));
      if (r < 0.0)
        fail(errc::infeasible_parameters,
             "no real solution at base azimuth " + std::to_string(idx) +
                 ": f^2 sin^2(phi) exceeds 1 + (a cos + b sin)^2");
      rhs(idx) = (idx == 0 ? s1 : s3) * std::sqrt(r);
      ++idx;
    }
  }
  Eigen::Matrix2d m;
  m << std::cos(p.phi1), std::sin(p.phi1), std::cos(p.phi3), std::sin(p.phi3);
  const Eigen::Vector2d cd = m.inverse() * rhs;
  const double c = cd(0), d = cd(1);
  require(std::abs(c) > 1e-12 && std::abs(p.f) > 1e-12, errc::degenerate_class_parameters,
          "normal map is singular (c = 0 or f = 0); waypoints cannot be carried over");

  std::vector<double> base = {p.phi1, p.phi1 + kPi, p.phi3, p.phi3 + kPi};
  std::vector<double> phis = base;
  for (int idx : p.extra_walls) {
    require(idx >= 0 && idx < 4, errc::invalid_input, "extra wall index must be in 0..3");
    phis.push_back(base[static_cast<size_t>(idx)]);
  }
  require(p.offsets.size() == phis.size(), errc::invalid_input,
          "need one offset per wall (4 base walls plus extras)");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  const size_t N = p.waypoints0.size();
  std::vector<double> free_z = p.free_z;
  if (free_z.empty())
    for (const auto& w : p.waypoints0) free_z.push_back(w.z());
  require(free_z.size() == N, errc::invalid_input, "need one free coordinate per waypoint");

  const int K = static_cast<int>(phis.size());
  Eigen::Matrix3Xd n0(3, K), n1(3, K);
  for (int k = 0; k < K; ++k) {
    const double phi = phis[static_cast<size_t>(k)];
    const double theta = std::atan2(1.0, p.a * std::cos(phi) + p.b * std::sin(phi));
    n0.col(k) = spherical_normal(theta, phi);
    const double st = std::sin(theta);
    n1.col(k) = Eigen::Vector3d(c * st * std::cos(phi) + d * st * std::sin(phi),
                                p.f * st * std::sin(phi), 0.0);
  }
  Eigen::Matrix3Xd w0(3, static_cast<int>(N)), w1(3, static_cast<int>(N));
  for (size_t n = 0; n < N; ++n) {
    const Eigen::Vector3d& r0 = p.waypoints0[n];
    const double rx = (r0.x() + p.a * r0.z()) / c;
    const double ry = (r0.y() + p.b * r0.z() - d * rx) / p.f;
    w0.col(static_cast<int>(n)) = r0;
    w1.col(static_cast<int>(n)) = Eigen::Vector3d(rx, ry, free_z[n]);
  }

  parallelepiped_result out;
  out.c = c;
  out.d = d;
  out.pair.reference = make_config3(n0, p.offsets, w0);
  out.pair.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

prism_result gen_prism_pair(const prism_params& p) {
  const size_t K = p.wall_azimuths.size();
  require(K >= 2, errc::invalid_input, "prism needs at least two walls");
  require(p.offsets.size() == K, errc::invalid_input, "need one offset per wall");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  const size_t N = p.waypoints0.size();
  std::vector<double> slide = p.slide;
  if (slide.empty()) slide.assign(N, 0.0);
  require(slide.size() == N, errc::invalid_input, "need one slide value per waypoint");

  const double c = p.sign_c * std::sqrt(p.a * p.a + 1.0);
  const double d = p.a * p.b / c;
  const double f2 = p.b * p.b / (p.a * p.a + 1.0) + 1.0;
  const double f = p.sign_f * std::sqrt(f2);
  const double l2 = 1.0 + p.a * p.a + p.b * p.b;

  Eigen::Matrix3d rot;
  bool found = false;
  for (int flip : {1, -1}) {
    const double r33 = flip * p.sign_r / std::sqrt(l2);
    Eigen::Vector3d col3((p.a * c + p.b * d) / l2, p.b * f / l2, r33);
    Eigen::Matrix3d cand;
    cand << c, d, 0.0, 0.0, f, 0.0, 0.0, 0.0, 0.0;
    cand -= col3 * Eigen::RowVector3d(p.a, p.b, -1.0);
    const double ortho =
        (cand.transpose() * cand - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (ortho <= 1e-9 && (!found || cand.determinant() > 0.0)) {
      rot = cand;
      found = true;
      if (cand.determinant() > 0.0) break;
    }
  }
  require(found, errc::degenerate_class_parameters, "normal map does not factor orthogonally");

  Eigen::Matrix3Xd n0(3, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const double phi = p.wall_azimuths[k];
    const double theta = std::atan2(1.0, p.a * std::cos(phi) + p.b * std::sin(phi));
    n0.col(static_cast<int>(k)) = spherical_normal(theta, phi);
  }
  const Eigen::Matrix3Xd n1 = rot * n0;
  const Eigen::Vector3d axis = Eigen::Vector3d(p.a, p.b, -1.0) / std::sqrt(l2);
  Eigen::Matrix3Xd w0(3, static_cast<int>(N)), w1(3, static_cast<int>(N));
  for (size_t n = 0; n < N; ++n) {
    w0.col(static_cast<int>(n)) = p.waypoints0[n];
    w1.col(static_cast<int>(n)) = rot * (p.waypoints0[n] + slide[n] * axis);
  }

  prism_result out;
  out.rotation = rot;
  out.c = c;
  out.d = d;
  out.f = f;
  out.pair.reference = make_config3(n0, p.offsets, w0);
  out.pair.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

std::optional<std::vector<double>> rank3_theta_roots(const rank3_map& t, double phi) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double cc = t.c * t.c + t.f * t.f + t.i * t.i - 1.0;
  const double aa = sq(t.a * cp + t.b * sp) + t.e * t.e * sp * sp - cc - 1.0;
  const double bb = 2.0 * (t.a * t.c * cp + (t.b * t.c + t.e * t.f) * sp);
  const Eigen::Matrix3d tm = t.matrix();
  auto residual = [&](double theta) {
    return (tm * spherical_normal(theta, phi)).squaredNorm() - 1.0;
  };

  if (aa * aa + bb * bb < 1e-14) {
    // The unit-length condition does not depend on the inclination.
    if (std::abs(residual(kPi / 2.0)) <= 1e-9) return std::nullopt;
    return std::vector<double>{};
  }
  const double disc = bb * bb - 4.0 * aa * cc - 4.0 * cc * cc;
  std::vector<double> roots;
  if (disc < 0.0) return roots;
  const double sqdisc = std::abs(bb) * std::sqrt(disc);
  const double denom = aa * aa + bb * bb;
  for (double x : {(aa * (aa + 2.0 * cc) + sqdisc) / denom, (aa * (aa + 2.0 * cc) - sqdisc) / denom}) {
    if (std::abs(x) > 1.0 + 1e-12) continue;
    x = std::clamp(x, -1.0, 1.0);
    const double half = std::acos(x) / 2.0;
    for (double cand : {half, kPi - half}) {
      if (std::abs(residual(cand)) > 1e-9) continue;
      bool dup = false;
      for (size_t j = 0; j < roots.size(); j += 2)
        if (std::abs(roots[j] - cand) < 1e-10) dup = true;
      if (dup) continue;
      roots.push_back(cand);
      roots.push_back(cand + kPi);
    }
  }
  return roots;
}

class_pair gen_rank3_pair(const rank3_params& p) {
  const size_t K0 = p.azimuths.size();
  require(K0 >= 1, errc::invalid_input, "need at least one azimuth");
  require(p.alpha >= 1 && p.alpha <= 4, errc::invalid_input, "alpha must be in 1..4");
  std::vector<int> choices = p.branch_choices;
  if (choices.empty()) choices.assign(K0, 0);
  require(choices.size() == K0, errc::invalid_input, "need one branch choice per azimuth");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  require(std::abs(p.t.a * p.t.e * p.t.i) > 1e-12, errc::degenerate_class_parameters,
          "room map is singular; waypoints cannot be carried over");

  std::vector<std::pair<double, double>> walls;  // (theta0, phi0)
  for (size_t k = 0; k < K0; ++k) {
    const double phi = p.azimuths[k];
    auto roots_opt = rank3_theta_roots(p.t, phi);
    if (!roots_opt)
      fail(errc::degenerate_class_parameters,
           "azimuth " + std::to_string(k) +
               ": inclination condition holds for every inclination; use the prism or "
               "two-parallel-sets generator");
    const std::vector<double>& roots = *roots_opt;
    auto reject = [&](const std::string& why) {
      if (K0 >= 6)
        fail(errc::overconstrained_class,
             "azimuth " + std::to_string(k) + ": " + why +
                 " (six or more azimuth constraints admit no further freedom)");
      fail(errc::infeasible_parameters, "azimuth " + std::to_string(k) + ": " + why);
    };
    const int ch = choices[k];
    switch (p.alpha) {
      case 1:
        if (ch < 0 || static_cast<size_t>(ch) >= roots.size()) reject("no valid inclination root for this branch");
        walls.emplace_back(roots[static_cast<size_t>(ch)], phi);
        break;
      case 2:
        if (ch < 0 || static_cast<size_t>(2 * ch + 1) >= roots.size())
          reject("no valid antipodal inclination pair for this branch");
        walls.emplace_back(roots[static_cast<size_t>(2 * ch)], phi);
        walls.emplace_back(roots[static_cast<size_t>(2 * ch + 1)], phi);
        break;
      case 3:
        if (roots.size() < 4) reject("fewer than four inclination roots");
        if (ch < 0 || ch >= 4) reject("excluded-root index must be in 0..3");
        for (int j = 0; j < 4; ++j)
          if (j != ch) walls.emplace_back(roots[static_cast<size_t>(j)], phi);
        break;
      default:
        if (roots.size() < 4) reject("fewer than four inclination roots");
        for (int j = 0; j < 4; ++j) walls.emplace_back(roots[static_cast<size_t>(j)], phi);
        break;
    }
  }
  require(p.offsets.size() == walls.size(), errc::invalid_input,
          "need one offset per generated wall (alpha walls per azimuth)");

  const Eigen::Matrix3d tm = p.t.matrix();
  const int K = static_cast<int>(walls.size());
  Eigen::Matrix3Xd n0(3, K), n1(3, K);
  for (int k = 0; k < K; ++k) {
    n0.col(k) = spherical_normal(walls[static_cast<size_t>(k)].first,
                                 walls[static_cast<size_t>(k)].second);
    n1.col(k) = tm * n0.col(k);
  }
  const Eigen::Matrix3d t_invT = tm.transpose().inverse();
  const int N = static_cast<int>(p.waypoints0.size());
  Eigen::Matrix3Xd w0(3, N), w1(3, N);
  for (int n = 0; n < N; ++n) {
    w0.col(n) = p.waypoints0[static_cast<size_t>(n)];
    w1.col(n) = t_invT * w0.col(n);
  }

  class_pair out;
  out.reference = make_config3(n0, p.offsets, w0);
  out.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

tps_roots two_parallel_sets_roots(double a, double b, double e) {
  require(std::abs(a) > 1e-12 && std::abs(e) > 1e-12, errc::degenerate_class_parameters,
          "a = 0 or e = 0 collapses this family; it is covered by " +
              std::string(kClassRank4PlanarTrajectory));
  require(std::abs(a * a - 1.0) > 1e-12, errc::infeasible_parameters,
          "a^2 = 1 leaves the azimuth condition without finite roots");
  const double disc = a * a + b * b + e * e - a * a * e * e - 1.0;
  require(disc >= 0.0, errc::infeasible_parameters,
          "negative azimuth discriminant: a^2 + b^2 + e^2 - a^2 e^2 - 1 < 0");

  tps_roots out;
  out.z1 = (2.0 * a * b + 2.0 * std::sqrt(disc)) / (a * a - 1.0);
  out.z2 = (2.0 * a * b - 2.0 * std::sqrt(disc)) / (a * a - 1.0);
  const double zs[2] = {out.z1, out.z2};
  for (int g = 0; g < 2; ++g) {
    const double z = zs[g];
    out.phis[g][0] = 2.0 * std::atan((z + std::sqrt(z * z + 4.0)) / 2.0);
    out.phis[g][1] = 2.0 * std::atan((z - std::sqrt(z * z + 4.0)) / 2.0);
  }
  return out;
}

class_pair gen_two_parallel_sets_pair(const two_parallel_sets_params& p) {
  require(p.i == 1 || p.i == -1, errc::invalid_input, "i must be +1 or -1");
  const size_t K = p.inclinations.size();
  require(K >= 1, errc::invalid_input, "need at least one wall");
  require(p.set_assignment.size() == K, errc::invalid_input, "need one set index per wall");
  require(p.offsets.size() == K, errc::invalid_input, "need one offset per wall");
  require(!p.waypoints0.empty(), errc::invalid_input, "need at least one waypoint");
  std::vector<int> antip = p.antipodal;
  if (antip.empty()) antip.assign(K, 0);
  require(antip.size() == K, errc::invalid_input, "need one antipodal bit per wall");

  const tps_roots roots = two_parallel_sets_roots(p.a, p.b, p.e);
  Eigen::Matrix3d tm;
  tm << p.a, p.b, 0.0, 0.0, p.e, 0.0, 0.0, 0.0, static_cast<double>(p.i);

  Eigen::Matrix3Xd n0(3, static_cast<int>(K)), n1(3, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const int g = p.set_assignment[k];
    require(g == 0 || g == 1, errc::invalid_input, "set index must be 0 or 1");
    require(antip[k] == 0 || antip[k] == 1, errc::invalid_input, "antipodal bit must be 0 or 1");
    const double phi = roots.phis[g][antip[k]];
    n0.col(static_cast<int>(k)) = spherical_normal(p.inclinations[k], phi);
    n1.col(static_cast<int>(k)) = tm * n0.col(static_cast<int>(k));
  }
  const Eigen::Matrix3d t_invT = tm.transpose().inverse();
  const int N = static_cast<int>(p.waypoints0.size());
  Eigen::Matrix3Xd w0(3, N), w1(3, N);
  for (int n = 0; n < N; ++n) {
    w0.col(n) = p.waypoints0[static_cast<size_t>(n)];
    w1.col(n) = t_invT * w0.col(n);
  }

  class_pair out;
  out.reference = make_config3(n0, p.offsets, w0);
  out.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

class_pair gen_planar_trajectory_pair(const planar_trajectory_params& p) {
  const size_t K = p.reference_walls.size();
  require(K >= 1, errc::invalid_input, "need at least one wall");
  require(p.offsets.size() == K, errc::invalid_input, "need one offset per wall");
  require(!p.gammas.empty(), errc::invalid_input, "need at least one waypoint coefficient pair");
  std::vector<int> bits = p.root_bits;
  if (bits.empty()) bits.assign(K, 0);
  require(bits.size() == K, errc::invalid_input, "need one root bit per wall");

  Eigen::Matrix3Xd n0(3, static_cast<int>(K)), n1(3, static_cast<int>(K));
  const double qa = 1.0 + p.d * p.d + p.h * p.h;
  for (size_t k = 0; k < K; ++k) {
    const Eigen::Vector3d x =
        spherical_normal(p.reference_walls[k].x(), p.reference_walls[k].y());
    const double ga = p.a * x(0) + p.b * x(1) + p.c * x(2);
    const double ge = p.e * x(0) + p.f * x(1) + p.g * x(2);
    const double qb = 2.0 * (p.d * ga + p.h * ge);
    const double qc = ga * ga + ge * ge - 1.0;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0)
      fail(errc::infeasible_parameters,
           "wall " + std::to_string(k) + ": no real vertical component for the mapped normal");
    const double ct = (-qb + (bits[k] == 0 ? 1.0 : -1.0) * std::sqrt(disc)) / (2.0 * qa);
    n0.col(static_cast<int>(k)) = x;
    n1.col(static_cast<int>(k)) = Eigen::Vector3d(ga + p.d * ct, ge + p.h * ct, ct);
  }

  const int N = static_cast<int>(p.gammas.size());
  Eigen::Matrix3Xd w0(3, N), w1(3, N);
  for (int n = 0; n < N; ++n) {
    const double g1 = p.gammas[static_cast<size_t>(n)].x();
    const double g2 = p.gammas[static_cast<size_t>(n)].y();
    w0.col(n) = Eigen::Vector3d(-p.a * g1 - p.e * g2, -p.b * g1 - p.f * g2, -p.c * g1 - p.g * g2);
    w1.col(n) = Eigen::Vector3d(-g1, -g2, p.d * g1 + p.h * g2);
  }

  class_pair out;
  out.reference = make_config3(n0, p.offsets, w0);
  out.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

class_pair gen_linear_trajectory3d_pair(const linear_trajectory3d_params& p) {
  const size_t K = p.reference_walls.size();
  require(K >= 1, errc::invalid_input, "need at least one wall");
  require(p.equivalent_azimuths.size() == K, errc::invalid_input,
          "need one equivalent azimuth per wall");
  require(p.offsets.size() == K, errc::invalid_input, "need one offset per wall");
  std::vector<int> s = p.signs;
  if (s.empty()) s.assign(K, 1);
  require(s.size() == K, errc::invalid_input, "need one sign per wall");

  const Eigen::Vector3d u(p.c, p.d, p.e);
  std::vector<double> gammas = p.gammas;
  if (!p.waypoints0.empty()) {
    require(u.norm() > 1e-12, errc::degenerate_class_parameters,
            "(c, d, e) = 0 pins the reference trajectory to the origin");
    gammas.clear();
    for (const auto& r0 : p.waypoints0) {
      const double g = -r0.dot(u) / u.squaredNorm();
      const double res = (r0 + g * u).cwiseAbs().maxCoeff();
      require(res <= 1e-9 * std::max(1.0, r0.norm()), errc::invalid_input,
              "reference waypoints must be collinear through the origin along (c, d, e)");
      gammas.push_back(g);
    }
  }
  require(!gammas.empty(), errc::invalid_input, "need at least one waypoint coefficient");

  Eigen::Matrix3Xd n0(3, static_cast<int>(K)), n1(3, static_cast<int>(K));
  for (size_t k = 0; k < K; ++k) {
    const Eigen::Vector3d x =
        spherical_normal(p.reference_walls[k].x(), p.reference_walls[k].y());
    const double w = u.dot(x);
    const double phi = p.equivalent_azimuths[k];
    const double h = p.a * std::cos(phi) + p.b * std::sin(phi);
    double arg = w / std::sqrt(h * h + 1.0);
    if (std::abs(arg) > 1.0 + 1e-12)
      fail(errc::infeasible_parameters,
           "wall " + std::to_string(k) + ": projection exceeds the reachable inclination range");
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = s[k] * std::acos(arg) - std::atan(h);
    n0.col(static_cast<int>(k)) = x;
    n1.col(static_cast<int>(k)) = spherical_normal(theta, phi);
  }

  const int N = static_cast<int>(gammas.size());
  Eigen::Matrix3Xd w0(3, N), w1(3, N);
  for (int n = 0; n < N; ++n) {
    const double g = gammas[static_cast<size_t>(n)];
    w0.col(n) = -g * u;
    w1.col(n) = g * Eigen::Vector3d(p.a, p.b, -1.0);
  }

  class_pair out;
  out.reference = make_config3(n0, p.offsets, w0);
  out.equivalent = make_config3(n1, p.offsets, w1);
  return out;
}

}  // namespace ppdm
