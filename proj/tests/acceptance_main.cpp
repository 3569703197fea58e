// Acceptance harness: one line per criterion, nonzero exit if any fails.
// Each criterion sweeps seeded draws and reports the worst observed margin.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "classes2d.hpp"
#include "classes3d.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "figures.hpp"
#include "generate.hpp"
#include "geometry.hpp"
#include "jsonio.hpp"
#include "reconstruct.hpp"
#include "rng.hpp"
#include "verify.hpp"

namespace {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

constexpr int kDrawsPerClass = 100;
constexpr double kPairTol = 1e-9;             // shared-PPDM and coupling residuals, x scale
constexpr double kSeparationTol = 1e-3;       // distinct members must differ at least this much
constexpr double kRoomOnlyTol = 1e-9;         // trajectory-only classes: rooms congruent below this
constexpr double kRotationTol = 1e-9;         // prism companion motions
constexpr double kReconCongruenceTol = 1e-6;  // reconstruction round trips
constexpr double kReconResidualTol = 1e-8;
constexpr double kReductionTol = 1e-9;        // alternative-dependency reductions
constexpr double kConstructionTol = 1e-10;    // direct constructions inside criterion 6

std::uint64_t readout_seed() { return 20260814ull; }

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

struct criterion_result {
  bool pass = true;
  int checks = 0;
  std::string detail;

  void fail(const std::string& msg) {
    if (pass) {
      pass = false;
      detail = msg;
    }
  }
};

double pair_scale(const ppdm::class_pair& p) {
  return std::max({1.0, p.reference.bounding_radius(), p.equivalent.bounding_radius()});
}

double ppdm_gap(const ppdm::class_pair& p) {
  return (ppdm::compute_ppdm(p.reference) - ppdm::compute_ppdm(p.equivalent))
      .cwiseAbs()
      .maxCoeff();
}

// Entrywise gap between two configurations with identical layouts.
double config_gap(const ppdm::configuration& x, const ppdm::configuration& y) {
  if (x.dimension != y.dimension || x.wall_count() != y.wall_count() ||
      x.waypoint_count() != y.waypoint_count()) {
    return 1e300;
  }
  double g = 0.0;
  for (int k = 0; k < x.wall_count(); ++k) {
    g = std::max(g, (x.planes[k].normal - y.planes[k].normal).cwiseAbs().maxCoeff());
    g = std::max(g, std::abs(x.planes[k].offset - y.planes[k].offset));
  }
  for (int n = 0; n < x.waypoint_count(); ++n) {
    g = std::max(g, (x.waypoints[n] - y.waypoints[n]).cwiseAbs().maxCoeff());
  }
  return g;
}

Matrix2d rot2(double w) {
  Matrix2d m;
  m << std::cos(w), -std::sin(w), std::sin(w), std::cos(w);
  return m;
}

Matrix3d rot3_z(double w) {
  Matrix3d m = Matrix3d::Identity();
  m.topLeftCorner<2, 2>() = rot2(w);
  return m;
}

ppdm::configuration rotate_config(const ppdm::configuration& c, const MatrixXd& q) {
  ppdm::rigid_motion g;
  g.rotation = q;
  g.translation = VectorXd::Zero(c.dimension);
  return ppdm::apply_rigid_motion(c, g);
}

bool is_trajectory_only(const std::string& id) {
  return id == ppdm::kClassRank1Corridor || id == ppdm::kClassRank1Corridor3D ||
         id == ppdm::kClassRank2Prism;
}

ppdm::configuration random_generic(int m, int walls, int waypoints, ppdm::rng& r) {
  ppdm::configuration c;
  c.dimension = m;
  for (int k = 0; k < walls; ++k) {
    VectorXd n(m);
    do {
      for (int i = 0; i < m; ++i) n[i] = r.normal();
    } while (n.norm() < 1e-3);
    n.normalize();
    c.planes.push_back({n, r.uniform(-2.0, 2.0)});
  }
  for (int n = 0; n < waypoints; ++n) {
    VectorXd w(m);
    for (int i = 0; i < m; ++i) w[i] = r.uniform(-2.0, 2.0);
    c.waypoints.push_back(w);
  }
  return c;
}

// --- criterion 1: every class generator emits a pair sharing one PPDM -------

criterion_result criterion1_shared_ppdm() {
  criterion_result out;
  double worst_gap = 0.0, worst_coupling = 0.0, worst_offset = 0.0;
  std::string worst_at = "-";
  for (const auto& id : ppdm::known_class_ids()) {
    for (std::uint64_t seed = 1; seed <= kDrawsPerClass; ++seed) {
      ppdm::generated_pair gp;
      try {
        gp = ppdm::generate_class_pair(id, json::object(), seed);
      } catch (const std::exception& e) {
        out.fail(strf("%s seed %llu: generation failed: %s", id.c_str(),
                      (unsigned long long)seed, e.what()));
        continue;
      }
      ++out.checks;
      const double scale = pair_scale(gp.pair);
      const double gap = ppdm_gap(gp.pair) / scale;
      const auto res =
          ppdm::equivalence_residual(gp.pair.reference, gp.pair.equivalent);
      const double coupling = res.coupling / scale;
      const double offset = res.offset_gap / scale;
      if (gap > worst_gap) {
        worst_gap = gap;
        worst_at = strf("%s seed %llu", id.c_str(), (unsigned long long)seed);
      }
      worst_coupling = std::max(worst_coupling, coupling);
      worst_offset = std::max(worst_offset, offset);
      if (gap > kPairTol || coupling > kPairTol || offset > kPairTol) {
        out.fail(strf("%s seed %llu: gap %.2e coupling %.2e offset %.2e", id.c_str(),
                      (unsigned long long)seed, gap, coupling, offset));
      }
    }
  }
  if (out.pass) {
    out.detail = strf("worst ppdm gap %.1e (%s), coupling %.1e, offset gap %.1e",
                      worst_gap, worst_at.c_str(), worst_coupling, worst_offset);
  }
  return out;
}

// --- criterion 2: pair members are geometrically distinct -------------------

criterion_result criterion2_separation() {
  criterion_result out;
  double min_sep = 1e300, min_traj = 1e300, worst_room = 0.0;
  for (const auto& id : ppdm::known_class_ids()) {
    for (std::uint64_t seed = 1; seed <= kDrawsPerClass; ++seed) {
      const auto gp = ppdm::generate_class_pair(id, json::object(), seed);
      ++out.checks;
      const double scale = pair_scale(gp.pair);
      const auto rep =
          ppdm::congruence_details(gp.pair.reference, gp.pair.equivalent);
      if (is_trajectory_only(id)) {
        worst_room = std::max(worst_room, rep.room_residual / scale);
        min_traj = std::min(min_traj, rep.trajectory_mismatch);
        if (rep.room_residual > kRoomOnlyTol * scale ||
            rep.trajectory_mismatch < kSeparationTol) {
          out.fail(strf("%s seed %llu: room residual %.2e, trajectory mismatch %.2e",
                        id.c_str(), (unsigned long long)seed, rep.room_residual,
                        rep.trajectory_mismatch));
        }
      } else {
        min_sep = std::min(min_sep, rep.residual);
        if (rep.residual < kSeparationTol) {
          out.fail(strf("%s seed %llu: members nearly congruent (residual %.2e)",
                        id.c_str(), (unsigned long long)seed, rep.residual));
        }
      }
    }
  }
  if (out.pass) {
    out.detail = strf("min separation %.2e; sliding classes: room residual <= %.1e, "
                      "min trajectory mismatch %.2e",
                      min_sep, worst_room, min_traj);
  }
  return out;
}

// --- criterion 3: prism companion motions are exact rotations ---------------

criterion_result criterion3_prism_rotations() {
  criterion_result out;
  ppdm::rng r(readout_seed());
  double worst_ortho = 0.0, worst_det = 0.0;
  for (int trial = 0; trial < kDrawsPerClass; ++trial) {
    ppdm::prism_params p;
    p.a = 0.8 * r.normal();
    p.b = 0.8 * r.normal();
    p.sign_c = r.coin() ? 1 : -1;
    p.sign_f = r.coin() ? 1 : -1;
    p.sign_r = r.coin() ? 1 : -1;
    const int walls = 4 + (trial % 3);
    for (int k = 0; k < walls; ++k) {
      p.wall_azimuths.push_back(r.uniform(0.0, 2.0 * kPi));
      p.offsets.push_back(r.uniform(-2.0, 2.0));
    }
    for (int n = 0; n < 3; ++n) {
      p.waypoints0.push_back(
          Vector3d(r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0)));
      p.slide.push_back(r.uniform(-1.5, 1.5));
    }
    const auto res = ppdm::gen_prism_pair(p);
    ++out.checks;
    const double ortho =
        (res.rotation.transpose() * res.rotation - Matrix3d::Identity())
            .cwiseAbs()
            .maxCoeff();
    const double det_err = std::abs(res.rotation.determinant() - 1.0);
    const double gap = ppdm_gap(res.pair) / pair_scale(res.pair);
    worst_ortho = std::max(worst_ortho, ortho);
    worst_det = std::max(worst_det, det_err);
    if (ortho > kRotationTol || det_err > kRotationTol || gap > kPairTol) {
      out.fail(strf("trial %d: orthogonality %.2e, det error %.2e, ppdm gap %.2e",
                    trial, ortho, det_err, gap));
    }
  }
  if (out.pass) {
    out.detail =
        strf("worst |R^T R - I| %.1e, worst |det - 1| %.1e", worst_ortho, worst_det);
  }
  return out;
}

// --- criterion 4: classifier vs generated and generic configurations --------

criterion_result criterion4_classifier() {
  criterion_result out;
  int labeled = 0, generic2d = 0, generic3d = 0;

  for (const auto& id : ppdm::known_class_ids()) {
    for (std::uint64_t seed = 1; seed <= kDrawsPerClass; ++seed) {
      const auto gp = ppdm::generate_class_pair(id, json::object(), seed);
      const ppdm::configuration* members[2] = {&gp.pair.reference, &gp.pair.equivalent};
      for (int m = 0; m < 2; ++m) {
        const auto rep = ppdm::classify(*members[m]);
        ++out.checks;
        ++labeled;
        bool matched = false;
        for (const auto& mc : rep.matched_classes) matched |= mc.class_id == id;
        if (!rep.ambiguous || !matched) {
          out.fail(strf("%s seed %llu %s member: expected class not matched", id.c_str(),
                        (unsigned long long)seed, m == 0 ? "reference" : "equivalent"));
        }
      }
    }
  }

  ppdm::rng r2 = ppdm::rng(readout_seed()).fork("generic-2d");
  for (int i = 0; i < 500; ++i) {
    const auto c = random_generic(2, 5 + i % 3, 3 + i % 3, r2);
    const auto rep = ppdm::classify(c);
    ++out.checks;
    ++generic2d;
    if (rep.ambiguous) {
      out.fail(strf("generic 2d draw %d flagged ambiguous (%s)", i,
                    rep.matched_classes.empty()
                        ? "?"
                        : rep.matched_classes.front().class_id.c_str()));
    }
  }

  ppdm::rng r3 = ppdm::rng(readout_seed()).fork("generic-3d");
  for (int i = 0; i < 500; ++i) {
    const auto c = random_generic(3, 7 + i % 3, 4 + i % 2, r3);
    const auto rep = ppdm::classify(c);
    ++out.checks;
    ++generic3d;
    if (rep.ambiguous) {
      out.fail(strf("generic 3d draw %d flagged ambiguous (%s)", i,
                    rep.matched_classes.empty()
                        ? "?"
                        : rep.matched_classes.front().class_id.c_str()));
    }
  }

  if (out.pass) {
    out.detail = strf("%d labeled members matched; %d generic 2d + %d generic 3d unique",
                      labeled, generic2d, generic3d);
  }
  return out;
}

// --- criterion 5: reconstruction round trips and typed failures -------------

criterion_result criterion5_reconstruction() {
  criterion_result out;
  double worst_congruence = 0.0, worst_residual = 0.0;
  ppdm::rng r = ppdm::rng(readout_seed()).fork("reconstruct");

  for (int i = 0; i < 1000; ++i) {
    const int m = (i < 500) ? 2 : 3;
    const int walls = (m == 2) ? 4 + i % 5 : 6 + i % 5;
    const int waypoints = (m == 2) ? 3 + i % 3 : 4 + i % 3;
    const auto c = random_generic(m, walls, waypoints, r);
    const MatrixXd d = ppdm::compute_ppdm(c);
    ppdm::reconstruction_result rec;
    try {
      rec = ppdm::reconstruct_configuration(d, m);
    } catch (const std::exception& e) {
      out.fail(strf("draw %d (m=%d K=%d): %s", i, m, walls, e.what()));
      continue;
    }
    ++out.checks;
    const double cong = ppdm::congruence_residual(rec.config, c);
    const double resid =
        (ppdm::compute_ppdm(rec.config) - d).cwiseAbs().maxCoeff();
    worst_congruence = std::max(worst_congruence, cong);
    worst_residual = std::max(worst_residual, std::max(resid, rec.ppdm_residual));
    if (cong > kReconCongruenceTol || resid > kReconResidualTol ||
        rec.ppdm_residual > kReconResidualTol) {
      out.fail(strf("draw %d (m=%d K=%d): congruence %.2e, residual %.2e", i, m, walls,
                    cong, resid));
    }
  }

  // Too few walls in 3-D: the unit-norm system is underdetermined.
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto rs = r.fork(strf("short-%llu", (unsigned long long)s));
    const auto c = random_generic(3, 5, 5, rs);
    ++out.checks;
    try {
      ppdm::reconstruct_configuration(ppdm::compute_ppdm(c), 3);
      out.fail("five-wall 3d input did not raise the underdetermined error");
    } catch (const ppdm::error& e) {
      if (e.code() != ppdm::errc::ambiguous_or_degenerate) {
        out.fail(strf("five-wall 3d input raised the wrong error: %s", e.what()));
      }
    }
  }

  // Coplanar trajectory in 3-D: centered matrix drops rank.
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto rs = r.fork(strf("flat-%llu", (unsigned long long)s));
    auto c = random_generic(3, 8, 5, rs);
    for (auto& w : c.waypoints) w[2] = 0.7;
    ++out.checks;
    try {
      ppdm::reconstruct_configuration(ppdm::compute_ppdm(c), 3);
      out.fail("coplanar-trajectory input did not raise the rank-drop error");
    } catch (const ppdm::error& e) {
      if (e.code() != ppdm::errc::degenerate_trajectory_or_room) {
        out.fail(strf("coplanar-trajectory input raised the wrong error: %s", e.what()));
      }
    }
  }

  if (out.pass) {
    out.detail = strf("worst congruence %.1e, worst ppdm residual %.1e; typed errors OK",
                      worst_congruence, worst_residual);
  }
  return out;
}

// --- criterion 6: alternative column choices reduce to the canonical forms --

// 2-D corridor, swapped coordinate roles: cos(phi0), cos(phi), sin(phi) all
// proportional to sin(phi0). Rotating the reference by +90 degrees turns this
// into the canonical corridor dependency, reproduced by gen_corridor_pair.
void reduce_corridor_swapped(criterion_result& out, ppdm::rng r) {
  const double a = r.uniform(-1.4, 1.4);
  const double psi = r.uniform(0.0, 2.0 * kPi);
  const double len = std::sqrt(1.0 + a * a);
  const double phi0 = std::atan2(1.0, a);  // sin(phi0) > 0
  const Vector2d u0(std::cos(phi0), std::sin(phi0));
  const Vector2d ue(std::cos(psi), std::sin(psi));
  const Vector2d up(-std::sin(psi), std::cos(psi));
  const double bq = len * std::cos(psi);
  const double cq = len * std::sin(psi);

  const int walls = 4;
  std::vector<int> s(walls);
  ppdm::configuration ref, eqv;
  ref.dimension = eqv.dimension = 2;
  for (int k = 0; k < walls; ++k) {
    s[k] = k % 2;
    const double sign = s[k] == 0 ? 1.0 : -1.0;
    const double q = r.uniform(-2.0, 2.0);
    ref.planes.push_back({VectorXd(sign * u0), q});
    eqv.planes.push_back({VectorXd(sign * ue), q});
  }
  std::vector<double> ts;
  for (int n = 0; n < 3; ++n) {
    const Vector2d r0(r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0));
    const double t = r.uniform(-2.0, 2.0);
    ref.waypoints.push_back(r0);
    eqv.waypoints.push_back(VectorXd(r0.dot(u0) * ue + t * up));
    ts.push_back(t);
  }
  ++out.checks;

  const double scale = std::max(
      {1.0, ref.bounding_radius(), eqv.bounding_radius()});
  const double gap =
      (ppdm::compute_ppdm(ref) - ppdm::compute_ppdm(eqv)).cwiseAbs().maxCoeff();
  if (gap > kConstructionTol * scale) {
    out.fail(strf("swapped corridor: constructed pair gap %.2e", gap));
    return;
  }
  for (int k = 0; k < walls; ++k) {
    const VectorXd& n0 = ref.planes[k].normal;
    const VectorXd& ne = eqv.planes[k].normal;
    const double r1 = std::abs(n0[0] - a * n0[1]);
    const double r2 = std::abs(ne[0] - bq * n0[1]);
    const double r3 = std::abs(ne[1] - cq * n0[1]);
    if (std::max({r1, r2, r3}) > kConstructionTol) {
      out.fail(strf("swapped corridor: dependency residual %.2e", std::max({r1, r2, r3})));
      return;
    }
  }

  Matrix2d r90 = rot2(kPi / 2.0);
  const auto ref2 = rotate_config(ref, r90);
  for (int k = 0; k < walls; ++k) {
    const VectorXd& n0 = ref2.planes[k].normal;
    const VectorXd& ne = eqv.planes[k].normal;
    const double r1 = std::abs(n0[1] - (-a) * n0[0]);
    const double r2 = std::abs(ne[0] - (-bq) * n0[0]);
    const double r3 = std::abs(ne[1] - (-cq) * n0[0]);
    if (std::max({r1, r2, r3}) > kReductionTol) {
      out.fail(strf("swapped corridor: rotated canonical residual %.2e",
                    std::max({r1, r2, r3})));
      return;
    }
  }

  ppdm::corridor_params cp;
  cp.a = -a;
  const Vector2d ug(std::cos(std::atan(-a)), std::sin(std::atan(-a)));
  const Vector2d uo = r90 * u0;
  const int sigma = ug.dot(uo) > 0.0 ? 1 : -1;
  for (int k = 0; k < walls; ++k) {
    cp.signs.push_back(sigma > 0 ? s[k] : 1 - s[k]);
    cp.offsets.push_back(ref.planes[k].offset);
  }
  for (int n = 0; n < 3; ++n) {
    cp.waypoints0.push_back(Vector2d(r90 * ref.waypoints[n]));
    cp.free_coords.push_back(sigma * ts[n]);
  }
  const auto gen = ppdm::gen_corridor_pair(cp);

  const double ref_gap = config_gap(gen.reference, ref2);
  const double omega = -psi + (sigma < 0 ? kPi : 0.0);
  const auto eq2 = rotate_config(eqv, rot2(omega));
  const double eq_gap = config_gap(gen.equivalent, eq2);
  if (ref_gap > kReductionTol || eq_gap > kReductionTol) {
    out.fail(strf("swapped corridor: generator mismatch ref %.2e eqv %.2e", ref_gap,
                  eq_gap));
  }
}

// 2-D rank-2, alternative columns {sin(phi), sin(phi0)} carrying cos(phi) and
// cos(phi0). Inverting the printed transform must recover the full normal map,
// whose QR factor is the parallelogram generator's triangular map.
void reduce_parallelogram_alt(criterion_result& out, ppdm::rng r) {
  ppdm::parallelogram_params pp;
  pp.phi1 = r.uniform(0.0, kPi);
  pp.phi3 = pp.phi1 + r.uniform(0.6, kPi - 0.6);
  pp.d = r.uniform(0.35, 0.8);
  pp.branch = -1;
  for (int k = 0; k < 4; ++k) pp.offsets.push_back(r.uniform(-2.0, 2.0));
  for (int n = 0; n < 3; ++n) {
    pp.waypoints.push_back(Vector2d(r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0)));
  }
  const auto res = ppdm::gen_parallelogram_pair(pp);
  Matrix2d t;
  t << res.a, res.b, 0.0, pp.d;

  const double omega = r.uniform(0.3, kPi - 0.3);
  const Matrix2d q = rot2(omega);
  const auto eqrot = rotate_config(res.pair.equivalent, q);
  const Matrix2d m = q * t;
  ++out.checks;

  const double a1 = m(0, 0) / m(1, 0);
  const double b1 = -m.determinant() / m(1, 0);
  const double c1 = 1.0 / m(1, 0);
  const double d1 = -m(1, 1) / m(1, 0);
  for (int k = 0; k < res.pair.reference.wall_count(); ++k) {
    const VectorXd& n0 = res.pair.reference.planes[k].normal;
    const VectorXd& ne = eqrot.planes[k].normal;
    const double r1 = std::abs(ne[0] - (a1 * ne[1] + b1 * n0[1]));
    const double r2 = std::abs(n0[0] - (c1 * ne[1] + d1 * n0[1]));
    if (std::max(r1, r2) > kReductionTol) {
      out.fail(strf("parallelogram alt: dependency residual %.2e", std::max(r1, r2)));
      return;
    }
  }

  Matrix2d mhat;
  mhat << a1, b1 * c1 - a1 * d1, 1.0, -d1;
  mhat /= c1;
  if ((mhat - m).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("parallelogram alt: transform mismatch %.2e",
                  (mhat - m).cwiseAbs().maxCoeff()));
    return;
  }

  ppdm::configuration rebuilt = eqrot;
  const Matrix2d mti = mhat.inverse().transpose();
  for (int k = 0; k < rebuilt.wall_count(); ++k) {
    rebuilt.planes[k].normal = mhat * res.pair.reference.planes[k].normal;
  }
  for (int n = 0; n < rebuilt.waypoint_count(); ++n) {
    rebuilt.waypoints[n] = mti * res.pair.reference.waypoints[n];
  }
  if (config_gap(rebuilt, eqrot) > kReductionTol) {
    out.fail(strf("parallelogram alt: rebuilt pair gap %.2e", config_gap(rebuilt, eqrot)));
    return;
  }

  Eigen::HouseholderQR<Matrix2d> qr(mhat);
  const Matrix2d u = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix2d st = t;
  for (int j = 0; j < 2; ++j) {
    const double sj = (u(j, j) < 0.0 ? -1.0 : 1.0) * (t(j, j) < 0.0 ? -1.0 : 1.0);
    st.row(j) *= sj;
  }
  if ((u - st).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("parallelogram alt: triangular factor off by %.2e",
                  (u - st).cwiseAbs().maxCoeff()));
  }
}

// 3-D rank-2, alternative columns {sin(theta0)cos(phi0), sin(theta)cos(phi)}.
// The printed transform must reproduce the parallelepiped coefficient matrix,
// whose de-rotated rows are the generator's (c, d, f).
void reduce_parallelepiped_alt(criterion_result& out, ppdm::rng r) {
  ppdm::parallelepiped_params pp;
  pp.phi1 = r.uniform(0.0, kPi);
  pp.phi3 = pp.phi1 + r.uniform(0.6, 2.0);
  pp.f = r.uniform(0.35, 0.8);
  pp.a = r.uniform(-0.6, 0.6);
  pp.b = r.uniform(-0.6, 0.6);
  pp.branch = r.uniform_int(0, 3);
  for (int k = 0; k < 4; ++k) pp.offsets.push_back(r.uniform(-2.0, 2.0));
  for (int n = 0; n < 3; ++n) {
    pp.waypoints0.push_back(
        Vector3d(r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0), r.uniform(-2.0, 2.0)));
  }
  const auto res = ppdm::gen_parallelepiped_pair(pp);
  ++out.checks;

  double omega = 0.0, d2 = 0.0;
  Matrix2d rows23;
  for (int tries = 0; tries < 64; ++tries) {
    omega = r.uniform(0.2, 1.4);
    Matrix2d base;
    base << res.c, res.d, 0.0, pp.f;
    rows23 = rot2(omega) * base;
    d2 = rows23(0, 1);
    if (std::abs(d2) >= 0.05) break;
  }
  if (std::abs(d2) < 0.05) {
    out.fail("parallelepiped alt: no usable rotation found");
    return;
  }
  const auto eqrot = rotate_config(res.pair.equivalent, rot3_z(omega));
  const double c2 = rows23(0, 0), e3 = rows23(1, 0), f3 = rows23(1, 1);

  const double cb = -c2 / d2, db = 1.0 / d2;
  const double ab = pp.a - pp.b * c2 / d2, bb = pp.b / d2;
  const double eb = e3 - f3 * c2 / d2, fb = f3 / d2;
  const double gb = 0.0, hb = 0.0;
  for (int k = 0; k < res.pair.reference.wall_count(); ++k) {
    const VectorXd& n0 = res.pair.reference.planes[k].normal;
    const VectorXd& ne = eqrot.planes[k].normal;
    const double x0 = n0[0], y0 = n0[1], w0 = n0[2];
    const double x = ne[0], y = ne[1], w = ne[2];
    const double r1 = std::abs(w0 - (ab * x0 + bb * x));
    const double r2 = std::abs(y0 - (cb * x0 + db * x));
    const double r3 = std::abs(y - (eb * x0 + fb * x));
    const double r4 = std::abs(w - (gb * x0 + hb * x));
    if (std::max({r1, r2, r3, r4}) > kReductionTol) {
      out.fail(strf("parallelepiped alt: dependency residual %.2e",
                    std::max({r1, r2, r3, r4})));
      return;
    }
  }

  Eigen::Matrix<double, 4, 2> chat;
  chat << ab * db - bb * cb, bb, -cb, 1.0, eb * db - cb * fb, fb, gb * db - cb * hb, hb;
  chat /= db;
  Eigen::Matrix<double, 4, 2> cref;
  cref << pp.a, pp.b, c2, d2, e3, f3, 0.0, 0.0;
  if ((chat - cref).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("parallelepiped alt: transform mismatch %.2e",
                  (chat - cref).cwiseAbs().maxCoeff()));
    return;
  }

  for (int k = 0; k < res.pair.reference.wall_count(); ++k) {
    const VectorXd& n0 = res.pair.reference.planes[k].normal;
    const Vector2d xy0(n0[0], n0[1]);
    const Vector3d pred(chat.row(1).dot(xy0), chat.row(2).dot(xy0),
                        chat.row(3).dot(xy0));
    const double w0_pred = chat.row(0).dot(xy0);
    const double ngap = (pred - Vector3d(eqrot.planes[k].normal)).cwiseAbs().maxCoeff();
    if (ngap > kReductionTol || std::abs(w0_pred - n0[2]) > kReductionTol) {
      out.fail(strf("parallelepiped alt: rebuilt normals off by %.2e",
                    std::max(ngap, std::abs(w0_pred - n0[2]))));
      return;
    }
  }

  const Matrix2d b23 = chat.block<2, 2>(1, 0);
  const double what = std::atan2(b23(1, 0), b23(0, 0));
  const Matrix2d b0 = rot2(-what) * b23;
  const double sg = (b0(0, 0) < 0.0 ? -1.0 : 1.0) * (res.c < 0.0 ? -1.0 : 1.0);
  Matrix2d base;
  base << res.c, res.d, 0.0, pp.f;
  if (std::abs(b0(1, 0)) > kReductionTol ||
      (b0 - sg * base).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("parallelepiped alt: de-rotated factor off by %.2e",
                  (b0 - sg * base).cwiseAbs().maxCoeff()));
  }
}

// 3-D rank-3, alternative columns {x0, y0, cos(theta)} carrying cos(theta0).
// Inverting the printed transform recovers the full normal map; its QR factor
// is the generator's upper-triangular map.
void reduce_rank3_alt(criterion_result& out, ppdm::rng r) {
  ppdm::rank3_params rp;
  rp.alpha = 2;
  ppdm::rank3_map t;
  bool found = false;
  for (int tries = 0; tries < 200 && !found; ++tries) {
    t.a = r.uniform(0.75, 1.35);
    t.e = r.uniform(0.75, 1.35);
    t.i = r.uniform(0.75, 1.35);
    t.b = r.uniform(-0.45, 0.45);
    t.c = r.uniform(-0.45, 0.45);
    t.f = r.uniform(-0.45, 0.45);
    std::vector<double> azimuths;
    for (int att = 0; att < 80 && azimuths.size() < 3; ++att) {
      const double phi = r.uniform(0.0, 2.0 * kPi);
      const auto roots = ppdm::rank3_theta_roots(t, phi);
      if (roots && roots->size() >= 2) azimuths.push_back(phi);
    }
    if (azimuths.size() == 3) {
      rp.t = t;
      rp.azimuths = azimuths;
      found = true;
    }
  }
  if (!found) {
    out.fail("rank3 alt: no feasible map found");
    return;
  }
  rp.branch_choices = {0, 0, 0};
  for (int k = 0; k < 6; ++k) rp.offsets.push_back(r.uniform(-2.0, 2.0));
  for (int n = 0; n < 3; ++n) {
    rp.waypoints0.push_back(
        Vector3d(r.uniform(-1.5, 1.5), r.uniform(-1.5, 1.5), r.uniform(-1.5, 1.5)));
  }
  const auto pair = ppdm::gen_rank3_pair(rp);
  ++out.checks;

  const Matrix3d t3 = rp.t.matrix();
  Matrix3d q3;
  for (int tries = 0;; ++tries) {
    auto g = ppdm::random_rigid_motion(3, r);
    q3 = g.rotation;
    if (std::abs((q3 * t3)(2, 2)) >= 0.05) break;
    if (tries > 64) {
      out.fail("rank3 alt: no usable rotation found");
      return;
    }
  }
  const auto eqrot = rotate_config(pair.equivalent, q3);
  const Matrix3d m = q3 * t3;

  const double i3 = 1.0 / m(2, 2);
  const double g3 = -m(2, 0) / m(2, 2);
  const double h3 = -m(2, 1) / m(2, 2);
  const double c3 = m(0, 2) / m(2, 2);
  const double f3 = m(1, 2) / m(2, 2);
  const double a3 = m(0, 0) - m(0, 2) * m(2, 0) / m(2, 2);
  const double b3 = m(0, 1) - m(0, 2) * m(2, 1) / m(2, 2);
  const double d3 = m(1, 0) - m(1, 2) * m(2, 0) / m(2, 2);
  const double e3 = m(1, 1) - m(1, 2) * m(2, 1) / m(2, 2);

  for (int k = 0; k < pair.reference.wall_count(); ++k) {
    const VectorXd& n0 = pair.reference.planes[k].normal;
    const VectorXd& ne = eqrot.planes[k].normal;
    const double r1 = std::abs(ne[0] - (a3 * n0[0] + b3 * n0[1] + c3 * ne[2]));
    const double r2 = std::abs(ne[1] - (d3 * n0[0] + e3 * n0[1] + f3 * ne[2]));
    const double r3 = std::abs(n0[2] - (g3 * n0[0] + h3 * n0[1] + i3 * ne[2]));
    if (std::max({r1, r2, r3}) > kReductionTol) {
      out.fail(strf("rank3 alt: dependency residual %.2e", std::max({r1, r2, r3})));
      return;
    }
  }

  Matrix3d mhat;
  mhat << a3 * i3 - c3 * g3, b3 * i3 - c3 * h3, c3, d3 * i3 - f3 * g3,
      e3 * i3 - f3 * h3, f3, -g3, -h3, 1.0;
  mhat /= i3;
  if ((mhat - m).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("rank3 alt: transform mismatch %.2e", (mhat - m).cwiseAbs().maxCoeff()));
    return;
  }

  ppdm::configuration rebuilt = eqrot;
  const Matrix3d mti = mhat.inverse().transpose();
  for (int k = 0; k < rebuilt.wall_count(); ++k) {
    rebuilt.planes[k].normal = mhat * pair.reference.planes[k].normal;
  }
  for (int n = 0; n < rebuilt.waypoint_count(); ++n) {
    rebuilt.waypoints[n] = mti * pair.reference.waypoints[n];
  }
  if (config_gap(rebuilt, eqrot) > kReductionTol) {
    out.fail(strf("rank3 alt: rebuilt pair gap %.2e", config_gap(rebuilt, eqrot)));
    return;
  }

  Eigen::HouseholderQR<Matrix3d> qr(mhat);
  const Matrix3d u = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix3d st = t3;
  for (int j = 0; j < 3; ++j) {
    const double sj = (u(j, j) < 0.0 ? -1.0 : 1.0) * (t3(j, j) < 0.0 ? -1.0 : 1.0);
    st.row(j) *= sj;
  }
  if ((u - st).cwiseAbs().maxCoeff() > kReductionTol) {
    out.fail(strf("rank3 alt: triangular factor off by %.2e",
                  (u - st).cwiseAbs().maxCoeff()));
  }
}

// 3-D rank-4, alternative columns {x, y0, z0, cos(theta)} carrying y and x0.
// The printed transform must return the planar-trajectory coefficients, and
// re-running the generator with them reproduces the pair.
void reduce_planar_alt(criterion_result& out, ppdm::rng r) {
  ppdm::planar_trajectory_params pp;
  bool feasible = false;
  for (int tries = 0; tries < 200 && !feasible; ++tries) {
    pp = ppdm::planar_trajectory_params{};
    pp.a = (r.coin() ? 1.0 : -1.0) * r.uniform(0.3, 0.7);
    pp.b = r.uniform(-0.5, 0.5);
    pp.c = r.uniform(-0.5, 0.5);
    pp.d = r.uniform(-0.4, 0.4);
    pp.e = r.uniform(-0.5, 0.5);
    pp.f = r.uniform(-0.5, 0.5);
    pp.g = r.uniform(-0.5, 0.5);
    pp.h = r.uniform(-0.4, 0.4);
    feasible = true;
    for (int k = 0; k < 7; ++k) {
      const double theta = r.uniform(0.4, kPi - 0.4);
      const double phi = r.uniform(0.0, 2.0 * kPi);
      const Vector3d n0 = ppdm::spherical_normal(theta, phi);
      const double ga = pp.a * n0[0] + pp.b * n0[1] + pp.c * n0[2];
      const double ge = pp.e * n0[0] + pp.f * n0[1] + pp.g * n0[2];
      const double qa = 1.0 + pp.d * pp.d + pp.h * pp.h;
      const double qb = 2.0 * (pp.d * ga + pp.h * ge);
      const double qc = ga * ga + ge * ge - 1.0;
      if (qb * qb - 4.0 * qa * qc < 1e-3) {
        feasible = false;
        break;
      }
      pp.reference_walls.push_back(Vector2d(theta, phi));
      pp.root_bits.push_back(r.coin() ? 1 : 0);
      pp.offsets.push_back(r.uniform(-2.0, 2.0));
    }
    if (!feasible) {
      // retry with a fresh draw
    }
  }
  if (!feasible) {
    out.fail("planar alt: no feasible wall set found");
    return;
  }
  for (int n = 0; n < 3; ++n) {
    pp.gammas.push_back(Vector2d(r.uniform(-1.5, 1.5), r.uniform(-1.5, 1.5)));
  }
  const auto pair = ppdm::gen_planar_trajectory_pair(pp);
  ++out.checks;

  const double e4 = 1.0 / pp.a;
  const double f4 = -pp.b / pp.a;
  const double g4 = -pp.c / pp.a;
  const double h4 = -pp.d / pp.a;
  const double a4 = pp.e / pp.a;
  const double b4 = pp.f - a4 * pp.b;
  const double c4 = pp.g - a4 * pp.c;
  const double d4 = pp.h - a4 * pp.d;

  for (int k = 0; k < pair.reference.wall_count(); ++k) {
    const VectorXd& n0 = pair.reference.planes[k].normal;
    const VectorXd& ne = pair.equivalent.planes[k].normal;
    const double r1 =
        std::abs(ne[1] - (a4 * ne[0] + b4 * n0[1] + c4 * n0[2] + d4 * ne[2]));
    const double r2 =
        std::abs(n0[0] - (e4 * ne[0] + f4 * n0[1] + g4 * n0[2] + h4 * ne[2]));
    if (std::max(r1, r2) > kReductionTol) {
      out.fail(strf("planar alt: dependency residual %.2e", std::max(r1, r2)));
      return;
    }
  }

  const double xa = 1.0 / e4, xb = -f4 / e4, xc = -g4 / e4, xd = -h4 / e4;
  const double ya = a4 / e4;
  const double yb = (b4 * e4 - a4 * f4) / e4;
  const double yc = (c4 * e4 - a4 * g4) / e4;
  const double yd = (d4 * e4 - a4 * h4) / e4;
  const double round_trip =
      std::max({std::abs(xa - pp.a), std::abs(xb - pp.b), std::abs(xc - pp.c),
                std::abs(xd - pp.d), std::abs(ya - pp.e), std::abs(yb - pp.f),
                std::abs(yc - pp.g), std::abs(yd - pp.h)});
  if (round_trip > kReductionTol) {
    out.fail(strf("planar alt: transform mismatch %.2e", round_trip));
    return;
  }

  ppdm::planar_trajectory_params pp2 = pp;
  pp2.a = xa;
  pp2.b = xb;
  pp2.c = xc;
  pp2.d = xd;
  pp2.e = ya;
  pp2.f = yb;
  pp2.g = yc;
  pp2.h = yd;
  const auto pair2 = ppdm::gen_planar_trajectory_pair(pp2);
  const double gap = std::max(config_gap(pair2.reference, pair.reference),
                              config_gap(pair2.equivalent, pair.equivalent));
  if (gap > kReductionTol) {
    out.fail(strf("planar alt: regenerated pair off by %.2e", gap));
  }
}

criterion_result criterion6_reductions() {
  criterion_result out;

  // Swapping the two members of any generated pair preserves the coupling
  // condition (the equivalence relation is symmetric).
  for (const auto& id : ppdm::known_class_ids()) {
    for (std::uint64_t seed : {3ull, 7ull}) {
      const auto gp = ppdm::generate_class_pair(id, json::object(), seed);
      const double scale = pair_scale(gp.pair);
      const auto res =
          ppdm::equivalence_residual(gp.pair.equivalent, gp.pair.reference);
      ++out.checks;
      if (std::max(res.coupling, res.offset_gap) > kPairTol * scale) {
        out.fail(strf("%s seed %llu: swapped pair residual %.2e", id.c_str(),
                      (unsigned long long)seed,
                      std::max(res.coupling, res.offset_gap)));
      }
    }
  }

  ppdm::rng base(readout_seed());
  for (int trial = 0; trial < 25 && out.pass; ++trial) {
    reduce_corridor_swapped(out, base.fork(strf("corridor-%d", trial)));
    reduce_parallelogram_alt(out, base.fork(strf("parallelogram-%d", trial)));
    reduce_parallelepiped_alt(out, base.fork(strf("parallelepiped-%d", trial)));
    reduce_rank3_alt(out, base.fork(strf("rank3-%d", trial)));
    reduce_planar_alt(out, base.fork(strf("planar-%d", trial)));
  }

  if (out.pass) {
    out.detail = strf("%d swapped pairs + 25 draws of each of the 5 reductions "
                      "within %.0e",
                      2 * (int)ppdm::known_class_ids().size(), kReductionTol);
  }
  return out;
}

// --- criterion 7: figure bundles are deterministic with documented verdicts -

criterion_result criterion7_figures() {
  criterion_result out;
  for (int family : ppdm::figure_family_ids()) {
    const auto out1 = ppdm::run_figure_family(family, 20260814ull);
    const auto out2 = ppdm::run_figure_family(family, 20260814ull);
    ++out.checks;
    if (out1.files.size() != out2.files.size()) {
      out.fail(strf("family %d: file count changed between runs", family));
      continue;
    }
    bool identical = true;
    for (size_t i = 0; i < out1.files.size(); ++i) {
      identical &= out1.files[i].name == out2.files[i].name &&
                   out1.files[i].content == out2.files[i].content;
    }
    if (!identical) {
      out.fail(strf("family %d: output not byte-identical across runs", family));
      continue;
    }

    const ppdm::figure_file* doc_file = nullptr;
    const ppdm::figure_file* csv_file = nullptr;
    for (const auto& f : out1.files) {
      if (f.name.size() > 5 && f.name.substr(f.name.size() - 5) == ".json") doc_file = &f;
      if (f.name.size() > 4 && f.name.substr(f.name.size() - 4) == ".csv") csv_file = &f;
    }
    if (doc_file == nullptr || csv_file == nullptr) {
      out.fail(strf("family %d: missing json or csv output", family));
      continue;
    }
    const json doc = json::parse(doc_file->content);
    const std::string want_verdict = doc["expected"]["verdict"];
    const bool want_flag = doc["expected"]["room_congruent_trajectory_distinct"];
    if (doc["pair_verdicts"].empty()) {
      out.fail(strf("family %d: no pairwise verdicts", family));
      continue;
    }
    for (const auto& v : doc["pair_verdicts"]) {
      if (v["verdict"] != want_verdict ||
          v["room_congruent_trajectory_distinct"] != want_flag) {
        out.fail(strf("family %d: pair (%d,%d) verdict %s does not match the "
                      "documented expectation",
                      family, (int)v["i"], (int)v["j"],
                      std::string(v["verdict"]).c_str()));
      }
    }

    const auto c0 = ppdm::configuration_from_json(doc["members"][0]["configuration"].dump());
    const auto c1 = ppdm::configuration_from_json(doc["members"][1]["configuration"].dump());
    const auto rep = ppdm::verify_pair(c0, c1);
    if (rep.verdict != want_verdict) {
      out.fail(strf("family %d: recomputed verdict %s differs from documented %s", family,
                    rep.verdict.c_str(), want_verdict.c_str()));
    }
    const MatrixXd d = ppdm::ppdm_from_csv(csv_file->content);
    const double csv_gap = (d - ppdm::compute_ppdm(c0)).cwiseAbs().maxCoeff();
    if (csv_gap > 1e-12) {
      out.fail(strf("family %d: csv does not match the first member (gap %.2e)", family,
                    csv_gap));
    }
  }
  if (out.pass) {
    out.detail = strf("%d families byte-stable, all pairwise verdicts as documented",
                      out.checks);
  }
  return out;
}

}  // namespace

int main() {
  struct entry {
    const char* label;
    criterion_result (*fn)();
  };
  const std::vector<entry> criteria = {
      {"class generators emit equal distance matrices", &criterion1_shared_ppdm},
      {"pair members are geometrically distinct", &criterion2_separation},
      {"prism companion motions are exact rotations", &criterion3_prism_rotations},
      {"classifier matches labels and clears generic configurations",
       &criterion4_classifier},
      {"reconstruction round-trips generic inputs and types its failures",
       &criterion5_reconstruction},
      {"alternative column choices reduce to the canonical generators",
       &criterion6_reductions},
      {"figure bundles are deterministic with documented verdicts",
       &criterion7_figures},
  };

  bool all_pass = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    criterion_result res;
    try {
      res = criteria[i].fn();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = strf("unexpected exception: %s", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %zu: %s — %s (%d checks, %.1fs)\n",
                res.pass ? "PASS" : "FAIL", i + 1, criteria[i].label,
                res.detail.c_str(), res.checks, secs);
    std::fflush(stdout);
    all_pass &= res.pass;
  }
  std::printf("acceptance: %s\n", all_pass ? "all criteria passed" : "FAILURES above");
  return all_pass ? 0 : 1;
}
