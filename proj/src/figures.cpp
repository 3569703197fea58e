#include "figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "json.hpp"

#include "classes2d.hpp"
#include "classes3d.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "jsonio.hpp"
#include "verify.hpp"

namespace ppdm {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// --- wall outlines -----------------------------------------------------------

std::optional<std::array<double, 4>> clip_line_2d(const plane& p, double half) {
  const Eigen::Vector2d n = p.normal;
  const Eigen::Vector2d base = p.offset * n;
  const Eigen::Vector2d dir(-n(1), n(0));
  double tlo = -1e18, thi = 1e18;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(dir(i)) < 1e-14) {
      if (base(i) < -half || base(i) > half) return std::nullopt;
    } else {
      double t1 = (-half - base(i)) / dir(i);
      double t2 = (half - base(i)) / dir(i);
      if (t1 > t2) std::swap(t1, t2);
      tlo = std::max(tlo, t1);
      thi = std::min(thi, t2);
    }
  }
  if (tlo >= thi) return std::nullopt;
  const Eigen::Vector2d a = base + tlo * dir;
  const Eigen::Vector2d b = base + thi * dir;
  return std::array<double, 4>{a(0), a(1), b(0), b(1)};
}

std::vector<Eigen::Vector3d> clip_plane_3d(const plane& p, double half) {
  const Eigen::Vector3d n = p.normal;
  const double q = p.offset;
  std::vector<Eigen::Vector3d> pts;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (int su = -1; su <= 1; su += 2) {
      for (int sv = -1; sv <= 1; sv += 2) {
        Eigen::Vector3d e0 = Eigen::Vector3d::Zero(), e1 = Eigen::Vector3d::Zero();
        e0(axis) = -half;
        e1(axis) = half;
        e0(u) = e1(u) = su * half;
        e0(v) = e1(v) = sv * half;
        const double f0 = n.dot(e0) - q;
        const double f1 = n.dot(e1) - q;
        if (f0 == f1) continue;
        const double t = f0 / (f0 - f1);
        if (t < 0.0 || t > 1.0) continue;
        pts.push_back(e0 + t * (e1 - e0));
      }
    }
  }
  // Corners hit three edges at once; collapse duplicates.
  std::vector<Eigen::Vector3d> uniq;
  for (const auto& pt : pts) {
    bool seen = false;
    for (const auto& other : uniq)
      if ((pt - other).norm() < 1e-9 * std::max(1.0, half)) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(pt);
  }
  if (uniq.size() < 3) return {};

  Eigen::Vector3d ref = std::abs(n(0)) < 0.9 ? Eigen::Vector3d::UnitX()
                                             : Eigen::Vector3d::UnitY();
  Eigen::Vector3d bu = (ref - ref.dot(n) * n).normalized();
  Eigen::Vector3d bv = n.cross(bu);
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& pt : uniq) centroid += pt;
  centroid /= static_cast<double>(uniq.size());
  std::sort(uniq.begin(), uniq.end(),
            [&](const Eigen::Vector3d& lhs, const Eigen::Vector3d& rhs) {
              const double al = std::atan2(bv.dot(lhs - centroid), bu.dot(lhs - centroid));
              const double ar = std::atan2(bv.dot(rhs - centroid), bu.dot(rhs - centroid));
              return al < ar;
            });
  return uniq;
}

json draw_json(const configuration& c, double half) {
  json d;
  if (c.dimension == 2) {
    json segs = json::array();
    for (const auto& p : c.planes) {
      auto seg = clip_line_2d(p, half);
      if (seg)
        segs.push_back({(*seg)[0], (*seg)[1], (*seg)[2], (*seg)[3]});
      else
        segs.push_back(json::array());
    }
    d["segments"] = segs;
  } else {
    json polys = json::array();
    for (const auto& p : c.planes) {
      json poly = json::array();
      for (const auto& pt : clip_plane_3d(p, half))
        poly.push_back({pt(0), pt(1), pt(2)});
      polys.push_back(poly);
    }
    d["polygons"] = polys;
  }
  return d;
}

// --- assembly ----------------------------------------------------------------

struct member {
  std::string label;
  configuration config;
};

figure_output assemble(int family, const std::string& class_id,
                       const std::string& title, const std::vector<member>& members,
                       bool expect_room_flag) {
  require(!members.empty(), errc::invalid_input, "figure family has no members");

  double half = 0.0;
  for (const auto& m : members) half = std::max(half, m.config.bounding_radius());
  half = 1.25 * half + 0.5;

  json doc;
  doc["family"] = family;
  doc["class_id"] = class_id;
  doc["title"] = title;
  doc["expected"] = {{"verdict", kVerdictEqualDistinct},
                     {"room_congruent_trajectory_distinct", expect_room_flag}};
  doc["bbox_half_width"] = half;

  json mem = json::array();
  for (const auto& m : members) {
    json entry;
    entry["label"] = m.label;
    entry["configuration"] = json::parse(configuration_to_json(m.config));
    entry["draw"] = draw_json(m.config, half);
    mem.push_back(entry);
  }
  doc["members"] = mem;

  json verdicts = json::array();
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = i + 1; j < members.size(); ++j) {
      const verification_report rep = verify_pair(members[i].config, members[j].config);
      json v;
      v["i"] = static_cast<int>(i);
      v["j"] = static_cast<int>(j);
      v["verdict"] = rep.verdict;
      v["ppdm_max_diff"] = rep.ppdm_max_diff;
      v["congruence"] = rep.congruence;
      v["room_congruence"] = rep.room_congruence;
      v["trajectory_mismatch"] = rep.trajectory_mismatch;
      v["room_congruent_trajectory_distinct"] = rep.room_congruent_trajectory_distinct;
      verdicts.push_back(v);
    }
  }
  doc["pair_verdicts"] = verdicts;

  const std::string stem = "figure" + std::to_string(family);
  doc["ppdm_csv"] = stem + "_ppdm.csv";

  figure_output out;
  out.family = family;
  out.class_id = class_id;
  out.files.push_back({stem + ".json", doc.dump(2) + "\n"});
  out.files.push_back({stem + "_ppdm.csv", ppdm_to_csv(compute_ppdm(members[0].config))});
  return out;
}

std::vector<Eigen::Vector3d> waypoints3() {
  return {Eigen::Vector3d(0.5, 0.4, 0.3), Eigen::Vector3d(-0.7, 1.0, -0.2),
          Eigen::Vector3d(0.9, -0.6, 1.1), Eigen::Vector3d(-0.2, 0.1, -0.9)};
}

// --- families ----------------------------------------------------------------

figure_output family3() {
  parallelogram_params p;
  p.phi1 = 0.0;
  p.phi3 = kPi / 2.0;
  p.branch = 0;
  p.offsets = {1.5, 1.5, 1.0, 1.0};
  p.waypoints = {Eigen::Vector2d(0.8, 0.5), Eigen::Vector2d(-0.6, -0.3),
                 Eigen::Vector2d(0.2, 0.7)};
  std::vector<member> members;
  for (double d : {0.4, 0.6, 0.8}) {
    p.d = d;
    auto res = gen_parallelogram_pair(p);
    if (members.empty()) members.push_back({"rectangle", res.pair.reference});
    members.push_back({"parallelogram d=" + format_double(d), res.pair.equivalent});
  }
  return assemble(3, kClassRank2Parallelogram,
                  "Three parallelogram rooms sharing one distance matrix", members,
                  false);
}

figure_output family4() {
  corridor_params p;
  p.a = 1.0;
  p.offsets = {1.2, 1.2, 2.0, 2.0};
  p.waypoints0 = {Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(-0.5, 0.4),
                  Eigen::Vector2d(0.8, -0.7)};
  std::vector<member> members;
  p.free_coords = {0.3, 1.5, -0.9};
  auto pr = gen_corridor_pair(p);
  members.push_back({"reference", pr.reference});
  members.push_back({"slide A", pr.equivalent});
  p.free_coords = {-1.1, 0.2, 0.8};
  members.push_back({"slide B", gen_corridor_pair(p).equivalent});
  return assemble(4, kClassRank1Corridor,
                  "Corridor of parallel walls: congruent rooms, slid trajectories",
                  members, true);
}

figure_output family5() {
  linear_trajectory2d_params p;
  for (int k = 0; k < 5; ++k) p.wall_angles.push_back(kPi / 2.0 + 2.0 * kPi * k / 5.0);
  p.a = 0.3;
  p.b = 0.9;
  p.c = 0.2;
  p.offsets = {1.5, 1.5, 1.5, 1.5, 1.5};
  p.gammas = {0.0, 1.0, 2.0};
  auto pr = gen_linear_trajectory_pair_2d(p);
  return assemble(5, kClassRank3LinearTrajectory,
                  "Pentagon room with two collinear trajectories through a fixed point",
                  {{"reference", pr.reference}, {"companion", pr.equivalent}}, false);
}

figure_output family6() {
  corridor3d_params p;
  p.a = 0.5;
  p.b = -0.3;
  p.offsets = {1.0, 1.0, 1.8, 1.8};
  p.waypoints0 = {Eigen::Vector3d(0.6, 0.4, -0.2), Eigen::Vector3d(-0.5, 0.9, 0.5),
                  Eigen::Vector3d(0.3, -0.8, 1.0)};
  std::vector<member> members;
  p.free_yz = {Eigen::Vector2d(1.2, 0.1), Eigen::Vector2d(-0.3, -0.8),
               Eigen::Vector2d(0.5, 1.4)};
  auto pr = gen_corridor3d_pair(p);
  members.push_back({"reference", pr.reference});
  members.push_back({"slide A", pr.equivalent});
  p.free_yz = {Eigen::Vector2d(-0.7, 0.9), Eigen::Vector2d(0.8, 0.2),
               Eigen::Vector2d(-1.0, -0.5)};
  members.push_back({"slide B", gen_corridor3d_pair(p).equivalent});
  return assemble(6, kClassRank1Corridor3D,
                  "Parallel planes in 3D: congruent rooms, trajectories slid in-plane",
                  members, true);
}

figure_output family7() {
  parallelepiped_params p;
  p.phi1 = 0.0;
  p.phi3 = kPi / 2.0;
  p.a = 0.2;
  p.b = -0.1;
  p.branch = 0;
  p.offsets = {1.5, 1.5, 1.0, 1.0};
  p.waypoints0 = {Eigen::Vector3d(0.5, 0.3, 1.0), Eigen::Vector3d(-0.6, 0.9, -0.4),
                  Eigen::Vector3d(1.1, -0.7, 0.2), Eigen::Vector3d(0.0, 0.4, -1.2)};
  std::vector<member> members;
  for (double f : {0.6, 0.8}) {
    p.f = f;
    auto res = gen_parallelepiped_pair(p);
    if (members.empty()) members.push_back({"tilted walls", res.pair.reference});
    members.push_back({"vertical walls f=" + format_double(f), res.pair.equivalent});
  }
  return assemble(7, kClassRank2Parallelepiped,
                  "Tilted parallelepiped walls flattened to vertical companions",
                  members, false);
}

figure_output family8() {
  prism_params p;
  p.a = 0.4;
  p.b = 0.3;
  p.wall_azimuths = {0.4, 1.3, 2.3, 3.8, 5.1};
  p.offsets = {1.4, 1.5, 1.3, 1.6, 1.2};
  p.waypoints0 = {Eigen::Vector3d(0.5, 0.2, -0.3), Eigen::Vector3d(-0.8, 1.0, 0.6),
                  Eigen::Vector3d(0.6, -0.9, 1.1)};
  std::vector<member> members;
  for (int variant = 0; variant < 2; ++variant) {
    p.slide = variant == 0 ? std::vector<double>{0.8, -0.5, 1.2}
                           : std::vector<double>{-0.6, 1.0, 0.1};
    auto res = gen_prism_pair(p);
    if (members.empty()) members.push_back({"reference", res.pair.reference});
    // Undo the rotation carried by the normal map: the de-rotated companion
    // has the identical room, only the trajectory slides along the axis.
    rigid_motion undo;
    undo.rotation = res.rotation.transpose();
    undo.translation = Eigen::Vector3d::Zero();
    members.push_back({std::string("slide ") + (variant == 0 ? "A" : "B"),
                       apply_rigid_motion(res.pair.equivalent, undo)});
  }
  return assemble(8, kClassRank2Prism,
                  "Prismatic room: identical walls, trajectories slid along the axis",
                  members, true);
}

figure_output family9() {
  // Choose (b, e) so the admissible azimuths land on fixed values for several
  // values of a: with z = -2 cot(phi), the two azimuth groups are the roots of
  // a quadratic whose sum pins b and whose value at one root pins e^2.
  const double phi_a = 1.9, phi_b = 0.7;
  const double zeta1 = -2.0 / std::tan(phi_a);
  const double zeta2 = -2.0 / std::tan(phi_b);

  two_parallel_sets_params p;
  p.inclinations = {kPi / 2.0, kPi / 2.0, kPi / 2.0, kPi / 2.0, 0.15, kPi - 0.15};
  p.set_assignment = {0, 0, 1, 1, 0, 0};
  p.antipodal = {0, 1, 0, 1, 0, 0};
  p.offsets = {1.5, 1.5, 1.2, 1.2, 1.0, 1.0};
  p.waypoints0 = waypoints3();

  std::vector<member> members;
  for (double a : {1.15, 1.35}) {
    const double b = (a * a - 1.0) * (zeta1 + zeta2) / (4.0 * a);
    const double e2 =
        1.0 - b * b + a * b * zeta1 - (a * a - 1.0) * zeta1 * zeta1 / 4.0;
    require(e2 > 0.0, errc::degenerate_class_parameters,
            "azimuth fit left no room for the second diagonal entry");
    p.a = a;
    p.b = b;
    p.e = std::sqrt(e2);
    auto pr = gen_two_parallel_sets_pair(p);
    if (members.empty()) members.push_back({"two parallel sets", pr.reference});
    members.push_back({"companion a=" + format_double(a), pr.equivalent});
  }
  return assemble(9, kClassRank3TwoParallelSets,
                  "Walls in two parallel sets with two distinct companion rooms",
                  members, false);
}

figure_output family10() {
  rank3_params p;
  p.alpha = 2;
  p.azimuths = {0.3, 1.2, 2.5};
  p.branch_choices = {0, 1, 0};
  p.t = {0.9, -0.3, 0.4, 1.1, 0.2, 0.8};
  p.offsets = {1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
  p.waypoints0 = waypoints3();
  auto pr = gen_rank3_pair(p);
  return assemble(10, kClassRank3Misc,
                  "Inclination pairs per azimuth under one triangular normal map",
                  {{"reference", pr.reference}, {"companion", pr.equivalent}}, false);
}

figure_output family11() {
  rank3_params p;
  p.alpha = 1;
  p.azimuths = {0.3, 1.2, 2.5, 3.9, 5.4};
  p.branch_choices = {0, 1, 0, 1, 0};
  p.t = {0.9, -0.3, 0.4, 1.1, 0.2, 0.8};
  p.offsets = {1.2, 1.0, 1.4, 1.1, 1.3};
  p.waypoints0 = waypoints3();
  auto pr = gen_rank3_pair(p);

  const Eigen::Matrix3Xd normals0 = pr.reference.normal_matrix();
  auto walk = [&](double step) {
    rank3_map t = p.t;
    for (int s = 0; s < 4; ++s) {
      auto next = rank3_manifold_step(normals0, t, step);
      require(next.has_value(), errc::degenerate_class_parameters,
              "normal map family is rigid at the chosen walls");
      t = *next;
    }
    return t;
  };

  auto companion = [&](const rank3_map& t) {
    configuration c = pr.reference;
    const Eigen::Matrix3d m = t.matrix();
    const Eigen::Matrix3d mt_inv = m.transpose().inverse();
    for (int k = 0; k < c.wall_count(); ++k)
      c.planes[k].normal = (m * pr.reference.planes[k].normal).normalized();
    for (int n = 0; n < c.waypoint_count(); ++n)
      c.waypoints[n] = mt_inv * pr.reference.waypoints[n];
    return c;
  };

  const rank3_map t_plus = walk(0.08);
  const rank3_map t_minus = walk(-0.08);
  return assemble(11, kClassRank3Misc,
                  "One-parameter family of normal maps over five fixed walls",
                  {{"reference", pr.reference},
                   {"companion +", companion(t_plus)},
                   {"companion -", companion(t_minus)}},
                  false);
}

figure_output family12() {
  planar_trajectory_params p;
  p.reference_walls = {Eigen::Vector2d(0.7, 0.3), Eigen::Vector2d(1.2, 1.5),
                       Eigen::Vector2d(2.0, 2.8), Eigen::Vector2d(0.9, 4.0),
                       Eigen::Vector2d(1.7, 5.1), Eigen::Vector2d(2.4, 0.9),
                       Eigen::Vector2d(1.1, 2.2)};
  p.a = 0.3;
  p.b = -0.2;
  p.c = 0.4;
  p.d = 0.5;
  p.e = 0.1;
  p.f = 0.45;
  p.g = -0.3;
  p.h = -0.6;
  p.offsets = {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6};
  p.gammas = {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.1, -0.4),
              Eigen::Vector2d(-0.7, 0.9), Eigen::Vector2d(0.5, 1.3)};
  auto pr = gen_planar_trajectory_pair(p);
  return assemble(12, kClassRank4PlanarTrajectory,
                  "Generic room with two planar trajectories through the origin",
                  {{"reference", pr.reference}, {"companion", pr.equivalent}}, false);
}

figure_output family13() {
  linear_trajectory3d_params p;
  p.reference_walls = {Eigen::Vector2d(0.8, 0.4), Eigen::Vector2d(1.4, 1.6),
                       Eigen::Vector2d(2.1, 2.9), Eigen::Vector2d(0.6, 4.1),
                       Eigen::Vector2d(1.9, 5.3), Eigen::Vector2d(1.0, 2.0)};
  p.equivalent_azimuths = {0.5, 1.3, 2.6, 3.8, 4.9, 0.1};
  p.a = 0.4;
  p.b = -0.3;
  p.c = 0.3;
  p.d = -0.2;
  p.e = 0.35;
  p.offsets = {1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
  p.gammas = {0.0, 1.2, -0.8};
  auto pr = gen_linear_trajectory3d_pair(p);
  return assemble(13, kClassRank5LinearTrajectory,
                  "Generic room with two collinear trajectories through the origin",
                  {{"reference", pr.reference}, {"companion", pr.equivalent}}, false);
}

}  // namespace

const std::vector<int>& figure_family_ids() {
  static const std::vector<int> ids = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  return ids;
}

figure_output run_figure_family(int family, std::uint64_t seed) {
  (void)seed;  // constants are pinned; output does not depend on the seed
  switch (family) {
    case 3: return family3();
    case 4: return family4();
    case 5: return family5();
    case 6: return family6();
    case 7: return family7();
    case 8: return family8();
    case 9: return family9();
    case 10: return family10();
    case 11: return family11();
    case 12: return family12();
    case 13: return family13();
    default:
      fail(errc::invalid_input,
           "unknown figure family " + std::to_string(family) + "; valid ids are 3..13");
  }
}

}  // namespace ppdm
