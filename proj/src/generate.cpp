#include "generate.hpp"

#include <cmath>
#include <set>

#include "classes3d.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace ppdm {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Reads overrides for one class; tracks which keys were consumed so typos in
// parameter names fail loudly instead of being silently ignored.
class param_reader {
 public:
  param_reader(const json& params, std::string class_id)
      : params_(params), class_id_(std::move(class_id)) {
    require(params_.is_object() || params_.is_null(), errc::invalid_input,
            "params must be a JSON object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return params_.is_object() && params_.contains(key);
  }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return params_.at(key);
  }

  double scalar(const std::string& key, double dflt) {
    if (!has(key)) return dflt;
    const json& v = params_.at(key);
    require(v.is_number(), errc::invalid_input, "parameter " + key + " must be a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int dflt) {
    if (!has(key)) return dflt;
    const json& v = params_.at(key);
    require(v.is_number_integer(), errc::invalid_input,
            "parameter " + key + " must be an integer");
    return v.get<int>();
  }

  std::vector<double> dvec(const std::string& key, std::vector<double> dflt) {
    if (!has(key)) return dflt;
    const json& v = params_.at(key);
    require(v.is_array(), errc::invalid_input, "parameter " + key + " must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
      require(x.is_number(), errc::invalid_input,
              "parameter " + key + " must hold numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<int> ivec(const std::string& key, std::vector<int> dflt) {
    if (!has(key)) return dflt;
    const json& v = params_.at(key);
    require(v.is_array(), errc::invalid_input, "parameter " + key + " must be an array");
    std::vector<int> out;
    for (const auto& x : v) {
      require(x.is_number_integer(), errc::invalid_input,
              "parameter " + key + " must hold integers");
      out.push_back(x.get<int>());
    }
    return out;
  }

  template <typename Vec>
  std::vector<Vec> vvec(const std::string& key, std::vector<Vec> dflt) {
    if (!has(key)) return dflt;
    const json& v = params_.at(key);
    require(v.is_array(), errc::invalid_input, "parameter " + key + " must be an array");
    std::vector<Vec> out;
    for (const auto& row : v) {
      require(row.is_array() && row.size() == Vec::RowsAtCompileTime, errc::invalid_input,
              "parameter " + key + " must hold length-" +
                  std::to_string(Vec::RowsAtCompileTime) + " arrays");
      Vec p;
      for (int i = 0; i < Vec::RowsAtCompileTime; ++i)
        p(i) = row.at(static_cast<size_t>(i)).get<double>();
      out.push_back(p);
    }
    return out;
  }

  void finish() const {
    if (!params_.is_object()) return;
    for (const auto& item : params_.items())
      require(used_.count(item.key()) != 0, errc::invalid_input,
              "unknown parameter \"" + item.key() + "\" for class " + class_id_);
  }

 private:
  const json& params_;
  std::string class_id_;
  std::set<std::string> used_;
};

std::vector<double> draw_vec(rng r, int n, double sigma) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(sigma * r.normal());
  return out;
}

std::vector<Eigen::Vector2d> draw_points2(rng r, int n, double sigma) {
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i < n; ++i)
    out.push_back(Eigen::Vector2d(sigma * r.normal(), sigma * r.normal()));
  return out;
}

std::vector<Eigen::Vector3d> draw_points3(rng r, int n, double sigma) {
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < n; ++i)
    out.push_back(
        Eigen::Vector3d(sigma * r.normal(), sigma * r.normal(), sigma * r.normal()));
  return out;
}

Eigen::Vector3d draw_unit3(rng& r) {
  while (true) {
    Eigen::Vector3d v(r.normal(), r.normal(), r.normal());
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

double draw_signed(rng& r, double lo, double hi) {
  return (r.coin() ? 1.0 : -1.0) * r.uniform(lo, hi);
}

json to_json(const std::vector<double>& v) { return json(v); }
json to_json(const std::vector<int>& v) { return json(v); }

template <typename Vec>
json to_json(const std::vector<Vec>& v) {
  json out = json::array();
  for (const auto& p : v) {
    json row = json::array();
    for (int i = 0; i < Vec::RowsAtCompileTime; ++i) row.push_back(p(i));
    out.push_back(row);
  }
  return out;
}

// --- 2D ------------------------------------------------------------------

generated_pair gen_corridor(param_reader& pr, rng root) {
  corridor_params p;
  p.a = pr.scalar("a", root.fork("a").uniform(-2.0, 2.0));
  const int walls = pr.integer("walls", 4);
  require(walls >= 2, errc::invalid_input, "corridor needs at least two walls");
  {
    std::vector<int> dflt;
    rng r = root.fork("signs");
    for (int k = 0; k < walls; ++k) dflt.push_back(r.coin() ? 1 : 0);
    p.signs = pr.ivec("signs", dflt);
  }
  p.offsets = pr.dvec("offsets", draw_vec(root.fork("offsets"), walls, 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points2(root.fork("waypoints0"), 3, 1.5));
  p.free_coords = pr.dvec(
      "free_coords",
      draw_vec(root.fork("free"), static_cast<int>(p.waypoints0.size()), 2.0));
  pr.finish();

  generated_pair out;
  out.pair = gen_corridor_pair(p);
  out.params_used = {{"a", p.a},
                     {"signs", to_json(p.signs)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)},
                     {"free_coords", to_json(p.free_coords)}};
  return out;
}

generated_pair gen_parallelogram(param_reader& pr, rng root) {
  parallelogram_params p;
  p.phi1 = pr.scalar("phi1", root.fork("phi1").uniform(0.0, kPi));
  p.phi3 = pr.scalar("phi3", p.phi1 + root.fork("phi3").uniform(0.35, kPi - 0.35));
  p.d = pr.scalar("d", root.fork("d").uniform(0.3, 0.85));
  p.branch = pr.integer("branch", -1);
  p.extra_walls = pr.ivec("extra_walls", {});
  const int walls = 4 + static_cast<int>(p.extra_walls.size());
  p.offsets = pr.dvec("offsets", draw_vec(root.fork("offsets"), walls, 1.5));
  p.waypoints = pr.vvec("waypoints", draw_points2(root.fork("waypoints"), 3, 1.5));
  pr.finish();

  generated_pair out;
  auto res = gen_parallelogram_pair(p);
  out.pair = res.pair;
  out.params_used = {{"phi1", p.phi1},
                     {"phi3", p.phi3},
                     {"d", p.d},
                     {"branch", p.branch},
                     {"extra_walls", to_json(p.extra_walls)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints", to_json(p.waypoints)},
                     {"a", res.a},
                     {"b", res.b}};
  return out;
}

generated_pair gen_linear2d(param_reader& pr, rng root) {
  linear_trajectory2d_params p;
  const int walls = pr.integer("walls", 5);
  require(walls >= 1, errc::invalid_input, "need at least one wall");
  {
    std::vector<double> dflt;
    rng r = root.fork("angles");
    for (int k = 0; k < walls; ++k) dflt.push_back(r.uniform(0.0, kTwoPi));
    p.wall_angles = pr.dvec("wall_angles", dflt);
  }
  p.a = pr.scalar("a", root.fork("a").uniform(-1.0, 1.0));
  {
    // Keep (b, c) short enough that every wall angle stays feasible.
    rng r = root.fork("bc");
    const double rho = r.uniform(0.2, 0.95) * std::sqrt(p.a * p.a + 1.0);
    const double psi = r.uniform(0.0, kTwoPi);
    p.b = pr.scalar("b", rho * std::cos(psi));
    p.c = pr.scalar("c", rho * std::sin(psi));
  }
  {
    std::vector<int> dflt;
    rng r = root.fork("signs");
    for (size_t k = 0; k < p.wall_angles.size(); ++k) dflt.push_back(r.coin() ? 1 : -1);
    p.signs = pr.ivec("signs", dflt);
  }
  p.offsets = pr.dvec(
      "offsets",
      draw_vec(root.fork("offsets"), static_cast<int>(p.wall_angles.size()), 1.5));
  p.gammas = pr.dvec("gammas", draw_vec(root.fork("gammas"), 3, 1.5));
  pr.finish();

  generated_pair out;
  out.pair = gen_linear_trajectory_pair_2d(p);
  out.params_used = {{"wall_angles", to_json(p.wall_angles)},
                     {"a", p.a},
                     {"b", p.b},
                     {"c", p.c},
                     {"signs", to_json(p.signs)},
                     {"offsets", to_json(p.offsets)},
                     {"gammas", to_json(p.gammas)}};
  return out;
}

// --- 3D ------------------------------------------------------------------

generated_pair gen_corridor3(param_reader& pr, rng root) {
  corridor3d_params p;
  p.a = pr.scalar("a", root.fork("a").uniform(-1.5, 1.5));
  p.b = pr.scalar("b", root.fork("b").uniform(-1.5, 1.5));
  const int walls = pr.integer("walls", 4);
  require(walls >= 2, errc::invalid_input, "corridor needs at least two walls");
  {
    std::vector<int> dflt;
    rng r = root.fork("signs");
    for (int k = 0; k < walls; ++k) dflt.push_back(r.coin() ? 1 : 0);
    p.signs = pr.ivec("signs", dflt);
  }
  p.offsets = pr.dvec("offsets", draw_vec(root.fork("offsets"), walls, 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points3(root.fork("waypoints0"), 4, 1.5));
  p.free_yz = pr.vvec(
      "free_yz",
      draw_points2(root.fork("free"), static_cast<int>(p.waypoints0.size()), 1.5));
  pr.finish();

  generated_pair out;
  out.pair = gen_corridor3d_pair(p);
  out.params_used = {{"a", p.a},
                     {"b", p.b},
                     {"signs", to_json(p.signs)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)},
                     {"free_yz", to_json(p.free_yz)}};
  return out;
}

generated_pair gen_parallelepiped(param_reader& pr, rng root) {
  parallelepiped_params p;
  p.phi1 = pr.scalar("phi1", root.fork("phi1").uniform(0.0, kPi));
  p.phi3 = pr.scalar("phi3", p.phi1 + root.fork("phi3").uniform(0.35, kPi - 0.35));
  p.f = pr.scalar("f", root.fork("f").uniform(0.3, 0.95));
  p.a = pr.scalar("a", root.fork("a").uniform(-0.7, 0.7));
  p.b = pr.scalar("b", root.fork("b").uniform(-0.7, 0.7));
  p.branch = pr.integer("branch", root.fork("branch").uniform_int(0, 3));
  p.extra_walls = pr.ivec("extra_walls", {});
  const int walls = 4 + static_cast<int>(p.extra_walls.size());
  p.offsets = pr.dvec("offsets", draw_vec(root.fork("offsets"), walls, 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points3(root.fork("waypoints0"), 4, 1.5));
  p.free_z = pr.dvec(
      "free_z", draw_vec(root.fork("free"), static_cast<int>(p.waypoints0.size()), 1.5));
  pr.finish();

  generated_pair out;
  auto res = gen_parallelepiped_pair(p);
  out.pair = res.pair;
  out.params_used = {{"phi1", p.phi1},
                     {"phi3", p.phi3},
                     {"f", p.f},
                     {"a", p.a},
                     {"b", p.b},
                     {"branch", p.branch},
                     {"extra_walls", to_json(p.extra_walls)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)},
                     {"free_z", to_json(p.free_z)},
                     {"c", res.c},
                     {"d", res.d}};
  return out;
}

generated_pair gen_prism(param_reader& pr, rng root) {
  prism_params p;
  p.a = pr.scalar("a", root.fork("a").normal());
  p.b = pr.scalar("b", root.fork("b").normal());
  p.sign_c = pr.integer("sign_c", root.fork("sc").coin() ? 1 : -1);
  p.sign_f = pr.integer("sign_f", root.fork("sf").coin() ? 1 : -1);
  p.sign_r = pr.integer("sign_r", 1);
  const int walls = pr.integer("walls", 5);
  require(walls >= 1, errc::invalid_input, "need at least one wall");
  {
    std::vector<double> dflt;
    rng r = root.fork("azimuths");
    for (int k = 0; k < walls; ++k) dflt.push_back(r.uniform(0.0, kTwoPi));
    p.wall_azimuths = pr.dvec("wall_azimuths", dflt);
  }
  p.offsets = pr.dvec(
      "offsets",
      draw_vec(root.fork("offsets"), static_cast<int>(p.wall_azimuths.size()), 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points3(root.fork("waypoints0"), 4, 1.5));
  p.slide = pr.dvec(
      "slide", draw_vec(root.fork("slide"), static_cast<int>(p.waypoints0.size()), 1.5));
  pr.finish();

  generated_pair out;
  auto res = gen_prism_pair(p);
  out.pair = res.pair;
  out.params_used = {{"a", p.a},
                     {"b", p.b},
                     {"sign_c", p.sign_c},
                     {"sign_f", p.sign_f},
                     {"sign_r", p.sign_r},
                     {"wall_azimuths", to_json(p.wall_azimuths)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)},
                     {"slide", to_json(p.slide)},
                     {"c", res.c},
                     {"d", res.d},
                     {"f", res.f}};
  return out;
}

generated_pair gen_rank3(param_reader& pr, rng root) {
  rank3_params p;
  p.alpha = pr.integer("alpha", 1);
  require(p.alpha >= 1 && p.alpha <= 4, errc::invalid_input, "alpha must be in 1..4");

  // Diagonal near +/-1, off-diagonal bounded away from zero: the map stays
  // invertible and visibly different from any signed axis permutation.
  const auto draw_map = [](rng r) {
    rank3_map t;
    t.a = draw_signed(r, 0.8, 1.25);
    t.e = draw_signed(r, 0.8, 1.25);
    t.i = draw_signed(r, 0.8, 1.25);
    t.b = draw_signed(r, 0.15, 0.45);
    t.c = draw_signed(r, 0.15, 0.45);
    t.f = draw_signed(r, 0.15, 0.45);
    return t;
  };
  p.t = draw_map(root.fork("t"));
  const bool user_map = pr.has("t");
  if (user_map) {
    const json& tj = pr.raw("t");
    require(tj.is_object(), errc::invalid_input, "parameter t must be an object");
    for (const auto& item : tj.items()) {
      const std::string& key = item.key();
      require(item.value().is_number(), errc::invalid_input,
              "map entry " + key + " must be a number");
      const double v = item.value().get<double>();
      if (key == "a")
        p.t.a = v;
      else if (key == "b")
        p.t.b = v;
      else if (key == "c")
        p.t.c = v;
      else if (key == "e")
        p.t.e = v;
      else if (key == "f")
        p.t.f = v;
      else if (key == "i")
        p.t.i = v;
      else
        fail(errc::invalid_input, "unknown map entry \"" + key + "\"; use a,b,c,e,f,i");
    }
  }

  const int azimuth_count = p.alpha == 1 ? 5 : 3;
  const bool user_azimuths = pr.has("azimuths");
  if (user_azimuths) {
    p.azimuths = pr.dvec("azimuths", {});
    p.branch_choices = pr.ivec("branch_choices", {});
  } else {
    // Resample azimuths whose inclination quadratic has no usable root; the
    // admissible set depends on the drawn map. A drawn map that admits too few
    // azimuths is itself redrawn; a user-pinned map is not.
    rng r = root.fork("azimuths");
    rng rb = root.fork("branches");
    for (int redraw = 0;; ++redraw) {
      p.azimuths.clear();
      p.branch_choices.clear();
      bool complete = true;
      for (int k = 0; k < azimuth_count && complete; ++k) {
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
          const double phi = r.uniform(0.0, kTwoPi);
          auto roots = rank3_theta_roots(p.t, phi);
          if (!roots || roots->empty()) continue;
          if (p.alpha >= 3 && roots->size() < 4) continue;
          int choice = 0;
          const int nroots = static_cast<int>(roots->size());
          if (p.alpha == 1)
            choice = rb.uniform_int(0, nroots - 1);
          else if (p.alpha == 2)
            choice = rb.uniform_int(0, nroots / 2 - 1);
          else if (p.alpha == 3)
            choice = rb.uniform_int(0, 3);
          p.azimuths.push_back(phi);
          p.branch_choices.push_back(choice);
          found = true;
        }
        complete = found;
      }
      if (complete) break;
      require(!user_map && redraw < 40, errc::infeasible_parameters,
              "no admissible azimuth found for the drawn normal map");
      p.t = draw_map(root.fork("t-redraw-" + std::to_string(redraw)));
    }
    pr.ivec("branch_choices", p.branch_choices);  // allow explicit override
  }

  const int walls = p.alpha * static_cast<int>(p.azimuths.size());
  p.offsets = pr.dvec("offsets", draw_vec(root.fork("offsets"), walls, 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points3(root.fork("waypoints0"), 4, 1.5));
  pr.finish();

  generated_pair out;
  out.pair = gen_rank3_pair(p);
  out.params_used = {{"alpha", p.alpha},
                     {"azimuths", to_json(p.azimuths)},
                     {"branch_choices", to_json(p.branch_choices)},
                     {"t",
                      {{"a", p.t.a},
                       {"b", p.t.b},
                       {"c", p.t.c},
                       {"e", p.t.e},
                       {"f", p.t.f},
                       {"i", p.t.i}}},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)}};
  return out;
}

generated_pair gen_tps(param_reader& pr, rng root) {
  two_parallel_sets_params p;
  {
    rng ra = root.fork("a"), re = root.fork("e");
    p.a = pr.scalar("a", draw_signed(ra, 1.15, 2.2));
    p.b = pr.scalar("b", root.fork("b").uniform(-1.5, 1.5));
    p.e = pr.scalar("e", draw_signed(re, 0.3, 0.95));
  }
  p.i = pr.integer("i", root.fork("i").coin() ? 1 : -1);
  const int walls = pr.integer("walls", 6);
  require(walls >= 1, errc::invalid_input, "need at least one wall");
  {
    std::vector<double> incl;
    rng r = root.fork("inclinations");
    for (int k = 0; k < walls; ++k) incl.push_back(r.uniform(0.25, kPi - 0.25));
    p.inclinations = pr.dvec("inclinations", incl);
  }
  {
    std::vector<int> sets;
    for (size_t k = 0; k < p.inclinations.size(); ++k)
      sets.push_back(k < p.inclinations.size() / 2 ? 0 : 1);
    p.set_assignment = pr.ivec("set_assignment", sets);
  }
  {
    std::vector<int> anti;
    rng r = root.fork("antipodal");
    for (size_t k = 0; k < p.inclinations.size(); ++k) anti.push_back(r.coin() ? 1 : 0);
    p.antipodal = pr.ivec("antipodal", anti);
  }
  p.offsets = pr.dvec(
      "offsets",
      draw_vec(root.fork("offsets"), static_cast<int>(p.inclinations.size()), 1.5));
  p.waypoints0 = pr.vvec("waypoints0", draw_points3(root.fork("waypoints0"), 4, 1.5));
  pr.finish();

  generated_pair out;
  out.pair = gen_two_parallel_sets_pair(p);
  out.params_used = {{"a", p.a},
                     {"b", p.b},
                     {"e", p.e},
                     {"i", p.i},
                     {"inclinations", to_json(p.inclinations)},
                     {"set_assignment", to_json(p.set_assignment)},
                     {"antipodal", to_json(p.antipodal)},
                     {"offsets", to_json(p.offsets)},
                     {"waypoints0", to_json(p.waypoints0)}};
  return out;
}

generated_pair gen_rank4(param_reader& pr, rng root) {
  planar_trajectory_params p;
  const int walls = pr.integer("walls", 7);
  require(walls >= 1, errc::invalid_input, "need at least one wall");
  {
    std::vector<Eigen::Vector2d> dflt;
    rng r = root.fork("walls");
    for (int k = 0; k < walls; ++k)
      dflt.push_back(Eigen::Vector2d(r.uniform(0.0, kPi), r.uniform(0.0, kTwoPi)));
    p.reference_walls = pr.vvec("reference_walls", dflt);
  }
  {
    // Rows short enough that the per-wall quadratic always has real roots.
    rng r = root.fork("map");
    const Eigen::Vector3d v1 = r.uniform(0.2, 0.65) * draw_unit3(r);
    const Eigen::Vector3d v2 = r.uniform(0.2, 0.65) * draw_unit3(r);
    p.a = pr.scalar("a", v1(0));
    p.b = pr.scalar("b", v1(1));
    p.c = pr.scalar("c", v1(2));
    p.e = pr.scalar("e", v2(0));
    p.f = pr.scalar("f", v2(1));
    p.g = pr.scalar("g", v2(2));
    p.d = pr.scalar("d", r.uniform(-0.8, 0.8));
    p.h = pr.scalar("h", r.uniform(-0.8, 0.8));
  }
  {
    std::vector<int> bits;
    rng r = root.fork("roots");
    for (size_t k = 0; k < p.reference_walls.size(); ++k)
      bits.push_back(r.coin() ? 1 : 0);
    p.root_bits = pr.ivec("root_bits", bits);
  }
  p.offsets = pr.dvec(
      "offsets",
      draw_vec(root.fork("offsets"), static_cast<int>(p.reference_walls.size()), 1.5));
  p.gammas = pr.vvec("gammas", draw_points2(root.fork("gammas"), 4, 1.5));
  pr.finish();

  generated_pair out;
  out.pair = gen_planar_trajectory_pair(p);
  out.params_used = {{"reference_walls", to_json(p.reference_walls)},
                     {"a", p.a},
                     {"b", p.b},
                     {"c", p.c},
                     {"d", p.d},
                     {"e", p.e},
                     {"f", p.f},
                     {"g", p.g},
                     {"h", p.h},
                     {"root_bits", to_json(p.root_bits)},
                     {"offsets", to_json(p.offsets)},
                     {"gammas", to_json(p.gammas)}};
  return out;
}

generated_pair gen_rank5(param_reader& pr, rng root) {
  linear_trajectory3d_params p;
  const int walls = pr.integer("walls", 6);
  require(walls >= 1, errc::invalid_input, "need at least one wall");
  {
    std::vector<Eigen::Vector2d> dflt;
    rng r = root.fork("walls");
    for (int k = 0; k < walls; ++k)
      dflt.push_back(Eigen::Vector2d(r.uniform(0.0, kPi), r.uniform(0.0, kTwoPi)));
    p.reference_walls = pr.vvec("reference_walls", dflt);
  }
  {
    std::vector<double> dflt;
    rng r = root.fork("azimuths");
    for (size_t k = 0; k < p.reference_walls.size(); ++k)
      dflt.push_back(r.uniform(0.0, kTwoPi));
    p.equivalent_azimuths = pr.dvec("equivalent_azimuths", dflt);
  }
  p.a = pr.scalar("a", root.fork("a").uniform(-1.0, 1.0));
  p.b = pr.scalar("b", root.fork("b").uniform(-1.0, 1.0));
  {
    // Short trajectory direction keeps every inclination equation solvable.
    rng r = root.fork("u");
    const Eigen::Vector3d u = r.uniform(0.2, 0.6) * draw_unit3(r);
    p.c = pr.scalar("c", u(0));
    p.d = pr.scalar("d", u(1));
    p.e = pr.scalar("e", u(2));
  }
  {
    std::vector<int> signs;
    rng r = root.fork("signs");
    for (size_t k = 0; k < p.reference_walls.size(); ++k)
      signs.push_back(r.coin() ? 1 : -1);
    p.signs = pr.ivec("signs", signs);
  }
  p.offsets = pr.dvec(
      "offsets",
      draw_vec(root.fork("offsets"), static_cast<int>(p.reference_walls.size()), 1.5));
  p.gammas = pr.dvec("gammas", draw_vec(root.fork("gammas"), 3, 1.5));
  p.waypoints0 = pr.vvec("waypoints0", std::vector<Eigen::Vector3d>{});
  pr.finish();

  generated_pair out;
  out.pair = gen_linear_trajectory3d_pair(p);
  out.params_used = {{"reference_walls", to_json(p.reference_walls)},
                     {"equivalent_azimuths", to_json(p.equivalent_azimuths)},
                     {"a", p.a},
                     {"b", p.b},
                     {"c", p.c},
                     {"d", p.d},
                     {"e", p.e},
                     {"signs", to_json(p.signs)},
                     {"offsets", to_json(p.offsets)},
                     {"gammas", to_json(p.gammas)}};
  return out;
}

}  // namespace

const std::vector<std::string>& known_class_ids() {
  static const std::vector<std::string> ids = {
      kClassRank1Corridor,       kClassRank2Parallelogram,
      kClassRank3LinearTrajectory, kClassRank1Corridor3D,
      kClassRank2Parallelepiped, kClassRank2Prism,
      kClassRank3Misc,           kClassRank3TwoParallelSets,
      kClassRank4PlanarTrajectory, kClassRank5LinearTrajectory};
  return ids;
}

generated_pair generate_class_pair(const std::string& class_id, const json& params,
                                   std::uint64_t seed) {
  param_reader pr(params, class_id);
  rng root = rng(seed).fork("generate").fork(class_id);

  generated_pair out;
  if (class_id == kClassRank1Corridor)
    out = gen_corridor(pr, root);
  else if (class_id == kClassRank2Parallelogram)
    out = gen_parallelogram(pr, root);
  else if (class_id == kClassRank3LinearTrajectory)
    out = gen_linear2d(pr, root);
  else if (class_id == kClassRank1Corridor3D)
    out = gen_corridor3(pr, root);
  else if (class_id == kClassRank2Parallelepiped)
    out = gen_parallelepiped(pr, root);
  else if (class_id == kClassRank2Prism)
    out = gen_prism(pr, root);
  else if (class_id == kClassRank3Misc)
    out = gen_rank3(pr, root);
  else if (class_id == kClassRank3TwoParallelSets)
    out = gen_tps(pr, root);
  else if (class_id == kClassRank4PlanarTrajectory)
    out = gen_rank4(pr, root);
  else if (class_id == kClassRank5LinearTrajectory)
    out = gen_rank5(pr, root);
  else {
    std::string known;
    for (const auto& id : known_class_ids()) known += (known.empty() ? "" : ", ") + id;
    fail(errc::invalid_input, "unknown class id \"" + class_id + "\"; known: " + known);
  }
  out.params_used["class_id"] = class_id;
  out.params_used["seed"] = seed;
  return out;
}

}  // namespace ppdm
