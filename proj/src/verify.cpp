#include "verify.hpp"

#include <algorithm>

#include "error.hpp"

namespace ppdm {

verification_report verify_pair(const configuration& a, const configuration& b) {
  validate(a);
  validate(b);
  require(a.dimension == b.dimension, errc::invalid_input,
          "configurations live in different dimensions");
  require(a.wall_count() == b.wall_count() && a.waypoint_count() == b.waypoint_count(),
          errc::invalid_input, "configurations have different shapes");

  verification_report rep;
  const Eigen::MatrixXd da = compute_ppdm(a);
  const Eigen::MatrixXd db = compute_ppdm(b);
  rep.ppdm_max_diff = (da - db).cwiseAbs().maxCoeff();
  rep.equivalence_residuals = equivalence_residual(a, b);

  const congruence_report cong = congruence_details(a, b);
  rep.congruence = cong.residual;
  rep.room_congruence = cong.room_residual;
  rep.trajectory_mismatch = cong.trajectory_mismatch;

  const double scale = std::max({1.0, a.bounding_radius(), b.bounding_radius()});
  const bool equal = rep.ppdm_max_diff <= 1e-8 * scale;
  const bool congruent = rep.congruence <= 1e-6 * scale;

  if (!equal) {
    rep.verdict = kVerdictDifferent;
  } else if (congruent) {
    rep.verdict = kVerdictEqualCongruent;
  } else {
    rep.verdict = kVerdictEqualDistinct;
  }
  rep.room_congruent_trajectory_distinct =
      rep.verdict == kVerdictEqualDistinct && rep.room_congruence <= 1e-6 * scale;
  return rep;
}

}  // namespace ppdm
