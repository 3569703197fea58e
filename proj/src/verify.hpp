#pragma once

#include <string>

#include "geometry.hpp"

namespace ppdm {

inline constexpr const char* kVerdictEqualCongruent = "EqualPPDM-Congruent";
inline constexpr const char* kVerdictEqualDistinct = "EqualPPDM-Distinct";
inline constexpr const char* kVerdictDifferent = "DifferentPPDM";

struct verification_report {
  double ppdm_max_diff = 0.0;
  equivalence_residual_t equivalence_residuals;
  double congruence = 0.0;
  double room_congruence = 0.0;
  double trajectory_mismatch = 0.0;
  std::string verdict;
  // Same room up to a rigid motion, but no motion aligns the trajectories too
  // (sliding corridors and prisms).
  bool room_congruent_trajectory_distinct = false;
};

// Thresholds scale with the larger bounding radius: PPDMs count as equal
// below 1e-8 * scale, configurations as congruent below 1e-6 * scale.
verification_report verify_pair(const configuration& a, const configuration& b);

}  // namespace ppdm
