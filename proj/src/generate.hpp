#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "classes2d.hpp"

namespace ppdm {

struct generated_pair {
  class_pair pair;
  nlohmann::json params_used;  // drawn + overridden parameters, echoed back
};

// Seeded draw from one of the ten ambiguity classes. `params` may override
// any of the class generator's fields (unknown keys are rejected); missing
// fields are drawn from ranges that keep the construction feasible, so a
// bare class id plus a seed always yields a valid pair.
generated_pair generate_class_pair(const std::string& class_id,
                                   const nlohmann::json& params, std::uint64_t seed);

const std::vector<std::string>& known_class_ids();

}  // namespace ppdm
