#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ppdm {

struct figure_file {
  std::string name;
  std::string content;
};

// One ambiguity construction rendered as data: a list of configurations
// sharing a single distance matrix, pairwise verdicts, and wall outlines
// clipped to a common box. Families are numbered 3 through 13.
struct figure_output {
  int family = 0;
  std::string class_id;
  std::vector<figure_file> files;  // figure<k>.json and figure<k>_ppdm.csv
};

figure_output run_figure_family(int family, std::uint64_t seed);

const std::vector<int>& figure_family_ids();

}  // namespace ppdm
