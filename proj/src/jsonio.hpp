#pragma once

#include <string>

#include "geometry.hpp"

namespace ppdm {

// Configuration document:
//   {"dimension": 2|3,
//    "planes": [{"normal": [..], "offset": x}, ...],
//    "waypoints": [[..], ...]}
std::string configuration_to_json(const configuration& c);
configuration configuration_from_json(const std::string& text);

// Distance-matrix CSV: header "wall_1,...,wall_K", one row per waypoint,
// 17 significant digits (round-trips doubles exactly).
std::string ppdm_to_csv(const MatrixXd& d);
MatrixXd ppdm_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Fixed-format double used everywhere byte-stable output matters.
std::string format_double(double x);

}  // namespace ppdm
