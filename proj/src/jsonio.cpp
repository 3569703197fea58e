#include "jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ppdm {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string configuration_to_json(const configuration& c) {
  validate(c);
  json planes = json::array();
  for (const auto& p : c.planes) {
    json normal = json::array();
    for (int i = 0; i < p.normal.size(); ++i) normal.push_back(p.normal(i));
    planes.push_back({{"normal", normal}, {"offset", p.offset}});
  }
  json waypoints = json::array();
  for (const auto& w : c.waypoints) {
    json point = json::array();
    for (int i = 0; i < w.size(); ++i) point.push_back(w(i));
    waypoints.push_back(point);
  }
  json doc = {{"dimension", c.dimension},
              {"planes", planes},
              {"waypoints", waypoints}};
  return doc.dump(2) + "\n";
}

configuration configuration_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("configuration JSON: ") + e.what());
  }
  configuration c;
  try {
    c.dimension = doc.at("dimension").get<int>();
    for (const auto& jp : doc.at("planes")) {
      plane p;
      const auto& jn = jp.at("normal");
      p.normal = VectorXd(jn.size());
      for (std::size_t i = 0; i < jn.size(); ++i)
        p.normal(static_cast<int>(i)) = jn[i].get<double>();
      p.offset = jp.at("offset").get<double>();
      c.planes.push_back(std::move(p));
    }
    for (const auto& jw : doc.at("waypoints")) {
      VectorXd w(jw.size());
      for (std::size_t i = 0; i < jw.size(); ++i)
        w(static_cast<int>(i)) = jw[i].get<double>();
      c.waypoints.push_back(std::move(w));
    }
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("configuration JSON: ") + e.what());
  }
  validate(c);
  return c;
}

std::string ppdm_to_csv(const MatrixXd& d) {
  std::ostringstream out;
  for (int k = 0; k < d.cols(); ++k) {
    if (k) out << ',';
    out << "wall_" << (k + 1);
  }
  out << '\n';
  for (int n = 0; n < d.rows(); ++n) {
    for (int k = 0; k < d.cols(); ++k) {
      if (k) out << ',';
      out << format_double(d(n, k));
    }
    out << '\n';
  }
  return out.str();
}

MatrixXd ppdm_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::parse_error,
          "distance CSV is empty");
  int cols = 1;
  for (char ch : line)
    if (ch == ',') ++cols;
  std::vector<double> values;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    int got = 0;
    while (std::getline(cells, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(errc::parse_error, "distance CSV: bad number '" + cell + "'");
      }
      ++got;
    }
    require(got == cols, errc::parse_error,
            "distance CSV: row " + std::to_string(rows + 1) + " has " +
                std::to_string(got) + " cells, expected " + std::to_string(cols));
    ++rows;
  }
  require(rows >= 1, errc::parse_error, "distance CSV has no data rows");
  MatrixXd d(rows, cols);
  for (int n = 0; n < rows; ++n)
    for (int k = 0; k < cols; ++k) d(n, k) = values[n * cols + k];
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::invalid_input, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::invalid_input, "cannot write file: " + path);
  out << contents;
}

}  // namespace ppdm
