#include "ppdm/ppdm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <string>

#include "json.hpp"

#include "classify.hpp"
#include "error.hpp"
#include "figures.hpp"
#include "generate.hpp"
#include "geometry.hpp"
#include "jsonio.hpp"
#include "reconstruct.hpp"
#include "verify.hpp"

struct ppdm_config {
  ppdm::configuration value;
};

struct ppdm_matrix {
  Eigen::MatrixXd value;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

ppdm_status set_error(ppdm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

ppdm_status status_from(const ppdm::error& e) {
  switch (e.code()) {
    case ppdm::errc::invalid_input: return PPDM_INVALID_INPUT;
    case ppdm::errc::infeasible_parameters: return PPDM_INFEASIBLE_PARAMETERS;
    case ppdm::errc::degenerate_class_parameters: return PPDM_DEGENERATE_CLASS_PARAMETERS;
    case ppdm::errc::overconstrained_class: return PPDM_OVERCONSTRAINED_CLASS;
    case ppdm::errc::ambiguous_or_degenerate: return PPDM_AMBIGUOUS_OR_DEGENERATE;
    case ppdm::errc::degenerate_trajectory_or_room: return PPDM_DEGENERATE_TRAJECTORY_OR_ROOM;
    case ppdm::errc::parse_error: return PPDM_PARSE_ERROR;
  }
  return PPDM_INTERNAL_ERROR;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, mapping exceptions onto statuses; fn performs its own output
// writes only after everything that can throw has succeeded.
template <typename Fn>
ppdm_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ppdm::error& e) {
    return set_error(status_from(e), e.what());
  } catch (const std::exception& e) {
    return set_error(PPDM_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(PPDM_INTERNAL_ERROR, "unknown error");
  }
}

ppdm_status require_arg(bool ok, const char* message) {
  return ok ? PPDM_OK : set_error(PPDM_INVALID_INPUT, message);
}

json verification_to_json(const ppdm::verification_report& rep) {
  return {{"verdict", rep.verdict},
          {"ppdm_max_diff", rep.ppdm_max_diff},
          {"equivalence_residuals",
           {{"coupling", rep.equivalence_residuals.coupling},
            {"offset_gap", rep.equivalence_residuals.offset_gap}}},
          {"congruence", rep.congruence},
          {"room_congruence", rep.room_congruence},
          {"trajectory_mismatch", rep.trajectory_mismatch},
          {"room_congruent_trajectory_distinct", rep.room_congruent_trajectory_distinct}};
}

json classification_to_json(const ppdm::classification_report& rep) {
  json matched = json::array();
  for (const auto& m : rep.matched_classes) {
    json entry;
    entry["class_id"] = m.class_id;
    entry["evidence"] = json::object();
    for (const auto& [key, value] : m.evidence) entry["evidence"][key] = value;
    matched.push_back(entry);
  }
  json details = json::object();
  for (const auto& [key, value] : rep.details) details[key] = value;
  return {{"ambiguous", rep.ambiguous},
          {"matched_classes", matched},
          {"waypoint_affine_rank", rep.waypoint_affine_rank},
          {"normal_rank", rep.normal_rank},
          {"details", details}};
}

}  // namespace

extern "C" {

const char* ppdm_api_version(void) { return "1.0.0"; }

const char* ppdm_status_name(ppdm_status status) {
  switch (status) {
    case PPDM_OK: return "ok";
    case PPDM_INVALID_INPUT: return "invalid-input";
    case PPDM_INFEASIBLE_PARAMETERS: return "InfeasibleParameters";
    case PPDM_DEGENERATE_CLASS_PARAMETERS: return "DegenerateClassParameters";
    case PPDM_OVERCONSTRAINED_CLASS: return "OverconstrainedClass";
    case PPDM_AMBIGUOUS_OR_DEGENERATE: return "AmbiguousOrDegenerate";
    case PPDM_DEGENERATE_TRAJECTORY_OR_ROOM: return "DegenerateTrajectoryOrRoom";
    case PPDM_PARSE_ERROR: return "parse-error";
    case PPDM_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown-status";
}

const char* ppdm_last_error(void) { return g_last_error.c_str(); }

void ppdm_string_free(char* s) { std::free(s); }
void ppdm_config_free(ppdm_config* c) { delete c; }
void ppdm_matrix_free(ppdm_matrix* m) { delete m; }

ppdm_status ppdm_config_from_json(const char* json_text, ppdm_config** out) {
  if (auto bad = require_arg(json_text != nullptr && out != nullptr,
                             "json_text and out must be non-null"))
    return bad;
  return guarded([&] {
    auto* handle = new ppdm_config{ppdm::configuration_from_json(json_text)};
    *out = handle;
    return PPDM_OK;
  });
}

ppdm_status ppdm_config_to_json(const ppdm_config* c, char** out_json) {
  if (auto bad = require_arg(c != nullptr && out_json != nullptr,
                             "config and out_json must be non-null"))
    return bad;
  return guarded([&] {
    char* text = copy_string(ppdm::configuration_to_json(c->value));
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_json = text;
    return PPDM_OK;
  });
}

int ppdm_config_dimension(const ppdm_config* c) {
  return c == nullptr ? 0 : c->value.dimension;
}

int ppdm_config_walls(const ppdm_config* c) {
  return c == nullptr ? 0 : c->value.wall_count();
}

int ppdm_config_waypoints(const ppdm_config* c) {
  return c == nullptr ? 0 : c->value.waypoint_count();
}

ppdm_status ppdm_compute(const ppdm_config* c, ppdm_matrix** out) {
  if (auto bad = require_arg(c != nullptr && out != nullptr,
                             "config and out must be non-null"))
    return bad;
  return guarded([&] {
    auto* handle = new ppdm_matrix{ppdm::compute_ppdm(c->value)};
    *out = handle;
    return PPDM_OK;
  });
}

ppdm_status ppdm_matrix_from_csv(const char* csv_text, ppdm_matrix** out) {
  if (auto bad = require_arg(csv_text != nullptr && out != nullptr,
                             "csv_text and out must be non-null"))
    return bad;
  return guarded([&] {
    auto* handle = new ppdm_matrix{ppdm::ppdm_from_csv(csv_text)};
    *out = handle;
    return PPDM_OK;
  });
}

ppdm_status ppdm_matrix_to_csv(const ppdm_matrix* m, char** out_csv) {
  if (auto bad = require_arg(m != nullptr && out_csv != nullptr,
                             "matrix and out_csv must be non-null"))
    return bad;
  return guarded([&] {
    char* text = copy_string(ppdm::ppdm_to_csv(m->value));
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_csv = text;
    return PPDM_OK;
  });
}

int ppdm_matrix_rows(const ppdm_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->value.rows());
}

int ppdm_matrix_cols(const ppdm_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->value.cols());
}

ppdm_status ppdm_matrix_get(const ppdm_matrix* m, int row, int col, double* out) {
  if (auto bad = require_arg(m != nullptr && out != nullptr,
                             "matrix and out must be non-null"))
    return bad;
  if (auto bad = require_arg(row >= 0 && row < m->value.rows() && col >= 0 &&
                                 col < m->value.cols(),
                             "matrix index out of range"))
    return bad;
  *out = m->value(row, col);
  return PPDM_OK;
}

double ppdm_distance_from_tof(double tau_seconds, double speed) {
  double out = std::numeric_limits<double>::quiet_NaN();
  guarded([&] {
    out = ppdm::distance_from_tof(tau_seconds, speed);
    return PPDM_OK;
  });
  return out;
}

ppdm_status ppdm_known_class_ids(char** out_json) {
  if (auto bad = require_arg(out_json != nullptr, "out_json must be non-null")) return bad;
  return guarded([&] {
    json ids = json::array();
    for (const auto& id : ppdm::known_class_ids()) ids.push_back(id);
    char* text = copy_string(ids.dump(2) + "\n");
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_json = text;
    return PPDM_OK;
  });
}

ppdm_status ppdm_generate_pair(const char* class_id, const char* params_json,
                               uint64_t seed, ppdm_config** out_reference,
                               ppdm_config** out_equivalent, char** out_params_json) {
  if (auto bad = require_arg(class_id != nullptr && out_reference != nullptr &&
                                 out_equivalent != nullptr,
                             "class_id and both out handles must be non-null"))
    return bad;
  return guarded([&] {
    json params = json::object();
    if (params_json != nullptr && params_json[0] != '\0') {
      params = json::parse(params_json, nullptr, false);
      if (params.is_discarded())
        ppdm::fail(ppdm::errc::parse_error, "params_json is not valid JSON");
    }
    ppdm::generated_pair gen = ppdm::generate_class_pair(class_id, params, seed);

    char* echoed = nullptr;
    if (out_params_json != nullptr) {
      echoed = copy_string(gen.params_used.dump(2) + "\n");
      if (echoed == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    }
    *out_reference = new ppdm_config{std::move(gen.pair.reference)};
    *out_equivalent = new ppdm_config{std::move(gen.pair.equivalent)};
    if (out_params_json != nullptr) *out_params_json = echoed;
    return PPDM_OK;
  });
}

ppdm_status ppdm_classify(const ppdm_config* c, double tol, int solver_restarts,
                          uint64_t seed, char** out_report_json) {
  if (auto bad = require_arg(c != nullptr && out_report_json != nullptr,
                             "config and out_report_json must be non-null"))
    return bad;
  return guarded([&] {
    const double use_tol = tol > 0.0 ? tol : 1e-8;
    const int use_restarts = solver_restarts > 0 ? solver_restarts : 128;
    const ppdm::classification_report rep =
        ppdm::classify(c->value, use_tol, use_restarts, seed);
    char* text = copy_string(classification_to_json(rep).dump(2) + "\n");
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_report_json = text;
    return PPDM_OK;
  });
}

ppdm_status ppdm_reconstruct(const ppdm_matrix* m, int dimension, double tol,
                             int anchor_row, ppdm_config** out_config,
                             char** out_report_json) {
  if (auto bad = require_arg(m != nullptr && out_config != nullptr,
                             "matrix and out_config must be non-null"))
    return bad;
  return guarded([&] {
    const double use_tol = tol > 0.0 ? tol : 1e-8;
    ppdm::reconstruction_result res =
        ppdm::reconstruct_configuration(m->value, dimension, use_tol, anchor_row);

    char* report = nullptr;
    if (out_report_json != nullptr) {
      json rep = {{"ppdm_residual", res.ppdm_residual},
                  {"gram_conditioning", res.gram_conditioning},
                  {"system_rank", res.system_rank},
                  {"underdetermined_metric", res.underdetermined_metric}};
      report = copy_string(rep.dump(2) + "\n");
      if (report == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    }
    *out_config = new ppdm_config{std::move(res.config)};
    if (out_report_json != nullptr) *out_report_json = report;
    return PPDM_OK;
  });
}

ppdm_status ppdm_verify_pair(const ppdm_config* a, const ppdm_config* b,
                             char** out_report_json) {
  if (auto bad = require_arg(a != nullptr && b != nullptr && out_report_json != nullptr,
                             "both configs and out_report_json must be non-null"))
    return bad;
  return guarded([&] {
    const ppdm::verification_report rep = ppdm::verify_pair(a->value, b->value);
    char* text = copy_string(verification_to_json(rep).dump(2) + "\n");
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_report_json = text;
    return PPDM_OK;
  });
}

ppdm_status ppdm_figure_family(int family, uint64_t seed, char** out_files_json) {
  if (auto bad = require_arg(out_files_json != nullptr, "out_files_json must be non-null"))
    return bad;
  return guarded([&] {
    const ppdm::figure_output out = ppdm::run_figure_family(family, seed);
    json files = json::array();
    for (const auto& f : out.files)
      files.push_back({{"name", f.name}, {"content", f.content}});
    json doc = {{"family", out.family}, {"class_id", out.class_id}, {"files", files}};
    char* text = copy_string(doc.dump(2) + "\n");
    if (text == nullptr) return set_error(PPDM_INTERNAL_ERROR, "out of memory");
    *out_files_json = text;
    return PPDM_OK;
  });
}

}  // extern "C"
