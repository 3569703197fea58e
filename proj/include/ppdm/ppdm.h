/* C interface for the point-to-plane distance matrix library.
 *
 * Conventions:
 *   - Every function that can fail returns a ppdm_status; PPDM_OK is 0.
 *   - On failure, ppdm_last_error() returns a message for the calling thread;
 *     the message is valid until the next failing call on the same thread.
 *   - Out-parameters are written only on success.
 *   - Strings returned through char** are owned by the caller; release them
 *     with ppdm_string_free. Handles are released with the matching *_free.
 */
#ifndef PPDM_H
#define PPDM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppdm_status {
  PPDM_OK = 0,
  PPDM_INVALID_INPUT = 1,
  PPDM_INFEASIBLE_PARAMETERS = 2,
  PPDM_DEGENERATE_CLASS_PARAMETERS = 3,
  PPDM_OVERCONSTRAINED_CLASS = 4,
  PPDM_AMBIGUOUS_OR_DEGENERATE = 5,
  PPDM_DEGENERATE_TRAJECTORY_OR_ROOM = 6,
  PPDM_PARSE_ERROR = 7,
  PPDM_INTERNAL_ERROR = 100
} ppdm_status;

/* A room (oriented walls) together with a trajectory (ordered waypoints). */
typedef struct ppdm_config ppdm_config;
/* A signed point-to-plane distance matrix: rows = waypoints, cols = walls. */
typedef struct ppdm_matrix ppdm_matrix;

const char* ppdm_api_version(void);
const char* ppdm_status_name(ppdm_status status);
const char* ppdm_last_error(void);

void ppdm_string_free(char* s);
void ppdm_config_free(ppdm_config* c);
void ppdm_matrix_free(ppdm_matrix* m);

/* Configuration JSON:
 *   {"dimension": 2|3,
 *    "planes": [{"normal": [...], "offset": q}, ...],
 *    "waypoints": [[...], ...]}
 */
ppdm_status ppdm_config_from_json(const char* json_text, ppdm_config** out);
ppdm_status ppdm_config_to_json(const ppdm_config* c, char** out_json);
int ppdm_config_dimension(const ppdm_config* c);
int ppdm_config_walls(const ppdm_config* c);
int ppdm_config_waypoints(const ppdm_config* c);

ppdm_status ppdm_compute(const ppdm_config* c, ppdm_matrix** out);
/* CSV: header "wall_1,...,wall_K", then one row per waypoint. */
ppdm_status ppdm_matrix_from_csv(const char* csv_text, ppdm_matrix** out);
ppdm_status ppdm_matrix_to_csv(const ppdm_matrix* m, char** out_csv);
int ppdm_matrix_rows(const ppdm_matrix* m);
int ppdm_matrix_cols(const ppdm_matrix* m);
ppdm_status ppdm_matrix_get(const ppdm_matrix* m, int row, int col, double* out);

/* Signed distance from a round-trip time: d = tau * speed / 2.
 * NaN (with ppdm_last_error set) for tau < 0 or speed <= 0. */
double ppdm_distance_from_tof(double tau_seconds, double speed);

/* JSON array of the ten ambiguity class ids. */
ppdm_status ppdm_known_class_ids(char** out_json);

/* Draws a reference/equivalent pair from one ambiguity class. params_json
 * may be NULL, "{}", or an object overriding the class generator's fields;
 * out_params_json (optional, may be NULL) echoes the values actually used. */
ppdm_status ppdm_generate_pair(const char* class_id, const char* params_json,
                               uint64_t seed, ppdm_config** out_reference,
                               ppdm_config** out_equivalent, char** out_params_json);

/* Decides whether the configuration admits an equivalent non-congruent
 * companion and reports every matching ambiguity class. tol <= 0, restarts
 * <= 0 pick the defaults (1e-8, 128). */
ppdm_status ppdm_classify(const ppdm_config* c, double tol, int solver_restarts,
                          uint64_t seed, char** out_report_json);

/* Rebuilds a configuration (up to rigid motion) from a distance matrix.
 * dimension is 2 or 3; tol <= 0 picks 1e-8; anchor_row selects the waypoint
 * translated to the origin. */
ppdm_status ppdm_reconstruct(const ppdm_matrix* m, int dimension, double tol,
                             int anchor_row, ppdm_config** out_config,
                             char** out_report_json);

/* Compares two configurations:
 *   verdict "DifferentPPDM" | "EqualPPDM-Congruent" | "EqualPPDM-Distinct". */
ppdm_status ppdm_verify_pair(const ppdm_config* a, const ppdm_config* b,
                             char** out_report_json);

/* Families 3..13. Returns {"family":k,"class_id":...,"files":[{"name":...,
 * "content":...}, ...]}; contents are byte-stable for a fixed seed. */
ppdm_status ppdm_figure_family(int family, uint64_t seed, char** out_files_json);

#ifdef __cplusplus
}
#endif

#endif /* PPDM_H */
