/* C interface to the boundary-curve library. All handles are opaque; every
 * fallible call returns nov_status and leaves a message retrievable through
 * nov_last_error() on the calling thread. Strings returned through char**
 * out-parameters are released with nov_string_free(). */
#ifndef NONOVERLAP_H
#define NONOVERLAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(NOV_BUILDING_LIBRARY)
#define NOV_API __attribute__((visibility("default")))
#else
#define NOV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nov_status {
  NOV_OK = 0,
  NOV_ERR_SYNTAX = 1,
  NOV_ERR_CONSTANT_FUNCTIONAL = 2,
  NOV_ERR_DOMAIN = 3,
  NOV_ERR_DEGENERATE = 4,
  NOV_ERR_BRANCH = 5,
  NOV_ERR_POLE_ON_PATH = 6,
  NOV_ERR_NO_CONVERGENCE = 7,
  NOV_ERR_INVALID_BOUNDARY = 8,
  NOV_ERR_GUARD_VIOLATION = 9,
  NOV_ERR_TRACE_ABORT = 10,
  NOV_ERR_NOT_CLOSED = 11,
  NOV_ERR_CONFIG = 12,
  NOV_ERR_IO = 13,
  NOV_ERR_INVALID_ARGUMENT = 14,
  NOV_ERR_INTERNAL = 15
} nov_status;

typedef enum nov_containment {
  NOV_INSIDE = 0,
  NOV_OUTSIDE = 1,
  NOV_NEAR_BOUNDARY = 2
} nov_containment;

typedef struct nov_complex {
  double re;
  double im;
} nov_complex;

typedef struct nov_config {
  double r;   /* in (0, 1) */
  double rho; /* in (1, inf) */
} nov_config;

typedef struct nov_trace_options {
  int alpha_steps;
  double solver_tol;
  double closure_tol;
} nov_trace_options;

typedef struct nov_point {
  double alpha;
  double normal_angle;
  nov_complex I;
  nov_complex w1;
  nov_complex w2;
  double A;
  double B;
  double residual_norm;
} nov_point;

typedef struct nov_verify_options {
  uint64_t seed;
  int tuples;
  int elliptic_args;
  double tolerance;
} nov_verify_options;

typedef struct nov_functional nov_functional;
typedef struct nov_trace nov_trace;
typedef struct nov_cloud nov_cloud;

NOV_API const char* nov_version(void);
NOV_API const char* nov_status_name(nov_status status);
NOV_API const char* nov_last_error(void);
NOV_API void nov_string_free(char* s);

NOV_API nov_status nov_functional_parse(const char* text, nov_functional** out);
NOV_API void nov_functional_free(nov_functional* f);
NOV_API nov_status nov_functional_to_string(const nov_functional* f, char** out);
NOV_API nov_status nov_functional_eval(const nov_functional* f, nov_complex w1, nov_complex w2, nov_complex* out);
/* out[0..3] = dJ/dw1 .. dJ/dw4 */
NOV_API nov_status nov_functional_gradient(const nov_functional* f, nov_complex w1, nov_complex w2,
                                           nov_complex out[4]);
NOV_API nov_status nov_functional_pq(const nov_functional* f, nov_complex w1, nov_complex w2, double alpha,
                                     nov_complex* p, nov_complex* q);

NOV_API void nov_trace_options_default(nov_trace_options* opts);
NOV_API nov_status nov_trace_run(const nov_functional* f, nov_config cfg, const nov_trace_options* opts,
                                 nov_trace** out);
NOV_API void nov_trace_free(nov_trace* t);
NOV_API size_t nov_trace_point_count(const nov_trace* t);
NOV_API nov_status nov_trace_point(const nov_trace* t, size_t index, nov_point* out);
NOV_API size_t nov_trace_failure_count(const nov_trace* t);
NOV_API int nov_trace_closed(const nov_trace* t);
NOV_API double nov_trace_closure_defect(const nov_trace* t);
NOV_API double nov_trace_diameter(const nov_trace* t);
NOV_API nov_status nov_trace_contains(const nov_trace* t, nov_complex z, nov_containment* out);
NOV_API nov_status nov_trace_csv(const nov_trace* t, char** out);
NOV_API nov_status nov_trace_json(const nov_trace* t, char** out);
/* cloud may be NULL */
NOV_API nov_status nov_trace_svg(const nov_trace* t, const nov_cloud* cloud, char** out);

NOV_API nov_status nov_cloud_sample(const nov_functional* f, nov_config cfg, int count, uint64_t seed,
                                    nov_cloud** out);
NOV_API void nov_cloud_free(nov_cloud* c);
NOV_API size_t nov_cloud_size(const nov_cloud* c);
NOV_API nov_status nov_cloud_value(const nov_cloud* c, size_t index, nov_complex* out);
NOV_API nov_status nov_cloud_csv(const nov_cloud* c, char** out);

NOV_API void nov_verify_options_default(nov_verify_options* opts);
/* Runs the quadrature verification suite; *all_passed is 0 or 1. */
NOV_API nov_status nov_verify(nov_config cfg, const nov_verify_options* opts, char** report_json,
                              int* all_passed);

NOV_API nov_status nov_write_file(const char* path, const char* content);

#ifdef __cplusplus
}
#endif

#endif
