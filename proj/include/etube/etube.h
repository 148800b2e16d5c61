#ifndef ETUBE_ETUBE_H
#define ETUBE_ETUBE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ETUBE_API __declspec(dllexport)
#else
#define ETUBE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the values match etube::ErrorCode. */
typedef enum etube_status {
  ETUBE_OK = 0,
  ETUBE_INVALID_ARGUMENT = 1,
  ETUBE_REAL_POINT,
  ETUBE_COLLINEARITY,
  ETUBE_DEGENERATE,
  ETUBE_INFINITY,
  ETUBE_NOT_INTERIOR,
  ETUBE_VALIDATION,
  ETUBE_INSIDE_TUBE,
  ETUBE_NOT_BOUNDARY,
  ETUBE_REPRESENTATION,
  ETUBE_EMPTY_SLICE,
  ETUBE_OUTSIDE_TUBE,
  ETUBE_UNSUPPORTED_CONFIGURATION,
  ETUBE_REAL_INPUT,
  ETUBE_ZERO_DIRECTION,
  ETUBE_RESOLUTION,
  ETUBE_GROUP_VALIDATION,
  ETUBE_PARSE,
  ETUBE_IO,
  ETUBE_INTERNAL = 100
} etube_status;

/* A parsed domain spec: the domain, its tube, generators and controls. */
typedef struct etube_spec etube_spec;
/* The reports of one verifier suite run. */
typedef struct etube_report etube_report;

typedef struct etube_check_options {
  uint64_t samples;
  uint64_t lines;
  int32_t grid;
  double tolerance; /* <= 0 keeps the verifier defaults */
  uint64_t seed;
} etube_check_options;

typedef enum etube_slice_format { ETUBE_SLICE_CSV = 0, ETUBE_SLICE_PGM = 1 } etube_slice_format;

/* Message of the last failure on the calling thread. */
ETUBE_API const char* etube_last_error(void);
ETUBE_API const char* etube_status_name(etube_status s);

/* Strings and buffers returned by the library are released with this. */
ETUBE_API void etube_free(void* p);

ETUBE_API void etube_check_options_default(etube_check_options* opt);

ETUBE_API etube_status etube_spec_parse(const char* text, etube_spec** out);
ETUBE_API etube_status etube_spec_load(const char* path, etube_spec** out);
ETUBE_API void etube_spec_free(etube_spec* spec);
ETUBE_API int etube_spec_dimension(const etube_spec* spec);
ETUBE_API etube_status etube_spec_write(const etube_spec* spec, char** out_text);
/* Dual complement as a new spec (generators and controls are dropped). */
ETUBE_API etube_status etube_spec_dual(const etube_spec* spec, etube_spec** out);

/* Points are chart coordinates. Complex vectors are interleaved (re, im)
   pairs of length 2n. */
ETUBE_API etube_status etube_contains(const etube_spec* spec, const double* x, int* out);
ETUBE_API etube_status etube_tube_contains(const etube_spec* spec, const double* z, int* out);
ETUBE_API etube_status etube_hilbert_distance(const etube_spec* spec, const double* x, const double* y,
                                              double* out);
/* Real pairs or pairs on one slice. */
ETUBE_API etube_status etube_kobayashi_distance(const etube_spec* spec, const double* z, const double* w,
                                                double* out);
ETUBE_API etube_status etube_u_value(const etube_spec* spec, const double* z, double* out);
ETUBE_API etube_status etube_core_distance(const etube_spec* spec, const double* z, double* out);
ETUBE_API etube_status etube_to_tangent(const etube_spec* spec, const double* z, double* base,
                                        double* direction, double* magnitude);
ETUBE_API etube_status etube_from_tangent(const etube_spec* spec, const double* base, const double* direction,
                                          double magnitude, double* z);
/* World functional (interleaved, length 2(n+1)) of the tube separator. */
ETUBE_API etube_status etube_tube_separator(const etube_spec* spec, const double* z, double* xi);

/* Runs a suite: all, linconv, cconv, duality, metric, homeo, exhaust, action. */
ETUBE_API etube_status etube_check(const etube_spec* spec, const char* suite, const etube_check_options* opt,
                                   etube_report** out);
ETUBE_API int etube_report_passed(const etube_report* r);
ETUBE_API size_t etube_report_count(const etube_report* r);
ETUBE_API etube_status etube_report_text(const etube_report* r, char** out_text);
/* Summary line of report i. */
ETUBE_API etube_status etube_report_summary(const etube_report* r, size_t i, char** out_text);
ETUBE_API void etube_report_free(etube_report* r);

/* Slice through a non-real point (line == NULL) or along the line
   point + zeta * line. The encoded grid is returned in *out with its size. */
ETUBE_API etube_status etube_slice(const etube_spec* spec, const double* point, const double* line, int grid,
                                   etube_slice_format format, char** out, size_t* out_size);

/* Text front ends used by the command-line tool. */
ETUBE_API etube_status etube_distance_text(const etube_spec* spec, const char* from, const char* to,
                                           char** out_text);
ETUBE_API etube_status etube_map_forward_text(const etube_spec* spec, const char* z, char** out_text);
ETUBE_API etube_status etube_map_inverse_text(const etube_spec* spec, const char* triple, char** out_text);
/* Parses comma-separated a+bi entries into an interleaved buffer of 2 * cap. */
ETUBE_API etube_status etube_parse_point(const char* text, double* out, int cap, int* count);

#ifdef __cplusplus
}
#endif

#endif
