#ifndef FRACSUM_FRACSUM_H
#define FRACSUM_FRACSUM_H

/* C interface to the fracsum library: IFS attractors, raster Minkowski sums,
 * thickness bounds and the sum-identity checks.
 *
 * Every function returns an fsum_status. On failure the message is available
 * from fsum_last_error() on the calling thread until the next failing call.
 * Handles are opaque; each *_create / producing call hands ownership to the
 * caller, who releases it with the matching *_destroy. Passing NULL to a
 * destroy function is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FSUM_API __declspec(dllexport)
#else
#define FSUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the library's internal error codes one to one. */
typedef enum fsum_status {
  FSUM_OK = 0,
  FSUM_INVALID_ARGUMENT = 1,
  FSUM_DIMENSION_MISMATCH = 2,
  FSUM_EPS_OUT_OF_RANGE = 3,
  FSUM_PRECONDITION_VIOLATED = 4,
  FSUM_NOT_CONTRACTING = 5,
  FSUM_BUDGET_EXCEEDED = 6,
  FSUM_SINGULAR_SYSTEM = 7,
  FSUM_BOX_TOO_SMALL = 8,
  FSUM_CELL_MISMATCH = 9,
  FSUM_MODE_MISMATCH = 10,
  FSUM_ALLOCATION_LIMIT = 11,
  FSUM_EMPTY_RASTER = 12,
  FSUM_MISALIGNED_ORIGINS = 13,
  FSUM_DEGENERATE_SET = 14,
  FSUM_NOT_SIMILITUDE = 15,
  FSUM_WITNESS_FAILED = 16,
  FSUM_INVALID_C = 17,
  FSUM_THRESHOLD_NOT_MET = 18,
  FSUM_INVARIANT_VIOLATED = 19,
  FSUM_CERTIFICATE_FAILED = 20,
  FSUM_CONFIG_INVALID = 21,
  FSUM_IO_ERROR = 22,
  FSUM_INTERNAL = 23
} fsum_status;

typedef enum fsum_raster_mode { FSUM_INNER = 0, FSUM_OUTER = 1 } fsum_raster_mode;

typedef struct fsum_ifs fsum_ifs;
typedef struct fsum_cover fsum_cover;
typedef struct fsum_raster fsum_raster;

FSUM_API const char* fsum_version(void);
FSUM_API const char* fsum_status_name(fsum_status s);
/* Message of the last failure on this thread ("" if none). */
FSUM_API const char* fsum_last_error(void);

/* ---- IFS ---- */

/* n similitudes x -> (num[i]/den[i]) Q_i x + t_i. q holds n row-major d x d
 * orthogonal matrices (NULL for identity), t holds n d-vectors. */
FSUM_API fsum_status fsum_ifs_create_similitudes(int dim, size_t n, const int64_t* num, const int64_t* den,
                                                 const double* q, const double* t, fsum_ifs** out);
/* n affine maps x -> A_i x + t_i, A row-major. */
FSUM_API fsum_status fsum_ifs_create_affine(int dim, size_t n, const double* a, const double* t, fsum_ifs** out);
FSUM_API void fsum_ifs_destroy(fsum_ifs* ifs);

FSUM_API fsum_status fsum_ifs_dim(const fsum_ifs* ifs, int* out);
FSUM_API fsum_status fsum_ifs_size(const fsum_ifs* ifs, size_t* out);
/* Fixed points, n * dim doubles. */
FSUM_API fsum_status fsum_ifs_fixed_points(const fsum_ifs* ifs, double* out, size_t capacity);
/* Smallest n >= 1 + l / rho_min for which the sum identity holds. */
FSUM_API fsum_status fsum_ifs_sum_threshold(const fsum_ifs* ifs, uint64_t* out);

/* ---- covers ---- */

FSUM_API fsum_status fsum_cover_expand(const fsum_ifs* ifs, int depth, uint64_t budget, unsigned workers,
                                       fsum_cover** out);
FSUM_API void fsum_cover_destroy(fsum_cover* cover);
FSUM_API fsum_status fsum_cover_size(const fsum_cover* cover, size_t* out);
FSUM_API fsum_status fsum_cover_eps(const fsum_cover* cover, double* out);
/* Inner points, size * dim doubles in lexicographic word order. */
FSUM_API fsum_status fsum_cover_points(const fsum_cover* cover, double* out, size_t capacity);

/* ---- thickness ---- */

FSUM_API fsum_status fsum_thickness_estimate(const fsum_cover* cover, uint64_t seed, unsigned workers, double* out);
FSUM_API fsum_status fsum_thickness_certified(const fsum_ifs* ifs, const fsum_cover* cover, double* out);
/* Smallest n > 2048 / c^3 + 1 with c = num / den. */
FSUM_API fsum_status fsum_sum_threshold(int64_t num, int64_t den, uint64_t* out);
/* floor(((4 + c) / c)^dim) with c = num / den. */
FSUM_API fsum_status fsum_packing_count(int64_t num, int64_t den, int dim, uint64_t* out);

/* ---- rasters ---- */

/* INNER raster of the cover's inner points on a grid of cell delta. */
FSUM_API fsum_status fsum_raster_from_cover(const fsum_cover* cover, double delta, fsum_raster** out);
FSUM_API fsum_status fsum_raster_create(int dim, const double* origin, double cell, const int64_t* dims,
                                        fsum_raster_mode mode, fsum_raster** out);
FSUM_API void fsum_raster_destroy(fsum_raster* r);
FSUM_API fsum_status fsum_raster_set(fsum_raster* r, const int64_t* index);
FSUM_API fsum_status fsum_raster_test(const fsum_raster* r, const int64_t* index, int* out);
FSUM_API fsum_status fsum_raster_count(const fsum_raster* r, uint64_t* out);
/* dims[3] and origin[3]; unused axes have extent 1 and origin 0. */
FSUM_API fsum_status fsum_raster_shape(const fsum_raster* r, int64_t* dims, double* origin);
FSUM_API fsum_status fsum_raster_sum(const fsum_raster* a, const fsum_raster* b, unsigned workers, fsum_raster** out);
FSUM_API fsum_status fsum_raster_n_fold(const fsum_raster* a, uint64_t n, unsigned workers, fsum_raster** out);
FSUM_API fsum_status fsum_raster_hausdorff(const fsum_raster* a, const fsum_raster* b, unsigned workers,
                                           double* out);
FSUM_API fsum_status fsum_raster_write_pbm(const fsum_raster* r, const char* path);

/* ---- sum identities ---- */

typedef struct fsum_identity_result {
  double d_H;
  double tolerance;
  int pass;
  int containment;
  int informational;
} fsum_identity_result;

FSUM_API fsum_status fsum_verify_sum_identity(const fsum_ifs* ifs, uint64_t n, int depth, double delta, int force,
                                              unsigned workers, fsum_identity_result* out);

/* Margins of the four steps of the rotation example certificate that (1/2, 0)
 * is not in the n-fold sum; *valid is 1 iff all are positive. */
FSUM_API fsum_status fsum_certify_rotation_example(uint64_t n, int depth, unsigned workers, double margins[4],
                                                   int* valid);

/* ---- experiments ---- */

typedef struct fsum_run_options {
  const char* config_path;
  const char* out_dir;   /* NULL: the config's output.dir */
  unsigned workers;      /* 0: available parallelism */
  int has_seed;
  uint64_t seed;
  int force;
} fsum_run_options;

/* Runs a config. *exit_code is 0 on pass, 1 on fail, 2 on a configuration
 * error (the status is then FSUM_CONFIG_INVALID or FSUM_IO_ERROR). */
FSUM_API fsum_status fsum_run(const fsum_run_options* opts, int* exit_code);
/* report.txt text of the last fsum_run on this thread. */
FSUM_API const char* fsum_last_report(void);

#ifdef __cplusplus
}
#endif

#endif
