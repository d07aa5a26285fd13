/* semmap -- semantic maps from cross-linguistic data.
 *
 * C interface to the semmap shared library. All functions return a
 * semmap_status; on failure semmap_last_error() describes what went wrong
 * (thread-local, valid until the next failing call on the same thread).
 * Objects are opaque handles released with their matching _free function;
 * passing NULL to a _free function is a no-op.
 *
 * File formats are TSV (tab-separated, '#' comments, no quoting) and JSON;
 * see the project README for the exact schemas. All _save functions write
 * atomically (temp file + rename) and are byte-stable for equal inputs.
 */

#ifndef SEMMAP_H
#define SEMMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32
#define SEMMAP_API __declspec(dllexport)
#else
#define SEMMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semmap_status {
  SEMMAP_OK = 0,
  /* malformed input, bad shapes or parameters */
  SEMMAP_ERROR_VALIDATION = 1,
  /* the computation has no result: non-convergence, degenerate input,
   * undefined distances */
  SEMMAP_ERROR_NUMERIC = 2,
  /* file system failure */
  SEMMAP_ERROR_IO = 3
} semmap_status;

SEMMAP_API const char* semmap_version(void);
SEMMAP_API const char* semmap_last_error(void);

/* ---- opaque handles -------------------------------------------------- */

typedef struct semmap_corpus semmap_corpus;     /* contexts x languages     */
typedef struct semmap_bintab semmap_bintab;     /* items x features Y/N     */
typedef struct semmap_cloud semmap_cloud;       /* point cloud              */
typedef struct semmap_delta semmap_delta;       /* dissimilarity matrix     */
typedef struct semmap_solution semmap_solution; /* MDS configuration        */
typedef struct semmap_dendro semmap_dendro;     /* agglomerative merge tree */
typedef struct semmap_clusters semmap_clusters; /* flat partition           */
typedef struct semmap_scan semmap_scan;         /* stress-per-dims table    */

SEMMAP_API void semmap_corpus_free(semmap_corpus*);
SEMMAP_API void semmap_bintab_free(semmap_bintab*);
SEMMAP_API void semmap_cloud_free(semmap_cloud*);
SEMMAP_API void semmap_delta_free(semmap_delta*);
SEMMAP_API void semmap_solution_free(semmap_solution*);
SEMMAP_API void semmap_dendro_free(semmap_dendro*);
SEMMAP_API void semmap_clusters_free(semmap_clusters*);
SEMMAP_API void semmap_scan_free(semmap_scan*);

/* ---- enums ----------------------------------------------------------- */

typedef enum semmap_compare_mode {
  SEMMAP_COMPARE_LEXEME = 0, /* normalized form text */
  SEMMAP_COMPARE_FEATURE = 1 /* annotated grammatical feature */
} semmap_compare_mode;

typedef enum semmap_missing_policy {
  SEMMAP_MISSING_DELETE = 0, /* drop the position, renormalize */
  SEMMAP_MISSING_DIFFER = 1  /* MISSING vs anything differs */
} semmap_missing_policy;

typedef enum semmap_engine {
  SEMMAP_ENGINE_CLASSIC = 0,
  SEMMAP_ENGINE_SMACOF = 1
} semmap_engine;

typedef enum semmap_init {
  SEMMAP_INIT_RANDOM = 0,
  SEMMAP_INIT_CLASSIC = 1
} semmap_init;

typedef enum semmap_linkage {
  SEMMAP_LINKAGE_SINGLE = 0,
  SEMMAP_LINKAGE_COMPLETE = 1,
  SEMMAP_LINKAGE_AVERAGE = 2
} semmap_linkage;

/* ---- loading and saving ---------------------------------------------- */

SEMMAP_API semmap_status semmap_corpus_load(const char* path, semmap_corpus** out);
SEMMAP_API semmap_status semmap_corpus_save(const semmap_corpus*, const char* path);
SEMMAP_API semmap_status semmap_bintab_load(const char* path, semmap_bintab** out);
SEMMAP_API semmap_status semmap_cloud_load(const char* path, semmap_cloud** out);
SEMMAP_API semmap_status semmap_cloud_save(const semmap_cloud*, const char* path);
SEMMAP_API semmap_status semmap_delta_load(const char* path, semmap_delta** out);
SEMMAP_API semmap_status semmap_delta_save(const semmap_delta*, const char* path);
SEMMAP_API semmap_status semmap_solution_load(const char* path,
                                              semmap_solution** out);
SEMMAP_API semmap_status semmap_solution_save(const semmap_solution*,
                                              const char* path);
SEMMAP_API semmap_status semmap_dendro_load(const char* path, semmap_dendro** out);
SEMMAP_API semmap_status semmap_dendro_save(const semmap_dendro*, const char* path);
SEMMAP_API semmap_status semmap_clusters_save(const semmap_clusters*,
                                              const char* path);
SEMMAP_API semmap_status semmap_scan_load(const char* path, semmap_scan** out);
SEMMAP_API semmap_status semmap_scan_save(const semmap_scan*, const char* path);

/* ---- sizes ------------------------------------------------------------ */

SEMMAP_API size_t semmap_corpus_contexts(const semmap_corpus*);
SEMMAP_API size_t semmap_corpus_languages(const semmap_corpus*);
SEMMAP_API size_t semmap_cloud_points(const semmap_cloud*);
SEMMAP_API size_t semmap_delta_size(const semmap_delta*);

/* ---- synthetic data --------------------------------------------------- */

/* 3-D Swiss roll with 2-D intrinsic coordinates; deterministic per seed. */
SEMMAP_API semmap_status semmap_swiss_roll(size_t n, double noise_sd,
                                           uint64_t seed, semmap_cloud** out);

/* ---- dissimilarities --------------------------------------------------- */

/* Relative (optionally weighted) Hamming distances between contexts.
 * weights_path is an optional "language<TAB>weight" TSV; NULL = unit. */
SEMMAP_API semmap_status semmap_context_distances(const semmap_corpus*,
                                                  semmap_compare_mode,
                                                  semmap_missing_policy,
                                                  const char* weights_path,
                                                  semmap_delta** out);

/* 1 - (#rows with Y in both columns)/(#rows), between binary-table columns. */
SEMMAP_API semmap_status semmap_coexpression_distances(const semmap_bintab*,
                                                       semmap_delta** out);

/* Co-classification disagreement between languages. */
SEMMAP_API semmap_status semmap_language_distances(const semmap_corpus*,
                                                   semmap_compare_mode,
                                                   semmap_delta** out);

/* Shortest paths over the symmetrized k-nearest-neighbor graph. */
SEMMAP_API semmap_status semmap_geodesic_distances(const semmap_cloud*, size_t k,
                                                   semmap_delta** out);

/* ---- multidimensional scaling ------------------------------------------ */

SEMMAP_API semmap_status semmap_mds_classic(const semmap_delta*, size_t dims,
                                            semmap_solution** out);

SEMMAP_API semmap_status semmap_mds_smacof(const semmap_delta*, size_t dims,
                                           semmap_init init, uint64_t seed,
                                           size_t max_iter, double eps,
                                           semmap_solution** out);

/* Per-point stress sorted worst-first, written as a TSV report. */
SEMMAP_API semmap_status semmap_per_point_stress_report(const semmap_delta*,
                                                        const semmap_solution*,
                                                        const char* out_path);

SEMMAP_API double semmap_solution_stress(const semmap_solution*);
SEMMAP_API size_t semmap_solution_dims(const semmap_solution*);
SEMMAP_API size_t semmap_solution_points(const semmap_solution*);
SEMMAP_API size_t semmap_solution_iterations(const semmap_solution*);
SEMMAP_API int semmap_solution_converged(const semmap_solution*);
SEMMAP_API double semmap_solution_negative_mass(const semmap_solution*);

/* Stress at each dimensionality 1..max_dims plus the flagged elbow. */
SEMMAP_API semmap_status semmap_elbow_scan(const semmap_delta*, size_t max_dims,
                                           semmap_engine, semmap_scan** out);
SEMMAP_API size_t semmap_scan_elbow(const semmap_scan*);

/* ---- clustering --------------------------------------------------------- */

SEMMAP_API semmap_status semmap_pam(const semmap_delta*, size_t k, uint64_t seed,
                                    semmap_clusters** out);
SEMMAP_API double semmap_clusters_cost(const semmap_clusters*);
SEMMAP_API size_t semmap_clusters_k(const semmap_clusters*);

/* Mean silhouette width of a partition; needs >= 2 clusters. */
SEMMAP_API semmap_status semmap_silhouette_mean(const semmap_delta*,
                                                const semmap_clusters*,
                                                double* out);

SEMMAP_API semmap_status semmap_agglomerative(const semmap_delta*, semmap_linkage,
                                              semmap_dendro** out);
SEMMAP_API size_t semmap_dendro_leaves(const semmap_dendro*);
SEMMAP_API semmap_status semmap_dendro_cut(const semmap_dendro*, size_t k,
                                           semmap_clusters** out);

/* ---- interpretation ------------------------------------------------------ */

/* OLS of each coordinate on each 0/1 annotation variable; writes the report
 * TSV sorted by R^2 descending. */
SEMMAP_API semmap_status semmap_regression_report(const semmap_solution*,
                                                  const char* annotations_path,
                                                  const char* out_path);

/* Pairwise containment and the size-ordered chain of the languages using a
 * category; writes the report TSV. chain_out (optional, may be NULL)
 * receives a malloc'd summary string "lang1<lang2<..."; caller frees with
 * semmap_string_free. total_violations_out may be NULL. */
SEMMAP_API semmap_status semmap_subset_report(const semmap_corpus*,
                                              const char* category,
                                              const char* out_path,
                                              char** chain_out,
                                              size_t* total_violations_out);

SEMMAP_API void semmap_string_free(char* s);

/* ---- plots ---------------------------------------------------------------- */

/* Scatter of dimension pair (dim_x, dim_y), 1-based. When corpus and
 * color_by are given, points are colored by that language's comparison
 * tokens. Output SVG is byte-stable. */
SEMMAP_API semmap_status semmap_plot_map(const semmap_solution*,
                                         const semmap_corpus* corpus_or_null,
                                         semmap_compare_mode,
                                         const char* color_by_or_null,
                                         size_t dim_x, size_t dim_y,
                                         size_t width, size_t height,
                                         const char* out_path);

SEMMAP_API semmap_status semmap_plot_dendrogram(const semmap_dendro*, size_t width,
                                                size_t height,
                                                const char* out_path);

SEMMAP_API semmap_status semmap_plot_elbow(const semmap_scan*, size_t width,
                                           size_t height, const char* out_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEMMAP_H */
