#include "semmap/semmap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "core/cluster.hpp"
#include "core/corpus.hpp"
#include "core/dissim.hpp"
#include "core/error.hpp"
#include "core/interpret.hpp"
#include "core/mds.hpp"
#include "core/svg.hpp"
#include "core/tsv.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs fn, translating exceptions into status codes + the thread-local
// message.
template <typename Fn>
semmap_status guarded(Fn&& fn) {
  try {
    fn();
    return SEMMAP_OK;
  } catch (const semmap::NumericError& e) {
    set_error(e.what());
    return SEMMAP_ERROR_NUMERIC;
  } catch (const semmap::ValidationError& e) {
    set_error(e.what());
    return SEMMAP_ERROR_VALIDATION;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SEMMAP_ERROR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SEMMAP_ERROR_IO;
  }
}

semmap_status invalid(const char* msg) {
  set_error(msg);
  return SEMMAP_ERROR_VALIDATION;
}

semmap::CompareMode to_mode(semmap_compare_mode m) {
  return m == SEMMAP_COMPARE_FEATURE ? semmap::CompareMode::kFeature
                                     : semmap::CompareMode::kLexeme;
}

semmap::MissingPolicy to_policy(semmap_missing_policy p) {
  return p == SEMMAP_MISSING_DIFFER ? semmap::MissingPolicy::kCountAsDiffer
                                    : semmap::MissingPolicy::kPairwiseDelete;
}

}  // namespace

// Handles own exactly one core value each.
struct semmap_corpus {
  semmap::CorpusTable v;
};
struct semmap_bintab {
  semmap::BinaryTable v;
};
struct semmap_cloud {
  semmap::PointCloud v;
};
struct semmap_delta {
  semmap::DissimilarityMatrix v;
};
struct semmap_solution {
  semmap::MdsSolution v;
};
struct semmap_dendro {
  semmap::Dendrogram v;
};
struct semmap_clusters {
  semmap::ClusterResult v;
  std::vector<std::string> labels;
};
struct semmap_scan {
  semmap::ElbowScan v;
};

extern "C" {

const char* semmap_version(void) { return "1.0.0"; }

const char* semmap_last_error(void) { return g_last_error.c_str(); }

void semmap_corpus_free(semmap_corpus* p) { delete p; }
void semmap_bintab_free(semmap_bintab* p) { delete p; }
void semmap_cloud_free(semmap_cloud* p) { delete p; }
void semmap_delta_free(semmap_delta* p) { delete p; }
void semmap_solution_free(semmap_solution* p) { delete p; }
void semmap_dendro_free(semmap_dendro* p) { delete p; }
void semmap_clusters_free(semmap_clusters* p) { delete p; }
void semmap_scan_free(semmap_scan* p) { delete p; }
void semmap_string_free(char* s) { std::free(s); }

/* ---- loading and saving ---------------------------------------------- */

semmap_status semmap_corpus_load(const char* path, semmap_corpus** out) {
  if (!path || !out) return invalid("corpus_load: NULL argument");
  return guarded([&] {
    *out = new semmap_corpus{semmap::parse_corpus(semmap::read_file(path))};
  });
}

semmap_status semmap_corpus_save(const semmap_corpus* c, const char* path) {
  if (!c || !path) return invalid("corpus_save: NULL argument");
  return guarded(
      [&] { semmap::atomic_write_file(path, semmap::corpus_to_tsv(c->v)); });
}

semmap_status semmap_bintab_load(const char* path, semmap_bintab** out) {
  if (!path || !out) return invalid("bintab_load: NULL argument");
  return guarded([&] {
    auto parsed = semmap::parse_binary_table(semmap::read_file(path));
    *out = new semmap_bintab{std::move(parsed.table)};
  });
}

semmap_status semmap_cloud_load(const char* path, semmap_cloud** out) {
  if (!path || !out) return invalid("cloud_load: NULL argument");
  return guarded([&] {
    *out = new semmap_cloud{semmap::parse_point_cloud(semmap::read_file(path))};
  });
}

semmap_status semmap_cloud_save(const semmap_cloud* c, const char* path) {
  if (!c || !path) return invalid("cloud_save: NULL argument");
  return guarded(
      [&] { semmap::atomic_write_file(path, semmap::point_cloud_to_tsv(c->v)); });
}

semmap_status semmap_delta_load(const char* path, semmap_delta** out) {
  if (!path || !out) return invalid("delta_load: NULL argument");
  return guarded([&] {
    *out = new semmap_delta{
        semmap::DissimilarityMatrix::from_tsv(semmap::read_file(path))};
  });
}

semmap_status semmap_delta_save(const semmap_delta* d, const char* path) {
  if (!d || !path) return invalid("delta_save: NULL argument");
  return guarded([&] { semmap::atomic_write_file(path, d->v.to_tsv()); });
}

semmap_status semmap_solution_load(const char* path, semmap_solution** out) {
  if (!path || !out) return invalid("solution_load: NULL argument");
  return guarded([&] {
    *out = new semmap_solution{
        semmap::MdsSolution::from_json(semmap::read_file(path))};
  });
}

semmap_status semmap_solution_save(const semmap_solution* s, const char* path) {
  if (!s || !path) return invalid("solution_save: NULL argument");
  return guarded([&] { semmap::atomic_write_file(path, s->v.to_json()); });
}

semmap_status semmap_dendro_load(const char* path, semmap_dendro** out) {
  if (!path || !out) return invalid("dendro_load: NULL argument");
  return guarded([&] {
    *out =
        new semmap_dendro{semmap::Dendrogram::from_json(semmap::read_file(path))};
  });
}

semmap_status semmap_dendro_save(const semmap_dendro* d, const char* path) {
  if (!d || !path) return invalid("dendro_save: NULL argument");
  return guarded([&] { semmap::atomic_write_file(path, d->v.to_json()); });
}

semmap_status semmap_clusters_save(const semmap_clusters* c, const char* path) {
  if (!c || !path) return invalid("clusters_save: NULL argument");
  return guarded(
      [&] { semmap::atomic_write_file(path, c->v.to_tsv(c->labels)); });
}

semmap_status semmap_scan_load(const char* path, semmap_scan** out) {
  if (!path || !out) return invalid("scan_load: NULL argument");
  return guarded([&] {
    *out = new semmap_scan{semmap::ElbowScan::from_tsv(semmap::read_file(path))};
  });
}

semmap_status semmap_scan_save(const semmap_scan* s, const char* path) {
  if (!s || !path) return invalid("scan_save: NULL argument");
  return guarded([&] { semmap::atomic_write_file(path, s->v.to_tsv()); });
}

/* ---- sizes ------------------------------------------------------------ */

size_t semmap_corpus_contexts(const semmap_corpus* c) {
  return c ? c->v.context_ids.size() : 0;
}
size_t semmap_corpus_languages(const semmap_corpus* c) {
  return c ? c->v.languages.size() : 0;
}
size_t semmap_cloud_points(const semmap_cloud* c) { return c ? c->v.size() : 0; }
size_t semmap_delta_size(const semmap_delta* d) { return d ? d->v.size() : 0; }

/* ---- synthetic data ---------------------------------------------------- */

semmap_status semmap_swiss_roll(size_t n, double noise_sd, uint64_t seed,
                                semmap_cloud** out) {
  if (!out) return invalid("swiss_roll: NULL output");
  return guarded(
      [&] { *out = new semmap_cloud{semmap::swiss_roll(n, noise_sd, seed)}; });
}

/* ---- dissimilarities ----------------------------------------------------- */

semmap_status semmap_context_distances(const semmap_corpus* c,
                                       semmap_compare_mode mode,
                                       semmap_missing_policy missing,
                                       const char* weights_path,
                                       semmap_delta** out) {
  if (!c || !out) return invalid("context_distances: NULL argument");
  return guarded([&] {
    semmap::FeatureWeights weights =
        weights_path ? semmap::weights_for_languages(
                           semmap::read_file(weights_path), c->v)
                     : semmap::FeatureWeights::unit(c->v.languages.size());
    *out = new semmap_delta{semmap::context_distances(
        c->v, to_mode(mode), weights, to_policy(missing))};
  });
}

semmap_status semmap_coexpression_distances(const semmap_bintab* t,
                                            semmap_delta** out) {
  if (!t || !out) return invalid("coexpression_distances: NULL argument");
  return guarded([&] {
    *out = new semmap_delta{semmap::coexpression_distances(t->v)};
  });
}

semmap_status semmap_language_distances(const semmap_corpus* c,
                                        semmap_compare_mode mode,
                                        semmap_delta** out) {
  if (!c || !out) return invalid("language_distances: NULL argument");
  return guarded([&] {
    *out = new semmap_delta{semmap::language_distances(c->v, to_mode(mode))};
  });
}

semmap_status semmap_geodesic_distances(const semmap_cloud* c, size_t k,
                                        semmap_delta** out) {
  if (!c || !out) return invalid("geodesic_distances: NULL argument");
  return guarded(
      [&] { *out = new semmap_delta{semmap::geodesic_distances(c->v, k)}; });
}

/* ---- multidimensional scaling -------------------------------------------- */

semmap_status semmap_mds_classic(const semmap_delta* d, size_t dims,
                                 semmap_solution** out) {
  if (!d || !out) return invalid("mds_classic: NULL argument");
  return guarded(
      [&] { *out = new semmap_solution{semmap::classic_scale(d->v, dims)}; });
}

semmap_status semmap_mds_smacof(const semmap_delta* d, size_t dims,
                                semmap_init init, uint64_t seed, size_t max_iter,
                                double eps, semmap_solution** out) {
  if (!d || !out) return invalid("mds_smacof: NULL argument");
  return guarded([&] {
    semmap::SmacofOptions opts;
    opts.init = init == SEMMAP_INIT_RANDOM ? semmap::SmacofInit::kRandom
                                           : semmap::SmacofInit::kClassic;
    opts.seed = seed;
    opts.max_iter = max_iter;
    opts.eps = eps;
    *out = new semmap_solution{semmap::smacof(d->v, dims, opts)};
  });
}

semmap_status semmap_per_point_stress_report(const semmap_delta* d,
                                             const semmap_solution* s,
                                             const char* out_path) {
  if (!d || !s || !out_path)
    return invalid("per_point_stress_report: NULL argument");
  return guarded([&] {
    semmap::atomic_write_file(
        out_path, semmap::per_point_stress_report(d->v, s->v.coords));
  });
}

double semmap_solution_stress(const semmap_solution* s) {
  return s ? s->v.stress : 0.0;
}
size_t semmap_solution_dims(const semmap_solution* s) {
  return s ? s->v.coords.cols() : 0;
}
size_t semmap_solution_points(const semmap_solution* s) {
  return s ? s->v.coords.rows() : 0;
}
size_t semmap_solution_iterations(const semmap_solution* s) {
  return s ? s->v.iterations : 0;
}
int semmap_solution_converged(const semmap_solution* s) {
  return s && s->v.converged ? 1 : 0;
}
double semmap_solution_negative_mass(const semmap_solution* s) {
  return s ? s->v.negative_eigenvalue_mass : 0.0;
}

semmap_status semmap_elbow_scan(const semmap_delta* d, size_t max_dims,
                                semmap_engine engine, semmap_scan** out) {
  if (!d || !out) return invalid("elbow_scan: NULL argument");
  return guarded([&] {
    *out = new semmap_scan{semmap::elbow_scan(
        d->v, max_dims,
        engine == SEMMAP_ENGINE_SMACOF ? semmap::MdsEngine::kSmacof
                                       : semmap::MdsEngine::kClassic)};
  });
}

size_t semmap_scan_elbow(const semmap_scan* s) { return s ? s->v.elbow : 0; }

/* ---- clustering ------------------------------------------------------------ */

semmap_status semmap_pam(const semmap_delta* d, size_t k, uint64_t seed,
                         semmap_clusters** out) {
  if (!d || !out) return invalid("pam: NULL argument");
  return guarded([&] {
    *out = new semmap_clusters{semmap::pam(d->v, k, seed), d->v.labels()};
  });
}

double semmap_clusters_cost(const semmap_clusters* c) {
  return c ? c->v.cost : 0.0;
}
size_t semmap_clusters_k(const semmap_clusters* c) { return c ? c->v.k() : 0; }

semmap_status semmap_silhouette_mean(const semmap_delta* d,
                                     const semmap_clusters* c, double* out) {
  if (!d || !c || !out) return invalid("silhouette_mean: NULL argument");
  return guarded([&] { *out = semmap::silhouette(d->v, c->v.assignment).mean; });
}

semmap_status semmap_agglomerative(const semmap_delta* d, semmap_linkage linkage,
                                   semmap_dendro** out) {
  if (!d || !out) return invalid("agglomerative: NULL argument");
  return guarded([&] {
    semmap::Linkage l = semmap::Linkage::kAverage;
    if (linkage == SEMMAP_LINKAGE_SINGLE) l = semmap::Linkage::kSingle;
    if (linkage == SEMMAP_LINKAGE_COMPLETE) l = semmap::Linkage::kComplete;
    *out = new semmap_dendro{semmap::agglomerative(d->v, l)};
  });
}

size_t semmap_dendro_leaves(const semmap_dendro* d) {
  return d ? d->v.leaves() : 0;
}

semmap_status semmap_dendro_cut(const semmap_dendro* d, size_t k,
                                semmap_clusters** out) {
  if (!d || !out) return invalid("dendro_cut: NULL argument");
  return guarded([&] {
    *out = new semmap_clusters{semmap::cut(d->v, k), d->v.labels};
  });
}

/* ---- interpretation ---------------------------------------------------------- */

semmap_status semmap_regression_report(const semmap_solution* s,
                                       const char* annotations_path,
                                       const char* out_path) {
  if (!s || !annotations_path || !out_path)
    return invalid("regression_report: NULL argument");
  return guarded([&] {
    const auto annotations =
        semmap::AnnotationTable::from_tsv(semmap::read_file(annotations_path));
    const auto report = semmap::dimension_regression(s->v, annotations);
    semmap::atomic_write_file(out_path, report.to_tsv());
  });
}

semmap_status semmap_subset_report(const semmap_corpus* c, const char* category,
                                   const char* out_path, char** chain_out,
                                   size_t* total_violations_out) {
  if (!c || !category || !out_path) return invalid("subset_report: NULL argument");
  return guarded([&] {
    const auto report = semmap::subset_report(c->v, category);
    semmap::atomic_write_file(out_path, report.to_tsv());
    if (chain_out) {
      std::string chain;
      for (std::size_t i = 0; i < report.chain.size(); ++i) {
        if (i) chain += "<";
        chain += report.chain[i];
      }
      *chain_out = static_cast<char*>(std::malloc(chain.size() + 1));
      if (*chain_out) std::memcpy(*chain_out, chain.c_str(), chain.size() + 1);
    }
    if (total_violations_out) {
      size_t total = 0;
      for (std::size_t v : report.violations) total += v;
      *total_violations_out = total;
    }
  });
}

/* ---- plots ---------------------------------------------------------------------- */

semmap_status semmap_plot_map(const semmap_solution* s,
                              const semmap_corpus* corpus,
                              semmap_compare_mode mode, const char* color_by,
                              size_t dim_x, size_t dim_y, size_t width,
                              size_t height, const char* out_path) {
  if (!s || !out_path) return invalid("plot_map: NULL argument");
  if (color_by && !corpus)
    return invalid("plot_map: color_by given but no corpus to read tokens from");
  return guarded([&] {
    std::optional<semmap::ColoringLayer> layer;
    if (corpus && color_by) {
      const auto layers = semmap::color_layers(s->v, corpus->v, to_mode(mode));
      for (const auto& l : layers)
        if (l.language == color_by) layer = l;
      if (!layer)
        throw semmap::ValidationError("plot_map: no language '" +
                                      std::string(color_by) + "' in the corpus");
    }
    semmap::PlotOptions opts;
    opts.width = width;
    opts.height = height;
    semmap::atomic_write_file(out_path,
                              semmap::plot_map(s->v, layer, dim_x, dim_y, opts));
  });
}

semmap_status semmap_plot_dendrogram(const semmap_dendro* d, size_t width,
                                     size_t height, const char* out_path) {
  if (!d || !out_path) return invalid("plot_dendrogram: NULL argument");
  return guarded([&] {
    semmap::PlotOptions opts;
    opts.width = width;
    opts.height = height;
    semmap::atomic_write_file(out_path, semmap::plot_dendrogram(d->v, opts));
  });
}

semmap_status semmap_plot_elbow(const semmap_scan* s, size_t width, size_t height,
                                const char* out_path) {
  if (!s || !out_path) return invalid("plot_elbow: NULL argument");
  return guarded([&] {
    semmap::PlotOptions opts;
    opts.width = width;
    opts.height = height;
    semmap::atomic_write_file(out_path, semmap::plot_elbow(s->v, opts));
  });
}

}  // extern "C"
