// semmap command-line pipeline: ingest -> distance -> scale ->
// cluster/interpret -> plot, composing through files only. Exit codes:
// 0 success, 1 validation error, 2 numeric failure.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semmap/semmap.h"

namespace {

struct StatusExit {
  int code;
};

void check(semmap_status status) {
  if (status == SEMMAP_OK) return;
  std::fprintf(stderr, "error: %s\n", semmap_last_error());
  throw StatusExit{status == SEMMAP_ERROR_NUMERIC ? 2 : 1};
}

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, HandleDeleter<T, Free>>;

using Corpus = Handle<semmap_corpus, semmap_corpus_free>;
using Bintab = Handle<semmap_bintab, semmap_bintab_free>;
using Cloud = Handle<semmap_cloud, semmap_cloud_free>;
using Delta = Handle<semmap_delta, semmap_delta_free>;
using Solution = Handle<semmap_solution, semmap_solution_free>;
using Dendro = Handle<semmap_dendro, semmap_dendro_free>;
using Clusters = Handle<semmap_clusters, semmap_clusters_free>;
using Scan = Handle<semmap_scan, semmap_scan_free>;

Corpus load_corpus(const std::string& path) {
  semmap_corpus* p = nullptr;
  check(semmap_corpus_load(path.c_str(), &p));
  return Corpus(p);
}

Delta load_delta(const std::string& path) {
  semmap_delta* p = nullptr;
  check(semmap_delta_load(path.c_str(), &p));
  return Delta(p);
}

Solution load_solution(const std::string& path) {
  semmap_solution* p = nullptr;
  check(semmap_solution_load(path.c_str(), &p));
  return Solution(p);
}

semmap_compare_mode parse_mode(const std::string& mode) {
  return mode == "feature" ? SEMMAP_COMPARE_FEATURE : SEMMAP_COMPARE_LEXEME;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semmap: semantic maps from cross-linguistic data via "
               "multidimensional scaling"};
  app.require_subcommand(1);

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate synthetic datasets");
  synth->require_subcommand(1);
  auto* roll = synth->add_subcommand("swiss-roll", "3-D Swiss roll point cloud");
  std::string roll_out;
  std::size_t roll_n = 800;
  double roll_noise = 0.0;
  std::uint64_t roll_seed = 0;
  roll->add_option("output", roll_out, "output cloud TSV")->required();
  roll->add_option("--n", roll_n, "number of points (>= 10)")
      ->capture_default_str();
  roll->add_option("--noise", roll_noise, "Gaussian coordinate noise sd")
      ->capture_default_str();
  roll->add_option("--seed", roll_seed, "RNG seed")->capture_default_str();

  // ---- dist ----
  auto* dist = app.add_subcommand("dist", "build a dissimilarity matrix");
  dist->require_subcommand(1);
  std::string dist_in, dist_out, dist_mode = "lexeme", dist_missing = "delete";
  std::string dist_weights;
  std::size_t dist_k = 10;
  auto add_dist_io = [&](CLI::App* cmd) {
    cmd->add_option("input", dist_in, "input file")->required();
    cmd->add_option("output", dist_out, "output dissimilarity TSV")->required();
  };
  auto* dist_hamming = dist->add_subcommand(
      "hamming", "relative Hamming distances between corpus contexts");
  add_dist_io(dist_hamming);
  dist_hamming->add_option("--mode", dist_mode, "comparison key: lexeme|feature")
      ->check(CLI::IsMember({"lexeme", "feature"}))
      ->capture_default_str();
  dist_hamming
      ->add_option("--missing", dist_missing,
                   "missing policy: delete (pairwise) | differ")
      ->check(CLI::IsMember({"delete", "differ"}))
      ->capture_default_str();
  dist_hamming->add_option("--weights", dist_weights,
                           "per-language weights TSV (name<TAB>weight)");
  auto* dist_coexpr = dist->add_subcommand(
      "coexpr", "co-expression distances between binary-table columns");
  add_dist_io(dist_coexpr);
  auto* dist_language = dist->add_subcommand(
      "language", "co-classification distances between languages");
  add_dist_io(dist_language);
  dist_language
      ->add_option("--mode", dist_mode, "comparison key: lexeme|feature")
      ->check(CLI::IsMember({"lexeme", "feature"}))
      ->capture_default_str();
  auto* dist_geodesic = dist->add_subcommand(
      "geodesic", "shortest-path distances over the k-NN graph of a cloud");
  add_dist_io(dist_geodesic);
  dist_geodesic->add_option("--k", dist_k, "neighbors per point")
      ->capture_default_str();

  // ---- mds ----
  auto* mds = app.add_subcommand("mds", "embed a dissimilarity matrix");
  mds->require_subcommand(1);
  std::string mds_in, mds_out, mds_init = "classic";
  std::size_t mds_dims = 2, mds_max_iter = 300;
  std::uint64_t mds_seed = 0;
  double mds_eps = 1e-9;
  auto* mds_classic = mds->add_subcommand("classic", "Torgerson scaling");
  auto* mds_smacof = mds->add_subcommand("smacof", "stress majorization");
  for (CLI::App* cmd : {mds_classic, mds_smacof}) {
    cmd->add_option("input", mds_in, "dissimilarity TSV")->required();
    cmd->add_option("output", mds_out, "solution JSON")->required();
    cmd->add_option("--dims", mds_dims, "target dimensionality")
        ->capture_default_str();
  }
  mds_smacof->add_option("--seed", mds_seed, "seed for random init")
      ->capture_default_str();
  mds_smacof->add_option("--init", mds_init, "initialization: random|classic")
      ->check(CLI::IsMember({"random", "classic"}))
      ->capture_default_str();
  mds_smacof->add_option("--max-iter", mds_max_iter, "iteration cap")
      ->capture_default_str();
  mds_smacof->add_option("--eps", mds_eps, "relative raw-stress decrease cutoff")
      ->capture_default_str();

  // ---- elbow ----
  auto* elbow = app.add_subcommand(
      "elbow", "stress per dimensionality with the flagged elbow");
  std::string elbow_in, elbow_out, elbow_engine = "classic";
  std::size_t elbow_max_dims = 6;
  elbow->add_option("input", elbow_in, "dissimilarity TSV")->required();
  elbow->add_option("output", elbow_out, "scan TSV")->required();
  elbow->add_option("--max-dims", elbow_max_dims, "largest dimensionality")
      ->capture_default_str();
  elbow->add_option("--engine", elbow_engine, "classic|smacof")
      ->check(CLI::IsMember({"classic", "smacof"}))
      ->capture_default_str();

  // ---- cluster ----
  auto* cluster = app.add_subcommand("cluster", "cluster a dissimilarity matrix");
  cluster->require_subcommand(1);
  std::string cl_in, cl_out, cl_linkage = "average";
  std::size_t cl_k = 2;
  std::uint64_t cl_seed = 0;
  std::size_t cl_cut_k = 0;
  auto* cl_pam = cluster->add_subcommand("pam", "k-medoids (PAM)");
  cl_pam->add_option("input", cl_in, "dissimilarity TSV")->required();
  cl_pam->add_option("output", cl_out, "cluster TSV")->required();
  cl_pam->add_option("--k", cl_k, "number of clusters")->capture_default_str();
  cl_pam->add_option("--seed", cl_seed, "seed (kept for interface stability)")
      ->capture_default_str();
  auto* cl_hier =
      cluster->add_subcommand("hier", "agglomerative hierarchical clustering");
  cl_hier->add_option("input", cl_in, "dissimilarity TSV")->required();
  cl_hier->add_option("output", cl_out,
                      "dendrogram JSON (or cluster TSV with --cut-k)")
      ->required();
  cl_hier->add_option("--linkage", cl_linkage, "single|complete|average")
      ->check(CLI::IsMember({"single", "complete", "average"}))
      ->capture_default_str();
  cl_hier->add_option("--cut-k", cl_cut_k,
                      "cut into k clusters and write a cluster TSV instead");

  // ---- interpret ----
  auto* interpret = app.add_subcommand("interpret", "read maps linguistically");
  interpret->require_subcommand(1);
  std::string int_in, int_out, int_annotations, int_category;
  auto* int_regress = interpret->add_subcommand(
      "regress", "OLS of coordinates on binary annotations");
  int_regress->add_option("input", int_in, "solution JSON")->required();
  int_regress->add_option("output", int_out, "report TSV")->required();
  int_regress
      ->add_option("--annotations", int_annotations, "annotations TSV")
      ->required();
  auto* int_subset = interpret->add_subcommand(
      "subset", "containment chain of a category across languages");
  int_subset->add_option("input", int_in, "corpus TSV")->required();
  int_subset->add_option("output", int_out, "report TSV")->required();
  int_subset->add_option("--category", int_category, "category label")
      ->required();

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "emit SVG renderings");
  plot->require_subcommand(1);
  std::string plot_in, plot_out, plot_color_by, plot_corpus;
  std::string plot_mode = "lexeme";
  std::vector<std::size_t> plot_dims = {1, 2};
  std::size_t plot_width = 800, plot_height = 600;
  auto add_plot_size = [&](CLI::App* cmd) {
    cmd->add_option("--width", plot_width, "canvas width")->capture_default_str();
    cmd->add_option("--height", plot_height, "canvas height")
        ->capture_default_str();
  };
  auto* plot_map_cmd = plot->add_subcommand("map", "2-D scatter of a solution");
  plot_map_cmd->add_option("input", plot_in, "solution JSON")->required();
  plot_map_cmd->add_option("output", plot_out, "SVG file")->required();
  plot_map_cmd->add_option("--color-by", plot_color_by,
                           "language whose tokens color the points");
  plot_map_cmd->add_option("--corpus", plot_corpus,
                           "corpus TSV (needed with --color-by)");
  plot_map_cmd->add_option("--mode", plot_mode, "comparison key: lexeme|feature")
      ->check(CLI::IsMember({"lexeme", "feature"}))
      ->capture_default_str();
  plot_map_cmd
      ->add_option("--dims", plot_dims, "dimension pair, 1-based (e.g. 1,2)")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  add_plot_size(plot_map_cmd);
  auto* plot_dendro_cmd = plot->add_subcommand("dendrogram", "merge tree");
  plot_dendro_cmd->add_option("input", plot_in, "dendrogram JSON")->required();
  plot_dendro_cmd->add_option("output", plot_out, "SVG file")->required();
  add_plot_size(plot_dendro_cmd);
  auto* plot_elbow_cmd = plot->add_subcommand("elbow", "stress line plot");
  plot_elbow_cmd->add_option("input", plot_in, "elbow scan TSV")->required();
  plot_elbow_cmd->add_option("output", plot_out, "SVG file")->required();
  add_plot_size(plot_elbow_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (roll->parsed()) {
      semmap_cloud* cloud = nullptr;
      check(semmap_swiss_roll(roll_n, roll_noise, roll_seed, &cloud));
      Cloud owned(cloud);
      check(semmap_cloud_save(cloud, roll_out.c_str()));
      std::printf("points=%zu dim=3 seed=%" PRIu64 "\n",
                  semmap_cloud_points(cloud), roll_seed);
    } else if (dist_hamming->parsed()) {
      Corpus corpus = load_corpus(dist_in);
      semmap_delta* delta = nullptr;
      check(semmap_context_distances(
          corpus.get(), parse_mode(dist_mode),
          dist_missing == "differ" ? SEMMAP_MISSING_DIFFER
                                   : SEMMAP_MISSING_DELETE,
          dist_weights.empty() ? nullptr : dist_weights.c_str(), &delta));
      Delta owned(delta);
      check(semmap_delta_save(delta, dist_out.c_str()));
      std::printf("contexts=%zu\n", semmap_delta_size(delta));
    } else if (dist_coexpr->parsed()) {
      semmap_bintab* table = nullptr;
      check(semmap_bintab_load(dist_in.c_str(), &table));
      Bintab owned_table(table);
      semmap_delta* delta = nullptr;
      check(semmap_coexpression_distances(table, &delta));
      Delta owned(delta);
      check(semmap_delta_save(delta, dist_out.c_str()));
      std::printf("functions=%zu\n", semmap_delta_size(delta));
    } else if (dist_language->parsed()) {
      Corpus corpus = load_corpus(dist_in);
      semmap_delta* delta = nullptr;
      check(semmap_language_distances(corpus.get(), parse_mode(dist_mode), &delta));
      Delta owned(delta);
      check(semmap_delta_save(delta, dist_out.c_str()));
      std::printf("languages=%zu\n", semmap_delta_size(delta));
    } else if (dist_geodesic->parsed()) {
      semmap_cloud* cloud = nullptr;
      check(semmap_cloud_load(dist_in.c_str(), &cloud));
      Cloud owned_cloud(cloud);
      semmap_delta* delta = nullptr;
      check(semmap_geodesic_distances(cloud, dist_k, &delta));
      Delta owned(delta);
      check(semmap_delta_save(delta, dist_out.c_str()));
      std::printf("points=%zu k=%zu\n", semmap_delta_size(delta), dist_k);
    } else if (mds_classic->parsed() || mds_smacof->parsed()) {
      Delta delta = load_delta(mds_in);
      semmap_solution* sol = nullptr;
      if (mds_classic->parsed()) {
        check(semmap_mds_classic(delta.get(), mds_dims, &sol));
      } else {
        check(semmap_mds_smacof(delta.get(), mds_dims,
                                mds_init == "random" ? SEMMAP_INIT_RANDOM
                                                     : SEMMAP_INIT_CLASSIC,
                                mds_seed, mds_max_iter, mds_eps, &sol));
      }
      Solution owned(sol);
      check(semmap_solution_save(sol, mds_out.c_str()));
      std::printf("stress=%.6g dims=%zu iterations=%zu converged=%s "
                  "negative_mass=%.6g\n",
                  semmap_solution_stress(sol), semmap_solution_dims(sol),
                  semmap_solution_iterations(sol),
                  semmap_solution_converged(sol) ? "yes" : "no",
                  semmap_solution_negative_mass(sol));
    } else if (elbow->parsed()) {
      Delta delta = load_delta(elbow_in);
      semmap_scan* scan = nullptr;
      check(semmap_elbow_scan(delta.get(), elbow_max_dims,
                              elbow_engine == "smacof" ? SEMMAP_ENGINE_SMACOF
                                                       : SEMMAP_ENGINE_CLASSIC,
                              &scan));
      Scan owned(scan);
      check(semmap_scan_save(scan, elbow_out.c_str()));
      std::printf("elbow=%zu\n", semmap_scan_elbow(scan));
    } else if (cl_pam->parsed()) {
      Delta delta = load_delta(cl_in);
      semmap_clusters* clusters = nullptr;
      check(semmap_pam(delta.get(), cl_k, cl_seed, &clusters));
      Clusters owned(clusters);
      check(semmap_clusters_save(clusters, cl_out.c_str()));
      if (cl_k >= 2) {
        double sil = 0.0;
        check(semmap_silhouette_mean(delta.get(), clusters, &sil));
        std::printf("k=%zu cost=%.6g silhouette=%.6g\n", cl_k,
                    semmap_clusters_cost(clusters), sil);
      } else {
        std::printf("k=%zu cost=%.6g\n", cl_k, semmap_clusters_cost(clusters));
      }
    } else if (cl_hier->parsed()) {
      Delta delta = load_delta(cl_in);
      semmap_dendro* dendro = nullptr;
      check(semmap_agglomerative(delta.get(),
                                 cl_linkage == "single" ? SEMMAP_LINKAGE_SINGLE
                                 : cl_linkage == "complete"
                                     ? SEMMAP_LINKAGE_COMPLETE
                                     : SEMMAP_LINKAGE_AVERAGE,
                                 &dendro));
      Dendro owned(dendro);
      if (cl_cut_k > 0) {
        semmap_clusters* clusters = nullptr;
        check(semmap_dendro_cut(dendro, cl_cut_k, &clusters));
        Clusters owned_clusters(clusters);
        check(semmap_clusters_save(clusters, cl_out.c_str()));
        std::printf("linkage=%s k=%zu\n", cl_linkage.c_str(), cl_cut_k);
      } else {
        check(semmap_dendro_save(dendro, cl_out.c_str()));
        std::printf("linkage=%s merges=%zu\n", cl_linkage.c_str(),
                    semmap_dendro_leaves(dendro) - 1);
      }
    } else if (int_regress->parsed()) {
      Solution sol = load_solution(int_in);
      check(semmap_regression_report(sol.get(), int_annotations.c_str(),
                                     int_out.c_str()));
      std::printf("report=%s\n", int_out.c_str());
    } else if (int_subset->parsed()) {
      Corpus corpus = load_corpus(int_in);
      char* chain = nullptr;
      size_t violations = 0;
      check(semmap_subset_report(corpus.get(), int_category.c_str(),
                                 int_out.c_str(), &chain, &violations));
      std::printf("category=%s chain=%s violations=%zu\n", int_category.c_str(),
                  chain ? chain : "", violations);
      semmap_string_free(chain);
    } else if (plot_map_cmd->parsed()) {
      Solution sol = load_solution(plot_in);
      Corpus corpus;
      if (!plot_corpus.empty()) corpus = load_corpus(plot_corpus);
      check(semmap_plot_map(sol.get(), corpus.get(), parse_mode(plot_mode),
                            plot_color_by.empty() ? nullptr
                                                  : plot_color_by.c_str(),
                            plot_dims[0], plot_dims[1], plot_width, plot_height,
                            plot_out.c_str()));
      std::printf("points=%zu -> %s\n", semmap_solution_points(sol.get()),
                  plot_out.c_str());
    } else if (plot_dendro_cmd->parsed()) {
      semmap_dendro* dendro = nullptr;
      check(semmap_dendro_load(plot_in.c_str(), &dendro));
      Dendro owned(dendro);
      check(semmap_plot_dendrogram(dendro, plot_width, plot_height,
                                   plot_out.c_str()));
      std::printf("leaves=%zu -> %s\n", semmap_dendro_leaves(dendro),
                  plot_out.c_str());
    } else if (plot_elbow_cmd->parsed()) {
      semmap_scan* scan = nullptr;
      check(semmap_scan_load(plot_in.c_str(), &scan));
      Scan owned(scan);
      check(semmap_plot_elbow(scan, plot_width, plot_height, plot_out.c_str()));
      std::printf("elbow=%zu -> %s\n", semmap_scan_elbow(scan),
                  plot_out.c_str());
    }
  } catch (const StatusExit& e) {
    return e.code;
  }
  return 0;
}
