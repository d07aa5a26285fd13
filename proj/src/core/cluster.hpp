#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/dissim_matrix.hpp"

namespace semmap {

// Flat partition. For PAM results the medoids are real data points and cost
// is the total dissimilarity of points to their medoid.
struct ClusterResult {
  std::vector<std::size_t> assignment;  // per point, 0..k-1
  std::vector<std::size_t> medoids;     // empty for dendrogram cuts
  double cost = 0.0;

  std::size_t k() const;
  std::string to_tsv(const std::vector<std::string>& labels) const;
};

struct Merge {
  std::size_t left;   // cluster ids: leaves 0..n-1, then n+t for merge t
  std::size_t right;  // left < right
  double height;
  std::size_t size;  // leaves under the merged cluster
  bool operator==(const Merge&) const = default;
};

// Full agglomerative merge tree; exactly n-1 merges with non-decreasing
// heights.
struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<Merge> merges;

  std::size_t leaves() const { return labels.size(); }
  // Left-to-right leaf order for drawing.
  std::vector<std::size_t> leaf_order() const;

  std::string to_json() const;
  static Dendrogram from_json(const std::string& text);
};

// Kaufman-Rousseeuw PAM: greedy BUILD seeding, then best-improvement SWAP
// to a local optimum. Deterministic; ties broken by lowest index. The seed
// parameter is accepted for interface stability but the classic algorithm
// draws nothing from it.
ClusterResult pam(const DissimilarityMatrix& delta, std::size_t k,
                  std::uint64_t seed);

struct SilhouetteResult {
  std::vector<double> widths;
  double mean = 0.0;
};

// Standard silhouette widths; singleton clusters score 0. Needs >= 2
// nonempty clusters.
SilhouetteResult silhouette(const DissimilarityMatrix& delta,
                            const std::vector<std::size_t>& assignment);

enum class Linkage { kSingle, kComplete, kAverage };

// Lance-Williams agglomeration; merge ties broken by the smallest (i, j)
// cluster-id pair.
Dendrogram agglomerative(const DissimilarityMatrix& delta, Linkage linkage);

// Partition from undoing the last k-1 merges. Clusters are numbered by
// their smallest leaf index.
ClusterResult cut(const Dendrogram& dendrogram, std::size_t k);

}  // namespace semmap
