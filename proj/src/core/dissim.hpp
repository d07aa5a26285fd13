#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/dissim_matrix.hpp"

namespace semmap {

// What a MISSING token means for a pairwise comparison: drop the position
// and renormalize, or count it as a difference.
enum class MissingPolicy { kPairwiseDelete, kCountAsDiffer };

// Positive per-position weights for weighted Hamming distances.
struct FeatureWeights {
  std::vector<double> w;

  static FeatureWeights unit(std::size_t n) {
    return FeatureWeights{std::vector<double>(n, 1.0)};
  }
  void validate(std::size_t expected_len) const;
};

// Parses a "name<TAB>weight" TSV into per-language weights aligned with the
// table's language order; unlisted languages default to 1.
FeatureWeights weights_for_languages(const std::string& text,
                                     const CorpusTable& table);

// Weighted relative Hamming distance in [0, 1]: weighted fraction of
// pointwise-differing positions.
double hamming(std::span<const Token> u, std::span<const Token> v,
               const FeatureWeights& weights, MissingPolicy missing);

// Pairwise distances between contexts; each context is its tuple of
// comparison tokens across languages.
DissimilarityMatrix context_distances(const CorpusTable& table, CompareMode mode,
                                      const FeatureWeights& weights,
                                      MissingPolicy missing);

DissimilarityMatrix context_distances(const CorpusTable& table, CompareMode mode,
                                      MissingPolicy missing);

// Distance between two columns (functions) of a binary table:
// 1 - (#rows with Y in both) / (#rows).
DissimilarityMatrix coexpression_distances(const BinaryTable& table);

// Distance between two languages: the fraction of context pairs on which
// their co-classification relations disagree. Only within-language token
// equality is consulted, so forms never cross languages.
DissimilarityMatrix language_distances(const CorpusTable& table, CompareMode mode);

// Shortest-path distances over the symmetrized k-nearest-neighbor graph
// with Euclidean edge weights.
DissimilarityMatrix geodesic_distances(const PointCloud& cloud, std::size_t k);

}  // namespace semmap
