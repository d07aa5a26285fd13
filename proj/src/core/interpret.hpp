#pragma once

#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/mds.hpp"

namespace semmap {

// One per-language coloring of the shared point configuration. Labels come
// from comparison tokens; MISSING renders as its own category. The palette
// indices are shared across the layers of one call, so equal labels get
// equal colors everywhere.
struct ColoringLayer {
  std::string language;
  std::vector<std::string> point_labels;   // per point, aligned with solution
  std::vector<std::string> palette;        // sorted category labels
  std::vector<std::size_t> palette_index;  // per point, index into palette
};

std::vector<ColoringLayer> color_layers(const MdsSolution& solution,
                                        const CorpusTable& table,
                                        CompareMode mode);

// Simple OLS of a coordinate (response) on one 0/1 annotation (predictor).
struct RegressionRow {
  std::size_t dimension = 0;  // 1-based
  std::string variable;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double t_stat = 0.0;
  std::size_t n = 0;
};

struct DimensionReport {
  std::vector<RegressionRow> rows;  // sorted by r2 descending

  std::string to_tsv() const;
};

// Per-point binary annotations keyed by context id.
struct AnnotationTable {
  std::vector<std::string> context_ids;
  std::vector<std::string> variables;
  std::vector<std::uint8_t> values;  // row-major contexts x variables

  static AnnotationTable from_tsv(const std::string& text);
};

DimensionReport dimension_regression(const MdsSolution& solution,
                                     const AnnotationTable& annotations);

// Cross-linguistic usage-set comparison for one category: which languages
// use it where, how the sets contain each other, and the size-ordered chain
// with per-link violation counts.
struct SubsetPair {
  std::string lang1, lang2;
  std::size_t size1 = 0, size2 = 0;
  std::size_t only_in_first = 0;
  double containment = 0.0;  // |S1 & S2| / |S1|
};

struct SubsetReport {
  std::string category;
  std::vector<SubsetPair> pairs;        // all ordered pairs of owning languages
  std::vector<std::string> chain;       // languages by |S| ascending
  std::vector<std::size_t> chain_size;  // |S| per chain entry
  std::vector<std::size_t> violations;  // per link: |S_i \ S_{i+1}|

  std::string to_tsv() const;
};

SubsetReport subset_report(const CorpusTable& table, const std::string& category,
                           CompareMode mode = CompareMode::kFeature);

}  // namespace semmap
