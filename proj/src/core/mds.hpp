#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/dissim_matrix.hpp"
#include "core/matrix.hpp"

namespace semmap {

enum class MdsEngine { kClassic, kSmacof };

// Low-dimensional configuration for a dissimilarity matrix, with the
// diagnostics needed to judge it: the eigenvalue spectrum of the
// double-centered matrix (classic engine), the share of negative eigenvalue
// mass, and Kruskal Stress-1 against the input.
struct MdsSolution {
  std::vector<std::string> labels;
  Matrix coords;  // n x dims, columns centered
  std::vector<double> eigenvalues;
  double negative_eigenvalue_mass = 0.0;
  double stress = 0.0;
  MdsEngine engine = MdsEngine::kClassic;
  std::size_t iterations = 0;
  bool converged = false;
  // Selected eigenvalues <= 0 were replaced by all-zero columns.
  bool degenerate = false;
  // Stress-1 per majorization step, starting with the initial configuration
  // (SMACOF only).
  std::vector<double> stress_history;

  std::string to_json() const;
  static MdsSolution from_json(const std::string& text);
};

// Torgerson scaling: double-center, eigendecompose, scale the leading
// eigenvectors by sqrt(eigenvalue).
MdsSolution classic_scale(const DissimilarityMatrix& delta, std::size_t dims);

enum class SmacofInit { kRandom, kClassic, kGiven };

struct SmacofOptions {
  SmacofInit init = SmacofInit::kClassic;
  std::uint64_t seed = 0;
  Matrix given;  // used when init == kGiven
  std::size_t max_iter = 300;
  double eps = 1e-9;
};

// Stress majorization via the Guttman transform; raw stress never increases
// across iterations. Pairs at distance zero contribute nothing to the
// transform.
MdsSolution smacof(const DissimilarityMatrix& delta, std::size_t dims,
                   const SmacofOptions& opts);

// Kruskal Stress-1 of a configuration against the dissimilarities.
double kruskal_stress(const DissimilarityMatrix& delta, const Matrix& coords);

// Per-point contribution, for spotting outliers.
std::vector<double> per_point_stress(const DissimilarityMatrix& delta,
                                     const Matrix& coords);

// TSV of per-point stress sorted worst-first.
std::string per_point_stress_report(const DissimilarityMatrix& delta,
                                    const Matrix& coords);

struct ElbowScan {
  std::vector<std::size_t> dims;
  std::vector<double> stress;
  std::size_t elbow = 0;  // flagged dimensionality

  std::string to_tsv() const;
  static ElbowScan from_tsv(const std::string& text);
};

// Stress at every dimensionality 1..max_dims; the elbow is the smallest k
// whose relative stress drop to k+1 falls below 5%. Stress at or below 1e-12
// counts as an exact fit, so drops between noise-level values never mask
// the elbow.
ElbowScan elbow_scan(const DissimilarityMatrix& delta, std::size_t max_dims,
                     MdsEngine engine);

// The elbow rule applied to a stress sequence (exposed for the scan loader).
std::size_t flag_elbow(const std::vector<double>& stress);

}  // namespace semmap
