#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace semmap {

// Square symmetric labeled matrix of pairwise dissimilarities. Invariants
// enforced on construction: exact symmetry, zero diagonal, non-negative
// finite entries.
class DissimilarityMatrix {
public:
  DissimilarityMatrix(std::vector<std::string> labels, Matrix d);

  // Builds from a pair function evaluated once per unordered pair, which
  // makes symmetry exact by construction. pair_fn(i, j) is called with i < j.
  static DissimilarityMatrix build(
      std::vector<std::string> labels,
      const std::function<double(std::size_t, std::size_t)>& pair_fn);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double at(std::size_t i, std::size_t j) const { return d_(i, j); }
  const Matrix& values() const { return d_; }

  bool all_zero() const;

  std::string to_tsv() const;
  static DissimilarityMatrix from_tsv(const std::string& text);

  bool operator==(const DissimilarityMatrix&) const = default;

private:
  DissimilarityMatrix() = default;

  std::vector<std::string> labels_;
  Matrix d_;
};

}  // namespace semmap
