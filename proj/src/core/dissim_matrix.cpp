#include "core/dissim_matrix.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/tsv.hpp"

namespace semmap {

namespace {

void check_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw ValidationError("dissimilarity matrix: no labels");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second)
      throw ValidationError("dissimilarity matrix: duplicate label '" + l + "'");
  }
}

void check_entries(const std::vector<std::string>& labels, const Matrix& d) {
  const std::size_t n = labels.size();
  if (d.rows() != n || d.cols() != n) {
    throw ValidationError("dissimilarity matrix: " + std::to_string(n) +
                          " labels but " + std::to_string(d.rows()) + "x" +
                          std::to_string(d.cols()) + " matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0)
      throw ValidationError("dissimilarity matrix: nonzero diagonal at '" +
                            labels[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw ValidationError("dissimilarity matrix: bad entry at ('" +
                              labels[i] + "','" + labels[j] + "')");
      if (d(i, j) != d(j, i))
        throw ValidationError("dissimilarity matrix: asymmetric at ('" +
                              labels[i] + "','" + labels[j] + "')");
    }
  }
}

}  // namespace

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> labels, Matrix d)
    : labels_(std::move(labels)), d_(std::move(d)) {
  check_labels(labels_);
  check_entries(labels_, d_);
}

DissimilarityMatrix DissimilarityMatrix::build(
    std::vector<std::string> labels,
    const std::function<double(std::size_t, std::size_t)>& pair_fn) {
  check_labels(labels);
  const std::size_t n = labels.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = pair_fn(i, j);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  check_entries(labels, d);
  DissimilarityMatrix out;
  out.labels_ = std::move(labels);
  out.d_ = std::move(d);
  return out;
}

bool DissimilarityMatrix::all_zero() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (d_(i, j) != 0.0) return false;
  return true;
}

std::string DissimilarityMatrix::to_tsv() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) out << '\t';
    out << labels_[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (j) out << '\t';
      out << format_double(d_(i, j));
    }
    out << '\n';
  }
  return out.str();
}

DissimilarityMatrix DissimilarityMatrix::from_tsv(const std::string& text) {
  auto rows = read_tsv(text);
  if (rows.size() < 2)
    throw ValidationError("dissimilarity TSV: need a header row and a square body");
  std::vector<std::string> labels = rows[0].cells;
  const std::size_t n = labels.size();
  if (rows.size() - 1 != n)
    throw ValidationError("dissimilarity TSV: " + std::to_string(n) +
                          " labels but " + std::to_string(rows.size() - 1) +
                          " body rows");
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.cells.size() != n)
      throw ValidationError("line " + std::to_string(row.line_no) +
                            ": expected " + std::to_string(n) + " cells, got " +
                            std::to_string(row.cells.size()));
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = parse_double(row.cells[j], row.line_no);
  }
  return DissimilarityMatrix(std::move(labels), std::move(d));
}

}  // namespace semmap
