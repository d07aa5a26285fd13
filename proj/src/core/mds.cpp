#include "core/mds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "core/eigen.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/tsv.hpp"

namespace semmap {

namespace {

constexpr double kZeroEigTol = 1e-12;   // relative rank cutoff for diagnostics
constexpr double kExactStress = 1e-12;  // stress at/below this is an exact fit

double pair_dist(const Matrix& coords, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t d = 0; d < coords.cols(); ++d) {
    const double diff = coords(i, d) - coords(j, d);
    s += diff * diff;
  }
  return std::sqrt(s);
}

void center_columns(Matrix& coords) {
  for (std::size_t d = 0; d < coords.cols(); ++d) {
    double mean = 0.0;
    for (std::size_t i = 0; i < coords.rows(); ++i) mean += coords(i, d);
    mean /= static_cast<double>(coords.rows());
    for (std::size_t i = 0; i < coords.rows(); ++i) coords(i, d) -= mean;
  }
}

void check_shapes(const DissimilarityMatrix& delta, const Matrix& coords) {
  if (coords.rows() != delta.size())
    throw ValidationError("stress: " + std::to_string(delta.size()) +
                          " dissimilarities but " + std::to_string(coords.rows()) +
                          " coordinate rows");
}

// Numerator and denominator of squared Stress-1.
std::pair<double, double> stress_parts(const DissimilarityMatrix& delta,
                                       const Matrix& coords) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.size(); ++j) {
      const double d = pair_dist(coords, i, j);
      const double diff = d - delta.at(i, j);
      num += diff * diff;
      den += delta.at(i, j) * delta.at(i, j);
    }
  }
  return {num, den};
}

}  // namespace

double kruskal_stress(const DissimilarityMatrix& delta, const Matrix& coords) {
  check_shapes(delta, coords);
  const auto [num, den] = stress_parts(delta, coords);
  if (den == 0.0) {
    if (num == 0.0) return 0.0;  // coincident points, coincident targets
    throw NumericError(
        "kruskal_stress: all dissimilarities are zero but the configuration "
        "has nonzero distances");
  }
  return std::sqrt(num / den);
}

std::vector<double> per_point_stress(const DissimilarityMatrix& delta,
                                     const Matrix& coords) {
  check_shapes(delta, coords);
  const std::size_t n = delta.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = pair_dist(coords, i, j);
      const double diff = d - delta.at(i, j);
      num += diff * diff;
      den += delta.at(i, j) * delta.at(i, j);
    }
    if (den == 0.0) {
      if (num == 0.0) {
        out[i] = 0.0;
        continue;
      }
      throw NumericError("per_point_stress: point '" + delta.labels()[i] +
                         "' has all-zero dissimilarities but nonzero distances");
    }
    out[i] = std::sqrt(num / den);
  }
  return out;
}

std::string per_point_stress_report(const DissimilarityMatrix& delta,
                                    const Matrix& coords) {
  const std::vector<double> scores = per_point_stress(delta, coords);
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::ostringstream out;
  out << "label\tstress\n";
  for (std::size_t i : order)
    out << delta.labels()[i] << '\t' << format_double(scores[i]) << '\n';
  return out.str();
}

MdsSolution classic_scale(const DissimilarityMatrix& delta, std::size_t dims) {
  const std::size_t n = delta.size();
  if (dims < 1) throw ValidationError("classic_scale: dims must be >= 1");
  if (n >= 2 && dims > n - 1)
    throw ValidationError("classic_scale: dims " + std::to_string(dims) +
                          " exceeds n-1 = " + std::to_string(n - 1));
  if (n == 1 && dims > 1)
    throw ValidationError("classic_scale: dims must be 1 for a single point");

  MdsSolution sol;
  sol.labels = delta.labels();
  sol.engine = MdsEngine::kClassic;
  sol.converged = true;

  if (delta.all_zero()) {
    // All points coincide; the zero configuration is exact.
    sol.coords = Matrix(n, dims);
    sol.eigenvalues.assign(n, 0.0);
    sol.stress = 0.0;
    return sol;
  }

  const Matrix b = double_center(delta);
  const EigenResult eig = sym_eigen(b);
  sol.eigenvalues = eig.eigenvalues;

  double pos_mass = 0.0, neg_mass = 0.0;
  double max_abs = 0.0;
  for (double ev : eig.eigenvalues) max_abs = std::max(max_abs, std::abs(ev));
  for (double ev : eig.eigenvalues) {
    if (std::abs(ev) <= kZeroEigTol * max_abs) continue;  // numerical zero
    (ev > 0.0 ? pos_mass : neg_mass) += std::abs(ev);
  }
  const double total = pos_mass + neg_mass;
  sol.negative_eigenvalue_mass = total > 0.0 ? neg_mass / total : 0.0;

  bool any_positive = false;
  sol.coords = Matrix(n, dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const double ev = eig.eigenvalues[d];
    // Eigenvalues at numerical-zero scale carry no signal; their columns
    // would be pure noise after the sqrt.
    if (ev <= kZeroEigTol * max_abs) {
      sol.degenerate = true;  // column stays zero
      continue;
    }
    any_positive = true;
    const double scale = std::sqrt(ev);
    for (std::size_t i = 0; i < n; ++i)
      sol.coords(i, d) = scale * eig.eigenvectors(i, d);
  }
  if (!any_positive)
    throw NumericError(
        "classic_scale: no selected eigenvalue is positive; the input has no "
        "Euclidean structure at this dimensionality");

  sol.stress = kruskal_stress(delta, sol.coords);
  return sol;
}

namespace {

// One Guttman transform step: X' = (1/n) B(X) X.
Matrix guttman_step(const DissimilarityMatrix& delta, const Matrix& x) {
  const std::size_t n = delta.size();
  const std::size_t m = x.cols();
  std::vector<double> b_offdiag(n * n, 0.0);
  std::vector<double> b_diag(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_dist(x, i, j);
      const double v = d > 0.0 ? -delta.at(i, j) / d : 0.0;
      b_offdiag[i * n + j] = v;
      b_offdiag[j * n + i] = v;
      b_diag[i] -= v;
      b_diag[j] -= v;
    }
  }
  Matrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double bij = (i == j) ? b_diag[i] : b_offdiag[i * n + j];
      if (bij == 0.0) continue;
      for (std::size_t d = 0; d < m; ++d) out(i, d) += bij * x(j, d);
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < m; ++d) out(i, d) *= inv_n;
  return out;
}

}  // namespace

MdsSolution smacof(const DissimilarityMatrix& delta, std::size_t dims,
                   const SmacofOptions& opts) {
  const std::size_t n = delta.size();
  if (dims < 1) throw ValidationError("smacof: dims must be >= 1");
  if (n >= 2 && dims > n - 1)
    throw ValidationError("smacof: dims " + std::to_string(dims) +
                          " exceeds n-1 = " + std::to_string(n - 1));
  if (opts.max_iter < 1) throw ValidationError("smacof: max_iter must be >= 1");
  if (!(opts.eps > 0.0)) throw ValidationError("smacof: eps must be > 0");

  Matrix x;
  switch (opts.init) {
    case SmacofInit::kRandom: {
      Rng rng(opts.seed);
      x = Matrix(n, dims);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dims; ++d) x(i, d) = rng.uniform(-1.0, 1.0);
      break;
    }
    case SmacofInit::kClassic: {
      try {
        x = classic_scale(delta, dims).coords;
      } catch (const NumericError&) {
        // No positive eigenvalue to start from; fall back to a random
        // configuration (all-zero coords would be a Guttman fixed point).
        Rng rng(opts.seed);
        x = Matrix(n, dims);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t d = 0; d < dims; ++d) x(i, d) = rng.uniform(-1.0, 1.0);
      }
      break;
    }
    case SmacofInit::kGiven: {
      if (opts.given.rows() != n || opts.given.cols() != dims)
        throw ValidationError("smacof: init coords are " +
                              std::to_string(opts.given.rows()) + "x" +
                              std::to_string(opts.given.cols()) + ", expected " +
                              std::to_string(n) + "x" + std::to_string(dims));
      x = opts.given;
      break;
    }
  }

  MdsSolution sol;
  sol.labels = delta.labels();
  sol.engine = MdsEngine::kSmacof;

  const auto [num0, den] = stress_parts(delta, x);
  double raw = num0;
  sol.stress_history.push_back(den > 0.0 ? std::sqrt(raw / den) : 0.0);

  std::size_t it = 0;
  bool converged = (raw == 0.0);
  while (!converged && it < opts.max_iter) {
    x = guttman_step(delta, x);
    ++it;
    const auto [num2, den2] = stress_parts(delta, x);
    sol.stress_history.push_back(den2 > 0.0 ? std::sqrt(num2 / den2) : 0.0);
    if (num2 == 0.0 || raw - num2 < opts.eps * raw) converged = true;
    raw = num2;
  }

  center_columns(x);
  sol.coords = std::move(x);
  sol.iterations = it;
  sol.converged = converged;
  sol.stress = kruskal_stress(delta, sol.coords);
  return sol;
}

std::size_t flag_elbow(const std::vector<double>& stress) {
  const std::size_t m = stress.size();
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double s = stress[k];
    double drop = 0.0;
    if (s > kExactStress) drop = (s - stress[k + 1]) / s;
    if (drop < 0.05) return k + 1;  // dims are 1-based
  }
  return m;
}

ElbowScan elbow_scan(const DissimilarityMatrix& delta, std::size_t max_dims,
                     MdsEngine engine) {
  const std::size_t n = delta.size();
  if (max_dims < 1 || (n >= 2 && max_dims > n - 1))
    throw ValidationError("elbow_scan: max_dims must be in [1, n-1]");
  ElbowScan scan;
  for (std::size_t d = 1; d <= max_dims; ++d) {
    double s = 0.0;
    if (engine == MdsEngine::kClassic) {
      s = classic_scale(delta, d).stress;
    } else {
      s = smacof(delta, d, SmacofOptions{}).stress;
    }
    scan.dims.push_back(d);
    scan.stress.push_back(s);
  }
  scan.elbow = flag_elbow(scan.stress);
  return scan;
}

std::string ElbowScan::to_tsv() const {
  std::ostringstream out;
  out << "dims\tstress\n";
  for (std::size_t i = 0; i < dims.size(); ++i)
    out << dims[i] << '\t' << format_double(stress[i]) << '\n';
  return out.str();
}

ElbowScan ElbowScan::from_tsv(const std::string& text) {
  auto rows = read_tsv(text);
  if (rows.size() < 2 || rows[0].cells != std::vector<std::string>{"dims", "stress"})
    throw ValidationError("elbow scan TSV: expected a 'dims\\tstress' header");
  ElbowScan scan;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != 2)
      throw ValidationError("line " + std::to_string(row.line_no) +
                            ": expected 2 cells");
    scan.dims.push_back(
        static_cast<std::size_t>(parse_long(row.cells[0], row.line_no)));
    scan.stress.push_back(parse_double(row.cells[1], row.line_no));
  }
  scan.elbow = flag_elbow(scan.stress);
  return scan;
}

std::string MdsSolution::to_json() const {
  nlohmann::json j;
  j["labels"] = labels;
  auto& rows = j["coords"] = nlohmann::json::array();
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t d = 0; d < coords.cols(); ++d) row.push_back(coords(i, d));
    rows.push_back(std::move(row));
  }
  j["eigenvalues"] = eigenvalues;
  j["negative_eigenvalue_mass"] = negative_eigenvalue_mass;
  j["stress"] = stress;
  j["engine"] = engine == MdsEngine::kClassic ? "classic" : "smacof";
  j["iterations"] = iterations;
  j["converged"] = converged;
  j["degenerate"] = degenerate;
  j["stress_history"] = stress_history;
  return j.dump(2) + "\n";
}

MdsSolution MdsSolution::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("solution JSON: ") + e.what());
  }
  try {
    MdsSolution sol;
    sol.labels = j.at("labels").get<std::vector<std::string>>();
    const auto& rows = j.at("coords");
    const std::size_t n = rows.size();
    if (n != sol.labels.size())
      throw ValidationError("solution JSON: label/coord count mismatch");
    const std::size_t m = n ? rows.at(0).size() : 0;
    sol.coords = Matrix(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows.at(i).size() != m)
        throw ValidationError("solution JSON: ragged coords");
      for (std::size_t d = 0; d < m; ++d) sol.coords(i, d) = rows.at(i).at(d);
    }
    sol.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    sol.negative_eigenvalue_mass = j.at("negative_eigenvalue_mass");
    sol.stress = j.at("stress");
    const std::string engine = j.at("engine");
    if (engine == "classic")
      sol.engine = MdsEngine::kClassic;
    else if (engine == "smacof")
      sol.engine = MdsEngine::kSmacof;
    else
      throw ValidationError("solution JSON: unknown engine '" + engine + "'");
    sol.iterations = j.at("iterations");
    sol.converged = j.at("converged");
    sol.degenerate = j.value("degenerate", false);
    sol.stress_history = j.value("stress_history", std::vector<double>{});
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("solution JSON: ") + e.what());
  }
}

}  // namespace semmap
