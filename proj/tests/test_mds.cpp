#include <doctest.h>

#include <cmath>

#include "core/dissim.hpp"
#include "core/error.hpp"
#include "core/mds.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace semmap;

namespace {

DissimilarityMatrix unit_square_delta() {
  Matrix pts(4, 2);
  pts(1, 0) = 1;
  pts(2, 1) = 1;
  pts(3, 0) = 1;
  pts(3, 1) = 1;
  return testutil::euclidean_delta(pts);
}

double max_distance_error(const DissimilarityMatrix& delta, const Matrix& coords) {
  double worst = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.size(); ++j) {
      double s = 0;
      for (std::size_t d = 0; d < coords.cols(); ++d) {
        const double diff = coords(i, d) - coords(j, d);
        s += diff * diff;
      }
      worst = std::max(worst, std::abs(std::sqrt(s) - delta.at(i, j)));
    }
  }
  return worst;
}

// A 4-point metric that cannot be embedded in any Euclidean space: three
// mutually distant points with a common close "hub".
DissimilarityMatrix star_metric() {
  Matrix d(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) d(i, j) = 2.0;
  for (std::size_t i = 0; i < 3; ++i) {
    d(i, 3) = 1.0;
    d(3, i) = 1.0;
  }
  return DissimilarityMatrix({"a", "b", "c", "hub"}, std::move(d));
}

}  // namespace

TEST_CASE("classic_scale: unit square round trip at m=2") {
  const auto delta = unit_square_delta();
  const auto sol = classic_scale(delta, 2);
  CHECK(max_distance_error(delta, sol.coords) <= 1e-9);
  CHECK(sol.stress <= 1e-9);
  CHECK_FALSE(sol.degenerate);
  CHECK(sol.negative_eigenvalue_mass == 0.0);

  SUBCASE("coords columns are centered and have eigenvalue norms") {
    for (std::size_t d = 0; d < 2; ++d) {
      double sum = 0, sq = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        sum += sol.coords(i, d);
        sq += sol.coords(i, d) * sol.coords(i, d);
      }
      CHECK(std::abs(sum) <= 1e-8);
      CHECK(sq == doctest::Approx(std::max(sol.eigenvalues[d], 0.0))
                      .epsilon(1e-8));
    }
  }
}

TEST_CASE("classic_scale: all-zero input gives the zero configuration") {
  const DissimilarityMatrix delta({"a", "b", "c"}, Matrix(3, 3));
  const auto sol = classic_scale(delta, 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(sol.coords(i, 0) == 0.0);
  CHECK(sol.stress == 0.0);
}

TEST_CASE("classic_scale: equilateral triangle, hand eigenanalysis") {
  Matrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) d(i, j) = 1.0;
  const DissimilarityMatrix delta({"a", "b", "c"}, std::move(d));
  const auto sol = classic_scale(delta, 2);
  CHECK(max_distance_error(delta, sol.coords) <= 1e-9);
  REQUIRE(sol.eigenvalues.size() == 3);
  CHECK(sol.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.eigenvalues[2] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("classic_scale: errors and degeneracy") {
  const auto delta = unit_square_delta();
  CHECK_THROWS_AS(classic_scale(delta, 4), ValidationError);  // m > n-1
  CHECK_THROWS_AS(classic_scale(delta, 0), ValidationError);
  // Selecting into the flat spectrum tail -> zero column + flag.
  const auto sol = classic_scale(delta, 3);
  CHECK(sol.degenerate);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sol.coords(i, 2) == 0.0);
}

TEST_CASE("classic_scale: negative eigenvalue mass detects non-Euclidean input") {
  const auto star = star_metric();
  const auto sol = classic_scale(star, 2);
  CHECK(sol.negative_eigenvalue_mass > 0.0);
  const auto square = classic_scale(unit_square_delta(), 2);
  CHECK(square.negative_eigenvalue_mass == 0.0);
}

TEST_CASE("kruskal_stress: zero for an exact configuration") {
  const auto delta = unit_square_delta();
  const auto sol = classic_scale(delta, 2);
  CHECK(kruskal_stress(delta, sol.coords) <= 1e-12);
}

TEST_CASE("kruskal_stress: hand-evaluated collinear case") {
  // 3 points, all dissimilarities 1, coords at 0, 1, 2 on a line:
  // distances (1, 1, 2) -> sqrt(((0)^2+(0)^2+(1)^2) / 3) = sqrt(1/3).
  Matrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) d(i, j) = 1.0;
  const DissimilarityMatrix delta({"a", "b", "c"}, std::move(d));
  Matrix coords(3, 1);
  coords(1, 0) = 1.0;
  coords(2, 0) = 2.0;
  CHECK(kruskal_stress(delta, coords) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("kruskal_stress: doubling an exact equilateral embedding gives 1") {
  Matrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) d(i, j) = 1.0;
  const DissimilarityMatrix delta({"a", "b", "c"}, std::move(d));
  auto sol = classic_scale(delta, 2);
  Matrix doubled = sol.coords;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 2; ++k) doubled(i, k) *= 2.0;
  // distances (2,2,2) vs (1,1,1): sqrt(3/3) = 1.
  CHECK(kruskal_stress(delta, doubled) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kruskal_stress: all-zero delta with nonzero coords is an error") {
  const DissimilarityMatrix delta({"a", "b"}, Matrix(2, 2));
  Matrix coords(2, 1);
  coords(1, 0) = 1.0;
  CHECK_THROWS_AS(kruskal_stress(delta, coords), NumericError);
}

TEST_CASE("kruskal_stress is invariant under rigid motions") {
  Rng rng(314);
  const auto pts = testutil::random_points(12, 2, 314);
  const auto delta = testutil::euclidean_delta(pts);
  Matrix coords = testutil::random_points(12, 2, 315);
  const double base = kruskal_stress(delta, coords);
  for (int rep = 0; rep < 10; ++rep) {
    const double angle = rng.uniform(0, 6.28318);
    const bool reflect = rng.uniform() < 0.5;
    const double tx = rng.uniform(-5, 5), ty = rng.uniform(-5, 5);
    Matrix moved(12, 2);
    for (std::size_t i = 0; i < 12; ++i) {
      const double x = coords(i, 0), y = coords(i, 1);
      double rx = std::cos(angle) * x - std::sin(angle) * y;
      double ry = std::sin(angle) * x + std::cos(angle) * y;
      if (reflect) rx = -rx;
      moved(i, 0) = rx + tx;
      moved(i, 1) = ry + ty;
    }
    CHECK(std::abs(kruskal_stress(delta, moved) - base) <= 1e-10);
  }
}

TEST_CASE("per_point_stress: zero for perfect, maximal for the displaced point") {
  const auto delta = unit_square_delta();
  const auto sol = classic_scale(delta, 2);
  auto scores = per_point_stress(delta, sol.coords);
  for (double s : scores) CHECK(s <= 1e-9);

  Matrix displaced = sol.coords;
  displaced(2, 0) += 0.9;
  displaced(2, 1) -= 0.4;
  scores = per_point_stress(delta, displaced);
  for (std::size_t i = 0; i < 4; ++i)
    if (i != 2) CHECK(scores[2] > scores[i]);

  SUBCASE("permutation equivariance") {
    // Swap points 0 and 2 everywhere; scores must swap along.
    std::vector<std::string> labels = delta.labels();
    std::swap(labels[0], labels[2]);
    Matrix pd(4, 4);
    const std::size_t perm[4] = {2, 1, 0, 3};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        pd(i, j) = delta.at(perm[i], perm[j]);
    const DissimilarityMatrix pdelta(labels, std::move(pd));
    Matrix pcoords(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t d = 0; d < 2; ++d) pcoords(i, d) = displaced(perm[i], d);
    const auto pscores = per_point_stress(pdelta, pcoords);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(pscores[i] == doctest::Approx(scores[perm[i]]).epsilon(1e-12));
  }
}

TEST_CASE("per-point stress report is sorted worst-first") {
  const auto delta = unit_square_delta();
  auto sol = classic_scale(delta, 2);
  sol.coords(2, 0) += 0.9;
  const std::string report = per_point_stress_report(delta, sol.coords);
  CHECK(report.find("label\tstress") == 0);
  CHECK(report.find("\np2\t") == report.find('\n'));  // worst point first
}

TEST_CASE("smacof: exact init converges immediately with stress 0") {
  // The generating coordinates themselves: their distances equal delta
  // bit-for-bit, so raw stress is exactly zero at iteration 0.
  Matrix pts(4, 2);
  pts(1, 0) = 1;
  pts(2, 1) = 1;
  pts(3, 0) = 1;
  pts(3, 1) = 1;
  const auto delta = testutil::euclidean_delta(pts);
  SmacofOptions opts;
  opts.init = SmacofInit::kGiven;
  opts.given = pts;
  const auto sol = smacof(delta, 2, opts);
  CHECK(sol.iterations == 0);
  CHECK(sol.converged);
  CHECK(sol.stress == 0.0);
  REQUIRE(sol.stress_history.size() == 1);
  CHECK(sol.stress_history[0] == 0.0);
}

TEST_CASE("smacof: classic init on Euclidean data reaches near-zero stress") {
  const auto pts = testutil::random_points(30, 2, 2718);
  const auto delta = testutil::euclidean_delta(pts);
  SmacofOptions opts;  // defaults: classic init
  const auto sol = smacof(delta, 2, opts);
  CHECK(sol.stress <= 1e-6);
  CHECK(sol.converged);
}

TEST_CASE("smacof: recorded stress sequence never increases") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto table = testutil::random_corpus(20, 8, 3, seed);
    const auto delta = context_distances(table, CompareMode::kLexeme,
                                         MissingPolicy::kPairwiseDelete);
    SmacofOptions opts;
    opts.init = SmacofInit::kRandom;
    opts.seed = seed;
    const auto sol = smacof(delta, 2, opts);
    for (std::size_t t = 1; t < sol.stress_history.size(); ++t)
      CHECK(sol.stress_history[t] <= sol.stress_history[t - 1] + 1e-12);
  }
}

TEST_CASE("smacof from classic never exceeds the classic stress") {
  const auto table = testutil::random_corpus(25, 10, 3, 404);
  const auto delta = context_distances(table, CompareMode::kLexeme,
                                       MissingPolicy::kPairwiseDelete);
  const auto classic = classic_scale(delta, 2);
  SmacofOptions opts;
  const auto sol = smacof(delta, 2, opts);
  CHECK(sol.stress <= classic.stress + 1e-12);
}

TEST_CASE("smacof: invalid init shape and parameters") {
  const auto delta = unit_square_delta();
  SmacofOptions opts;
  opts.init = SmacofInit::kGiven;
  opts.given = Matrix(3, 2);
  CHECK_THROWS_AS(smacof(delta, 2, opts), ValidationError);
  SmacofOptions bad;
  bad.max_iter = 0;
  CHECK_THROWS_AS(smacof(delta, 2, bad), ValidationError);
  SmacofOptions bad2;
  bad2.eps = 0.0;
  CHECK_THROWS_AS(smacof(delta, 2, bad2), ValidationError);
}

TEST_CASE("smacof handles coincident points in the start configuration") {
  const auto delta = unit_square_delta();
  SmacofOptions opts;
  opts.init = SmacofInit::kGiven;
  opts.given = Matrix(4, 2);  // every point at the origin
  opts.given(0, 0) = 1.0;     // break one point out so the transform can move
  const auto sol = smacof(delta, 2, opts);
  CHECK(std::isfinite(sol.stress));
}

TEST_CASE("elbow_scan: 2-D Euclidean data flags 2 with near-zero stress") {
  const auto pts = testutil::random_points(25, 2, 99);
  const auto delta = testutil::euclidean_delta(pts);
  const auto scan = elbow_scan(delta, 4, MdsEngine::kClassic);
  CHECK(scan.elbow == 2);
  CHECK(scan.stress[1] <= 1e-6);
  for (std::size_t i = 1; i < scan.stress.size(); ++i)
    CHECK(scan.stress[i] <= scan.stress[i - 1] + 1e-12);
}

TEST_CASE("elbow_scan: max_dims 1 yields a single row flagged 1") {
  const auto pts = testutil::random_points(10, 2, 5);
  const auto delta = testutil::euclidean_delta(pts);
  const auto scan = elbow_scan(delta, 1, MdsEngine::kClassic);
  REQUIRE(scan.dims.size() == 1);
  CHECK(scan.elbow == 1);
}

TEST_CASE("elbow_scan: blob data with noisy distances flags dimension 3") {
  // 3-D Gaussian blob; multiplicative symmetric noise keeps the stress floor
  // positive so the 5% window is exercised for real.
  const auto pts = testutil::random_points(60, 3, 2025, 2.0);
  auto base = testutil::euclidean_delta(pts);
  Rng rng(77);
  Matrix noisy(60, 60);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = i + 1; j < 60; ++j) {
      const double v = base.at(i, j) * (1.0 + 0.2 * rng.uniform());
      noisy(i, j) = v;
      noisy(j, i) = v;
    }
  const DissimilarityMatrix delta(base.labels(), std::move(noisy));
  const auto scan = elbow_scan(delta, 5, MdsEngine::kClassic);
  CHECK(scan.elbow == 3);
  CHECK(scan.stress[1] > scan.stress[2] * 1.2);         // 2-D clearly worse
  CHECK(scan.stress[2] - scan.stress[3] < 0.05 * scan.stress[2]);
}

TEST_CASE("elbow scan TSV round trip") {
  const auto pts = testutil::random_points(12, 2, 123);
  const auto delta = testutil::euclidean_delta(pts);
  const auto scan = elbow_scan(delta, 3, MdsEngine::kClassic);
  const auto again = ElbowScan::from_tsv(scan.to_tsv());
  CHECK(again.dims == scan.dims);
  CHECK(again.stress == scan.stress);
  CHECK(again.elbow == scan.elbow);
}

TEST_CASE("solution JSON round trip") {
  const auto delta = unit_square_delta();
  const auto sol = classic_scale(delta, 2);
  const auto again = MdsSolution::from_json(sol.to_json());
  CHECK(again.labels == sol.labels);
  CHECK(again.coords == sol.coords);
  CHECK(again.eigenvalues == sol.eigenvalues);
  CHECK(again.stress == sol.stress);
  CHECK(again.converged == sol.converged);
}
