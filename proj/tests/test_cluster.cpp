#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "core/cluster.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace semmap;

namespace {

std::vector<double> flat(const DissimilarityMatrix& delta) {
  std::vector<double> out;
  for (std::size_t i = 0; i < delta.size(); ++i)
    for (std::size_t j = 0; j < delta.size(); ++j) out.push_back(delta.at(i, j));
  return out;
}

// Blob dissimilarities: intra-blob distances < 1, inter-blob > 3.
DissimilarityMatrix blob_delta(const std::vector<std::size_t>& sizes,
                               std::uint64_t seed) {
  const auto pts = testutil::blobs(sizes, 10.0, 0.5, 2, seed);
  return testutil::euclidean_delta(pts);
}

std::vector<std::size_t> blob_truth(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> truth;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (std::size_t i = 0; i < sizes[b]; ++i) truth.push_back(b);
  return truth;
}

bool same_partition(const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto f = fwd.emplace(a[i], b[i]);
    if (!f.second && f.first->second != b[i]) return false;
    const auto g = bwd.emplace(b[i], a[i]);
    if (!g.second && g.first->second != a[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pam: k = n makes every point its own medoid at zero cost") {
  const auto delta = blob_delta({3, 3}, 1);
  const auto result = pam(delta, 6, 0);
  CHECK(result.cost == 0.0);
  CHECK(result.medoids.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(result.assignment[i] == i);
}

TEST_CASE("pam: two separated blobs match the exhaustive optimum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<std::size_t> sizes{5, 6};
    const auto delta = blob_delta(sizes, seed);
    const auto result = pam(delta, 2, seed);
    const double best = oracle::pam_brute_force(flat(delta), 11, 2);
    CHECK(result.cost == doctest::Approx(best).epsilon(1e-12));
    CHECK(same_partition(result.assignment, blob_truth(sizes)));
  }
}

TEST_CASE("pam: three blobs, k=3, exhaustive oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<std::size_t> sizes{3, 3, 3};
    const auto delta = blob_delta(sizes, seed * 17);
    const auto result = pam(delta, 3, 0);
    const double best = oracle::pam_brute_force(flat(delta), 9, 3);
    CHECK(result.cost == doctest::Approx(best).epsilon(1e-12));
    CHECK(same_partition(result.assignment, blob_truth(sizes)));
  }
}

TEST_CASE("pam: invariants") {
  const auto delta = blob_delta({4, 4}, 3);
  const auto result = pam(delta, 2, 0);
  // Each medoid belongs to its own cluster; every point sits with its
  // nearest medoid.
  for (std::size_t m = 0; m < result.medoids.size(); ++m)
    CHECK(result.assignment[result.medoids[m]] == m);
  for (std::size_t p = 0; p < 8; ++p) {
    const double own = delta.at(p, result.medoids[result.assignment[p]]);
    for (std::size_t m : result.medoids) CHECK(own <= delta.at(p, m));
  }
}

TEST_CASE("pam: errors") {
  const auto delta = blob_delta({3, 3}, 9);
  CHECK_THROWS_AS(pam(delta, 0, 0), ValidationError);
  CHECK_THROWS_AS(pam(delta, 7, 0), ValidationError);
}

TEST_CASE("pam is invariant under relabeling") {
  const auto delta = blob_delta({4, 5}, 21);
  const auto base = pam(delta, 2, 0);
  const std::size_t n = 9;
  std::vector<std::size_t> perm{4, 7, 0, 8, 2, 6, 1, 5, 3};
  Matrix pd(n, n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = delta.labels()[perm[i]];
    for (std::size_t j = 0; j < n; ++j) pd(i, j) = delta.at(perm[i], perm[j]);
  }
  const auto permuted = pam(DissimilarityMatrix(labels, std::move(pd)), 2, 0);
  std::vector<std::size_t> mapped(n);
  for (std::size_t i = 0; i < n; ++i) mapped[i] = permuted.assignment[i];
  std::vector<std::size_t> unmapped(n);
  for (std::size_t i = 0; i < n; ++i) unmapped[perm[i]] = mapped[i];
  CHECK(same_partition(unmapped, base.assignment));
  CHECK(permuted.cost == doctest::Approx(base.cost).epsilon(1e-12));
}

TEST_CASE("silhouette: correct blobs score high, tight clusters hit 1") {
  const auto delta = blob_delta({6, 6}, 42);
  const auto result = pam(delta, 2, 0);
  const auto sil = silhouette(delta, result.assignment);
  CHECK(sil.mean > 0.5);
  CHECK(sil.mean <= 1.0);

  SUBCASE("intra-zero clusters give width exactly 1") {
    Matrix d(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 2; j < 4; ++j) {
        d(i, j) = 5.0;
        d(j, i) = 5.0;
      }
    const DissimilarityMatrix tight({"a", "b", "c", "d"}, std::move(d));
    const auto s = silhouette(tight, {0, 0, 1, 1});
    for (double w : s.widths) CHECK(w == 1.0);
  }
}

TEST_CASE("silhouette: random assignment scores below the true one") {
  const auto delta = blob_delta({6, 6}, 77);
  const auto good = silhouette(delta, blob_truth({6, 6}));
  Rng rng(123);
  std::vector<std::size_t> random_assign(12);
  bool ok = false;
  while (!ok) {
    bool seen0 = false, seen1 = false;
    for (auto& c : random_assign) {
      c = rng.uniform_int(0, 1);
      (c ? seen1 : seen0) = true;
    }
    ok = seen0 && seen1;
  }
  const auto bad = silhouette(delta, random_assign);
  CHECK(bad.mean < good.mean);
}

TEST_CASE("silhouette: bounds, singletons, and errors") {
  const auto delta = blob_delta({5, 4}, 31);
  auto assign = blob_truth({5, 4});
  assign[8] = 2;  // make a singleton cluster
  const auto sil = silhouette(delta, assign);
  CHECK(sil.widths[8] == 0.0);
  CHECK(sil.mean >= -1.0);
  CHECK(sil.mean <= 1.0);
  CHECK_THROWS_AS(silhouette(delta, std::vector<std::size_t>(9, 0)),
                  ValidationError);
  std::vector<std::size_t> gap(9, 0);
  gap[0] = 2;  // cluster 1 empty
  CHECK_THROWS_AS(silhouette(delta, gap), ValidationError);
}

TEST_CASE("agglomerative: two points merge once at their distance") {
  Matrix d(2, 2);
  d(0, 1) = 0.7;
  d(1, 0) = 0.7;
  const DissimilarityMatrix delta({"a", "b"}, std::move(d));
  const auto dend = agglomerative(delta, Linkage::kAverage);
  REQUIRE(dend.merges.size() == 1);
  CHECK(dend.merges[0].left == 0);
  CHECK(dend.merges[0].right == 1);
  CHECK(dend.merges[0].height == 0.7);
  CHECK(dend.merges[0].size == 2);
}

TEST_CASE("agglomerative: hand-traced AVERAGE linkage on 4 points") {
  // (0,1) merge at 1; (2,3) at 1.2; cross distances 2, 2.4, 2.2, 2.6
  // average to 2.3 for the final merge.
  Matrix d(4, 4);
  auto set = [&](std::size_t i, std::size_t j, double v) {
    d(i, j) = v;
    d(j, i) = v;
  };
  set(0, 1, 1.0);
  set(2, 3, 1.2);
  set(0, 2, 2.0);
  set(0, 3, 2.4);
  set(1, 2, 2.2);
  set(1, 3, 2.6);
  const DissimilarityMatrix delta({"a", "b", "c", "d"}, std::move(d));
  const auto dend = agglomerative(delta, Linkage::kAverage);
  REQUIRE(dend.merges.size() == 3);
  CHECK(dend.merges[0].height == 1.0);
  CHECK(dend.merges[0].left == 0);
  CHECK(dend.merges[0].right == 1);
  CHECK(dend.merges[1].height == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(dend.merges[1].left == 2);
  CHECK(dend.merges[1].right == 3);
  CHECK(dend.merges[2].height == doctest::Approx(2.3).epsilon(1e-12));
  CHECK(dend.merges[2].left == 4);
  CHECK(dend.merges[2].right == 5);

  SUBCASE("intermediate Lance-Williams values") {
    // After merging (0,1): d(01,2) = 2.1, d(01,3) = 2.5.
    Matrix d2(3, 3);
    d2(0, 1) = 2.1;
    d2(1, 0) = 2.1;
    d2(0, 2) = 2.5;
    d2(2, 0) = 2.5;
    d2(1, 2) = 1.2;
    d2(2, 1) = 1.2;
    const DissimilarityMatrix step({"ab", "c", "d"}, std::move(d2));
    const auto dend2 = agglomerative(step, Linkage::kAverage);
    CHECK(dend2.merges[1].height == doctest::Approx(2.3).epsilon(1e-12));
  }
}

TEST_CASE("agglomerative: heights are monotone for all linkages") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto delta = testutil::random_delta(9, seed);
    for (Linkage linkage :
         {Linkage::kSingle, Linkage::kComplete, Linkage::kAverage}) {
      const auto dend = agglomerative(delta, linkage);
      for (std::size_t t = 1; t < dend.merges.size(); ++t)
        CHECK(dend.merges[t].height >= dend.merges[t - 1].height - 1e-12);
    }
  }
}

TEST_CASE("single-linkage heights equal sorted MST edge weights") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = 4 + seed % 6;
    const auto delta = testutil::random_delta(n, seed * 1009);
    const auto dend = agglomerative(delta, Linkage::kSingle);
    auto edges = oracle::mst(flat(delta), n);
    std::vector<double> weights;
    for (const auto& e : edges) weights.push_back(e.w);
    std::sort(weights.begin(), weights.end());
    REQUIRE(dend.merges.size() == weights.size());
    for (std::size_t t = 0; t < weights.size(); ++t)
      CHECK(dend.merges[t].height == doctest::Approx(weights[t]).epsilon(1e-12));
  }
}

TEST_CASE("cutting single linkage equals deleting heaviest MST edges") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 5 + seed % 6;
    const auto delta = testutil::random_delta(n, seed * 31);
    const auto dend = agglomerative(delta, Linkage::kSingle);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto ours = cut(dend, k).assignment;
      const auto mst_part = oracle::mst_cut(flat(delta), n, k);
      CHECK(same_partition(ours, mst_part));
    }
  }
}

TEST_CASE("cut: extremes and bounds") {
  const auto delta = testutil::random_delta(6, 55);
  const auto dend = agglomerative(delta, Linkage::kAverage);
  const auto all = cut(dend, 1);
  for (std::size_t c : all.assignment) CHECK(c == 0);
  const auto singletons = cut(dend, 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(singletons.assignment[i] == i);
  CHECK_THROWS_AS(cut(dend, 0), ValidationError);
  CHECK_THROWS_AS(cut(dend, 7), ValidationError);
}

TEST_CASE("an 18-leaf dendrogram cut at 7 gives 7 nonempty clusters") {
  const auto delta = testutil::random_delta(18, 2020);
  const auto dend = agglomerative(delta, Linkage::kAverage);
  const auto result = cut(dend, 7);
  std::vector<std::size_t> sizes(7, 0);
  for (std::size_t c : result.assignment) {
    REQUIRE(c < 7);
    ++sizes[c];
  }
  for (std::size_t s : sizes) CHECK(s > 0);
}

TEST_CASE("agglomerative is invariant under relabeling") {
  const auto delta = testutil::random_delta(7, 606);
  const auto base = agglomerative(delta, Linkage::kComplete);
  std::vector<std::size_t> perm{3, 6, 1, 0, 5, 2, 4};
  Matrix pd(7, 7);
  std::vector<std::string> labels(7);
  for (std::size_t i = 0; i < 7; ++i) {
    labels[i] = delta.labels()[perm[i]];
    for (std::size_t j = 0; j < 7; ++j) pd(i, j) = delta.at(perm[i], perm[j]);
  }
  const auto permuted =
      agglomerative(DissimilarityMatrix(labels, std::move(pd)), Linkage::kComplete);
  for (std::size_t k = 1; k <= 7; ++k) {
    const auto a = cut(base, k).assignment;
    auto b = cut(permuted, k).assignment;
    std::vector<std::size_t> unmapped(7);
    for (std::size_t i = 0; i < 7; ++i) unmapped[perm[i]] = b[i];
    CHECK(same_partition(a, unmapped));
  }
}

TEST_CASE("dendrogram JSON round trip and leaf order") {
  const auto delta = testutil::random_delta(6, 99);
  const auto dend = agglomerative(delta, Linkage::kAverage);
  const auto again = Dendrogram::from_json(dend.to_json());
  CHECK(again.labels == dend.labels);
  CHECK(again.merges == dend.merges);
  const auto order = dend.leaf_order();
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 6; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("cluster TSV marks medoids") {
  const auto delta = blob_delta({3, 3}, 404);
  const auto result = pam(delta, 2, 0);
  const auto tsv = result.to_tsv(delta.labels());
  CHECK(tsv.find("label\tcluster\tis_medoid") == 0);
  std::size_t medoid_lines = 0;
  for (std::size_t pos = 0; (pos = tsv.find("\t1\n", pos)) != std::string::npos;
       ++pos)
    ++medoid_lines;
  CHECK(medoid_lines == 2);
}
