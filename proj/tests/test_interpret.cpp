#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "core/dissim.hpp"
#include "core/error.hpp"
#include "core/interpret.hpp"
#include "core/mds.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace semmap;

namespace {

// Corpus of `n` contexts for `langs` languages where language l marks the
// first `sizes[l]` contexts PERFECT and the rest PAST.
CorpusTable nested_perfect_corpus(std::size_t n,
                                  const std::vector<std::size_t>& sizes) {
  CorpusTable table;
  for (std::size_t c = 0; c < n; ++c)
    table.context_ids.push_back("c" + std::to_string(c));
  for (std::size_t l = 0; l < sizes.size(); ++l)
    table.languages.push_back("L" + std::to_string(l));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t l = 0; l < sizes.size(); ++l) {
      CorpusCell cell;
      cell.form = "w" + std::to_string(c) + "_" + std::to_string(l);
      cell.feature = c < sizes[l] ? "PERFECT" : "PAST";
      table.cells.push_back(cell);
    }
  }
  return table;
}

MdsSolution classic_of(const CorpusTable& table) {
  const auto delta = context_distances(table, CompareMode::kFeature,
                                       MissingPolicy::kPairwiseDelete);
  return classic_scale(delta, 2);
}

}  // namespace

TEST_CASE("color_layers: one language, one token, one color") {
  const auto table = parse_corpus("context\ten\nc1\tlet\nc2\tlet\n");
  MdsSolution sol;
  sol.labels = {"c1", "c2"};
  sol.coords = Matrix(2, 1);
  const auto layers = color_layers(sol, table, CompareMode::kLexeme);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0].palette == std::vector<std::string>{"let"});
  CHECK(layers[0].palette_index == std::vector<std::size_t>{0, 0});
}

TEST_CASE("color_layers: seven-language PERFECT/PAST fixture") {
  const auto table = nested_perfect_corpus(36, {10, 14, 18, 22, 26, 30, 34});
  const auto sol = classic_of(table);
  const auto layers = color_layers(sol, table, CompareMode::kFeature);
  REQUIRE(layers.size() == 7);
  // Shared palette: same label -> same color in every layer.
  for (const auto& layer : layers) {
    CHECK(layer.palette == layers[0].palette);
    CHECK(layer.point_labels.size() == 36);
  }
  // Layers differ only in labels, and MISSING never appears here.
  CHECK(layers[0].point_labels != layers[6].point_labels);

  SUBCASE("MISSING is itself a renderable category") {
    auto with_missing = table;
    with_missing.at(0, 0).form.reset();
    with_missing.at(0, 0).feature.reset();
    const auto l2 = color_layers(sol, with_missing, CompareMode::kFeature);
    CHECK(l2[0].point_labels[0] == "MISSING");
    CHECK(std::find(l2[0].palette.begin(), l2[0].palette.end(), "MISSING") !=
          l2[0].palette.end());
  }
}

TEST_CASE("color_layers: permuting language order permutes layers only") {
  const auto table = nested_perfect_corpus(12, {4, 8});
  const auto sol = classic_of(table);
  auto flipped = table;
  std::swap(flipped.languages[0], flipped.languages[1]);
  for (std::size_t c = 0; c < 12; ++c)
    std::swap(flipped.at(c, 0), flipped.at(c, 1));
  const auto a = color_layers(sol, table, CompareMode::kFeature);
  const auto b = color_layers(sol, flipped, CompareMode::kFeature);
  CHECK(a[0].point_labels == b[1].point_labels);
  CHECK(a[1].point_labels == b[0].point_labels);
  CHECK(a[0].palette == b[0].palette);
}

TEST_CASE("color_layers: label mismatch lists the symmetric difference") {
  const auto table = parse_corpus("context\ten\nc1\tlet\nc2\tlet\n");
  MdsSolution sol;
  sol.labels = {"c1", "c9"};
  sol.coords = Matrix(2, 1);
  CHECK_THROWS_WITH_AS(color_layers(sol, table, CompareMode::kLexeme),
                       doctest::Contains("'c9'"), ValidationError);
}

TEST_CASE("color_layers depends on tokens, not coordinates") {
  const auto table = nested_perfect_corpus(15, {5, 10});
  const auto delta = context_distances(table, CompareMode::kFeature,
                                       MissingPolicy::kPairwiseDelete);
  const auto classic = classic_scale(delta, 2);
  SmacofOptions opts;
  opts.init = SmacofInit::kRandom;
  opts.seed = 4;
  const auto iterative = smacof(delta, 2, opts);
  const auto a = color_layers(classic, table, CompareMode::kFeature);
  const auto b = color_layers(iterative, table, CompareMode::kFeature);
  for (std::size_t l = 0; l < a.size(); ++l) {
    CHECK(a[l].point_labels == b[l].point_labels);
    CHECK(a[l].palette_index == b[l].palette_index);
  }
}

TEST_CASE("dimension_regression: separation along dim 1 is found") {
  // Two blobs displaced along the first axis; the annotation is the sign of
  // the dim-1 coordinate.
  const auto pts = testutil::blobs({30, 30}, 8.0, 1.0, 2, 314);
  const auto delta = testutil::euclidean_delta(pts);
  const auto sol = classic_scale(delta, 2);
  AnnotationTable ann;
  ann.context_ids = sol.labels;
  ann.variables = {"side", "noise"};
  Rng rng(99);
  for (std::size_t i = 0; i < 60; ++i) {
    ann.values.push_back(sol.coords(i, 0) > 0 ? 1 : 0);
    ann.values.push_back(rng.uniform() < 0.5 ? 1 : 0);
  }
  const auto report = dimension_regression(sol, ann);
  REQUIRE(report.rows.size() == 4);
  // Best row: side on dimension 1.
  CHECK(report.rows[0].dimension == 1);
  CHECK(report.rows[0].variable == "side");
  CHECK(report.rows[0].r2 > 0.9);
  for (const auto& row : report.rows) {
    if (row.variable == "side" && row.dimension == 2) CHECK(row.r2 < 0.2);
    CHECK(row.r2 >= 0.0);
    CHECK(row.r2 <= 1.0);
    CHECK(row.n == 60);
  }

  SUBCASE("R^2 equals squared point-biserial correlation") {
    std::vector<int> group;
    std::vector<double> coord;
    for (std::size_t i = 0; i < 60; ++i) {
      group.push_back(ann.values[i * 2]);
      coord.push_back(sol.coords(i, 0));
    }
    const double rpb = oracle::point_biserial(group, coord);
    CHECK(report.rows[0].r2 == doctest::Approx(rpb * rpb).epsilon(1e-10));
  }

  SUBCASE("translating coordinates changes only the intercept") {
    MdsSolution moved = sol;
    for (std::size_t i = 0; i < 60; ++i) moved.coords(i, 0) += 42.0;
    const auto report2 = dimension_regression(moved, ann);
    CHECK(report2.rows[0].slope ==
          doctest::Approx(report.rows[0].slope).epsilon(1e-9));
    CHECK(report2.rows[0].r2 == doctest::Approx(report.rows[0].r2).epsilon(1e-9));
  }
}

TEST_CASE("dimension_regression: independent annotation has near-zero R^2") {
  const auto pts = testutil::random_points(200, 2, 555);
  const auto delta = testutil::euclidean_delta(pts);
  const auto sol = classic_scale(delta, 2);
  AnnotationTable ann;
  ann.context_ids = sol.labels;
  ann.variables = {"coin"};
  Rng rng(556);
  for (std::size_t i = 0; i < 200; ++i)
    ann.values.push_back(rng.uniform() < 0.5 ? 1 : 0);
  const auto report = dimension_regression(sol, ann);
  for (const auto& row : report.rows) CHECK(row.r2 < 0.1);
}

TEST_CASE("dimension_regression: constant annotation is rejected by name") {
  MdsSolution sol;
  sol.labels = {"a", "b", "c"};
  sol.coords = Matrix(3, 1);
  AnnotationTable ann;
  ann.context_ids = {"a", "b", "c"};
  ann.variables = {"flat"};
  ann.values = {1, 1, 1};
  CHECK_THROWS_WITH_AS(dimension_regression(sol, ann),
                       doctest::Contains("'flat'"), ValidationError);
}

TEST_CASE("annotation TSV parsing") {
  const auto ann = AnnotationTable::from_tsv(
      "context\tintentional\tfactitive\nc1\t1\t0\nc2\t0\t1\n");
  CHECK(ann.variables == std::vector<std::string>{"intentional", "factitive"});
  CHECK(ann.values == std::vector<std::uint8_t>{1, 0, 0, 1});
  CHECK_THROWS_AS(AnnotationTable::from_tsv("context\tv\nc1\t2\n"),
                  ValidationError);
}

TEST_CASE("subset_report: identical labelings give full containment") {
  const auto table = nested_perfect_corpus(10, {6, 6});
  const auto report = subset_report(table, "PERFECT");
  REQUIRE(report.pairs.size() == 2);
  for (const auto& p : report.pairs) {
    CHECK(p.containment == 1.0);
    CHECK(p.only_in_first == 0);
  }
  CHECK(report.violations == std::vector<std::size_t>{0});
}

TEST_CASE("subset_report: nested sets recover the exact chain") {
  const auto table = nested_perfect_corpus(20, {4, 9, 14});
  const auto report = subset_report(table, "PERFECT");
  CHECK(report.chain == std::vector<std::string>{"L0", "L1", "L2"});
  CHECK(report.chain_size == std::vector<std::size_t>{4, 9, 14});
  CHECK(report.violations == std::vector<std::size_t>{0, 0});
}

TEST_CASE("subset_report: crossing sets, hand enumeration") {
  // S1 = {a, b}, S2 = {b, c}: containment 1/2 each way, 1 violation.
  CorpusTable table;
  table.context_ids = {"a", "b", "c"};
  table.languages = {"l1", "l2"};
  auto cell = [](const char* feature) {
    CorpusCell c;
    c.form = "x";
    c.feature = feature;
    return c;
  };
  table.cells = {cell("PERFECT"), cell("PAST"),    // a
                 cell("PERFECT"), cell("PERFECT"), // b
                 cell("PAST"), cell("PERFECT")};   // c
  const auto report = subset_report(table, "PERFECT");
  REQUIRE(report.pairs.size() == 2);
  for (const auto& p : report.pairs) {
    CHECK(p.size1 == 2);
    CHECK(p.containment == 0.5);
    CHECK(p.only_in_first == 1);
  }
  CHECK(report.violations == std::vector<std::size_t>{1});
}

TEST_CASE("subset_report: monotone under adding a shared context") {
  const auto table = nested_perfect_corpus(20, {4, 9, 14});
  const auto before = subset_report(table, "PERFECT");
  // A brand-new context marked PERFECT everywhere.
  auto grown = table;
  grown.context_ids.push_back("extra");
  for (std::size_t l = 0; l < 3; ++l) {
    CorpusCell c;
    c.form = "extra";
    c.feature = "PERFECT";
    grown.cells.push_back(c);
  }
  const auto after = subset_report(grown, "PERFECT");
  CHECK(after.violations == before.violations);
  CHECK(after.chain == before.chain);
}

TEST_CASE("subset_report: absent category is an error; empty languages drop") {
  const auto table = nested_perfect_corpus(8, {3, 0});
  CHECK_THROWS_AS(subset_report(table, "FUTURE"), ValidationError);
  const auto report = subset_report(table, "PERFECT");
  CHECK(report.chain == std::vector<std::string>{"L0"});  // L1 never uses it
  CHECK(report.violations.empty());
}

TEST_CASE("subset report TSV shape") {
  const auto table = nested_perfect_corpus(12, {4, 8});
  const auto tsv = subset_report(table, "PERFECT").to_tsv();
  CHECK(tsv.find("pair\tL0\tL1\t4\t8\t0\t1") != std::string::npos);
  CHECK(tsv.find("chain\t0\tL0\t4") != std::string::npos);
  CHECK(tsv.find("link\tL0\tL1\t0") != std::string::npos);
}
