#include "core/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "core/error.hpp"
#include "core/tsv.hpp"

namespace semmap {

void FeatureWeights::validate(std::size_t expected_len) const {
  if (w.size() != expected_len)
    throw ValidationError("weights: " + std::to_string(w.size()) +
                          " entries for tuples of length " +
                          std::to_string(expected_len));
  for (double x : w)
    if (!(x > 0.0) || !std::isfinite(x))
      throw ValidationError("weights: entries must be positive finite reals");
}

FeatureWeights weights_for_languages(const std::string& text,
                                     const CorpusTable& table) {
  auto rows = read_tsv(text);
  std::map<std::string, double> by_name;
  for (const auto& row : rows) {
    if (row.cells.size() != 2)
      throw ValidationError("line " + std::to_string(row.line_no) +
                            ": weights rows are 'name<TAB>weight'");
    if (by_name.count(row.cells[0]))
      throw ValidationError("line " + std::to_string(row.line_no) +
                            ": duplicate weight for '" + row.cells[0] + "'");
    by_name[row.cells[0]] = parse_double(row.cells[1], row.line_no);
  }
  FeatureWeights weights = FeatureWeights::unit(table.languages.size());
  for (const auto& [name, value] : by_name) {
    auto it = std::find(table.languages.begin(), table.languages.end(), name);
    if (it == table.languages.end())
      throw ValidationError("weights: unknown language '" + name + "'");
    weights.w[static_cast<std::size_t>(it - table.languages.begin())] = value;
  }
  weights.validate(table.languages.size());
  return weights;
}

double hamming(std::span<const Token> u, std::span<const Token> v,
               const FeatureWeights& weights, MissingPolicy missing) {
  if (u.size() != v.size())
    throw ValidationError("hamming: tuple lengths differ, " +
                          std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()));
  weights.validate(u.size());

  double differ = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool u_missing = !u[i].has_value();
    const bool v_missing = !v[i].has_value();
    if (u_missing || v_missing) {
      if (missing == MissingPolicy::kPairwiseDelete) continue;
      differ += weights.w[i];  // MISSING vs anything counts as differing
      total += weights.w[i];
      continue;
    }
    if (*u[i] != *v[i]) differ += weights.w[i];
    total += weights.w[i];
  }
  if (total == 0.0)
    throw NumericError(
        "hamming: no comparable positions left after pairwise deletion");
  return differ / total;
}

namespace {

std::vector<std::span<const Token>> token_rows(const TokenTable& tokens) {
  const std::size_t nl = tokens.languages.size();
  std::vector<std::span<const Token>> rows;
  rows.reserve(tokens.context_ids.size());
  for (std::size_t i = 0; i < tokens.context_ids.size(); ++i)
    rows.push_back({tokens.tokens.data() + i * nl, nl});
  return rows;
}

}  // namespace

DissimilarityMatrix context_distances(const CorpusTable& table, CompareMode mode,
                                      const FeatureWeights& weights,
                                      MissingPolicy missing) {
  const TokenTable tokens = comparison_key(table, mode);
  weights.validate(table.languages.size());
  auto rows = token_rows(tokens);
  return DissimilarityMatrix::build(
      table.context_ids, [&](std::size_t i, std::size_t j) {
        try {
          return hamming(rows[i], rows[j], weights, missing);
        } catch (const NumericError&) {
          throw NumericError("context_distances: distance between '" +
                             table.context_ids[i] + "' and '" +
                             table.context_ids[j] +
                             "' is undefined (no jointly attested language)");
        }
      });
}

DissimilarityMatrix context_distances(const CorpusTable& table, CompareMode mode,
                                      MissingPolicy missing) {
  return context_distances(table, mode,
                           FeatureWeights::unit(table.languages.size()), missing);
}

DissimilarityMatrix coexpression_distances(const BinaryTable& table) {
  const std::size_t k = table.row_labels.size();
  if (k == 0) throw ValidationError("coexpression: table has no rows");
  return DissimilarityMatrix::build(
      table.col_labels, [&](std::size_t i, std::size_t j) {
        std::size_t both = 0;
        for (std::size_t r = 0; r < k; ++r)
          if (table.at(r, i) && table.at(r, j)) ++both;
        return 1.0 - static_cast<double>(both) / static_cast<double>(k);
      });
}

DissimilarityMatrix language_distances(const CorpusTable& table, CompareMode mode) {
  const std::size_t nc = table.context_ids.size();
  if (nc < 2)
    throw ValidationError("language_distances: need at least 2 contexts");
  const TokenTable tokens = comparison_key(table, mode);

  return DissimilarityMatrix::build(
      table.languages, [&](std::size_t l1, std::size_t l2) {
        std::size_t disagree = 0;
        std::size_t compared = 0;
        for (std::size_t a = 0; a < nc; ++a) {
          const Token& a1 = tokens.at(a, l1);
          const Token& a2 = tokens.at(a, l2);
          if (!a1 || !a2) continue;
          for (std::size_t b = a + 1; b < nc; ++b) {
            const Token& b1 = tokens.at(b, l1);
            const Token& b2 = tokens.at(b, l2);
            if (!b1 || !b2) continue;
            ++compared;
            const bool same1 = (*a1 == *b1);
            const bool same2 = (*a2 == *b2);
            if (same1 != same2) ++disagree;
          }
        }
        if (compared == 0)
          throw NumericError("language_distances: languages '" +
                             table.languages[l1] + "' and '" + table.languages[l2] +
                             "' share no jointly attested context pair");
        return static_cast<double>(disagree) / static_cast<double>(compared);
      });
}

namespace {

double euclid(const PointCloud& cloud, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t d = 0; d < cloud.dim; ++d) {
    const double diff = cloud.coord(i, d) - cloud.coord(j, d);
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

DissimilarityMatrix geodesic_distances(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  if (k < 1) throw ValidationError("geodesic: need k >= 1");
  if (n < k + 1)
    throw ValidationError("geodesic: need at least k+1 = " + std::to_string(k + 1) +
                          " points, got " + std::to_string(n));

  // Symmetrize by union: an edge exists if either endpoint lists the other
  // among its k nearest.
  std::vector<std::set<std::size_t>> nbrs(n);
  std::vector<std::pair<double, std::size_t>> cand(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(euclid(cloud, std::min(i, j), std::max(i, j)), j);
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k), cand.end());
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t j = cand[m].second;
      nbrs[i].insert(j);
      nbrs[j].insert(i);
    }
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : nbrs[i])
      adj[i].emplace_back(j, euclid(cloud, std::min(i, j), std::max(i, j)));

  // Connectivity check first, so failure names the component sizes.
  {
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      stack.push_back(s);
      comp[s] = ncomp;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj[u])
          if (comp[v] < 0) {
            comp[v] = ncomp;
            stack.push_back(v);
          }
      }
      ++ncomp;
    }
    if (ncomp > 1) {
      std::vector<std::size_t> sizes(ncomp, 0);
      for (std::size_t i = 0; i < n; ++i) ++sizes[comp[i]];
      std::string msg = "geodesic: k-NN graph disconnected, component sizes";
      for (std::size_t s : sizes) msg += " " + std::to_string(s);
      msg += "; raise k";
      throw ValidationError(msg);
    }
  }

  // One Dijkstra per source; each unordered pair is filled once (from the
  // lower index) so the result is exactly symmetric.
  Matrix d(n, n);
  std::vector<double> dist(n);
  using QItem = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    dist[src] = 0.0;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double nd = du + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.emplace(nd, v);
        }
      }
    }
    for (std::size_t j = src + 1; j < n; ++j) {
      d(src, j) = dist[j];
      d(j, src) = dist[j];
    }
  }

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  return DissimilarityMatrix(std::move(labels), std::move(d));
}

}  // namespace semmap
