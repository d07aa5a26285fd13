#include "core/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/tsv.hpp"

namespace semmap {

std::size_t ClusterResult::k() const {
  std::size_t mx = 0;
  for (std::size_t c : assignment) mx = std::max(mx, c + 1);
  return mx;
}

std::string ClusterResult::to_tsv(const std::vector<std::string>& labels) const {
  if (labels.size() != assignment.size())
    throw ValidationError("cluster TSV: label count mismatch");
  std::ostringstream out;
  out << "label\tcluster\tis_medoid\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool medoid =
        std::find(medoids.begin(), medoids.end(), i) != medoids.end();
    out << labels[i] << '\t' << assignment[i] << '\t' << (medoid ? 1 : 0) << '\n';
  }
  return out.str();
}

namespace {

// Nearest medoid with ties broken by lowest medoid point index; a medoid is
// always its own cluster center.
std::size_t nearest_medoid(const DissimilarityMatrix& delta,
                           const std::vector<std::size_t>& medoids,
                           std::size_t point) {
  std::size_t best = medoids.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < medoids.size(); ++m) {
    if (medoids[m] == point) return m;
    const double d = delta.at(point, medoids[m]);
    if (d < best_d) {
      best_d = d;
      best = m;
    }
  }
  return best;
}

double total_cost(const DissimilarityMatrix& delta,
                  const std::vector<std::size_t>& medoids) {
  double cost = 0.0;
  for (std::size_t p = 0; p < delta.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, delta.at(p, m));
    cost += best;
  }
  return cost;
}

}  // namespace

ClusterResult pam(const DissimilarityMatrix& delta, std::size_t k,
                  std::uint64_t /*seed*/) {
  const std::size_t n = delta.size();
  if (k < 1) throw ValidationError("pam: k must be >= 1");
  if (k > n)
    throw ValidationError("pam: k = " + std::to_string(k) + " exceeds n = " +
                          std::to_string(n));

  // BUILD: first the point minimizing total dissimilarity, then greedily the
  // candidate with the largest cost reduction.
  std::vector<std::size_t> medoids;
  std::vector<bool> is_medoid(n, false);
  {
    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t p = 0; p < n; ++p) s += delta.at(p, c);
      if (s < best_sum) {
        best_sum = s;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
  }
  std::vector<double> nearest(n);
  for (std::size_t p = 0; p < n; ++p) nearest[p] = delta.at(p, medoids[0]);
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_gain = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t p = 0; p < n; ++p)
        gain += std::max(0.0, nearest[p] - delta.at(p, c));
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
    for (std::size_t p = 0; p < n; ++p)
      nearest[p] = std::min(nearest[p], delta.at(p, best));
  }

  // SWAP: take the best strictly-improving (medoid, candidate) swap until a
  // local optimum.
  double cost = total_cost(delta, medoids);
  while (true) {
    double best_cost = cost;
    std::size_t best_m = n, best_c = n;
    for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
      for (std::size_t c = 0; c < n; ++c) {
        if (is_medoid[c]) continue;
        std::vector<std::size_t> trial = medoids;
        trial[mi] = c;
        const double trial_cost = total_cost(delta, trial);
        if (trial_cost < best_cost) {
          best_cost = trial_cost;
          best_m = mi;
          best_c = c;
        }
      }
    }
    if (best_m == n) break;
    is_medoid[medoids[best_m]] = false;
    is_medoid[best_c] = true;
    medoids[best_m] = best_c;
    cost = best_cost;
  }

  std::sort(medoids.begin(), medoids.end());
  ClusterResult result;
  result.medoids = medoids;
  result.assignment.resize(n);
  result.cost = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t m = nearest_medoid(delta, medoids, p);
    result.assignment[p] = m;
    result.cost += delta.at(p, medoids[m]);
  }
  return result;
}

SilhouetteResult silhouette(const DissimilarityMatrix& delta,
                            const std::vector<std::size_t>& assignment) {
  const std::size_t n = delta.size();
  if (assignment.size() != n)
    throw ValidationError("silhouette: assignment length mismatch");
  std::size_t k = 0;
  for (std::size_t c : assignment) k = std::max(k, c + 1);
  if (k < 2) throw ValidationError("silhouette: need at least 2 clusters");
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : assignment) ++sizes[c];
  for (std::size_t c = 0; c < k; ++c)
    if (sizes[c] == 0)
      throw ValidationError("silhouette: cluster " + std::to_string(c) +
                            " is empty");

  SilhouetteResult res;
  res.widths.resize(n, 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sums[assignment[j]] += delta.at(i, j);
    const std::size_t own = assignment[i];
    if (sizes[own] == 1) {
      res.widths[i] = 0.0;
      continue;
    }
    const double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c)
      if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
    const double m = std::max(a, b);
    res.widths[i] = m > 0.0 ? (b - a) / m : 0.0;
  }
  res.mean = std::accumulate(res.widths.begin(), res.widths.end(), 0.0) /
             static_cast<double>(n);
  return res;
}

Dendrogram agglomerative(const DissimilarityMatrix& delta, Linkage linkage) {
  const std::size_t n = delta.size();
  if (n < 2) throw ValidationError("agglomerative: need at least 2 points");

  // Working pairwise distances between active clusters, indexed by slot.
  Matrix d = delta.values();
  std::vector<std::size_t> id(n);        // slot -> cluster id
  std::vector<std::size_t> size(n, 1);   // slot -> leaf count
  std::vector<bool> active(n, true);
  std::iota(id.begin(), id.end(), 0);

  Dendrogram dend;
  dend.labels = delta.labels();
  double prev_height = -std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < n - 1; ++t) {
    // Smallest distance; ties by the smallest (id_i, id_j) pair.
    std::size_t bi = n, bj = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double dij = d(i, j);
        if (dij < best) {
          best = dij;
          bi = i;
          bj = j;
        } else if (dij == best && bi < n) {
          const auto cand = std::minmax(id[i], id[j]);
          const auto cur = std::minmax(id[bi], id[bj]);
          if (cand < cur) {
            bi = i;
            bj = j;
          }
        }
      }
    }

    if (best < prev_height - 1e-9 * std::max(1.0, std::abs(prev_height)))
      throw NumericError("agglomerative: non-monotone merge heights");
    prev_height = std::max(prev_height, best);

    const auto [lo, hi] = std::minmax(id[bi], id[bj]);
    dend.merges.push_back({lo, hi, best, size[bi] + size[bj]});

    // Lance-Williams update into slot bi; slot bj retires.
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      double nd = 0.0;
      switch (linkage) {
        case Linkage::kSingle:
          nd = std::min(d(bi, m), d(bj, m));
          break;
        case Linkage::kComplete:
          nd = std::max(d(bi, m), d(bj, m));
          break;
        case Linkage::kAverage:
          nd = (static_cast<double>(size[bi]) * d(bi, m) +
                static_cast<double>(size[bj]) * d(bj, m)) /
               static_cast<double>(size[bi] + size[bj]);
          break;
      }
      d(bi, m) = nd;
      d(m, bi) = nd;
    }
    size[bi] += size[bj];
    id[bi] = n + t;
    active[bj] = false;
  }
  return dend;
}

ClusterResult cut(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaves();
  if (k < 1 || k > n)
    throw ValidationError("cut: k must be in [1, " + std::to_string(n) + "]");

  // Union-find over the first n-k merges.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t t = 0; t < n - k; ++t) {
    const Merge& m = dendrogram.merges[t];
    const std::size_t node = n + t;
    parent[find(m.left)] = node;
    parent[find(m.right)] = node;
  }

  ClusterResult result;
  result.assignment.resize(n);
  std::vector<long> cluster_of_root(2 * n - 1, -1);
  std::size_t next = 0;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    const std::size_t root = find(leaf);
    if (cluster_of_root[root] < 0)
      cluster_of_root[root] = static_cast<long>(next++);
    result.assignment[leaf] = static_cast<std::size_t>(cluster_of_root[root]);
  }
  return result;
}

std::vector<std::size_t> Dendrogram::leaf_order() const {
  const std::size_t n = leaves();
  std::vector<std::size_t> order;
  if (n == 0) return order;
  if (merges.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  // Iterative walk from the root, left child first.
  std::vector<std::size_t> stack{n + merges.size() - 1};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < n) {
      order.push_back(node);
      continue;
    }
    const Merge& m = merges[node - n];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

std::string Dendrogram::to_json() const {
  nlohmann::json j;
  j["labels"] = labels;
  j["leaves"] = leaves();
  auto& arr = j["merges"] = nlohmann::json::array();
  for (const Merge& m : merges) {
    nlohmann::json jm;
    jm["left"] = m.left;
    jm["right"] = m.right;
    jm["height"] = m.height;
    jm["size"] = m.size;
    arr.push_back(std::move(jm));
  }
  return j.dump(2) + "\n";
}

Dendrogram Dendrogram::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("dendrogram JSON: ") + e.what());
  }
  try {
    Dendrogram dend;
    dend.labels = j.at("labels").get<std::vector<std::string>>();
    const std::size_t n = j.at("leaves");
    if (n != dend.labels.size())
      throw ValidationError("dendrogram JSON: leaves/labels mismatch");
    for (const auto& jm : j.at("merges")) {
      Merge m;
      m.left = jm.at("left");
      m.right = jm.at("right");
      m.height = jm.at("height");
      m.size = jm.at("size");
      dend.merges.push_back(m);
    }
    if (dend.merges.size() + 1 != n)
      throw ValidationError("dendrogram JSON: expected n-1 merges");
    return dend;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("dendrogram JSON: ") + e.what());
  }
}

}  // namespace semmap
