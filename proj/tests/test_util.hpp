#pragma once

#include <random>
#include <vector>

#include "hyperlap/dual.hpp"
#include "hyperlap/hypergraph.hpp"

namespace hyperlap::testutil {

/// Small dyadic on the 2^-4 grid in [-4, 4] \ {0} for weights (positive) and
/// demands (signed).
inline Dyadic random_positive_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 64);
  return Dyadic(num(rng), 4);  // in (0, 4]
}

inline Dyadic random_signed_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-64, 64);
  return Dyadic(num(rng), 4);
}

/// Connected random hypergraph: a spanning chain of edges first (so every
/// vertex is covered), then extra random edges up to the requested count.
inline Hypergraph random_connected_hypergraph(std::mt19937_64& rng, int max_n = 10,
                                              int max_edges = 8, int min_size = 2,
                                              int max_size = 5) {
  std::uniform_int_distribution<int> nd(2, max_n);
  int n = nd(rng);
  Hypergraph h;
  h.vertex_count = n;

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::uniform_int_distribution<int> size_dist(min_size, std::min(max_size, n));
  int covered = 1;
  while (covered < n) {
    int size = std::min(size_dist(rng), n);
    std::vector<int> verts;
    verts.push_back(order[std::uniform_int_distribution<int>(0, covered - 1)(rng)]);
    for (int i = 1; i < size && covered < n; ++i) verts.push_back(order[covered++]);
    if (verts.size() < 2) verts.push_back(order[0] == verts[0] ? order[1] : order[0]);
    h.edges.push_back({verts, random_positive_dyadic(rng)});
  }
  std::uniform_int_distribution<int> extra_dist(0, max_edges);
  int extra = extra_dist(rng);
  while (h.edge_count() < std::min(max_edges, static_cast<int>(h.edges.size()) + extra) &&
         h.edge_count() < max_edges) {
    int size = std::min(size_dist(rng), n);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(size);
    h.edges.push_back({pool, random_positive_dyadic(rng)});
  }
  return h;
}

/// Dyadic zero-sum demand with vertex 0 absorbing the balance.
inline Demand random_zero_sum_demand(std::mt19937_64& rng, int n) {
  Demand s(n);
  Dyadic total;
  for (int v = 1; v < n; ++v) {
    s[v] = random_signed_dyadic(rng);
    total += s[v];
  }
  s[0] = -total;
  return s;
}

/// Random edge-local zero-sum rational dual vector.
inline DualVector random_zero_sum_dual(std::mt19937_64& rng, const Hypergraph& h) {
  DualVector eta = DualVector::zeros(h);
  std::uniform_int_distribution<int> num(-64, 64);
  for (size_t j = 0; j < eta.values.size(); ++j) {
    mpq_class sum = 0;
    for (size_t i = 0; i + 1 < eta.values[j].size(); ++i) {
      mpq_class val(num(rng), 16);
      val.canonicalize();
      eta.values[j][i] = val;
      sum += val;
    }
    eta.values[j].back() = -sum;
  }
  return eta;
}

/// Connected 2-uniform instance (a random spanning tree plus extra edges).
inline Hypergraph random_connected_graph(std::mt19937_64& rng, int max_n = 12,
                                         int max_extra = 8) {
  std::uniform_int_distribution<int> nd(2, max_n);
  int n = nd(rng);
  Hypergraph h;
  h.vertex_count = n;
  // Weights at least 1/2 so effective resistances stay moderate.
  auto weight = [&rng]() {
    std::uniform_int_distribution<int> num(8, 64);
    return Dyadic(num(rng), 4);
  };
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pd(0, v - 1);
    h.edges.push_back({{pd(rng), v}, weight()});
  }
  std::uniform_int_distribution<int> extra_dist(0, max_extra);
  int extra = extra_dist(rng);
  for (int k = 0; k < extra; ++k) {
    std::uniform_int_distribution<int> vd(0, n - 1);
    int a = vd(rng), b = vd(rng);
    if (a == b) continue;
    h.edges.push_back({{a, b}, weight()});
  }
  return h;
}

}  // namespace hyperlap::testutil
