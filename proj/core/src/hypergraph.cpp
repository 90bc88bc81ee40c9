#include "hyperlap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "hyperlap/errors.hpp"

namespace hyperlap {

long Hypergraph::incidence_size() const {
  long p = 0;
  for (const auto& e : edges) p += static_cast<long>(e.verts.size());
  return p;
}

std::vector<Dyadic> Hypergraph::degrees() const {
  std::vector<Dyadic> d(vertex_count);
  for (const auto& e : edges) {
    for (int v : e.verts) d[v] += e.weight;
  }
  return d;
}

Dyadic Hypergraph::degree_sum() const {
  Dyadic total;
  for (const auto& e : edges) {
    for (size_t i = 0; i < e.verts.size(); ++i) total += e.weight;
  }
  return total;
}

bool Hypergraph::is_two_uniform() const {
  return std::all_of(edges.begin(), edges.end(),
                     [](const Hyperedge& e) { return e.verts.size() == 2; });
}

namespace {

void check_shape(const Hypergraph& h) {
  for (int j = 0; j < h.edge_count(); ++j) {
    const auto& e = h.edges[j];
    if (e.verts.size() < 2) {
      throw Error(ErrorCode::EmptyEdge,
                  "edge " + std::to_string(j) + " has fewer than 2 vertices");
    }
    std::set<int> seen;
    for (int v : e.verts) {
      if (v < 0 || v >= h.vertex_count) {
        throw Error(ErrorCode::EmptyEdge,
                    "edge " + std::to_string(j) + " references vertex " +
                        std::to_string(v) + " outside [0, n)");
      }
      if (!seen.insert(v).second) {
        throw Error(ErrorCode::EmptyEdge,
                    "edge " + std::to_string(j) + " repeats vertex " +
                        std::to_string(v));
      }
    }
    if (e.weight.sign() <= 0) {
      throw Error(ErrorCode::NonpositiveWeight,
                  "edge " + std::to_string(j) + " has weight " +
                      e.weight.to_string());
    }
  }
}

}  // namespace

ValidatedInstance validate_instance(const Hypergraph& h, const Demand& s,
                                    bool require_connected, int k0,
                                    bool enforce_bounds) {
  check_shape(h);
  if (static_cast<int>(s.size()) != h.vertex_count) {
    throw Error(ErrorCode::DemandNotZeroSum,
                "demand has " + std::to_string(s.size()) + " entries for " +
                    std::to_string(h.vertex_count) + " vertices");
  }
  Dyadic total;
  for (const auto& sv : s) total += sv;
  if (!total.is_zero()) {
    throw Error(ErrorCode::DemandNotZeroSum,
                "demand sums to " + total.to_string());
  }

  ValidatedInstance out;
  out.hypergraph = h;
  out.demand = s;

  // Vertex-overlap adjacency: u ~ v when they share a hyperedge; each pair
  // remembers the first (lowest-id) shared edge.
  int n = h.vertex_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
  {
    std::vector<std::set<int>> have(n);
    for (int j = 0; j < h.edge_count(); ++j) {
      const auto& verts = h.edges[j].verts;
      for (int a : verts) {
        for (int b : verts) {
          if (a == b) continue;
          if (have[a].insert(b).second) adj[a].push_back({b, j});
        }
      }
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  }

  out.bfs_parent.assign(n, -1);
  out.bfs_parent_edge.assign(n, -1);
  std::vector<bool> visited(n, false);
  if (n > 0) {
    std::deque<int> queue{0};
    visited[0] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      out.bfs_order.push_back(u);
      for (auto [v, j] : adj[u]) {
        if (!visited[v]) {
          visited[v] = true;
          out.bfs_parent[v] = u;
          out.bfs_parent_edge[v] = j;
          queue.push_back(v);
        }
      }
    }
  }
  out.connected = static_cast<int>(out.bfs_order.size()) == n;
  if (require_connected && !out.connected) {
    throw Error(ErrorCode::NotConnected,
                "vertex-overlap graph has " +
                    std::to_string(n - out.bfs_order.size()) +
                    " unreachable vertices from vertex 0");
  }

  // K0 bound checks are advisory unless enforced: they matter for the
  // asymptotic statements, not for correctness of the certificates.
  double p = std::max<double>(2.0, static_cast<double>(h.incidence_size()));
  double hi = std::pow(p, k0);
  double lo = 1.0 / hi;
  for (int v = 0; v < n; ++v) {
    double sv = std::fabs(s[v].to_double());
    if (sv > hi) {
      out.bound_warnings.push_back("|s[" + std::to_string(v) + "]| exceeds P^" +
                                   std::to_string(k0));
    }
  }
  for (int j = 0; j < h.edge_count(); ++j) {
    double w = h.edges[j].weight.to_double();
    if (w > hi || w < lo) {
      out.bound_warnings.push_back("w[" + std::to_string(j) +
                                   "] outside [P^-" + std::to_string(k0) +
                                   ", P^" + std::to_string(k0) + "]");
    }
  }
  if (enforce_bounds && !out.bound_warnings.empty()) {
    throw Error(ErrorCode::InvariantViolation,
                "instance violates the configured magnitude bounds: " +
                    out.bound_warnings.front());
  }
  return out;
}

mpq_class edge_range(const PotentialVector& x, const Hyperedge& e) {
  mpq_class mx = x[e.verts[0]];
  mpq_class mn = mx;
  for (size_t i = 1; i < e.verts.size(); ++i) {
    const mpq_class& xv = x[e.verts[i]];
    if (xv > mx) mx = xv;
    if (xv < mn) mn = xv;
  }
  return mx - mn;
}

double edge_range(const std::vector<double>& x, const Hyperedge& e) {
  double mx = x[e.verts[0]];
  double mn = mx;
  for (size_t i = 1; i < e.verts.size(); ++i) {
    mx = std::max(mx, x[e.verts[i]]);
    mn = std::min(mn, x[e.verts[i]]);
  }
  return mx - mn;
}

PrimalValue primal_objective(const Hypergraph& h, const Demand& s,
                             const PotentialVector& x) {
  if (static_cast<int>(x.size()) != h.vertex_count) {
    throw Error(ErrorCode::InvariantViolation, "potential size mismatch");
  }
  PrimalValue out;
  out.energy = 0;
  for (const auto& e : h.edges) {
    mpq_class r = edge_range(x, e);
    out.energy += e.weight.to_rational() * r * r;
  }
  out.energy /= 2;
  mpq_class linear = 0;
  for (int v = 0; v < h.vertex_count; ++v) linear += s[v].to_rational() * x[v];
  out.objective = out.energy - linear;
  return out;
}

mpq_class weighted_mean_numerator(const Hypergraph& h, const PotentialVector& x) {
  auto d = h.degrees();
  mpq_class acc = 0;
  for (int v = 0; v < h.vertex_count; ++v) acc += d[v].to_rational() * x[v];
  return acc;
}

PotentialVector project_to_weighted_mean_zero(const Hypergraph& h,
                                              const PotentialVector& x) {
  Dyadic dsum = h.degree_sum();
  if (dsum.sign() <= 0) {
    throw Error(ErrorCode::ZeroTotalDegree, "all weighted degrees are zero");
  }
  mpq_class shift = weighted_mean_numerator(h, x) / dsum.to_rational();
  PotentialVector out(x.size());
  for (size_t v = 0; v < x.size(); ++v) out[v] = x[v] - shift;
  return out;
}

Dyadic demand_l1_norm(const Demand& s) {
  Dyadic total;
  for (const auto& sv : s) total += sv.abs();
  return total;
}

}  // namespace hyperlap
