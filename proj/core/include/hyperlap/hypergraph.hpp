#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hyperlap/dyadic.hpp"

namespace hyperlap {

struct Hyperedge {
  std::vector<int> verts;  // distinct vertex ids in [0, n)
  Dyadic weight;           // > 0
};

/// A weighted hypergraph.  The incidence size P (sum of edge sizes) is the
/// natural input measure used throughout for bounds and grid choices.
struct Hypergraph {
  int vertex_count = 0;
  std::vector<Hyperedge> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  long incidence_size() const;  // P

  /// Weighted degrees d_v = sum of weights of incident edges.
  std::vector<Dyadic> degrees() const;
  Dyadic degree_sum() const;

  /// True when every hyperedge has size two.
  bool is_two_uniform() const;
};

using Demand = std::vector<Dyadic>;            // zero-sum for the Poisson path
using PotentialVector = std::vector<mpq_class>;  // exact rational potentials

struct ValidatedInstance {
  Hypergraph hypergraph;
  Demand demand;
  bool connected = false;
  /// BFS order over the vertex-overlap graph (parent/edge witness per vertex;
  /// -1 at the root and on unreachable vertices).
  std::vector<int> bfs_parent;
  std::vector<int> bfs_parent_edge;
  std::vector<int> bfs_order;
  /// K0 bound check: empty when the data is within [P^-K0, P^K0] bounds.
  std::vector<std::string> bound_warnings;
};

/// Checks edge shape, weight positivity, zero-sum demand, and (optionally)
/// connectivity of the vertex-overlap graph.  Traversal is a BFS from vertex
/// 0 with ascending-vertex-id, lowest-edge-id tie-breaking, so the witness
/// tree is deterministic.  K0 violations warn by default; `enforce_bounds`
/// turns them into errors.
ValidatedInstance validate_instance(const Hypergraph& h, const Demand& s,
                                    bool require_connected,
                                    int k0 = 2, bool enforce_bounds = false);

/// max - min of x over the vertices of edge `e`.
mpq_class edge_range(const PotentialVector& x, const Hyperedge& e);
double edge_range(const std::vector<double>& x, const Hyperedge& e);

struct PrimalValue {
  mpq_class energy;     // (1/2) sum_e w_e R_e(x)^2
  mpq_class objective;  // energy - <s, x>
};

PrimalValue primal_objective(const Hypergraph& h, const Demand& s,
                             const PotentialVector& x);

/// Subtracts the D-weighted average so that <Dx', 1> = 0 exactly.  Edge
/// ranges are unchanged by the constant shift.
PotentialVector project_to_weighted_mean_zero(const Hypergraph& h,
                                              const PotentialVector& x);

/// <Dx, 1> as an exact rational (zero iff x lies in the normalized subspace).
mpq_class weighted_mean_numerator(const Hypergraph& h, const PotentialVector& x);

Dyadic demand_l1_norm(const Demand& s);

}  // namespace hyperlap
