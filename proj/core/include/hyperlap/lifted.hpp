#pragma once

#include <string>
#include <vector>

#include "hyperlap/dyadic.hpp"
#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

enum class ArcKind { Transport, Quadratic };

struct LiftedArc {
  int tail = -1;
  int head = -1;
  ArcKind kind = ArcKind::Transport;
  int edge = -1;       // hyperedge this arc belongs to
  int incidence = -1;  // index of the endpoint vertex inside the edge (-1 for quadratic)
};

/// The directed gadget graph: one (e-, e+) node pair per hyperedge, transport
/// arcs (e+, v) and (v, e-) for each incidence, and one quadratic arc
/// (e-, e+) per edge.  Node numbering is deterministic: original vertices
/// first, then the e-, e+ pairs in edge order.  Transport arcs come first in
/// incidence order (per edge: all (e+, v), then all (v, e-)); quadratic arcs
/// sit at the end, one per edge in edge order.
struct LiftedGraph {
  int original_vertices = 0;
  int edge_count = 0;
  std::vector<LiftedArc> arcs;
  std::vector<int> edge_size;         // |e| per hyperedge
  std::vector<int> transport_offset;  // first transport arc of each edge

  int node_count() const { return original_vertices + 2 * edge_count; }
  int arc_count() const { return static_cast<int>(arcs.size()); }

  int minus_node(int edge) const { return original_vertices + 2 * edge; }
  int plus_node(int edge) const { return original_vertices + 2 * edge + 1; }

  /// Quadratic arcs are the last edge_count arcs.
  int quadratic_arc(int edge) const { return arc_count() - edge_count + edge; }

  /// Transport arc indices (e+, v) and (v, e-) for the incidence (edge, i).
  int plus_to_vertex_arc(int edge, int incidence) const {
    return transport_offset[edge] + incidence;
  }
  int vertex_to_minus_arc(int edge, int incidence) const {
    return transport_offset[edge] + edge_size[edge] + incidence;
  }
};

using LiftedFlow = std::vector<double>;
using LiftedFlowExact = std::vector<Dyadic>;
using LiftedDemand = std::vector<double>;

LiftedGraph build_lifted_graph(const Hypergraph& h);

/// b_up = s on original vertices, 0 on the auxiliary nodes.
LiftedDemand lifted_demand(const LiftedGraph& g, const Demand& s);
LiftedFlowExact lifted_demand_exact(const LiftedGraph& g, const Demand& s);

/// Per-node inflow minus outflow.
std::vector<double> node_imbalance(const LiftedGraph& g, const LiftedFlow& f);
std::vector<Dyadic> node_imbalance(const LiftedGraph& g, const LiftedFlowExact& f);

/// All-positive circulation: 1 on every transport arc, |e| on the quadratic
/// arc of e.  Its node imbalance vanishes identically.
LiftedFlowExact positive_circulation(const LiftedGraph& g);

struct FeasibleStart {
  LiftedFlowExact flow;  // strictly positive, meets the lifted demand exactly
  Dyadic cap;            // power-of-two arc cap with cap - f_a >= 1 everywhere
};

/// Tree path-flow plus the positive circulation.  Demands are routed through
/// BFS-tree gadget paths u -> e- -> e+ -> v rooted at vertex 0, so every arc
/// stays strictly inside (0, cap).
FeasibleStart feasible_start(const Hypergraph& h, const Demand& s);

std::vector<double> to_double_flow(const LiftedFlowExact& f);

/// Arc list in DOT format with class tags, for visualization tools.
std::string export_lifted_dot(const LiftedGraph& g);

}  // namespace hyperlap
