#include "hyperlap/lifted.hpp"

#include <algorithm>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {

LiftedGraph build_lifted_graph(const Hypergraph& h) {
  LiftedGraph g;
  g.original_vertices = h.vertex_count;
  g.edge_count = h.edge_count();
  for (int j = 0; j < h.edge_count(); ++j) {
    const auto& verts = h.edges[j].verts;
    g.edge_size.push_back(static_cast<int>(verts.size()));
    g.transport_offset.push_back(g.arc_count());
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
      g.arcs.push_back({g.plus_node(j), verts[i], ArcKind::Transport, j, i});
    }
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
      g.arcs.push_back({verts[i], g.minus_node(j), ArcKind::Transport, j, i});
    }
  }
  for (int j = 0; j < h.edge_count(); ++j) {
    g.arcs.push_back({g.minus_node(j), g.plus_node(j), ArcKind::Quadratic, j, -1});
  }
  return g;
}

LiftedDemand lifted_demand(const LiftedGraph& g, const Demand& s) {
  LiftedDemand b(g.node_count(), 0.0);
  for (int v = 0; v < g.original_vertices; ++v) b[v] = s[v].to_double();
  return b;
}

LiftedFlowExact lifted_demand_exact(const LiftedGraph& g, const Demand& s) {
  LiftedFlowExact b(g.node_count());
  for (int v = 0; v < g.original_vertices; ++v) b[v] = s[v];
  return b;
}

std::vector<double> node_imbalance(const LiftedGraph& g, const LiftedFlow& f) {
  std::vector<double> im(g.node_count(), 0.0);
  for (int a = 0; a < g.arc_count(); ++a) {
    im[g.arcs[a].head] += f[a];
    im[g.arcs[a].tail] -= f[a];
  }
  return im;
}

std::vector<Dyadic> node_imbalance(const LiftedGraph& g, const LiftedFlowExact& f) {
  std::vector<Dyadic> im(g.node_count());
  for (int a = 0; a < g.arc_count(); ++a) {
    im[g.arcs[a].head] += f[a];
    im[g.arcs[a].tail] -= f[a];
  }
  return im;
}

LiftedFlowExact positive_circulation(const LiftedGraph& g) {
  LiftedFlowExact c(g.arc_count(), Dyadic(1));
  for (int j = 0; j < g.edge_count; ++j) {
    c[g.quadratic_arc(j)] = Dyadic(g.edge_size[j]);
  }
  return c;
}

FeasibleStart feasible_start(const Hypergraph& h, const Demand& s) {
  auto vi = validate_instance(h, s, /*require_connected=*/true);
  LiftedGraph g = build_lifted_graph(h);

  LiftedFlowExact path_flow(g.arc_count());
  // Route each demand along its BFS tree path through the edge gadgets.
  auto add_step = [&](int from, int to, int edge, const Dyadic& amount) {
    auto pos_in_edge = [&](int v) {
      const auto& verts = h.edges[edge].verts;
      return static_cast<int>(std::find(verts.begin(), verts.end(), v) -
                              verts.begin());
    };
    path_flow[g.vertex_to_minus_arc(edge, pos_in_edge(from))] += amount;
    path_flow[g.quadratic_arc(edge)] += amount;
    path_flow[g.plus_to_vertex_arc(edge, pos_in_edge(to))] += amount;
  };
  for (int v = 0; v < h.vertex_count; ++v) {
    if (s[v].is_zero() || v == 0) continue;
    // The root absorbs the residual because the demand sums to zero.
    if (s[v].sign() > 0) {
      // send s_v from the root down to v: compose steps parent -> child
      std::vector<int> chain;
      for (int u = v; u != 0; u = vi.bfs_parent[u]) chain.push_back(u);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        int child = *it;
        add_step(vi.bfs_parent[child], child, vi.bfs_parent_edge[child], s[v]);
      }
    } else {
      // send -s_v from v up to the root
      Dyadic amount = -s[v];
      for (int u = v; u != 0; u = vi.bfs_parent[u]) {
        add_step(u, vi.bfs_parent[u], vi.bfs_parent_edge[u], amount);
      }
    }
  }

  FeasibleStart out;
  LiftedFlowExact circ = positive_circulation(g);
  out.flow.resize(g.arc_count());
  Dyadic max_entry;
  for (int a = 0; a < g.arc_count(); ++a) {
    out.flow[a] = path_flow[a] + circ[a];
    if (out.flow[a] > max_entry) max_entry = out.flow[a];
  }

  // cap = smallest power of two >= ||s||_1 + max circulation entry + 2;
  // every start entry is at most ||s||_1 + max circulation, so cap - f >= 2.
  Dyadic bound = demand_l1_norm(s);
  Dyadic max_circ(2);
  for (int j = 0; j < g.edge_count; ++j) {
    if (circ[g.quadratic_arc(j)] > max_circ) max_circ = circ[g.quadratic_arc(j)];
  }
  bound += max_circ;
  bound += Dyadic(2);
  Dyadic cap(2);
  while (cap < bound) cap *= Dyadic(2);
  out.cap = cap;
  return out;
}

std::vector<double> to_double_flow(const LiftedFlowExact& f) {
  std::vector<double> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[i].to_double();
  return out;
}

std::string export_lifted_dot(const LiftedGraph& g) {
  std::ostringstream os;
  os << "digraph lifted {\n";
  for (int v = 0; v < g.original_vertices; ++v) {
    os << "  v" << v << " [kind=vertex];\n";
  }
  for (int j = 0; j < g.edge_count; ++j) {
    os << "  em" << j << " [kind=edge_minus, edge=" << j << "];\n";
    os << "  ep" << j << " [kind=edge_plus, edge=" << j << "];\n";
  }
  auto name = [&](int node) {
    std::ostringstream n;
    if (node < g.original_vertices) {
      n << "v" << node;
    } else {
      int j = (node - g.original_vertices) / 2;
      n << ((node - g.original_vertices) % 2 == 0 ? "em" : "ep") << j;
    }
    return n.str();
  };
  for (const auto& arc : g.arcs) {
    os << "  " << name(arc.tail) << " -> " << name(arc.head) << " [class="
       << (arc.kind == ArcKind::Transport ? "transport" : "quadratic")
       << ", edge=" << arc.edge << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hyperlap
