#include "hyperlap/mcf.hpp"

#include <algorithm>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {

void MCFInstance::check() const {
  mpz_class total = 0;
  for (const auto& d : demand) total += d;
  if (total != 0) {
    throw Error(ErrorCode::InvariantViolation, "MCF demands sum to " + total.get_str());
  }
  for (const auto& a : arcs) {
    if (a.tail < 0 || a.tail >= nodes || a.head < 0 || a.head >= nodes) {
      throw Error(ErrorCode::InvariantViolation, "MCF arc endpoint out of range");
    }
    if (a.capacity < 0) {
      throw Error(ErrorCode::InvariantViolation, "negative MCF capacity");
    }
    if (a.cost < 0) {
      throw Error(ErrorCode::InvariantViolation,
                  "negative MCF cost (outside the supported API)");
    }
  }
  if (static_cast<int>(demand.size()) != nodes) {
    throw Error(ErrorCode::InvariantViolation, "MCF demand size mismatch");
  }
}

namespace {

struct ResidualArc {
  int arc = -1;
  bool forward = true;
  int to = -1;
};

std::vector<std::vector<ResidualArc>> build_adjacency(const MCFInstance& inst) {
  std::vector<std::vector<ResidualArc>> adj(inst.nodes);
  for (int a = 0; a < static_cast<int>(inst.arcs.size()); ++a) {
    adj[inst.arcs[a].tail].push_back({a, true, inst.arcs[a].head});
    adj[inst.arcs[a].head].push_back({a, false, inst.arcs[a].tail});
  }
  return adj;
}

}  // namespace

MCFSolution solve_mcf_exact(const MCFInstance& inst) {
  inst.check();
  int n = inst.nodes;
  int m = static_cast<int>(inst.arcs.size());

  MCFSolution sol;
  sol.flow.assign(m, mpz_class(0));
  std::vector<mpz_class> deficit = inst.demand;  // remaining inflow needed
  std::vector<mpz_class> pi(n, mpz_class(0));
  auto adj = build_adjacency(inst);

  auto residual_cap = [&](const ResidualArc& r) -> mpz_class {
    const auto& arc = inst.arcs[r.arc];
    return r.forward ? mpz_class(arc.capacity - sol.flow[r.arc]) : sol.flow[r.arc];
  };
  auto reduced_cost = [&](int from, const ResidualArc& r) -> mpz_class {
    const auto& arc = inst.arcs[r.arc];
    mpz_class c = r.forward ? arc.cost : mpz_class(-arc.cost);
    return c + pi[from] - pi[r.to];
  };

  while (true) {
    int source = -1;
    for (int v = 0; v < n; ++v) {
      if (deficit[v] < 0) {
        source = v;
        break;
      }
    }
    if (source < 0) break;  // balanced everywhere

    // Dense Dijkstra with reduced costs; lowest node id, then lowest arc
    // index, break ties.
    std::vector<bool> reached(n, false), settled(n, false);
    std::vector<mpz_class> dist(n, mpz_class(0));
    std::vector<int> parent_arc(n, -1);
    std::vector<bool> parent_forward(n, true);
    std::vector<int> parent_node(n, -1);
    dist[source] = 0;
    reached[source] = true;
    while (true) {
      int u = -1;
      for (int v = 0; v < n; ++v) {
        if (!reached[v] || settled[v]) continue;
        if (u < 0 || dist[v] < dist[u]) u = v;
      }
      if (u < 0) break;
      settled[u] = true;
      for (const auto& r : adj[u]) {
        if (residual_cap(r) <= 0) continue;
        mpz_class nd = dist[u] + reduced_cost(u, r);
        if (!reached[r.to] || nd < dist[r.to]) {
          reached[r.to] = true;
          dist[r.to] = nd;
          parent_arc[r.to] = r.arc;
          parent_forward[r.to] = r.forward;
          parent_node[r.to] = u;
        }
      }
    }

    int target = -1;
    for (int v = 0; v < n; ++v) {
      if (deficit[v] > 0 && reached[v]) {
        if (target < 0 || dist[v] < dist[target]) target = v;
      }
    }
    if (target < 0) {
      sol.status = MCFStatus::Infeasible;
      sol.objective = 0;
      return sol;
    }

    // Augment by the bottleneck along the shortest path.
    mpz_class amount;
    mpz_class send = -deficit[source];
    if (deficit[target] < send) send = deficit[target];
    amount = send;
    for (int v = target; v != source; v = parent_node[v]) {
      ResidualArc r{parent_arc[v], parent_forward[v], v};
      mpz_class rc = residual_cap(r);
      if (rc < amount) amount = rc;
    }
    for (int v = target; v != source; v = parent_node[v]) {
      if (parent_forward[v]) {
        sol.flow[parent_arc[v]] += amount;
      } else {
        sol.flow[parent_arc[v]] -= amount;
      }
    }
    deficit[source] += amount;
    deficit[target] -= amount;

    // Johnson update keeps reduced costs nonnegative: cap unreached nodes at
    // the target distance.
    for (int v = 0; v < n; ++v) {
      pi[v] += reached[v] ? std::min(dist[v], dist[target]) : dist[target];
    }
  }

  sol.status = MCFStatus::Optimal;
  sol.objective = 0;
  for (int a = 0; a < m; ++a) sol.objective += inst.arcs[a].cost * sol.flow[a];
  return sol;
}

MCFSolution make_acyclic(const MCFInstance& inst, const MCFSolution& sol) {
  MCFSolution out = sol;
  int n = inst.nodes;
  int m = static_cast<int>(inst.arcs.size());
  while (true) {
    // Find a directed cycle in the support by iterative DFS.
    std::vector<std::vector<int>> out_arcs(n);
    for (int a = 0; a < m; ++a) {
      if (out.flow[a] > 0) out_arcs[inst.arcs[a].tail].push_back(a);
    }
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<int> via_arc(n, -1);
    std::vector<int> cycle;
    for (int start = 0; start < n && cycle.empty(); ++start) {
      if (state[start] != 0) continue;
      std::vector<std::pair<int, size_t>> stack{{start, 0}};
      state[start] = 1;
      while (!stack.empty() && cycle.empty()) {
        auto& [u, idx] = stack.back();
        if (idx == out_arcs[u].size()) {
          state[u] = 2;
          stack.pop_back();
          continue;
        }
        int a = out_arcs[u][idx++];
        int v = inst.arcs[a].head;
        if (state[v] == 0) {
          state[v] = 1;
          via_arc[v] = a;
          stack.push_back({v, 0});
        } else if (state[v] == 1) {
          // Back arc closes a cycle v -> ... -> u -> v.
          cycle.push_back(a);
          for (int w = u; w != v; w = inst.arcs[via_arc[w]].tail) {
            cycle.push_back(via_arc[w]);
          }
        }
      }
    }
    if (cycle.empty()) break;
    mpz_class slack = out.flow[cycle[0]];
    for (int a : cycle) slack = std::min(slack, out.flow[a]);
    for (int a : cycle) out.flow[a] -= slack;
  }
  out.objective = 0;
  for (int a = 0; a < m; ++a) out.objective += inst.arcs[a].cost * out.flow[a];
  if (out.objective > sol.objective) {
    throw Error(ErrorCode::InvariantViolation,
                "cycle cancellation increased the objective");
  }
  return out;
}

PotentialCertificate extract_residual_potentials(const MCFInstance& inst,
                                                 const MCFSolution& sol) {
  int n = inst.nodes;
  int m = static_cast<int>(inst.arcs.size());
  // Bellman-Ford from an implicit super-source with zero-cost arcs to every
  // node: start all distances at zero.
  std::vector<mpz_class> dist(n, mpz_class(0));
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (int a = 0; a < m; ++a) {
      const auto& arc = inst.arcs[a];
      if (sol.flow[a] < arc.capacity) {
        mpz_class nd = dist[arc.tail] + arc.cost;
        if (nd < dist[arc.head]) {
          dist[arc.head] = nd;
          changed = true;
        }
      }
      if (sol.flow[a] > 0) {
        mpz_class nd = dist[arc.head] - arc.cost;
        if (nd < dist[arc.tail]) {
          dist[arc.tail] = nd;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round == n) {
      throw Error(ErrorCode::NegativeCycleDetected,
                  "residual graph has a negative cycle; input flow not optimal");
    }
  }

  PotentialCertificate cert;
  cert.potentials = dist;
  mpz_class lo = *std::min_element(cert.potentials.begin(), cert.potentials.end());
  for (auto& p : cert.potentials) p -= lo;
  cert.lambda_plus.assign(m, mpz_class(0));
  for (int a = 0; a < m; ++a) {
    const auto& arc = inst.arcs[a];
    mpz_class excess = cert.potentials[arc.head] - cert.potentials[arc.tail] - arc.cost;
    if (excess > 0) cert.lambda_plus[a] = excess;
  }
  return cert;
}

std::string export_dimacs(const MCFInstance& inst) {
  std::ostringstream os;
  os << "p min " << inst.nodes << " " << inst.arcs.size() << "\n";
  for (int v = 0; v < inst.nodes; ++v) {
    if (inst.demand[v] != 0) {
      // DIMACS supplies are outflow-minus-inflow, the mirror of our demands.
      os << "n " << (v + 1) << " " << mpz_class(-inst.demand[v]).get_str() << "\n";
    }
  }
  for (const auto& a : inst.arcs) {
    os << "a " << (a.tail + 1) << " " << (a.head + 1) << " 0 "
       << a.capacity.get_str() << " " << a.cost.get_str() << "\n";
  }
  return os.str();
}

MCFInstance import_dimacs(const std::string& text) {
  MCFInstance inst;
  std::istringstream is(text);
  std::string line;
  bool have_problem = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long n = 0, m = 0;
      if (!(ls >> kind >> n >> m) || kind != "min") {
        throw Error(ErrorCode::ParseError, "bad DIMACS problem line");
      }
      inst.nodes = static_cast<int>(n);
      inst.demand.assign(inst.nodes, mpz_class(0));
      have_problem = true;
    } else if (tag == "n") {
      long v;
      std::string supply;
      if (!have_problem || !(ls >> v >> supply) || v < 1 || v > inst.nodes) {
        throw Error(ErrorCode::ParseError, "bad DIMACS node line");
      }
      inst.demand[v - 1] = -mpz_class(supply);
    } else if (tag == "a") {
      long s, t;
      std::string low, cap, cost;
      if (!have_problem || !(ls >> s >> t >> low >> cap >> cost)) {
        throw Error(ErrorCode::ParseError, "bad DIMACS arc line");
      }
      if (mpz_class(low) != 0) {
        throw Error(ErrorCode::ParseError, "nonzero lower bounds unsupported");
      }
      inst.arcs.push_back({static_cast<int>(s - 1), static_cast<int>(t - 1),
                           mpz_class(cap), mpz_class(cost)});
    }
  }
  if (!have_problem) throw Error(ErrorCode::ParseError, "missing DIMACS problem line");
  inst.check();
  return inst;
}

}  // namespace hyperlap
