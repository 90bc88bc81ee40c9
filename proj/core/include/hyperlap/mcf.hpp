#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hyperlap {

/// Capacitated min-cost flow over exact integers.  Node demands use the
/// inflow-minus-outflow convention: a node with positive demand is a sink.
/// The public API requires nonnegative costs, which is all the support
/// queries ever produce.
struct MCFInstance {
  struct Arc {
    int tail = -1;
    int head = -1;
    mpz_class capacity;  // >= 0
    mpz_class cost;      // >= 0
  };
  int nodes = 0;
  std::vector<Arc> arcs;
  std::vector<mpz_class> demand;  // sums to zero

  void check() const;
};

enum class MCFStatus { Optimal, Infeasible };

struct MCFSolution {
  MCFStatus status = MCFStatus::Infeasible;
  std::vector<mpz_class> flow;
  mpz_class objective;  // sum c_a f_a, exact
};

/// Node potentials and capacity multipliers extracted from the residual
/// graph of an optimal flow.  With A^T pi the head-minus-tail difference,
/// dual feasibility reads (A^T pi)_a - lambda_plus_a <= c_a, and strong
/// duality <b, pi> - sum u_a lambda_plus_a = <c, f> holds exactly.
struct PotentialCertificate {
  std::vector<mpz_class> potentials;    // normalized so min pi = 0
  std::vector<mpz_class> lambda_plus;   // >= 0, one per arc
};

/// Successive shortest paths with Johnson potentials; all arithmetic is
/// arbitrary-precision integer, so the optimum is exact.  Ties in the
/// Dijkstra relaxation break toward the lowest arc index, which makes runs
/// deterministic.
MCFSolution solve_mcf_exact(const MCFInstance& inst);

/// Cancels directed cycles in the support of a feasible flow.  Conservation
/// is preserved and, because costs are nonnegative, the objective cannot
/// increase; for an optimal input it is unchanged.
MCFSolution make_acyclic(const MCFInstance& inst, const MCFSolution& sol);

/// Shortest-path distances in the residual graph (Bellman-Ford from an
/// implicit zero-cost super-source) give the potentials; throws
/// NegativeCycleDetected when the input flow was not optimal.
PotentialCertificate extract_residual_potentials(const MCFInstance& inst,
                                                 const MCFSolution& sol);

/// DIMACS-style text exchange for cross-validation against external solvers.
std::string export_dimacs(const MCFInstance& inst);
MCFInstance import_dimacs(const std::string& text);

}  // namespace hyperlap
