#pragma once

#include <vector>

#include "hyperlap/hypergraph.hpp"
#include "hyperlap/simplex.hpp"

namespace hyperlap {

/// Brute-force references for the acceptance tests.  Everything in here is
/// algorithmically disjoint from the production pipeline: projected
/// subgradient and dense simplex instead of the interior-point / min-cost
/// flow chain, so agreement between the two is meaningful evidence.

struct SubgradientResult {
  std::vector<double> x;   // best iterate, projected onto the mean-zero slice
  double value = 0;        // best primal objective seen
  bool stabilized = false; // best value moved < 1e-6 over the last 10% of steps
};

/// Projected subgradient with averaging on the normalized Poisson objective.
/// Step schedule step/sqrt(k); returns the best value seen.  Intended for
/// tiny instances (n <= 12, P <= 40).
SubgradientResult oracle_primal_poisson(const Hypergraph& h, const Demand& s,
                                        long iterations = 100000,
                                        double step = 1.0);

/// Exact rational LP solve (two-phase simplex, Bland's rule).
LPResult<mpq_class> oracle_dense_simplex(const StandardLP<mpq_class>& lp);

/// Exact support-problem value max{<s,x> : x normalized, R_e(x) <= r_e} via
/// the dense simplex on the explicit (x, u, l) inequality formulation.
LPResult<mpq_class> oracle_support_lp(const Hypergraph& h,
                                      const std::vector<mpq_class>& s,
                                      const std::vector<mpq_class>& budgets);

struct DualOptimumResult {
  double value = 0;  // upper estimate of the dual optimum
  double lower = 0;  // certified bracket: lower <= optimum <= value
  int iterations = 0;
};

/// Dual optimum by away-step Frank-Wolfe on the nonnegative lifted-flow
/// quadratic program, with the linear minimization oracle solved by the
/// dense simplex.  The Frank-Wolfe gap certifies the returned bracket.
DualOptimumResult oracle_dual_optimum(const Hypergraph& h, const Demand& s,
                                      double tol = 1e-8);

/// Exact solve of a square rational linear system by Gaussian elimination.
std::vector<mpq_class> oracle_solve_linear(std::vector<std::vector<mpq_class>> a,
                                           std::vector<mpq_class> rhs);

/// For 2-uniform instances: the exact minimizer of the Poisson objective,
/// i.e. the solution of the weighted graph Laplacian system on the
/// degree-weighted mean-zero slice.
PotentialVector oracle_exact_laplacian_solve(const Hypergraph& h, const Demand& s);

/// Exact effective resistance between two vertices of a connected 2-uniform
/// instance.
mpq_class oracle_effective_resistance(const Hypergraph& h, int u, int v);

/// Near-minimizer of the regularized objective by strongly convex projected
/// subgradient (step 2/(lambda (k+1)), weighted averaging).
std::vector<double> oracle_regularized_minimizer(const Hypergraph& h, double lambda,
                                                 const Demand& s,
                                                 long iterations = 2000000);

}  // namespace hyperlap
