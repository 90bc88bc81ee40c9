#pragma once

#include "hyperlap/solver.hpp"

namespace hyperlap {

/// Ground-vertex reduction of the regularized objective
///   (1/2) sum_e w_e R_e(x)^2 + (lambda/2) <Dx, x> - <s, x>.
/// The augmented hypergraph adds vertex g with one edge {v, g} of weight
/// lambda * d_v per vertex; the augmented demand absorbs any imbalance at g,
/// so the base demand need not be zero-sum and the base hypergraph need not
/// be connected.
struct RegularizedInstance {
  Hypergraph base;
  Dyadic lambda;
  Demand demand;           // s on the base vertices
  Hypergraph augmented;    // base edges first, then the ground edges in
                           // vertex order; ground vertex id = base n
  Demand augmented_demand; // (s, -sum s)
  int ground = -1;
};

RegularizedInstance ground_augment(const Hypergraph& h, const Dyadic& lambda,
                                   const Demand& s);

struct RegularizedDualValue {
  mpq_class value;           // D_lambda(eta)
  PotentialVector induced_x; // x_v = (s_v - (B eta)_v) / (lambda d_v)
};

/// D_lambda(eta) = sum_e ||eta_e||_1^2/(8 w_e)
///              + (1/(2 lambda)) sum_v (s_v - (B eta)_v)^2 / d_v.
RegularizedDualValue regularized_dual_objective(const Hypergraph& h,
                                                const Dyadic& lambda,
                                                const Demand& s,
                                                const DualVector& eta);

mpq_class regularized_primal_objective(const Hypergraph& h, const Dyadic& lambda,
                                       const Demand& s, const PotentialVector& x);

struct RegularizedSolution {
  PotentialVector x;             // on the base vertices, ground pinned to zero
  DualCertificate certificate;   // original-edge components only
  mpq_class primal_value;        // P_lambda(x)
  mpq_class dual_value;          // D_lambda(eta_hat)
  mpq_class gap;                 // primal + dual >= 0
  PoissonSolution augmented_run; // full diagnostics of the inner solve
};

/// Runs the Poisson pipeline on the augmented instance, shifts the returned
/// potential so the ground coordinate is zero, and converts the augmented
/// certificate to a regularized one by dropping the ground-edge components
/// (their coefficients are pinned by exact feasibility, so no information is
/// lost).
RegularizedSolution solve_regularized(const Hypergraph& h, const Dyadic& lambda,
                                      const Demand& s,
                                      const SolveOptions& options = {});

struct ResolventResult {
  PotentialVector x;  // approximate proximal point
  mpq_class gap;      // certified objective gap; (lambda/2)||x - J||_D^2 <= gap
  RegularizedSolution details;
};

/// Proximal map of the cut energy at y: solves the regularized problem with
/// demand lambda * D y.
ResolventResult resolvent(const Hypergraph& h, const Dyadic& lambda,
                          const std::vector<Dyadic>& y,
                          const SolveOptions& options = {});

struct PairwiseResponse {
  mpq_class response;  // x_u - x_v for the returned potential
  mpq_class gap;       // the run's certified objective gap; no bound on the
                       // response error itself is claimed
  PoissonSolution run;
};

/// Potential difference under the unit dipole demand e_u - e_v.
PairwiseResponse pairwise_response(const Hypergraph& h, int u, int v,
                                   const SolveOptions& options = {});

}  // namespace hyperlap
