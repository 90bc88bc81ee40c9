#pragma once

#include <functional>
#include <vector>

#include "hyperlap/barrier.hpp"
#include "hyperlap/dual.hpp"
#include "hyperlap/lifted.hpp"

namespace hyperlap {

struct FirstStageOptions {
  double epsilon = 1e-9;            // target additive gap q(mu) - LB
  double feasibility_tol = 1e-10;   // per-node imbalance bound on output
  int max_outer = 400;
  int max_center_steps = 60;
  double centering_threshold = 0.25;  // Newton decrement at which t advances
  double long_step_target = 8.0;      // multiplicative t advance per outer round
  bool verbose = false;
  /// Structured trace sink; rows are also retained on the output.
  std::function<void(const std::string&)> trace_sink;
};

enum class FirstStageStatus { Converged, MaxIterations };

struct FirstStageTraceRow {
  int outer = 0;
  double t = 0;
  double objective = 0;  // monotone best-so-far q(mu)
  double raw_objective = 0;
  double residual = 0;   // max node imbalance
  double gap = 0;        // q_best - LB_best
};

struct FirstStageOutput {
  FirstStageStatus status = FirstStageStatus::Converged;
  LiftedFlow flow;          // best-so-far feasible lifted flow
  MassVectorF masses;       // mu_e = flow on the quadratic arc of e
  DualVectorF induced_dual; // (eta_e)_v = f_(e+,v) - f_(v,e-)
  double objective = 0;     // q(mu)
  double lower_bound = 0;   // Lagrangian bound, always <= dual optimum
  double gap = 0;           // objective - lower_bound >= 0
  double max_imbalance = 0;
  int outer_iterations = 0;
  int newton_steps = 0;
  std::vector<FirstStageTraceRow> trace;
};

/// Deterministic primal path-following solve of
///   min sum_e f_quad(e)^2 / (2 w_e)   s.t.  A f = b_up, f >= 0
/// on the lifted graph, using the explicit transport/quadratic barriers in
/// epigraph form.  Outer rounds multiply the centering parameter t by the
/// short-step factor (1 + 1/(8 sqrt(6 m)))^k aggregated into a long step,
/// falling back to a single short-step factor when recentering fails.  The
/// returned gap is certified: the lower bound comes from the equality
/// multipliers of the solver's own Newton system and is valid for every
/// potential vector, so objective - lower_bound >= q(mu) - D* at all times.
FirstStageOutput solve_first_stage(const Hypergraph& h, const Demand& s,
                                   const FirstStageOptions& options = {});

/// As above, on a prebuilt graph with an explicit strictly feasible start.
FirstStageOutput solve_first_stage(const LiftedGraph& g,
                                   const std::vector<double>& b_up,
                                   const std::vector<double>& weights,
                                   const std::vector<double>& start_flow,
                                   double cap,
                                   const FirstStageOptions& options = {});

}  // namespace hyperlap
