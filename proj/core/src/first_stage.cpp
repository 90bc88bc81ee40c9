#include "hyperlap/first_stage.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {

namespace {

struct IpmState {
  const LiftedGraph* graph;
  std::vector<BarrierSpec> specs;
  Eigen::VectorXd f, y;      // arc flows and epigraph coordinates
  Eigen::VectorXd b;         // full lifted demand
  int m = 0;                 // arcs
  int nodes = 0;
  int dropped_node = 0;      // incidence row removed to fix the rank deficiency
};

bool in_domain(const IpmState& st) {
  for (int a = 0; a < st.m; ++a) {
    if (!barrier_in_domain(st.specs[a], st.f[a], st.y[a])) return false;
  }
  return true;
}

double potential(const IpmState& st, double t) {
  double val = 0;
  for (int a = 0; a < st.m; ++a) {
    val += t * st.y[a] + evaluate_barrier(st.specs[a], st.f[a], st.y[a]).value;
  }
  return val;
}

double mass_objective(const IpmState& st) {
  double q = 0;
  for (int j = 0; j < st.graph->edge_count; ++j) {
    double mu = st.f[st.graph->quadratic_arc(j)];
    q += mu * mu / (2.0 * st.specs[st.graph->quadratic_arc(j)].weight);
  }
  return q;
}

double max_imbalance(const IpmState& st) {
  double worst = 0;
  std::vector<double> im(st.nodes, 0.0);
  for (int a = 0; a < st.m; ++a) {
    im[st.graph->arcs[a].head] += st.f[a];
    im[st.graph->arcs[a].tail] -= st.f[a];
  }
  for (int u = 0; u < st.nodes; ++u) worst = std::max(worst, std::fabs(im[u] - st.b[u]));
  return worst;
}

/// Lagrangian lower bound for the capped quadratic-cost flow, valid for any
/// node potential phi: <b, phi> minus the conjugate terms of each arc class.
double lagrangian_bound(const IpmState& st, const Eigen::VectorXd& phi) {
  double val = 0;
  for (int u = 0; u < st.nodes; ++u) val += st.b[u] * phi[u];
  for (int a = 0; a < st.m; ++a) {
    const auto& arc = st.graph->arcs[a];
    double beta = phi[arc.head] - phi[arc.tail];
    if (beta <= 0) continue;
    if (arc.kind == ArcKind::Transport) {
      val -= st.specs[a].cap * beta;
    } else {
      val -= 0.5 * st.specs[a].weight * beta * beta;
    }
  }
  return val;
}

struct NewtonResult {
  Eigen::VectorXd df, dy;
  Eigen::VectorXd multipliers;  // per node, dropped node pinned to zero
  double decrement_sq = 0;
};

class KktSolver {
 public:
  explicit KktSolver(const IpmState& st) : st_(st) {
    dim_ = 2 * st.m + st.nodes - 1;
    pattern_ready_ = false;
  }

  NewtonResult solve(const IpmState& st, double t) {
    int m = st.m;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(6 * m + 4 * m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim_);

    for (int a = 0; a < m; ++a) {
      BarrierEval ev = evaluate_barrier(st.specs[a], st.f[a], st.y[a]);
      trips.emplace_back(a, a, ev.hessian[0][0]);
      trips.emplace_back(a, m + a, ev.hessian[0][1]);
      trips.emplace_back(m + a, a, ev.hessian[1][0]);
      trips.emplace_back(m + a, m + a, ev.hessian[1][1]);
      rhs[a] = -ev.gradient[0];
      rhs[m + a] = -(t + ev.gradient[1]);
    }
    // Incidence block on the flow variables (incoming minus outgoing), with
    // one node row dropped; the lifted graph is connected so the remaining
    // rows have full rank.
    std::vector<double> imbalance(st.nodes, 0.0);
    for (int a = 0; a < m; ++a) {
      imbalance[st.graph->arcs[a].head] += st.f[a];
      imbalance[st.graph->arcs[a].tail] -= st.f[a];
    }
    auto row_of = [&](int node) {
      if (node == st.dropped_node) return -1;
      int r = node < st.dropped_node ? node : node - 1;
      return 2 * m + r;
    };
    for (int a = 0; a < m; ++a) {
      int rh = row_of(st.graph->arcs[a].head);
      int rt = row_of(st.graph->arcs[a].tail);
      if (rh >= 0) {
        trips.emplace_back(rh, a, 1.0);
        trips.emplace_back(a, rh, 1.0);
      }
      if (rt >= 0) {
        trips.emplace_back(rt, a, -1.0);
        trips.emplace_back(a, rt, -1.0);
      }
    }
    for (int u = 0; u < st.nodes; ++u) {
      int r = row_of(u);
      if (r >= 0) rhs[r] = st.b[u] - imbalance[u];
    }

    Eigen::SparseMatrix<double> kkt(dim_, dim_);
    kkt.setFromTriplets(trips.begin(), trips.end());
    if (!pattern_ready_) {
      lu_.analyzePattern(kkt);
      pattern_ready_ = true;
    }
    lu_.factorize(kkt);
    if (lu_.info() != Eigen::Success) {
      throw Error(ErrorCode::NumericalBreakdown, "KKT factorization failed");
    }
    Eigen::VectorXd sol = lu_.solve(rhs);
    // Two rounds of iterative refinement keep the feasibility block accurate
    // even when the barrier Hessian is badly conditioned near convergence.
    for (int refine = 0; refine < 2; ++refine) {
      Eigen::VectorXd resid = rhs - kkt * sol;
      sol += lu_.solve(resid);
    }

    NewtonResult res;
    res.df = sol.segment(0, m);
    res.dy = sol.segment(m, m);
    // The solve returns nu with grad(Phi) = -A~^T nu at the center, so the
    // Lagrangian potential in the inflow-minus-outflow convention is -nu.
    res.multipliers = Eigen::VectorXd::Zero(st.nodes);
    for (int u = 0; u < st.nodes; ++u) {
      if (u == st.dropped_node) continue;
      int r = u < st.dropped_node ? u : u - 1;
      res.multipliers[u] = -sol[2 * m + r];
    }
    // Decrement in the barrier Hessian norm.
    double dec = 0;
    for (int a = 0; a < m; ++a) {
      BarrierEval ev = evaluate_barrier(st.specs[a], st.f[a], st.y[a]);
      double df = res.df[a], dy = res.dy[a];
      dec += ev.hessian[0][0] * df * df + 2 * ev.hessian[0][1] * df * dy +
             ev.hessian[1][1] * dy * dy;
    }
    res.decrement_sq = dec;
    return res;
  }

 private:
  const IpmState& st_;
  int dim_;
  bool pattern_ready_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

/// Backtracking line search on the barrier potential.  Returns false when no
/// acceptable step exists above the numerical floor.
bool line_search(IpmState& st, double t, const NewtonResult& dir) {
  double phi0 = potential(st, t);
  double slope = 0;
  for (int a = 0; a < st.m; ++a) {
    BarrierEval ev = evaluate_barrier(st.specs[a], st.f[a], st.y[a]);
    slope += ev.gradient[0] * dir.df[a] + (t + ev.gradient[1]) * dir.dy[a];
  }
  Eigen::VectorXd f0 = st.f, y0 = st.y;
  double alpha = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    st.f = f0 + alpha * dir.df;
    st.y = y0 + alpha * dir.dy;
    if (in_domain(st)) {
      double phi = potential(st, t);
      if (phi <= phi0 + 0.01 * alpha * slope || phi <= phi0) return true;
    }
    alpha *= 0.5;
  }
  st.f = f0;
  st.y = y0;
  return false;
}

}  // namespace

FirstStageOutput solve_first_stage(const LiftedGraph& g,
                                   const std::vector<double>& b_up,
                                   const std::vector<double>& weights,
                                   const std::vector<double>& start_flow,
                                   double cap,
                                   const FirstStageOptions& options) {
  IpmState st;
  st.graph = &g;
  st.m = g.arc_count();
  st.nodes = g.node_count();
  st.dropped_node = st.nodes - 1;
  st.b = Eigen::Map<const Eigen::VectorXd>(b_up.data(), st.nodes);
  st.f = Eigen::Map<const Eigen::VectorXd>(start_flow.data(), st.m);
  st.specs.resize(st.m);
  st.y.resize(st.m);
  for (int a = 0; a < st.m; ++a) {
    const auto& arc = g.arcs[a];
    st.specs[a].kind = arc.kind;
    st.specs[a].cap = cap;
    st.specs[a].weight = arc.kind == ArcKind::Quadratic ? weights[arc.edge] : 1.0;
    st.y[a] = arc.kind == ArcKind::Transport
                  ? 1.0
                  : st.f[a] * st.f[a] / (2.0 * st.specs[a].weight) + 1.0;
  }
  if (!in_domain(st)) {
    throw Error(ErrorCode::OutOfDomain, "start flow is not strictly interior");
  }

  KktSolver kkt(st);
  FirstStageOutput out;

  double best_q = mass_objective(st);
  Eigen::VectorXd best_f = st.f;
  double best_lb = -std::numeric_limits<double>::infinity();

  // Short-step factor from the uniform barrier parameter; long steps
  // aggregate it to roughly options.long_step_target per outer round.
  double sigma = 1.0 + 1.0 / (8.0 * std::sqrt(6.0 * st.m));
  int steps_per_round =
      std::max(1, static_cast<int>(std::log(options.long_step_target) / std::log(sigma)));

  double t = 1.0;
  auto recenter = [&](double tval) -> bool {
    for (int it = 0; it < options.max_center_steps; ++it) {
      NewtonResult dir = kkt.solve(st, tval);
      out.newton_steps++;
      if (dir.decrement_sq <= options.centering_threshold * options.centering_threshold) {
        // Fold in the multiplier-based bound once per centering.
        best_lb = std::max(best_lb, lagrangian_bound(st, dir.multipliers / tval));
        return true;
      }
      if (!line_search(st, tval, dir)) {
        best_lb = std::max(best_lb, lagrangian_bound(st, dir.multipliers / tval));
        return false;
      }
    }
    return false;
  };

  recenter(t);
  double q_now = mass_objective(st);
  if (q_now < best_q) {
    best_q = q_now;
    best_f = st.f;
  }

  bool converged = false;
  int outer = 0;
  for (; outer < options.max_outer; ++outer) {
    double gap = best_q - best_lb;
    FirstStageTraceRow row{outer, t, best_q, q_now, max_imbalance(st), gap};
    out.trace.push_back(row);
    if (options.trace_sink || options.verbose) {
      std::ostringstream os;
      os << "first_stage iter=" << outer << " t=" << t << " objective=" << best_q
         << " residual=" << row.residual << " gap=" << gap;
      if (options.trace_sink) options.trace_sink(os.str());
    }
    if (gap <= options.epsilon) {
      converged = true;
      break;
    }
    double t_next = t * std::pow(sigma, steps_per_round);
    if (!recenter(t_next)) {
      // Long advance failed to recenter: fall back to one short step.  When
      // even that stalls we still advance; the multiplier bound keeps the
      // reported gap honest regardless of centering quality.
      t_next = t * sigma;
      recenter(t_next);
    }
    t = t_next;
    q_now = mass_objective(st);
    if (q_now < best_q) {
      best_q = q_now;
      best_f = st.f;
    }
  }

  st.f = best_f;
  out.status = converged ? FirstStageStatus::Converged : FirstStageStatus::MaxIterations;
  out.outer_iterations = outer;
  out.flow.assign(st.f.data(), st.f.data() + st.m);
  out.objective = best_q;
  out.lower_bound = best_lb;
  out.gap = std::max(0.0, best_q - best_lb);
  out.max_imbalance = max_imbalance(st);

  out.masses.mu.resize(g.edge_count);
  for (int j = 0; j < g.edge_count; ++j) out.masses.mu[j] = out.flow[g.quadratic_arc(j)];
  out.induced_dual.values.resize(g.edge_count);
  for (int j = 0; j < g.edge_count; ++j) {
    out.induced_dual.values[j].resize(g.edge_size[j]);
    for (int i = 0; i < g.edge_size[j]; ++i) {
      out.induced_dual.values[j][i] =
          out.flow[g.plus_to_vertex_arc(j, i)] - out.flow[g.vertex_to_minus_arc(j, i)];
    }
  }
  return out;
}

FirstStageOutput solve_first_stage(const Hypergraph& h, const Demand& s,
                                   const FirstStageOptions& options) {
  LiftedGraph g = build_lifted_graph(h);
  FeasibleStart start = feasible_start(h, s);
  std::vector<double> weights(h.edge_count());
  for (int j = 0; j < h.edge_count(); ++j) weights[j] = h.edges[j].weight.to_double();
  return solve_first_stage(g, lifted_demand(g, s), weights,
                           to_double_flow(start.flow), start.cap.to_double(),
                           options);
}

}  // namespace hyperlap
