#include "hyperlap/regularized.hpp"

#include "hyperlap/errors.hpp"

namespace hyperlap {

RegularizedInstance ground_augment(const Hypergraph& h, const Dyadic& lambda,
                                   const Demand& s) {
  if (lambda.sign() <= 0) {
    throw Error(ErrorCode::NonpositiveLambda, "lambda = " + lambda.to_string());
  }
  auto degrees = h.degrees();
  for (int v = 0; v < h.vertex_count; ++v) {
    if (degrees[v].sign() <= 0) {
      throw Error(ErrorCode::ZeroDegreeVertex,
                  "vertex " + std::to_string(v) + " has zero weighted degree");
    }
  }
  if (static_cast<int>(s.size()) != h.vertex_count) {
    throw Error(ErrorCode::InvariantViolation, "demand size mismatch");
  }

  RegularizedInstance inst;
  inst.base = h;
  inst.lambda = lambda;
  inst.demand = s;
  inst.ground = h.vertex_count;
  inst.augmented = h;
  inst.augmented.vertex_count = h.vertex_count + 1;
  for (int v = 0; v < h.vertex_count; ++v) {
    inst.augmented.edges.push_back({{v, inst.ground}, lambda * degrees[v]});
  }
  inst.augmented_demand = s;
  Dyadic total;
  for (const auto& sv : s) total += sv;
  inst.augmented_demand.push_back(-total);
  return inst;
}

RegularizedDualValue regularized_dual_objective(const Hypergraph& h,
                                                const Dyadic& lambda,
                                                const Demand& s,
                                                const DualVector& eta) {
  if (lambda.sign() <= 0) {
    throw Error(ErrorCode::NonpositiveLambda, "lambda = " + lambda.to_string());
  }
  RegularizedDualValue out;
  out.value = dual_objective(h, eta, /*strict=*/true);
  auto residual = aggregate_dual(h, eta);
  auto degrees = h.degrees();
  mpq_class lam = lambda.to_rational();
  out.induced_x.resize(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) {
    if (degrees[v].sign() <= 0) {
      throw Error(ErrorCode::ZeroDegreeVertex, "vertex " + std::to_string(v));
    }
    mpq_class alpha = s[v].to_rational() - residual[v];
    out.value += alpha * alpha / (2 * lam * degrees[v].to_rational());
    out.induced_x[v] = alpha / (lam * degrees[v].to_rational());
  }
  return out;
}

mpq_class regularized_primal_objective(const Hypergraph& h, const Dyadic& lambda,
                                       const Demand& s, const PotentialVector& x) {
  mpq_class value = 0;
  for (const auto& e : h.edges) {
    mpq_class r = edge_range(x, e);
    value += e.weight.to_rational() * r * r;
  }
  value /= 2;
  auto degrees = h.degrees();
  mpq_class lam = lambda.to_rational();
  for (int v = 0; v < h.vertex_count; ++v) {
    value += lam * degrees[v].to_rational() * x[v] * x[v] / 2;
    value -= s[v].to_rational() * x[v];
  }
  return value;
}

RegularizedSolution solve_regularized(const Hypergraph& h, const Dyadic& lambda,
                                      const Demand& s,
                                      const SolveOptions& options) {
  RegularizedInstance inst = ground_augment(h, lambda, s);

  RegularizedSolution sol;
  sol.augmented_run = solve_poisson(inst.augmented, inst.augmented_demand, options);

  // Pin the ground coordinate to zero; the augmented objective is invariant
  // under constant shifts because the augmented demand sums to zero.
  const PotentialVector& xbar = sol.augmented_run.x;
  mpq_class ground_val = xbar[inst.ground];
  sol.x.resize(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) sol.x[v] = xbar[v] - ground_val;

  // Keep only the original-edge dual components.  Exact feasibility of the
  // augmented certificate pins each ground-edge coefficient to the vertex
  // residual s_v - (B eta)_v, which is what the regularized dual recomputes.
  sol.certificate.eta.values.assign(
      sol.augmented_run.certificate.eta.values.begin(),
      sol.augmented_run.certificate.eta.values.begin() + h.edge_count());
  sol.certificate.representative.assign(
      sol.augmented_run.certificate.representative.begin(),
      sol.augmented_run.certificate.representative.begin() + h.edge_count());
  sol.certificate.quantization = sol.augmented_run.certificate.quantization;

  sol.primal_value = regularized_primal_objective(h, lambda, s, sol.x);
  RegularizedDualValue dv =
      regularized_dual_objective(h, lambda, s, sol.certificate.to_rational());
  sol.dual_value = dv.value;
  sol.gap = sol.primal_value + sol.dual_value;
  if (sol.gap < 0) {
    throw Error(ErrorCode::InvariantViolation,
                "negative regularized gap " + rational_to_string(sol.gap));
  }
  return sol;
}

ResolventResult resolvent(const Hypergraph& h, const Dyadic& lambda,
                          const std::vector<Dyadic>& y,
                          const SolveOptions& options) {
  if (static_cast<int>(y.size()) != h.vertex_count) {
    throw Error(ErrorCode::InvariantViolation, "reference vector size mismatch");
  }
  auto degrees = h.degrees();
  Demand s(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) s[v] = lambda * degrees[v] * y[v];

  ResolventResult out;
  out.details = solve_regularized(h, lambda, s, options);
  out.x = out.details.x;
  out.gap = out.details.gap;
  return out;
}

PairwiseResponse pairwise_response(const Hypergraph& h, int u, int v,
                                   const SolveOptions& options) {
  if (u == v) {
    throw Error(ErrorCode::InvariantViolation, "pairwise response needs u != v");
  }
  if (u < 0 || v < 0 || u >= h.vertex_count || v >= h.vertex_count) {
    throw Error(ErrorCode::InvariantViolation, "vertex id out of range");
  }
  Demand s(h.vertex_count, Dyadic::zero());
  s[u] = Dyadic(1);
  s[v] = Dyadic(-1);

  PairwiseResponse out;
  out.run = solve_poisson(h, s, options);
  out.response = out.run.x[u] - out.run.x[v];
  out.gap = out.run.report.gap;
  return out;
}

}  // namespace hyperlap
