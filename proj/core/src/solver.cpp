#include "hyperlap/solver.hpp"

#include "hyperlap/errors.hpp"

namespace hyperlap {

PoissonSolution solve_poisson(const Hypergraph& h, const Demand& s,
                              const SolveOptions& options) {
  validate_instance(h, s, /*require_connected=*/true);

  FirstStageOptions fs = options.first_stage;
  fs.epsilon = options.epsilon;

  PoissonSolution sol;
  sol.first_stage = solve_first_stage(h, s, fs);

  Dyadic rho = Dyadic::pow2(-options.grid_bits);
  Dyadic tau = options.tau;
  if (tau.is_zero()) tau = Dyadic::pow2(-(options.grid_bits + 10));
  Dyadic gamma = options.gamma;
  if (gamma.is_zero()) gamma = Dyadic::pow2(-30);

  auto budgets = round_budgets(sol.first_stage.masses, h, rho, tau);
  Demand s_hat = round_demand(s, rho);
  SupportResult support = solve_support(h, s_hat, budgets, rho);
  sol.support_value = support.value;
  sol.x = support.maximizer;

  sol.certificate =
      repair_dual_certificate(h, s, sol.first_stage.induced_dual, gamma);
  sol.report = certify_pair(h, s, sol.x, sol.certificate);
  return sol;
}

}  // namespace hyperlap
