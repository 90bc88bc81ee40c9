#include "hyperlap/recovery.hpp"

#include <algorithm>

#include "hyperlap/errors.hpp"
#include "hyperlap/lifted.hpp"

namespace hyperlap {

std::vector<Dyadic> round_budgets(const MassVectorF& masses, const Hypergraph& h,
                                  const Dyadic& rho, const Dyadic& tau) {
  if (rho.sign() <= 0 || tau.sign() <= 0) {
    throw Error(ErrorCode::InvariantViolation, "rho and tau must be positive");
  }
  std::vector<Dyadic> budgets;
  budgets.reserve(masses.mu.size());
  for (size_t j = 0; j < masses.mu.size(); ++j) {
    Dyadic measured = Dyadic::from_double(std::max(0.0, masses.mu[j]));
    Dyadic upper = measured + tau;
    mpq_class ratio = upper.to_rational() / h.edges[j].weight.to_rational();
    budgets.push_back(ceil_to_step(ratio, rho));
  }
  return budgets;
}

Demand round_demand(const Demand& s, const Dyadic& rho) {
  if (rho.sign() <= 0) {
    throw Error(ErrorCode::InvariantViolation, "rho must be positive");
  }
  if (rho.numerator() != 1) {
    throw Error(ErrorCode::InvariantViolation, "rho must be a power of two");
  }
  long grid_bits = static_cast<long>(rho.exponent());
  Demand out(s.size());
  Dyadic running;
  for (size_t v = 1; v < s.size(); ++v) {
    out[v] = round_to_grid(s[v].to_rational(), grid_bits);
    running += out[v];
  }
  out[0] = -running;  // vertex 0 absorbs the rounding residue
  return out;
}

SupportInstance build_support_instance(const Hypergraph& h, const Demand& s_hat,
                                       const std::vector<Dyadic>& budgets,
                                       const Dyadic& rho) {
  LiftedGraph g = build_lifted_graph(h);
  SupportInstance inst;
  inst.rho = rho;
  inst.budgets = budgets;
  inst.rounded_demand = s_hat;

  auto to_scaled_int = [&](const Dyadic& value, const char* what) -> mpz_class {
    mpq_class scaled = value.to_rational() / rho.to_rational();
    if (scaled.get_den() != 1) {
      throw Error(ErrorCode::InvariantViolation,
                  std::string(what) + " " + value.to_string() +
                      " is not a multiple of the grid " + rho.to_string());
    }
    return scaled.get_num();
  };

  inst.scaled.nodes = g.node_count();
  inst.scaled.demand.assign(g.node_count(), mpz_class(0));
  Dyadic l1;
  for (int v = 0; v < h.vertex_count; ++v) {
    inst.scaled.demand[v] = to_scaled_int(s_hat[v], "rounded demand");
    l1 += s_hat[v].abs();
  }
  mpz_class cap = to_scaled_int(l1, "demand norm") + 1;  // (||s_hat||_1 + rho)/rho
  for (const auto& arc : g.arcs) {
    MCFInstance::Arc a;
    a.tail = arc.tail;
    a.head = arc.head;
    a.capacity = cap;
    a.cost = arc.kind == ArcKind::Quadratic
                 ? to_scaled_int(budgets[arc.edge], "budget")
                 : mpz_class(0);
    if (a.cost < 0) {
      throw Error(ErrorCode::InvariantViolation, "negative budget");
    }
    inst.scaled.arcs.push_back(std::move(a));
  }
  return inst;
}

SupportResult solve_support(const Hypergraph& h, const Demand& s_hat,
                            const std::vector<Dyadic>& budgets, const Dyadic& rho) {
  SupportInstance inst = build_support_instance(h, s_hat, budgets, rho);
  LiftedGraph g = build_lifted_graph(h);

  MCFSolution sol = solve_mcf_exact(inst.scaled);
  if (sol.status != MCFStatus::Optimal) {
    throw Error(ErrorCode::Infeasible,
                "support flow infeasible on a validated instance");
  }
  PotentialCertificate cert = extract_residual_potentials(inst.scaled, sol);
  for (size_t a = 0; a < cert.lambda_plus.size(); ++a) {
    if (cert.lambda_plus[a] != 0) {
      throw Error(ErrorCode::CapacityMultiplierNonzero,
                  "capacity multiplier " + cert.lambda_plus[a].get_str() +
                      " on arc " + std::to_string(a) +
                      "; slack-capacity argument violated");
    }
  }

  SupportResult out;
  mpq_class rho_q = rho.to_rational();
  out.value = mpq_class(sol.objective) * rho_q * rho_q;
  out.potentials.resize(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) {
    out.potentials[u] = mpq_class(cert.potentials[u]) * rho_q;
  }
  PotentialVector restricted(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) restricted[v] = out.potentials[v];
  out.maximizer = project_to_weighted_mean_zero(h, restricted);
  return out;
}

PotentialVector recover_primal(const Hypergraph& h, const Demand& s,
                               const FirstStageOutput& first_stage,
                               const RecoveryOptions& options) {
  Dyadic rho = Dyadic::pow2(-options.grid_bits);
  Dyadic tau = options.tau;
  if (tau.is_zero()) tau = Dyadic::pow2(-(options.grid_bits + 10));
  auto budgets = round_budgets(first_stage.masses, h, rho, tau);
  Demand s_hat = round_demand(s, rho);
  SupportResult support = solve_support(h, s_hat, budgets, rho);
  return support.maximizer;
}

}  // namespace hyperlap
