#pragma once

#include <vector>

#include "hyperlap/dual.hpp"
#include "hyperlap/dyadic.hpp"
#include "hyperlap/first_stage.hpp"
#include "hyperlap/hypergraph.hpp"
#include "hyperlap/mcf.hpp"

namespace hyperlap {

/// Rounded support-query data: budgets and demand on the common grid
/// rho = 2^-M, plus the rho^-1-scaled integral min-cost-flow instance with
/// uniform capacities ||s_hat||_1 + rho.
struct SupportInstance {
  Dyadic rho;
  std::vector<Dyadic> budgets;  // r_hat, nonnegative multiples of rho
  Demand rounded_demand;        // s_hat, zero-sum multiples of rho
  MCFInstance scaled;
};

struct SupportResult {
  mpq_class value;                    // L, exact after rescaling
  std::vector<mpq_class> potentials;  // per lifted node, rescaled by rho
  PotentialVector maximizer;          // restriction to V shifted into the
                                      // degree-weighted mean-zero slice
};

/// Safe upper budgets from noisy masses: mu_up = max(0, mu~) + tau, then
/// r_hat = rho * ceil((mu_up / w) / rho).  Guarantees r_hat >= mu/w whenever
/// |mu~ - mu| <= tau.
std::vector<Dyadic> round_budgets(const MassVectorF& masses, const Hypergraph& h,
                                  const Dyadic& rho, const Dyadic& tau);

/// Nearest grid multiple per vertex (ties to even); vertex 0 absorbs the
/// residue so the sum stays exactly zero.
Demand round_demand(const Demand& s, const Dyadic& rho);

SupportInstance build_support_instance(const Hypergraph& h, const Demand& s_hat,
                                       const std::vector<Dyadic>& budgets,
                                       const Dyadic& rho);

/// Exact support solve: integral min-cost flow on the lifted graph, residual
/// potential extraction (the capacity multipliers must vanish because the
/// imposed caps are slack for an acyclic optimum), and the rescale/shift
/// into the normalized slice.  Throws CapacityMultiplierNonzero if a
/// capacity multiplier survives; that signals a bug, not bad input.
SupportResult solve_support(const Hypergraph& h, const Demand& s_hat,
                            const std::vector<Dyadic>& budgets, const Dyadic& rho);

struct RecoveryOptions {
  long grid_bits = 20;  // rho = 2^-grid_bits
  /// Mass query slack; defaults to rho * 2^-10.
  Dyadic tau = Dyadic::zero();
};

/// Algorithm steps 3-5: round the first-stage masses into budgets, round the
/// demand, run the support min-cost flow, and return the exact rational
/// primal point.
PotentialVector recover_primal(const Hypergraph& h, const Demand& s,
                               const FirstStageOutput& first_stage,
                               const RecoveryOptions& options = {});

}  // namespace hyperlap
