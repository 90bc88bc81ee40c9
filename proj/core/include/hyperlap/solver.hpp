#pragma once

#include "hyperlap/certificate.hpp"
#include "hyperlap/first_stage.hpp"
#include "hyperlap/recovery.hpp"

namespace hyperlap {

struct SolveOptions {
  double epsilon = 1e-9;        // first-stage additive gap target
  long grid_bits = 20;          // rho = 2^-grid_bits
  Dyadic gamma;                 // repair budget, defaults to 2^-30
  Dyadic tau;                   // mass query slack, defaults to rho * 2^-10
  FirstStageOptions first_stage;

  SolveOptions() { first_stage.epsilon = epsilon; }
};

struct PoissonSolution {
  PotentialVector x;            // exact rational, normalized
  DualCertificate certificate;  // exact dyadic, B eta = s
  GapReport report;
  FirstStageOutput first_stage;
  mpq_class support_value;      // L from the rounded support query
};

/// End-to-end certified solve: first-stage barrier method, mass rounding,
/// exact support min-cost flow, potential extraction, and dual repair.
PoissonSolution solve_poisson(const Hypergraph& h, const Demand& s,
                              const SolveOptions& options = {});

}  // namespace hyperlap
