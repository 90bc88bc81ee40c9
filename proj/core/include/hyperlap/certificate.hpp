#pragma once

#include <vector>

#include "hyperlap/dual.hpp"
#include "hyperlap/dyadic.hpp"
#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// Edge-local dyadic dual vector with the repair metadata that produced it:
/// per-edge representative indices and the spanning-tree transfers.
struct DualCertificate {
  EdgeLocalVector<Dyadic> eta;
  std::vector<int> representative;  // index inside each edge's vertex list
  struct Transfer {
    int vertex = -1;
    int parent = -1;
    int edge = -1;
    Dyadic amount;
  };
  std::vector<Transfer> transfers;
  Dyadic quantization;  // grid used to materialize the raw coordinates

  DualVector to_rational() const;
};

struct GapReport {
  mpq_class primal_value;  // P(x)
  mpq_class dual_value;    // D(eta_hat)
  mpq_class gap;           // primal + dual, >= 0 by weak duality
  mpq_class energy;        // (1/2) sum w_e R_e(x)^2
  bool eta_edge_sums_zero = false;
  bool demand_met_exactly = false;
  bool x_normalized = false;
};

/// Quantize a float-mode dual onto the dyadic grid implied by gamma, force
/// each edge-local zero sum through a representative coordinate, and route
/// the leftover demand mismatch along a BFS spanning tree of the
/// vertex-overlap graph.  The result satisfies B eta_hat = s exactly; the
/// objective increase over the quantized input is bounded by gamma when the
/// raw residuals are small.
DualCertificate repair_dual_certificate(const Hypergraph& h, const Demand& s,
                                        const DualVectorF& raw,
                                        const Dyadic& gamma);

/// Exact primal/dual evaluation and the certified additive gap.  Throws
/// InvariantViolation if the exactness attestations fail or the gap comes
/// out negative (both impossible for honest inputs).
GapReport certify_pair(const Hypergraph& h, const Demand& s,
                       const PotentialVector& x, const DualCertificate& cert);

/// Energy Bregman divergence E(x) - E(x*) - <xi*, x - x*> for a compatible
/// subgradient xi* (s - xi* must be a multiple of the degree vector).
/// Asserts the identity with the primal objective difference.
mpq_class bregman_gap(const Hypergraph& h, const Demand& s,
                      const PotentialVector& x, const PotentialVector& x_star,
                      const std::vector<mpq_class>& xi_star);

}  // namespace hyperlap
