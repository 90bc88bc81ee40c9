#pragma once

#include <gmpxx.h>

#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// One zero-sum vector per hyperedge, stored edge-locally: values[j][i] is
/// the coordinate of edge j at its i-th vertex (aligned with edges[j].verts).
/// Scalar is mpq_class in exact mode (certificates) or double in float mode
/// (raw first-stage output).
template <class Scalar>
struct EdgeLocalVector {
  std::vector<std::vector<Scalar>> values;

  static EdgeLocalVector zeros(const Hypergraph& h) {
    EdgeLocalVector out;
    out.values.resize(h.edges.size());
    for (size_t j = 0; j < h.edges.size(); ++j) {
      out.values[j].assign(h.edges[j].verts.size(), Scalar(0));
    }
    return out;
  }
};

using DualVector = EdgeLocalVector<mpq_class>;   // exact mode
using DualVectorF = EdgeLocalVector<double>;     // float mode

template <class Scalar>
struct MassVectorT {
  std::vector<Scalar> mu;  // one nonnegative mass per hyperedge
};
using MassVector = MassVectorT<mpq_class>;
using MassVectorF = MassVectorT<double>;

/// Sign-split transport data: p/n are the positive/negative parts of a dual
/// vector per incidence, mu the common edge mass.
struct TransportSplit {
  std::vector<std::vector<mpq_class>> p;
  std::vector<std::vector<mpq_class>> n;
  std::vector<mpq_class> mu;
};

struct DualFeasibilityReport {
  bool edge_sums_zero = false;     // every eta_e in U_e
  bool demand_met = false;         // B eta = s
  mpq_class max_edge_sum_residual; // max_e |sum_v (eta_e)_v|
  mpq_class max_demand_residual;   // max_v |(B eta)_v - s_v|
  bool feasible(const mpq_class& tol = 0) const {
    return max_edge_sum_residual <= tol && max_demand_residual <= tol;
  }
};

/// sum_e ||eta_e||_1^2 / (8 w_e).  In strict mode, throws NotZeroSumOnEdge
/// when some eta_e is not edge-locally zero-sum.
mpq_class dual_objective(const Hypergraph& h, const DualVector& eta,
                         bool strict = false);
double dual_objective(const Hypergraph& h, const DualVectorF& eta,
                      double strict_tol = -1.0);

/// Exhaustive feasibility report: exact residuals in rational mode.
DualFeasibilityReport check_dual_feasible(const Hypergraph& h, const Demand& s,
                                          const DualVector& eta);
/// Float mode: residuals as doubles, feasibility against an absolute
/// tolerance (default 1e-9).
struct DualFeasibilityReportF {
  double max_edge_sum_residual = 0;
  double max_demand_residual = 0;
  double tolerance = 1e-9;
  bool feasible() const {
    return max_edge_sum_residual <= tolerance && max_demand_residual <= tolerance;
  }
};
DualFeasibilityReportF check_dual_feasible(const Hypergraph& h, const Demand& s,
                                           const DualVectorF& eta,
                                           double tolerance = 1e-9);

/// mu_e = ||eta_e||_1 / 2.
MassVector mass_of(const DualVector& eta);
MassVectorF mass_of(const DualVectorF& eta);

/// q(mu) = (1/2) sum_e mu_e^2 / w_e.
mpq_class quadratic_mass_objective(const Hypergraph& h, const MassVector& mu);
double quadratic_mass_objective(const Hypergraph& h, const MassVectorF& mu);

/// Positive/negative-part split; round-trips exactly with split_to_dual.
TransportSplit dual_to_split(const Hypergraph& h, const DualVector& eta);
/// (eta_e)_v = p_ev - n_ev; requires the split invariants (p, n >= 0 and both
/// sides of each edge summing to mu_e).
DualVector split_to_dual(const Hypergraph& h, const TransportSplit& split);

/// (B eta)_v = sum_{e containing v} (eta_e)_v.
std::vector<mpq_class> aggregate_dual(const Hypergraph& h, const DualVector& eta);
std::vector<double> aggregate_dual(const Hypergraph& h, const DualVectorF& eta);

}  // namespace hyperlap
