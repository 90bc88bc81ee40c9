#include "hyperlap/dual.hpp"

#include <cmath>
#include <cstdlib>

#include "hyperlap/errors.hpp"

namespace hyperlap {

namespace {

void check_shape(const Hypergraph& h, size_t edges, const char* what) {
  if (edges != h.edges.size()) {
    throw Error(ErrorCode::InvariantViolation,
                std::string(what) + ": edge count mismatch");
  }
}

}  // namespace

mpq_class dual_objective(const Hypergraph& h, const DualVector& eta, bool strict) {
  check_shape(h, eta.values.size(), "dual_objective");
  mpq_class total = 0;
  for (size_t j = 0; j < eta.values.size(); ++j) {
    mpq_class l1 = 0, sum = 0;
    for (const auto& v : eta.values[j]) {
      l1 += ::abs(v);
      sum += v;
    }
    if (strict && sum != 0) {
      throw Error(ErrorCode::NotZeroSumOnEdge,
                  "edge " + std::to_string(j) + " dual sums to " +
                      rational_to_string(sum));
    }
    total += l1 * l1 / (8 * h.edges[j].weight.to_rational());
  }
  return total;
}

double dual_objective(const Hypergraph& h, const DualVectorF& eta,
                      double strict_tol) {
  check_shape(h, eta.values.size(), "dual_objective");
  double total = 0;
  for (size_t j = 0; j < eta.values.size(); ++j) {
    double l1 = 0, sum = 0;
    for (double v : eta.values[j]) {
      l1 += std::fabs(v);
      sum += v;
    }
    if (strict_tol >= 0 && std::fabs(sum) > strict_tol) {
      throw Error(ErrorCode::NotZeroSumOnEdge,
                  "edge " + std::to_string(j) + " dual sums to " +
                      std::to_string(sum));
    }
    total += l1 * l1 / (8 * h.edges[j].weight.to_double());
  }
  return total;
}

std::vector<mpq_class> aggregate_dual(const Hypergraph& h, const DualVector& eta) {
  check_shape(h, eta.values.size(), "aggregate_dual");
  std::vector<mpq_class> b(h.vertex_count, mpq_class(0));
  for (size_t j = 0; j < eta.values.size(); ++j) {
    const auto& verts = h.edges[j].verts;
    for (size_t i = 0; i < verts.size(); ++i) b[verts[i]] += eta.values[j][i];
  }
  return b;
}

std::vector<double> aggregate_dual(const Hypergraph& h, const DualVectorF& eta) {
  check_shape(h, eta.values.size(), "aggregate_dual");
  std::vector<double> b(h.vertex_count, 0.0);
  for (size_t j = 0; j < eta.values.size(); ++j) {
    const auto& verts = h.edges[j].verts;
    for (size_t i = 0; i < verts.size(); ++i) b[verts[i]] += eta.values[j][i];
  }
  return b;
}

DualFeasibilityReport check_dual_feasible(const Hypergraph& h, const Demand& s,
                                          const DualVector& eta) {
  check_shape(h, eta.values.size(), "check_dual_feasible");
  DualFeasibilityReport rep;
  rep.max_edge_sum_residual = 0;
  for (const auto& edge_vals : eta.values) {
    mpq_class sum = 0;
    for (const auto& v : edge_vals) sum += v;
    mpq_class a = ::abs(sum);
    if (a > rep.max_edge_sum_residual) rep.max_edge_sum_residual = a;
  }
  rep.max_demand_residual = 0;
  auto b = aggregate_dual(h, eta);
  for (int v = 0; v < h.vertex_count; ++v) {
    mpq_class r = ::abs(b[v] - s[v].to_rational());
    if (r > rep.max_demand_residual) rep.max_demand_residual = r;
  }
  rep.edge_sums_zero = rep.max_edge_sum_residual == 0;
  rep.demand_met = rep.max_demand_residual == 0;
  return rep;
}

DualFeasibilityReportF check_dual_feasible(const Hypergraph& h, const Demand& s,
                                           const DualVectorF& eta,
                                           double tolerance) {
  check_shape(h, eta.values.size(), "check_dual_feasible");
  DualFeasibilityReportF rep;
  rep.tolerance = tolerance;
  for (const auto& edge_vals : eta.values) {
    double sum = 0;
    for (double v : edge_vals) sum += v;
    rep.max_edge_sum_residual = std::max(rep.max_edge_sum_residual, std::fabs(sum));
  }
  auto b = aggregate_dual(h, eta);
  for (int v = 0; v < h.vertex_count; ++v) {
    rep.max_demand_residual =
        std::max(rep.max_demand_residual, std::fabs(b[v] - s[v].to_double()));
  }
  return rep;
}

MassVector mass_of(const DualVector& eta) {
  MassVector out;
  out.mu.reserve(eta.values.size());
  for (const auto& edge_vals : eta.values) {
    mpq_class l1 = 0;
    for (const auto& v : edge_vals) l1 += ::abs(v);
    out.mu.push_back(l1 / 2);
  }
  return out;
}

MassVectorF mass_of(const DualVectorF& eta) {
  MassVectorF out;
  out.mu.reserve(eta.values.size());
  for (const auto& edge_vals : eta.values) {
    double l1 = 0;
    for (double v : edge_vals) l1 += std::fabs(v);
    out.mu.push_back(l1 / 2);
  }
  return out;
}

mpq_class quadratic_mass_objective(const Hypergraph& h, const MassVector& mu) {
  check_shape(h, mu.mu.size(), "quadratic_mass_objective");
  mpq_class total = 0;
  for (size_t j = 0; j < mu.mu.size(); ++j) {
    if (mu.mu[j] < 0) {
      throw Error(ErrorCode::InvariantViolation,
                  "negative mass on edge " + std::to_string(j));
    }
    total += mu.mu[j] * mu.mu[j] / h.edges[j].weight.to_rational();
  }
  return total / 2;
}

double quadratic_mass_objective(const Hypergraph& h, const MassVectorF& mu) {
  check_shape(h, mu.mu.size(), "quadratic_mass_objective");
  double total = 0;
  for (size_t j = 0; j < mu.mu.size(); ++j) {
    total += mu.mu[j] * mu.mu[j] / h.edges[j].weight.to_double();
  }
  return total / 2;
}

TransportSplit dual_to_split(const Hypergraph& h, const DualVector& eta) {
  check_shape(h, eta.values.size(), "dual_to_split");
  TransportSplit out;
  out.p.resize(eta.values.size());
  out.n.resize(eta.values.size());
  out.mu.resize(eta.values.size());
  for (size_t j = 0; j < eta.values.size(); ++j) {
    mpq_class pos_total = 0, sum = 0;
    out.p[j].reserve(eta.values[j].size());
    out.n[j].reserve(eta.values[j].size());
    for (const auto& v : eta.values[j]) {
      sum += v;
      mpq_class pos = v > 0 ? v : mpq_class(0);
      mpq_class neg = v < 0 ? mpq_class(-v) : mpq_class(0);
      out.p[j].push_back(pos);
      out.n[j].push_back(neg);
      pos_total += pos;
    }
    if (sum != 0) {
      throw Error(ErrorCode::NotZeroSumOnEdge,
                  "edge " + std::to_string(j) + " dual sums to " +
                      rational_to_string(sum));
    }
    out.mu[j] = pos_total;
  }
  return out;
}

DualVector split_to_dual(const Hypergraph& h, const TransportSplit& split) {
  check_shape(h, split.mu.size(), "split_to_dual");
  DualVector out;
  out.values.resize(split.mu.size());
  for (size_t j = 0; j < split.mu.size(); ++j) {
    if (split.p[j].size() != h.edges[j].verts.size() ||
        split.n[j].size() != h.edges[j].verts.size()) {
      throw Error(ErrorCode::InvariantViolation, "split size mismatch");
    }
    mpq_class psum = 0, nsum = 0;
    for (size_t i = 0; i < split.p[j].size(); ++i) {
      if (split.p[j][i] < 0 || split.n[j][i] < 0) {
        throw Error(ErrorCode::InvariantViolation,
                    "negative transport entry on edge " + std::to_string(j));
      }
      psum += split.p[j][i];
      nsum += split.n[j][i];
    }
    if (psum != split.mu[j] || nsum != split.mu[j]) {
      throw Error(ErrorCode::InvariantViolation,
                  "edge " + std::to_string(j) +
                      " transport sums do not match its mass");
    }
    out.values[j].reserve(split.p[j].size());
    for (size_t i = 0; i < split.p[j].size(); ++i) {
      out.values[j].push_back(split.p[j][i] - split.n[j][i]);
    }
  }
  return out;
}

}  // namespace hyperlap
