#include "hyperlap/certificate.hpp"

#include <algorithm>

#include "hyperlap/errors.hpp"

namespace hyperlap {

DualVector DualCertificate::to_rational() const {
  DualVector out;
  out.values.resize(eta.values.size());
  for (size_t j = 0; j < eta.values.size(); ++j) {
    out.values[j].reserve(eta.values[j].size());
    for (const auto& v : eta.values[j]) out.values[j].push_back(v.to_rational());
  }
  return out;
}

namespace {

/// Largest power of two <= value (value > 0).
Dyadic largest_pow2_leq(const mpq_class& value) {
  if (value <= 0) {
    throw Error(ErrorCode::InvariantViolation, "quantization target must be positive");
  }
  long num_bits = static_cast<long>(mpz_sizeinbase(value.get_num().get_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(value.get_den().get_mpz_t(), 2));
  long k = num_bits - den_bits;  // 2^k <= value < 2^(k+2)
  while (Dyadic::pow2(k + 1).to_rational() <= value) ++k;
  while (Dyadic::pow2(k).to_rational() > value) --k;
  return Dyadic::pow2(k);
}

}  // namespace

DualCertificate repair_dual_certificate(const Hypergraph& h, const Demand& s,
                                        const DualVectorF& raw,
                                        const Dyadic& gamma) {
  if (gamma.sign() <= 0) {
    throw Error(ErrorCode::InvariantViolation, "repair budget gamma must be positive");
  }
  Dyadic total;
  for (const auto& sv : s) total += sv;
  if (!total.is_zero()) {
    throw Error(ErrorCode::NonDyadicDemand, "demand must be dyadic and zero-sum");
  }
  auto vi = validate_instance(h, s, /*require_connected=*/true);

  // Quantization grid: largest power of two below gamma * 2^-20 / (P+1)^2,
  // small enough that the representative fix and tree transfers cost less
  // than gamma in dual objective.
  long p = h.incidence_size();
  mpq_class target = gamma.to_rational() / (mpq_class(1048576) * (p + 1) * (p + 1));
  Dyadic theta = largest_pow2_leq(target);
  long theta_bits = static_cast<long>(theta.exponent());

  DualCertificate cert;
  cert.quantization = theta;
  cert.eta.values.resize(h.edges.size());
  cert.representative.resize(h.edges.size());

  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& verts = h.edges[j].verts;
    if (raw.values[j].size() != verts.size()) {
      throw Error(ErrorCode::InvariantViolation, "raw dual size mismatch");
    }
    int rep = static_cast<int>(
        std::min_element(verts.begin(), verts.end()) - verts.begin());
    cert.representative[j] = rep;
    auto& vals = cert.eta.values[j];
    vals.assign(verts.size(), Dyadic::zero());
    Dyadic others_sum;
    for (size_t i = 0; i < verts.size(); ++i) {
      if (static_cast<int>(i) == rep) continue;
      vals[i] = round_to_grid(mpq_class(raw.values[j][i]), theta_bits);
      others_sum += vals[i];
    }
    vals[rep] = -others_sum;  // forces the edge-local zero sum exactly
  }

  // Residual demand after the representative fix, routed along the BFS tree.
  std::vector<Dyadic> delta(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) delta[v] = s[v];
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& verts = h.edges[j].verts;
    for (size_t i = 0; i < verts.size(); ++i) delta[verts[i]] -= cert.eta.values[j][i];
  }

  // Subtree sums by one reverse-BFS pass.
  std::vector<Dyadic> subtree = delta;
  for (auto it = vi.bfs_order.rbegin(); it != vi.bfs_order.rend(); ++it) {
    int v = *it;
    if (vi.bfs_parent[v] >= 0) subtree[vi.bfs_parent[v]] += subtree[v];
  }
  for (int v : vi.bfs_order) {
    if (vi.bfs_parent[v] < 0 || subtree[v].is_zero()) continue;
    int edge = vi.bfs_parent_edge[v];
    const auto& verts = h.edges[edge].verts;
    int iv = static_cast<int>(std::find(verts.begin(), verts.end(), v) - verts.begin());
    int ip = static_cast<int>(
        std::find(verts.begin(), verts.end(), vi.bfs_parent[v]) - verts.begin());
    cert.eta.values[edge][iv] += subtree[v];
    cert.eta.values[edge][ip] -= subtree[v];
    cert.transfers.push_back({v, vi.bfs_parent[v], edge, subtree[v]});
  }

  // The repaired vector must satisfy the demand equation exactly.
  std::vector<Dyadic> check(h.vertex_count);
  for (int v = 0; v < h.vertex_count; ++v) check[v] = s[v];
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& verts = h.edges[j].verts;
    for (size_t i = 0; i < verts.size(); ++i) check[verts[i]] -= cert.eta.values[j][i];
  }
  for (int v = 0; v < h.vertex_count; ++v) {
    if (!check[v].is_zero()) {
      throw Error(ErrorCode::InvariantViolation,
                  "certificate repair left residual at vertex " + std::to_string(v));
    }
  }
  return cert;
}

GapReport certify_pair(const Hypergraph& h, const Demand& s,
                       const PotentialVector& x, const DualCertificate& cert) {
  GapReport rep;
  DualVector eta = cert.to_rational();
  auto feas = check_dual_feasible(h, s, eta);
  rep.eta_edge_sums_zero = feas.edge_sums_zero;
  rep.demand_met_exactly = feas.demand_met;
  rep.x_normalized = weighted_mean_numerator(h, x) == 0;
  if (!rep.eta_edge_sums_zero || !rep.demand_met_exactly) {
    throw Error(ErrorCode::VerificationFailure,
                "dual certificate is not exactly feasible");
  }
  if (!rep.x_normalized) {
    throw Error(ErrorCode::VerificationFailure,
                "primal point is not normalized");
  }
  PrimalValue pv = primal_objective(h, s, x);
  rep.energy = pv.energy;
  rep.primal_value = pv.objective;
  rep.dual_value = dual_objective(h, eta, /*strict=*/true);
  rep.gap = rep.primal_value + rep.dual_value;
  if (rep.gap < 0) {
    throw Error(ErrorCode::InvariantViolation,
                "negative certified gap " + rational_to_string(rep.gap));
  }
  return rep;
}

mpq_class bregman_gap(const Hypergraph& h, const Demand& s,
                      const PotentialVector& x, const PotentialVector& x_star,
                      const std::vector<mpq_class>& xi_star) {
  // Compatibility: s - xi* must be a constant multiple of the degree vector.
  auto d = h.degrees();
  bool have_c = false;
  mpq_class c;
  for (int v = 0; v < h.vertex_count; ++v) {
    mpq_class dv = d[v].to_rational();
    if (dv == 0) continue;
    mpq_class cv = (s[v].to_rational() - xi_star[v]) / dv;
    if (!have_c) {
      c = cv;
      have_c = true;
    } else if (cv != c) {
      throw Error(ErrorCode::InvariantViolation,
                  "subgradient is not compatible: s - xi* is not proportional "
                  "to the degree vector");
    }
  }

  PrimalValue px = primal_objective(h, s, x);
  PrimalValue pstar = primal_objective(h, s, x_star);
  mpq_class inner = 0;
  for (int v = 0; v < h.vertex_count; ++v) inner += xi_star[v] * (x[v] - x_star[v]);
  mpq_class divergence = px.energy - pstar.energy - inner;

  mpq_class objective_diff = px.objective - pstar.objective;
  if (weighted_mean_numerator(h, x) == 0 && weighted_mean_numerator(h, x_star) == 0 &&
      divergence != objective_diff) {
    throw Error(ErrorCode::InvariantViolation,
                "Bregman divergence does not match the objective difference");
  }
  return divergence;
}

}  // namespace hyperlap
