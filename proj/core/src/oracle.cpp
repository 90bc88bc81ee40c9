#include "hyperlap/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlap/errors.hpp"
#include "hyperlap/lifted.hpp"

namespace hyperlap {

namespace {

double primal_value(const Hypergraph& h, const std::vector<double>& s,
                    const std::vector<double>& x) {
  double energy = 0;
  for (const auto& e : h.edges) {
    double r = edge_range(x, e);
    energy += e.weight.to_double() * r * r;
  }
  energy *= 0.5;
  double lin = 0;
  for (size_t v = 0; v < x.size(); ++v) lin += s[v] * x[v];
  return energy - lin;
}

/// Subgradient of the energy plus the linear term: for each edge, weight
/// times range on the (lowest-index) argmax/argmin pair.
void add_energy_subgradient(const Hypergraph& h, const std::vector<double>& x,
                            std::vector<double>* g) {
  for (const auto& e : h.edges) {
    int arg_max = e.verts[0], arg_min = e.verts[0];
    for (int v : e.verts) {
      if (x[v] > x[arg_max]) arg_max = v;
      if (x[v] < x[arg_min]) arg_min = v;
    }
    double r = x[arg_max] - x[arg_min];
    double coeff = e.weight.to_double() * r;
    (*g)[arg_max] += coeff;
    (*g)[arg_min] -= coeff;
  }
}

void project_mean_zero(const std::vector<double>& degree, double degree_sum,
                       std::vector<double>* x) {
  double shift = 0;
  for (size_t v = 0; v < x->size(); ++v) shift += degree[v] * (*x)[v];
  shift /= degree_sum;
  for (auto& xv : *x) xv -= shift;
}

}  // namespace

SubgradientResult oracle_primal_poisson(const Hypergraph& h, const Demand& s,
                                        long iterations, double step) {
  int n = h.vertex_count;
  std::vector<double> sd(n), degree(n);
  for (int v = 0; v < n; ++v) sd[v] = s[v].to_double();
  auto deg = h.degrees();
  double degree_sum = 0;
  for (int v = 0; v < n; ++v) {
    degree[v] = deg[v].to_double();
    degree_sum += degree[v];
  }

  std::vector<double> x(n, 0.0), average(n, 0.0), g(n);
  SubgradientResult out;
  out.x = x;
  out.value = primal_value(h, sd, x);
  double best_at_mark = out.value;
  long mark = iterations - iterations / 10;

  for (long k = 1; k <= iterations; ++k) {
    std::fill(g.begin(), g.end(), 0.0);
    add_energy_subgradient(h, x, &g);
    for (int v = 0; v < n; ++v) g[v] -= sd[v];
    double alpha = step / std::sqrt(static_cast<double>(k));
    for (int v = 0; v < n; ++v) x[v] -= alpha * g[v];
    project_mean_zero(degree, degree_sum, &x);

    for (int v = 0; v < n; ++v) {
      average[v] += (x[v] - average[v]) / static_cast<double>(k);
    }

    double val = primal_value(h, sd, x);
    if (val < out.value) {
      out.value = val;
      out.x = x;
    }
    if (k % 256 == 0 || k == iterations) {
      double avg_val = primal_value(h, sd, average);
      if (avg_val < out.value) {
        out.value = avg_val;
        out.x = average;
      }
    }
    if (k == mark) best_at_mark = out.value;
  }
  out.stabilized = best_at_mark - out.value < 1e-6;
  return out;
}

LPResult<mpq_class> oracle_dense_simplex(const StandardLP<mpq_class>& lp) {
  return solve_standard_lp(lp);
}

LPResult<mpq_class> oracle_support_lp(const Hypergraph& h,
                                      const std::vector<mpq_class>& s,
                                      const std::vector<mpq_class>& budgets) {
  // max <s, x> over the normalized slice with per-edge caps on the range,
  // written with explicit top/bottom variables:
  //   x_v - u_e <= 0,  l_e - x_v <= 0  (v in e),  u_e - l_e <= r_e,
  //   sum_v d_v x_v = 0.
  int n = h.vertex_count;
  int ecount = h.edge_count();
  long p = h.incidence_size();
  int free_vars = n + 2 * ecount;
  int slack_count = static_cast<int>(2 * p) + ecount;
  int cols = 2 * free_vars + slack_count;
  int rows = static_cast<int>(2 * p) + ecount + 1;

  StandardLP<mpq_class> lp;
  lp.A.assign(rows, std::vector<mpq_class>(cols, mpq_class(0)));
  lp.b.assign(rows, mpq_class(0));
  lp.c.assign(cols, mpq_class(0));

  auto xp = [&](int v) { return v; };
  auto xm = [&](int v) { return free_vars + v; };
  auto up = [&](int e) { return n + e; };
  auto um = [&](int e) { return free_vars + n + e; };
  auto lp_idx = [&](int e) { return n + ecount + e; };
  auto lm = [&](int e) { return free_vars + n + ecount + e; };

  int row = 0, slack = 2 * free_vars;
  for (int j = 0; j < ecount; ++j) {
    for (int v : h.edges[j].verts) {
      lp.A[row][xp(v)] = 1;
      lp.A[row][xm(v)] = -1;
      lp.A[row][up(j)] = -1;
      lp.A[row][um(j)] = 1;
      lp.A[row][slack++] = 1;
      row++;
      lp.A[row][lp_idx(j)] = 1;
      lp.A[row][lm(j)] = -1;
      lp.A[row][xp(v)] = -1;
      lp.A[row][xm(v)] = 1;
      lp.A[row][slack++] = 1;
      row++;
    }
  }
  for (int j = 0; j < ecount; ++j) {
    lp.A[row][up(j)] = 1;
    lp.A[row][um(j)] = -1;
    lp.A[row][lp_idx(j)] = -1;
    lp.A[row][lm(j)] = 1;
    lp.A[row][slack++] = 1;
    lp.b[row] = budgets[j];
    row++;
  }
  auto d = h.degrees();
  for (int v = 0; v < n; ++v) {
    lp.A[row][xp(v)] = d[v].to_rational();
    lp.A[row][xm(v)] = -d[v].to_rational();
  }
  row++;

  for (int v = 0; v < n; ++v) {
    lp.c[xp(v)] = -s[v];
    lp.c[xm(v)] = s[v];
  }

  LPResult<mpq_class> raw = solve_standard_lp(lp);
  LPResult<mpq_class> out;
  out.status = raw.status;
  if (raw.status == LPStatus::Optimal) {
    out.value = -raw.value;  // back to the maximization reading
    out.x.resize(n);
    for (int v = 0; v < n; ++v) out.x[v] = raw.x[xp(v)] - raw.x[xm(v)];
  }
  return out;
}

namespace {

struct FlowPolytopeLP {
  StandardLP<double> lp;  // min <cost, (f, slack)> over Af=b, f+slack=U
  int arcs = 0;
};

FlowPolytopeLP make_flow_lmo(const LiftedGraph& g, const std::vector<double>& b_up,
                             double cap) {
  FlowPolytopeLP out;
  out.arcs = g.arc_count();
  int m = out.arcs;
  int rows = g.node_count() + m;
  out.lp.A.assign(rows, std::vector<double>(2 * m, 0.0));
  out.lp.b.assign(rows, 0.0);
  out.lp.c.assign(2 * m, 0.0);
  for (int a = 0; a < m; ++a) {
    out.lp.A[g.arcs[a].head][a] += 1.0;
    out.lp.A[g.arcs[a].tail][a] -= 1.0;
  }
  for (int u = 0; u < g.node_count(); ++u) out.lp.b[u] = b_up[u];
  for (int a = 0; a < m; ++a) {
    out.lp.A[g.node_count() + a][a] = 1.0;
    out.lp.A[g.node_count() + a][m + a] = 1.0;
    out.lp.b[g.node_count() + a] = cap;
  }
  return out;
}

}  // namespace

DualOptimumResult oracle_dual_optimum(const Hypergraph& h, const Demand& s,
                                      double tol) {
  LiftedGraph g = build_lifted_graph(h);
  auto b_up = lifted_demand(g, s);
  int m = g.arc_count();
  std::vector<double> inv_w(m, 0.0);
  for (int j = 0; j < g.edge_count; ++j) {
    inv_w[g.quadratic_arc(j)] = 1.0 / h.edges[j].weight.to_double();
  }
  double cap = demand_l1_norm(s).to_double() + 1.0;  // slack above the U0 bound
  FlowPolytopeLP lmo = make_flow_lmo(g, b_up, cap);

  auto objective = [&](const std::vector<double>& f) {
    double val = 0;
    for (int a = 0; a < m; ++a) val += 0.5 * inv_w[a] * f[a] * f[a];
    return val;
  };
  auto lmo_solve = [&](const std::vector<double>& grad) {
    for (int a = 0; a < m; ++a) lmo.lp.c[a] = grad[a];
    LPResult<double> r = solve_standard_lp(lmo.lp);
    if (r.status != LPStatus::Optimal) {
      throw Error(ErrorCode::Infeasible, "lifted flow polytope LMO failed");
    }
    return std::vector<double>(r.x.begin(), r.x.begin() + m);
  };

  // Away-step Frank-Wolfe over the vertex hull; the quadratic objective has
  // a closed-form exact line search.
  std::vector<std::vector<double>> vertices;
  std::vector<double> weights_v;
  std::vector<double> grad(m, 0.0);
  std::vector<double> f = lmo_solve(grad);  // any vertex
  vertices.push_back(f);
  weights_v.push_back(1.0);

  DualOptimumResult out;
  double gap = 0;
  int max_iters = 50000;
  int it = 0;
  for (; it < max_iters; ++it) {
    for (int a = 0; a < m; ++a) grad[a] = inv_w[a] * f[a];
    std::vector<double> v_fw = lmo_solve(grad);
    double gap_fw = 0;
    for (int a = 0; a < m; ++a) gap_fw += grad[a] * (f[a] - v_fw[a]);
    gap = gap_fw;
    if (gap_fw <= tol) break;

    int aw = 0;
    double aw_score = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < vertices.size(); ++i) {
      double sc = 0;
      for (int a = 0; a < m; ++a) sc += grad[a] * vertices[i][a];
      if (sc > aw_score) {
        aw_score = sc;
        aw = static_cast<int>(i);
      }
    }
    double gap_aw = 0;
    for (int a = 0; a < m; ++a) gap_aw += grad[a] * (vertices[aw][a] - f[a]);

    std::vector<double> dir(m);
    double gamma_max;
    bool fw_step = gap_fw >= gap_aw;
    if (fw_step) {
      for (int a = 0; a < m; ++a) dir[a] = v_fw[a] - f[a];
      gamma_max = 1.0;
    } else {
      for (int a = 0; a < m; ++a) dir[a] = f[a] - vertices[aw][a];
      gamma_max = weights_v[aw] / (1.0 - weights_v[aw] + 1e-300);
    }
    double num = 0, den = 0;
    for (int a = 0; a < m; ++a) {
      num -= grad[a] * dir[a];
      den += inv_w[a] * dir[a] * dir[a];
    }
    double gamma = den > 0 ? std::clamp(num / den, 0.0, gamma_max) : gamma_max;
    if (gamma <= 0) break;
    for (int a = 0; a < m; ++a) f[a] += gamma * dir[a];

    if (fw_step) {
      for (auto& wv : weights_v) wv *= (1.0 - gamma);
      int found = -1;
      for (size_t i = 0; i < vertices.size(); ++i) {
        double diff = 0;
        for (int a = 0; a < m; ++a) diff = std::max(diff, std::fabs(vertices[i][a] - v_fw[a]));
        if (diff < 1e-12) {
          found = static_cast<int>(i);
          break;
        }
      }
      if (found >= 0) {
        weights_v[found] += gamma;
      } else {
        vertices.push_back(v_fw);
        weights_v.push_back(gamma);
      }
    } else {
      for (auto& wv : weights_v) wv *= (1.0 + gamma);
      weights_v[aw] -= gamma;
    }
    for (size_t i = 0; i < weights_v.size();) {
      if (weights_v[i] <= 1e-14) {
        weights_v.erase(weights_v.begin() + i);
        vertices.erase(vertices.begin() + i);
      } else {
        ++i;
      }
    }
  }

  out.value = objective(f);
  out.lower = out.value - std::max(gap, 0.0) - 1e-6;
  out.iterations = it;
  return out;
}

std::vector<mpq_class> oracle_solve_linear(std::vector<std::vector<mpq_class>> a,
                                           std::vector<mpq_class> rhs) {
  int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      throw Error(ErrorCode::InvariantViolation, "singular linear system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class factor = a[r][col] / a[col][col];
      for (int cc = col; cc < n; ++cc) a[r][cc] -= factor * a[col][cc];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<mpq_class> x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return x;
}

namespace {

std::vector<std::vector<mpq_class>> graph_laplacian(const Hypergraph& h) {
  if (!h.is_two_uniform()) {
    throw Error(ErrorCode::InvariantViolation,
                "graph Laplacian requires a 2-uniform instance");
  }
  int n = h.vertex_count;
  std::vector<std::vector<mpq_class>> l(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (const auto& e : h.edges) {
    int u = e.verts[0], v = e.verts[1];
    mpq_class w = e.weight.to_rational();
    l[u][u] += w;
    l[v][v] += w;
    l[u][v] -= w;
    l[v][u] -= w;
  }
  return l;
}

}  // namespace

PotentialVector oracle_exact_laplacian_solve(const Hypergraph& h, const Demand& s) {
  int n = h.vertex_count;
  auto l = graph_laplacian(h);
  auto d = h.degrees();
  // Replace the first Laplacian row (redundant for connected graphs) with
  // the normalization row sum_v d_v x_v = 0.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> rhs(n);
  for (int v = 0; v < n; ++v) a[0][v] = d[v].to_rational();
  rhs[0] = 0;
  for (int r = 1; r < n; ++r) {
    a[r] = l[r];
    rhs[r] = s[r].to_rational();
  }
  return oracle_solve_linear(std::move(a), std::move(rhs));
}

mpq_class oracle_effective_resistance(const Hypergraph& h, int u, int v) {
  int n = h.vertex_count;
  if (u == v) {
    throw Error(ErrorCode::InvariantViolation, "effective resistance needs u != v");
  }
  auto l = graph_laplacian(h);
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n, mpq_class(0)));
  std::vector<mpq_class> rhs(n);
  for (int c = 0; c < n; ++c) a[0][c] = 1;  // pin the mean, any slice works
  rhs[0] = 0;
  for (int r = 1; r < n; ++r) {
    a[r] = l[r];
    rhs[r] = 0;
    if (r == u) rhs[r] = 1;
    if (r == v) rhs[r] = -1;
  }
  // The dropped row-0 equation holds automatically because the injected
  // current is balanced.
  auto z = oracle_solve_linear(std::move(a), std::move(rhs));
  return z[u] - z[v];
}

std::vector<double> oracle_regularized_minimizer(const Hypergraph& h, double lambda,
                                                 const Demand& s, long iterations) {
  int n = h.vertex_count;
  std::vector<double> sd(n), degree(n);
  for (int v = 0; v < n; ++v) sd[v] = s[v].to_double();
  auto deg = h.degrees();
  for (int v = 0; v < n; ++v) {
    degree[v] = deg[v].to_double();
    if (degree[v] <= 0) {
      throw Error(ErrorCode::ZeroDegreeVertex, "vertex " + std::to_string(v));
    }
  }
  auto reg_value = [&](const std::vector<double>& x) {
    double val = primal_value(h, sd, x);
    for (int v = 0; v < n; ++v) val += 0.5 * lambda * degree[v] * x[v] * x[v];
    return val;
  };

  // Strongly convex projected subgradient in the degree-weighted norm:
  // preconditioned step with weight 2/(lambda (k+1)), weighted averaging.
  std::vector<double> x(n, 0.0), average(n, 0.0), g(n);
  std::vector<double> best = x;
  double best_val = reg_value(x);
  double weight_total = 0;
  long check_every = std::max<long>(1, iterations / 64);
  for (long k = 1; k <= iterations; ++k) {
    std::fill(g.begin(), g.end(), 0.0);
    add_energy_subgradient(h, x, &g);
    for (int v = 0; v < n; ++v) g[v] += lambda * degree[v] * x[v] - sd[v];
    double alpha = 2.0 / (lambda * static_cast<double>(k + 1));
    for (int v = 0; v < n; ++v) x[v] -= alpha * g[v] / degree[v];

    double wk = static_cast<double>(k);
    weight_total += wk;
    for (int v = 0; v < n; ++v) average[v] += (x[v] - average[v]) * (wk / weight_total);

    if (k % check_every == 0 || k == iterations) {
      double val = reg_value(average);
      if (val < best_val) {
        best_val = val;
        best = average;
      }
      val = reg_value(x);
      if (val < best_val) {
        best_val = val;
        best = x;
      }
    }
  }
  return best;
}

}  // namespace hyperlap
