#include <doctest.h>

#include <random>

#include "hyperlap/oracle.hpp"
#include "hyperlap/recovery.hpp"
#include "test_util.hpp"

using namespace hyperlap;

namespace {

Hypergraph triangle() {
  Hypergraph h;
  h.vertex_count = 3;
  h.edges.push_back({{0, 1, 2}, Dyadic(1)});
  return h;
}

Hypergraph pair_edge() {
  Hypergraph h;
  h.vertex_count = 2;
  h.edges.push_back({{0, 1}, Dyadic(1)});
  return h;
}

Hypergraph path3() {
  Hypergraph h;
  h.vertex_count = 3;
  h.edges.push_back({{0, 1}, Dyadic(1)});
  h.edges.push_back({{1, 2}, Dyadic(1)});
  return h;
}

}  // namespace

TEST_CASE("budget rounding: ceiling onto the grid plus the safety slack") {
  Hypergraph h = pair_edge();
  Dyadic rho = Dyadic::pow2(-10);
  Dyadic tau = Dyadic::pow2(-20);

  MassVectorF exact_one{{1.0}};
  auto r1 = round_budgets(exact_one, h, rho, tau);
  CHECK(r1[0] == Dyadic(1) + rho);  // ceil(1 + 2^-20 up to the grid)

  MassVectorF zero{{0.0}};
  auto r0 = round_budgets(zero, h, rho, tau);
  CHECK(r0[0] == rho);  // clamp + tau, then one grid step
  CHECK(r0[0].to_rational() >= tau.to_rational());

  MassVectorF noise{{-1e-12}};
  auto rn = round_budgets(noise, h, rho, tau);
  CHECK(rn[0] == r0[0]);  // negative noise clamps to zero first
}

TEST_CASE("demand rounding: grid multiples, zero-sum via vertex 0") {
  Dyadic rho = Dyadic::pow2(-10);
  Demand on_grid = {Dyadic(1), Dyadic(-1)};
  auto s1 = round_demand(on_grid, rho);
  CHECK(s1[0] == Dyadic(1));
  CHECK(s1[1] == Dyadic(-1));

  Demand fine = {Dyadic(3, 15), Dyadic(-3, 15)};  // 3 * 2^-15 is off-grid
  auto s2 = round_demand(fine, rho);
  CHECK(s2[0].is_zero());
  CHECK(s2[1].is_zero());

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Hypergraph h = testutil::random_connected_hypergraph(rng);
    Demand s = testutil::random_zero_sum_demand(rng, h.vertex_count);
    auto rounded = round_demand(s, rho);
    Dyadic total;
    mpq_class l1_err = 0;
    for (size_t v = 0; v < rounded.size(); ++v) {
      total += rounded[v];
      l1_err += abs(rounded[v].to_rational() - s[v].to_rational());
    }
    CHECK(total.is_zero());
    CHECK(l1_err <= mpq_class(h.vertex_count) * rho.to_rational());
  }
}

TEST_CASE("support solve closed forms") {
  Dyadic rho = Dyadic::pow2(-10);
  {
    Hypergraph h = pair_edge();
    Demand s_hat = {Dyadic(1), Dyadic(-1)};
    auto res = solve_support(h, s_hat, {Dyadic(1)}, rho);
    CHECK(res.value == 1);
    CHECK(res.maximizer[0] == mpq_class(1, 2));
    CHECK(res.maximizer[1] == mpq_class(-1, 2));
  }
  {
    Hypergraph h = triangle();
    Demand s_hat = {Dyadic(1), Dyadic(0), Dyadic(-1)};
    auto res = solve_support(h, s_hat, {Dyadic(1)}, rho);
    CHECK(res.value == 1);
    CHECK(res.maximizer[0] == mpq_class(1, 2));
    CHECK(res.maximizer[1] == 0);
    CHECK(res.maximizer[2] == mpq_class(-1, 2));
  }
  {
    // Zero budgets force a constant maximizer and zero value.
    Hypergraph h = triangle();
    Demand s_hat = {Dyadic(1), Dyadic(0), Dyadic(-1)};
    auto res = solve_support(h, s_hat, {Dyadic(0)}, rho);
    CHECK(res.value == 0);
    for (const auto& xv : res.maximizer) CHECK(xv == 0);
  }
}

TEST_CASE("support solve agrees exactly with the dense-simplex LP") {
  std::mt19937_64 rng(47);
  Dyadic rho = Dyadic::pow2(-6);
  for (int trial = 0; trial < 15; ++trial) {
    Hypergraph h = testutil::random_connected_hypergraph(rng, 7, 5);
    Demand s = testutil::random_zero_sum_demand(rng, h.vertex_count);
    Demand s_hat = round_demand(s, rho);
    std::vector<Dyadic> budgets;
    std::uniform_int_distribution<int> bd(0, 48);
    for (int j = 0; j < h.edge_count(); ++j) {
      budgets.push_back(Dyadic(bd(rng), 6));
    }
    auto mcf_side = solve_support(h, s_hat, budgets, rho);

    std::vector<mpq_class> sq, bq;
    for (const auto& v : s_hat) sq.push_back(v.to_rational());
    for (const auto& v : budgets) bq.push_back(v.to_rational());
    auto lp_side = oracle_support_lp(h, sq, bq);
    REQUIRE(lp_side.status == LPStatus::Optimal);
    CHECK(mcf_side.value == lp_side.value);

    // Exact feasibility of the returned maximizer.
    for (int j = 0; j < h.edge_count(); ++j) {
      CHECK(edge_range(mcf_side.maximizer, h.edges[j]) <= bq[j]);
    }
    mpq_class inner = 0;
    for (int v = 0; v < h.vertex_count; ++v) {
      inner += sq[v] * mcf_side.maximizer[v];
    }
    CHECK(inner == mcf_side.value);
    CHECK(weighted_mean_numerator(h, mcf_side.maximizer) == 0);
  }
}

TEST_CASE("end-to-end primal recovery on the closed forms") {
  FirstStageOptions fs;
  fs.epsilon = 1e-8;
  RecoveryOptions rec;
  rec.grid_bits = 20;
  {
    Hypergraph h = triangle();
    Demand s = {Dyadic(1), Dyadic(0), Dyadic(-1)};
    auto out = solve_first_stage(h, s, fs);
    auto x = recover_primal(h, s, out, rec);
    auto pv = primal_objective(h, s, x);
    CHECK(pv.objective.get_d() <= -0.5 + 1e-4);
    CHECK(pv.objective.get_d() >= -0.5 - 1e-12);  // never below the optimum
    CHECK(x[0].get_d() == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(x[2].get_d() == doctest::Approx(-0.5).epsilon(1e-3));
  }
  {
    Hypergraph h = path3();
    Demand s = {Dyadic(1), Dyadic(0), Dyadic(-1)};
    auto out = solve_first_stage(h, s, fs);
    auto x = recover_primal(h, s, out, rec);
    auto pv = primal_objective(h, s, x);
    CHECK(pv.objective.get_d() <= -1.0 + 1e-4);
    CHECK(x[0].get_d() == doctest::Approx(1.0).epsilon(1e-3));
  }
  {
    Hypergraph h = triangle();
    Demand s(3, Dyadic(0));
    auto out = solve_first_stage(h, s, fs);
    auto x = recover_primal(h, s, out, rec);
    for (const auto& xv : x) CHECK(xv == 0);
  }
}

TEST_CASE("support gap shrinks with the tolerances") {
  Hypergraph h = path3();
  Demand s = {Dyadic(1), Dyadic(0), Dyadic(-1)};
  auto gap_for = [&](double eps, long bits) {
    FirstStageOptions fs;
    fs.epsilon = eps;
    auto out = solve_first_stage(h, s, fs);
    Dyadic rho = Dyadic::pow2(-bits);
    Dyadic tau = Dyadic::pow2(-(bits + 10));
    auto budgets = round_budgets(out.masses, h, rho, tau);
    Demand s_hat = round_demand(s, rho);
    auto support = solve_support(h, s_hat, budgets, rho);
    // 2 q(w r_hat) - L: nonnegative up to rounding slack, shrinking to zero.
    mpq_class q2 = 0;
    for (int j = 0; j < h.edge_count(); ++j) {
      mpq_class r = budgets[j].to_rational();
      q2 += h.edges[j].weight.to_rational() * r * r;
    }
    return q2 - support.value;
  };
  mpq_class loose = gap_for(1e-4, 8);
  mpq_class tight = gap_for(1e-9, 24);
  CHECK(loose >= mpq_class(-1, 1000));
  CHECK(tight >= mpq_class(-1, 1 << 20));
  CHECK(tight < loose);
  CHECK(tight.get_d() < 1e-5);
}
