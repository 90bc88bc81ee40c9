#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperlap/oracle.hpp"
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

Demand dip3() { return {Dyadic(1), Dyadic(0), Dyadic(-1)}; }

}  // namespace

TEST_CASE("subgradient oracle hits the closed forms") {
  auto res = oracle_primal_poisson(triangle(), dip3());
  CHECK(res.value == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(res.stabilized);

  auto res2 = oracle_primal_poisson(path3(), dip3());
  CHECK(res2.value == doctest::Approx(-1.0).epsilon(1e-4));

  Demand zero(3, Dyadic(0));
  auto res0 = oracle_primal_poisson(triangle(), zero, 1000, 1.0);
  CHECK(res0.value == doctest::Approx(0.0));
  for (double xv : res0.x) CHECK(xv == 0.0);
}

TEST_CASE("subgradient oracle matches the exact solve on 2-uniform instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    Hypergraph h = testutil::random_connected_graph(rng, 8, 4);
    Demand s = testutil::random_zero_sum_demand(rng, h.vertex_count);
    auto exact = oracle_exact_laplacian_solve(h, s);
    auto pv = primal_objective(h, s, exact);
    auto approx = oracle_primal_poisson(h, s, 200000, 1.0);
    CHECK(approx.value == doctest::Approx(pv.objective.get_d()).epsilon(2e-4));
    CHECK(approx.value >= pv.objective.get_d() - 1e-9);  // feasible iterate
  }
}

TEST_CASE("dual optimum via away-step Frank-Wolfe") {
  auto tri = oracle_dual_optimum(triangle(), dip3());
  CHECK(tri.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(tri.lower <= 0.5);
  CHECK(tri.value >= 0.5 - 1e-9);

  auto path = oracle_dual_optimum(path3(), dip3());
  CHECK(path.value == doctest::Approx(1.0).epsilon(1e-6));

  Demand zero(3, Dyadic(0));
  auto z = oracle_dual_optimum(triangle(), zero);
  CHECK(z.value == doctest::Approx(0.0));
}

TEST_CASE("strong duality between the two oracles") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 8; ++trial) {
    Hypergraph h = testutil::random_connected_hypergraph(rng, 8, 5);
    Demand s = testutil::random_zero_sum_demand(rng, h.vertex_count);
    auto primal = oracle_primal_poisson(h, s, 150000, 1.0);
    auto dual = oracle_dual_optimum(h, s);
    CHECK(std::fabs(primal.value + dual.value) < 2e-4);
  }
}

TEST_CASE("support LP closed form") {
  Hypergraph h = pair_edge();
  std::vector<mpq_class> s = {mpq_class(1), mpq_class(-1)};
  std::vector<mpq_class> budgets = {mpq_class(1)};
  auto res = oracle_support_lp(h, s, budgets);
  REQUIRE(res.status == LPStatus::Optimal);
  CHECK(res.value == 1);
  CHECK(res.x[0] - res.x[1] == 1);

  // Zero budgets pin the maximizer to a constant.
  std::vector<mpq_class> zero_budget = {mpq_class(0)};
  auto res0 = oracle_support_lp(h, s, zero_budget);
  REQUIRE(res0.status == LPStatus::Optimal);
  CHECK(res0.value == 0);

  Hypergraph t = triangle();
  std::vector<mpq_class> st = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  std::vector<mpq_class> bt = {mpq_class(1)};
  auto rest = oracle_support_lp(t, st, bt);
  CHECK(rest.value == 1);
}

TEST_CASE("exact Laplacian solve and effective resistance") {
  auto x = oracle_exact_laplacian_solve(path3(), dip3());
  CHECK(x[0] == 1);
  CHECK(x[1] == 0);
  CHECK(x[2] == -1);

  CHECK(oracle_effective_resistance(pair_edge(), 0, 1) == 1);
  CHECK(oracle_effective_resistance(path3(), 0, 2) == 2);

  Hypergraph weighted;
  weighted.vertex_count = 2;
  weighted.edges.push_back({{0, 1}, Dyadic(4)});
  CHECK(oracle_effective_resistance(weighted, 0, 1) == mpq_class(1, 4));
}

TEST_CASE("regularized oracle on the single-edge closed form") {
  Hypergraph h = pair_edge();
  Demand s = {Dyadic(1), Dyadic(0)};
  auto x = oracle_regularized_minimizer(h, 1.0, s, 400000);
  CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(2e-3));
  CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
}
