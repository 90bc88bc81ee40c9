#include <doctest.h>

#include <random>

#include "hyperlap/dual.hpp"
#include "hyperlap/errors.hpp"
#include "test_util.hpp"

using namespace hyperlap;

namespace {

Hypergraph triangle() {
  Hypergraph h;
  h.vertex_count = 3;
  h.edges.push_back({{0, 1, 2}, Dyadic(1)});
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

TEST_CASE("dual objective closed forms") {
  Hypergraph h = triangle();
  DualVector eta = DualVector::zeros(h);
  eta.values[0] = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  CHECK(dual_objective(h, eta) == mpq_class(1, 2));

  DualVector zero = DualVector::zeros(h);
  CHECK(dual_objective(h, zero) == 0);

  Hypergraph p = path3();
  DualVector ep = DualVector::zeros(p);
  ep.values[0] = {mpq_class(1), mpq_class(-1)};
  ep.values[1] = {mpq_class(1), mpq_class(-1)};
  CHECK(dual_objective(p, ep) == 1);
}

TEST_CASE("strict mode rejects edge sums") {
  Hypergraph h = triangle();
  DualVector eta = DualVector::zeros(h);
  eta.values[0] = {mpq_class(1), mpq_class(0), mpq_class(0)};
  CHECK_THROWS_AS(dual_objective(h, eta, true), Error);
}

TEST_CASE("feasibility reports") {
  Hypergraph h = triangle();
  Demand s = {Dyadic(1), Dyadic(0), Dyadic(-1)};
  DualVector eta = DualVector::zeros(h);
  eta.values[0] = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  auto rep = check_dual_feasible(h, s, eta);
  CHECK(rep.edge_sums_zero);
  CHECK(rep.demand_met);

  DualVector zero = DualVector::zeros(h);
  auto rep0 = check_dual_feasible(h, s, zero);
  CHECK(rep0.edge_sums_zero);
  CHECK(!rep0.demand_met);
  CHECK(rep0.max_demand_residual == 1);

  Hypergraph p = path3();
  DualVector ep = DualVector::zeros(p);
  ep.values[0] = {mpq_class(1), mpq_class(-1)};
  ep.values[1] = {mpq_class(1), mpq_class(-1)};
  auto repp = check_dual_feasible(p, s, ep);
  CHECK(repp.demand_met);  // middle vertex: -1 + 1 = 0
}

TEST_CASE("mass projection") {
  Hypergraph h = triangle();
  DualVector eta = DualVector::zeros(h);
  eta.values[0] = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  CHECK(mass_of(eta).mu[0] == 1);

  DualVector zero = DualVector::zeros(h);
  CHECK(mass_of(zero).mu[0] == 0);

  DualVector half = DualVector::zeros(h);
  half.values[0] = {mpq_class(1, 2), mpq_class(1, 2), mpq_class(-1)};
  CHECK(mass_of(half).mu[0] == 1);
}

TEST_CASE("quadratic mass objective") {
  Hypergraph h = triangle();
  MassVector mu{{mpq_class(1)}};
  CHECK(quadratic_mass_objective(h, mu) == mpq_class(1, 2));
  MassVector z{{mpq_class(0)}};
  CHECK(quadratic_mass_objective(h, z) == 0);

  Hypergraph p = path3();
  MassVector both{{mpq_class(1), mpq_class(1)}};
  CHECK(quadratic_mass_objective(p, both) == 1);
}

TEST_CASE("sign split and back") {
  Hypergraph h = triangle();
  DualVector eta = DualVector::zeros(h);
  eta.values[0] = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  auto split = dual_to_split(h, eta);
  CHECK(split.p[0] == std::vector<mpq_class>{1, 0, 0});
  CHECK(split.n[0] == std::vector<mpq_class>{0, 0, 1});
  CHECK(split.mu[0] == 1);
  CHECK(split_to_dual(h, split).values == eta.values);

  // Splits need not be sign-splits: transported mass can cancel.
  TransportSplit manual;
  manual.p = {{mpq_class(1, 2), mpq_class(1, 2), mpq_class(0)}};
  manual.n = {{mpq_class(0), mpq_class(0), mpq_class(1)}};
  manual.mu = {mpq_class(1)};
  auto back = split_to_dual(h, manual);
  CHECK(back.values[0] == std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 2),
                                                 mpq_class(-1)});
  CHECK(dual_objective(h, back) == mpq_class(1, 2));
  CHECK(quadratic_mass_objective(h, MassVector{manual.mu}) == mpq_class(1, 2));

  Hypergraph pair;
  pair.vertex_count = 2;
  pair.edges.push_back({{0, 1}, Dyadic(1)});
  TransportSplit cancel;
  cancel.p = {{mpq_class(1), mpq_class(0)}};
  cancel.n = {{mpq_class(1), mpq_class(0)}};
  cancel.mu = {mpq_class(1)};
  auto cancelled = split_to_dual(pair, cancel);
  CHECK(cancelled.values[0] == std::vector<mpq_class>{0, 0});
  CHECK(dual_objective(pair, cancelled) == 0);
  CHECK(quadratic_mass_objective(pair, MassVector{cancel.mu}) == mpq_class(1, 2));
}

TEST_CASE("invalid splits are rejected") {
  Hypergraph h = triangle();
  TransportSplit bad;
  bad.p = {{mpq_class(1), mpq_class(0), mpq_class(0)}};
  bad.n = {{mpq_class(0), mpq_class(0), mpq_class(2)}};  // sums differ from mu
  bad.mu = {mpq_class(1)};
  CHECK_THROWS_AS(split_to_dual(h, bad), Error);
}

TEST_CASE("mass identity and split round-trip on random duals") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    Hypergraph h = testutil::random_connected_hypergraph(rng);
    DualVector eta = testutil::random_zero_sum_dual(rng, h);
    CHECK(quadratic_mass_objective(h, mass_of(eta)) == dual_objective(h, eta));
    auto split = dual_to_split(h, eta);
    CHECK(split_to_dual(h, split).values == eta.values);
    CHECK(dual_objective(h, split_to_dual(h, split)) <=
          quadratic_mass_objective(h, MassVector{split.mu}));
  }
}
