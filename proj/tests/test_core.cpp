#include <doctest.h>

#include <random>

#include "hyperlap/errors.hpp"
#include "hyperlap/hypergraph.hpp"
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

Demand dip3() { return {Dyadic(1), Dyadic(0), Dyadic(-1)}; }

}  // namespace

TEST_CASE("validate accepts the triangle") {
  auto vi = validate_instance(triangle(), dip3(), true);
  CHECK(vi.connected);
  CHECK(vi.bfs_order.size() == 3);
  CHECK(triangle().incidence_size() == 3);
}

TEST_CASE("validate rejects broken instances") {
  Hypergraph two_components;
  two_components.vertex_count = 4;
  two_components.edges.push_back({{0, 1}, Dyadic(1)});
  two_components.edges.push_back({{2, 3}, Dyadic(1)});
  Demand s = {Dyadic(1), Dyadic(-1), Dyadic(0), Dyadic(0)};
  CHECK_THROWS_AS(validate_instance(two_components, s, true), Error);
  CHECK(!validate_instance(two_components, s, false).connected);

  Demand bad_sum = {Dyadic(1), Dyadic(0), Dyadic(0)};
  CHECK_THROWS_AS(validate_instance(triangle(), bad_sum, false), Error);

  Hypergraph bad_weight = triangle();
  bad_weight.edges[0].weight = Dyadic(0);
  CHECK_THROWS_AS(validate_instance(bad_weight, dip3(), false), Error);

  Hypergraph singleton;
  singleton.vertex_count = 2;
  singleton.edges.push_back({{0}, Dyadic(1)});
  CHECK_THROWS_AS(validate_instance(singleton, {Dyadic(0), Dyadic(0)}, false), Error);

  Hypergraph repeated;
  repeated.vertex_count = 2;
  repeated.edges.push_back({{0, 0}, Dyadic(1)});
  CHECK_THROWS_AS(validate_instance(repeated, {Dyadic(0), Dyadic(0)}, false), Error);
}

TEST_CASE("bound checks warn by default and throw when enforced") {
  Hypergraph h = triangle();
  h.edges[0].weight = Dyadic(mpz_class(1), 40);  // far below P^-2
  auto vi = validate_instance(h, dip3(), true);
  CHECK(!vi.bound_warnings.empty());
  CHECK_THROWS_AS(validate_instance(h, dip3(), true, 2, true), Error);
}

TEST_CASE("edge range basics") {
  PotentialVector x = {mpq_class(0), mpq_class(1), mpq_class(3)};
  CHECK(edge_range(x, triangle().edges[0]) == 3);
  PotentialVector constant = {mpq_class(5), mpq_class(5), mpq_class(5)};
  CHECK(edge_range(constant, triangle().edges[0]) == 0);
  PotentialVector half = {mpq_class(1, 2), mpq_class(0), mpq_class(-1, 2)};
  CHECK(edge_range(half, triangle().edges[0]) == 1);
}

TEST_CASE("primal objective on the closed forms") {
  PotentialVector x = {mpq_class(1, 2), mpq_class(0), mpq_class(-1, 2)};
  auto pv = primal_objective(triangle(), dip3(), x);
  CHECK(pv.energy == mpq_class(1, 2));
  CHECK(pv.objective == mpq_class(-1, 2));

  PotentialVector zero(3, mpq_class(0));
  auto pz = primal_objective(triangle(), dip3(), zero);
  CHECK(pz.energy == 0);
  CHECK(pz.objective == 0);

  PotentialVector xp = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  auto pp = primal_objective(path3(), dip3(), xp);
  CHECK(pp.energy == 1);
  CHECK(pp.objective == -1);
}

TEST_CASE("projection onto the weighted mean-zero slice") {
  Hypergraph pair;
  pair.vertex_count = 2;
  pair.edges.push_back({{0, 1}, Dyadic(1)});
  PotentialVector x = {mpq_class(1), mpq_class(0)};
  auto proj = project_to_weighted_mean_zero(pair, x);
  CHECK(proj[0] == mpq_class(1, 2));
  CHECK(proj[1] == mpq_class(-1, 2));

  // Idempotent and exact.
  auto twice = project_to_weighted_mean_zero(pair, proj);
  CHECK(twice == proj);

  // Weighted-mean-zero input is untouched: degrees (1,2,1).
  Hypergraph h;
  h.vertex_count = 3;
  h.edges.push_back({{0, 1}, Dyadic(1)});
  h.edges.push_back({{1, 2}, Dyadic(1)});
  PotentialVector y = {mpq_class(1), mpq_class(0), mpq_class(-1)};
  CHECK(project_to_weighted_mean_zero(h, y) == y);
}

TEST_CASE("shift invariance and homogeneity properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Hypergraph h = testutil::random_connected_hypergraph(rng);
    Demand s = testutil::random_zero_sum_demand(rng, h.vertex_count);
    std::uniform_int_distribution<int> coeff(-8, 8);
    PotentialVector x(h.vertex_count);
    for (auto& xv : x) xv = mpq_class(coeff(rng), 4);

    mpq_class c(coeff(rng), 2);
    PotentialVector shifted(h.vertex_count);
    for (int v = 0; v < h.vertex_count; ++v) shifted[v] = x[v] + c;
    for (const auto& e : h.edges) {
      CHECK(edge_range(x, e) == edge_range(shifted, e));
    }

    mpq_class t(coeff(rng), 1);
    PotentialVector scaled(h.vertex_count);
    for (int v = 0; v < h.vertex_count; ++v) scaled[v] = t * x[v];
    CHECK(primal_objective(h, s, scaled).energy ==
          t * t * primal_objective(h, s, x).energy);

    // The objective restricted to the normalized slice ignores degree-vector
    // shifts of the demand: <D1, x> = 0 there.
    auto xn = project_to_weighted_mean_zero(h, x);
    CHECK(weighted_mean_numerator(h, xn) == 0);
  }
}
