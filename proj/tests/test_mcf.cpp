#include <doctest.h>

#include <random>

#include "hyperlap/errors.hpp"
#include "hyperlap/mcf.hpp"

using namespace hyperlap;

namespace {

/// Gadget for a single 2-vertex edge: nodes v0, v1, e-, e+ with transport
/// arcs and one costed arc (e-, e+).
MCFInstance pair_gadget(const mpz_class& cap, const mpz_class& quad_cost) {
  MCFInstance inst;
  inst.nodes = 4;  // 0: v0, 1: v1, 2: e-, 3: e+
  inst.demand = {mpz_class(1), mpz_class(-1), mpz_class(0), mpz_class(0)};
  inst.arcs.push_back({3, 0, cap, 0});
  inst.arcs.push_back({3, 1, cap, 0});
  inst.arcs.push_back({0, 2, cap, 0});
  inst.arcs.push_back({1, 2, cap, 0});
  inst.arcs.push_back({2, 3, cap, quad_cost});
  return inst;
}

void check_conservation(const MCFInstance& inst, const MCFSolution& sol) {
  std::vector<mpz_class> im(inst.nodes, mpz_class(0));
  for (size_t a = 0; a < inst.arcs.size(); ++a) {
    im[inst.arcs[a].head] += sol.flow[a];
    im[inst.arcs[a].tail] -= sol.flow[a];
    CHECK(sol.flow[a] >= 0);
    CHECK(sol.flow[a] <= inst.arcs[a].capacity);
  }
  for (int v = 0; v < inst.nodes; ++v) CHECK(im[v] == inst.demand[v]);
}

void check_certificate(const MCFInstance& inst, const MCFSolution& sol,
                       const PotentialCertificate& cert) {
  mpz_class dual = 0;
  for (int v = 0; v < inst.nodes; ++v) dual += inst.demand[v] * cert.potentials[v];
  for (size_t a = 0; a < inst.arcs.size(); ++a) {
    const auto& arc = inst.arcs[a];
    mpz_class diff = cert.potentials[arc.head] - cert.potentials[arc.tail];
    mpz_class sigma = arc.cost - diff + cert.lambda_plus[a];
    CHECK(sigma >= 0);
    CHECK(cert.lambda_plus[a] >= 0);
    CHECK(sigma * sol.flow[a] == 0);
    CHECK(cert.lambda_plus[a] * (arc.capacity - sol.flow[a]) == 0);
    dual -= arc.capacity * cert.lambda_plus[a];
  }
  CHECK(dual == sol.objective);
  mpz_class lo = cert.potentials[0];
  for (const auto& p : cert.potentials) lo = std::min(lo, p);
  CHECK(lo == 0);
}

MCFInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(2, 8), md(1, 16), cap_d(0, 6), cost_d(0, 9);
  MCFInstance inst;
  inst.nodes = nd(rng);
  int m = md(rng);
  std::uniform_int_distribution<int> vd(0, inst.nodes - 1);
  for (int a = 0; a < m; ++a) {
    int t = vd(rng), h = vd(rng);
    if (t == h) h = (h + 1) % inst.nodes;
    inst.arcs.push_back({t, h, mpz_class(cap_d(rng)), mpz_class(cost_d(rng))});
  }
  // Feasible demand by construction: route a random sub-capacity flow.
  inst.demand.assign(inst.nodes, mpz_class(0));
  for (const auto& arc : inst.arcs) {
    std::uniform_int_distribution<long> fd(0, arc.capacity.get_si());
    long f = fd(rng);
    inst.demand[arc.head] += f;
    inst.demand[arc.tail] -= f;
  }
  return inst;
}

}  // namespace

TEST_CASE("unit path through the gadget") {
  MCFInstance inst = pair_gadget(2, 1);
  auto sol = solve_mcf_exact(inst);
  REQUIRE(sol.status == MCFStatus::Optimal);
  CHECK(sol.objective == 1);
  CHECK(sol.flow == std::vector<mpz_class>{1, 0, 0, 1, 1});
  check_conservation(inst, sol);

  auto cert = extract_residual_potentials(inst, sol);
  check_certificate(inst, sol, cert);
  CHECK(cert.potentials[3] - cert.potentials[2] == 1);  // e+ minus e-
  CHECK(cert.potentials[0] - cert.potentials[1] == 1);
  for (const auto& l : cert.lambda_plus) CHECK(l == 0);
}

TEST_CASE("zero demand gives the zero flow") {
  MCFInstance inst = pair_gadget(2, 1);
  inst.demand = {mpz_class(0), mpz_class(0), mpz_class(0), mpz_class(0)};
  auto sol = solve_mcf_exact(inst);
  REQUIRE(sol.status == MCFStatus::Optimal);
  CHECK(sol.objective == 0);
  for (const auto& f : sol.flow) CHECK(f == 0);
  auto cert = extract_residual_potentials(inst, sol);
  check_certificate(inst, sol, cert);
}

TEST_CASE("capacity cut makes the instance infeasible") {
  MCFInstance inst = pair_gadget(2, 1);
  inst.arcs[4].capacity = 0;  // the only v1 -> v0 route dies
  auto sol = solve_mcf_exact(inst);
  CHECK(sol.status == MCFStatus::Infeasible);
}

TEST_CASE("make_acyclic removes injected cycles and keeps conservation") {
  MCFInstance inst = pair_gadget(4, 1);
  auto sol = solve_mcf_exact(inst);
  REQUIRE(sol.status == MCFStatus::Optimal);
  // Inject a zero-cost 2-cycle: v0 -> e- -> ... no reverse arcs exist, so use
  // the gadget loop e- -> e+ -> v1 -> e-.
  MCFSolution dirty = sol;
  dirty.flow[4] += 1;  // e- -> e+
  dirty.flow[1] += 1;  // e+ -> v1
  dirty.flow[3] += 1;  // v1 -> e-
  check_conservation(inst, dirty);
  auto clean = make_acyclic(inst, dirty);
  check_conservation(inst, clean);
  CHECK(clean.objective <= dirty.objective + 0);
  CHECK(clean.flow == sol.flow);

  // Already acyclic input is untouched.
  auto again = make_acyclic(inst, sol);
  CHECK(again.flow == sol.flow);
}

TEST_CASE("suboptimal flow trips the negative-cycle detector") {
  MCFInstance inst;
  inst.nodes = 2;
  inst.demand = {mpz_class(1), mpz_class(-1)};
  inst.arcs.push_back({1, 0, mpz_class(2), mpz_class(1)});
  inst.arcs.push_back({1, 0, mpz_class(2), mpz_class(5)});
  MCFSolution bad;
  bad.status = MCFStatus::Optimal;
  bad.flow = {mpz_class(0), mpz_class(1)};  // expensive arc used
  bad.objective = 5;
  CHECK_THROWS_AS(extract_residual_potentials(inst, bad), Error);

  auto good = solve_mcf_exact(inst);
  CHECK(good.objective == 1);
  auto cert = extract_residual_potentials(inst, good);
  check_certificate(inst, good, cert);
}

TEST_CASE("random instances: exact certificates and acyclic bound") {
  std::mt19937_64 rng(23);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MCFInstance inst = random_instance(rng);
    auto sol = solve_mcf_exact(inst);
    if (sol.status != MCFStatus::Optimal) continue;  // demands are feasible by
    solved++;                                        // construction, never hit
    check_conservation(inst, sol);
    auto cert = extract_residual_potentials(inst, sol);
    check_certificate(inst, sol, cert);

    auto acyclic = make_acyclic(inst, sol);
    check_conservation(inst, acyclic);
    CHECK(acyclic.objective == sol.objective);  // optimal cycles cost zero
    mpz_class half_norm = 0;
    for (const auto& d : inst.demand) {
      if (d > 0) half_norm += d;
    }
    for (const auto& f : acyclic.flow) CHECK(f <= half_norm);
  }
  CHECK(solved == 200);
}

TEST_CASE("DIMACS round trip") {
  MCFInstance inst = pair_gadget(7, 3);
  auto text = export_dimacs(inst);
  auto back = import_dimacs(text);
  CHECK(back.nodes == inst.nodes);
  CHECK(back.demand == inst.demand);
  REQUIRE(back.arcs.size() == inst.arcs.size());
  for (size_t a = 0; a < inst.arcs.size(); ++a) {
    CHECK(back.arcs[a].tail == inst.arcs[a].tail);
    CHECK(back.arcs[a].head == inst.arcs[a].head);
    CHECK(back.arcs[a].capacity == inst.arcs[a].capacity);
    CHECK(back.arcs[a].cost == inst.arcs[a].cost);
  }
  CHECK(solve_mcf_exact(back).objective == solve_mcf_exact(inst).objective);
}
