#include "hyperlap/certificate_io.hpp"

#include <sstream>

#include <json.hpp>

#include "hyperlap/errors.hpp"

namespace hyperlap {

using nlohmann::json;

namespace {

json eta_to_json(const EdgeLocalVector<Dyadic>& eta) {
  json out = json::array();
  for (const auto& edge_vals : eta.values) {
    json row = json::array();
    for (const auto& v : edge_vals) row.push_back(v.to_string());
    out.push_back(row);
  }
  return out;
}

std::string hash_to_hex(std::uint64_t h) {
  std::ostringstream os;
  os << "0x" << std::hex << h;
  return os.str();
}

}  // namespace

CertificateFile make_certificate(const Instance& inst, const PoissonSolution& sol,
                                 const SolveOptions& options) {
  CertificateFile cert;
  cert.kind = "poisson";
  cert.instance = inst;
  cert.hash = instance_hash(inst);
  cert.epsilon = options.epsilon;
  cert.grid_bits = options.grid_bits;
  cert.gamma = options.gamma.is_zero() ? Dyadic::pow2(-30) : options.gamma;
  cert.x = sol.x;
  cert.eta = sol.certificate.eta;
  cert.primal_value = sol.report.primal_value;
  cert.dual_value = sol.report.dual_value;
  cert.gap = sol.report.gap;
  return cert;
}

CertificateFile make_certificate(const Instance& inst, const Dyadic& lambda,
                                 const RegularizedSolution& sol,
                                 const SolveOptions& options) {
  CertificateFile cert;
  cert.kind = "regularized";
  cert.instance = inst;
  cert.hash = instance_hash(inst);
  cert.lambda = lambda;
  cert.epsilon = options.epsilon;
  cert.grid_bits = options.grid_bits;
  cert.gamma = options.gamma.is_zero() ? Dyadic::pow2(-30) : options.gamma;
  cert.x = sol.x;
  cert.eta = sol.certificate.eta;
  cert.primal_value = sol.primal_value;
  cert.dual_value = sol.dual_value;
  cert.gap = sol.gap;
  return cert;
}

std::string serialize_certificate(const CertificateFile& cert) {
  json j;
  j["format"] = "hyperlap-certificate-v1";
  j["kind"] = cert.kind;
  j["instance"] = json::parse(serialize_instance(cert.instance));
  j["instance_hash"] = hash_to_hex(cert.hash);
  if (cert.kind == "regularized") j["lambda"] = cert.lambda.to_string();
  j["parameters"] = {{"eps", cert.epsilon},
                     {"grid_bits", cert.grid_bits},
                     {"gamma", cert.gamma.to_string()}};
  j["primal"] = json::array();
  for (const auto& xv : cert.x) j["primal"].push_back(rational_to_string(xv));
  j["dual"] = eta_to_json(cert.eta);
  j["report"] = {{"primal_value", rational_to_string(cert.primal_value)},
                 {"dual_value", rational_to_string(cert.dual_value)},
                 {"gap", rational_to_string(cert.gap)}};
  return j.dump(2);
}

CertificateFile parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("certificate JSON: ") + ex.what());
  }
  if (!j.is_object() || j.value("format", "") != "hyperlap-certificate-v1") {
    throw Error(ErrorCode::ParseError, "not a hyperlap certificate");
  }
  CertificateFile cert;
  cert.kind = j.at("kind").get<std::string>();
  cert.instance = parse_instance(j.at("instance").dump());
  cert.hash = std::stoull(j.at("instance_hash").get<std::string>(), nullptr, 16);
  if (cert.kind == "regularized") {
    cert.lambda = Dyadic::parse(j.at("lambda").get<std::string>());
  } else if (cert.kind != "poisson") {
    throw Error(ErrorCode::ParseError, "unknown certificate kind '" + cert.kind + "'");
  }
  const auto& params = j.at("parameters");
  cert.epsilon = params.value("eps", 0.0);
  cert.grid_bits = params.value("grid_bits", 0L);
  cert.gamma = Dyadic::parse(params.value("gamma", "1*2^-30"));
  for (const auto& xv : j.at("primal")) {
    cert.x.push_back(rational_from_string(xv.get<std::string>()));
  }
  for (const auto& row : j.at("dual")) {
    std::vector<Dyadic> vals;
    for (const auto& v : row) vals.push_back(Dyadic::parse(v.get<std::string>()));
    cert.eta.values.push_back(std::move(vals));
  }
  const auto& rep = j.at("report");
  cert.primal_value = rational_from_string(rep.at("primal_value").get<std::string>());
  cert.dual_value = rational_from_string(rep.at("dual_value").get<std::string>());
  cert.gap = rational_from_string(rep.at("gap").get<std::string>());
  return cert;
}

namespace {

void verify_poisson(const CertificateFile& cert, VerifyOutcome* out) {
  const Hypergraph& h = cert.instance.hypergraph;
  const Demand& s = cert.instance.demand;

  // Demand must be exactly zero-sum for the weak-duality argument.
  Dyadic total;
  for (const auto& sv : s) total += sv;
  if (!total.is_zero()) out->fail("demand does not sum to zero");

  if (weighted_mean_numerator(h, cert.x) != 0) {
    out->fail("primal point is not degree-weighted mean-zero");
  }

  DualVector eta;
  eta.values.resize(cert.eta.values.size());
  for (size_t j = 0; j < cert.eta.values.size(); ++j) {
    for (const auto& v : cert.eta.values[j]) {
      eta.values[j].push_back(v.to_rational());
    }
  }
  if (eta.values.size() != h.edges.size()) {
    out->fail("dual vector edge count mismatch");
    return;
  }
  for (size_t j = 0; j < eta.values.size(); ++j) {
    if (eta.values[j].size() != h.edges[j].verts.size()) {
      out->fail("dual vector arity mismatch on edge " + std::to_string(j));
      return;
    }
    mpq_class sum = 0;
    for (const auto& v : eta.values[j]) sum += v;
    if (sum != 0) {
      out->fail("eta_e does not sum to zero on edge " + std::to_string(j));
    }
  }
  auto b = aggregate_dual(h, eta);
  for (int v = 0; v < h.vertex_count; ++v) {
    if (b[v] != s[v].to_rational()) {
      out->fail("B*eta != s at vertex " + std::to_string(v));
    }
  }

  PrimalValue pv = primal_objective(h, s, cert.x);
  out->recomputed_primal = pv.objective;
  out->recomputed_dual = dual_objective(h, eta, /*strict=*/false);
  out->recomputed_gap = out->recomputed_primal + out->recomputed_dual;
  if (out->recomputed_primal != cert.primal_value) {
    out->fail("stored primal value does not match the recomputation");
  }
  if (out->recomputed_dual != cert.dual_value) {
    out->fail("stored dual value does not match the recomputation");
  }
  if (out->recomputed_gap != cert.gap) {
    out->fail("stored gap does not match the recomputation");
  }
  if (out->recomputed_gap < 0) out->fail("certified gap is negative");
}

void verify_regularized(const CertificateFile& cert, VerifyOutcome* out) {
  const Hypergraph& h = cert.instance.hypergraph;
  const Demand& s = cert.instance.demand;
  if (cert.lambda.sign() <= 0) {
    out->fail("lambda must be positive");
    return;
  }

  DualVector eta;
  eta.values.resize(cert.eta.values.size());
  for (size_t j = 0; j < cert.eta.values.size(); ++j) {
    for (const auto& v : cert.eta.values[j]) {
      eta.values[j].push_back(v.to_rational());
    }
  }
  if (eta.values.size() != h.edges.size()) {
    out->fail("dual vector edge count mismatch");
    return;
  }
  for (size_t j = 0; j < eta.values.size(); ++j) {
    mpq_class sum = 0;
    for (const auto& v : eta.values[j]) sum += v;
    if (sum != 0) {
      out->fail("eta_e does not sum to zero on edge " + std::to_string(j));
    }
  }

  // The ground-edge components are implicit: feasibility on the augmented
  // instance pins them to the vertex residuals, which the regularized dual
  // reconstructs below.
  out->recomputed_primal =
      regularized_primal_objective(h, cert.lambda, s, cert.x);
  RegularizedDualValue dv =
      regularized_dual_objective(h, cert.lambda, s, eta);
  out->recomputed_dual = dv.value;
  out->recomputed_gap = out->recomputed_primal + out->recomputed_dual;
  if (out->recomputed_primal != cert.primal_value) {
    out->fail("stored primal value does not match the recomputation");
  }
  if (out->recomputed_dual != cert.dual_value) {
    out->fail("stored dual value does not match the recomputation");
  }
  if (out->recomputed_gap != cert.gap) {
    out->fail("stored gap does not match the recomputation");
  }
  if (out->recomputed_gap < 0) out->fail("certified gap is negative");
}

}  // namespace

VerifyOutcome verify_certificate(const CertificateFile& cert) {
  VerifyOutcome out;
  if (instance_hash(cert.instance) != cert.hash) {
    out.fail("instance hash mismatch");
  }
  try {
    validate_instance(cert.instance.hypergraph, cert.instance.demand,
                      /*require_connected=*/cert.kind == "poisson");
  } catch (const Error& e) {
    if (cert.kind == "poisson" || e.code() != ErrorCode::DemandNotZeroSum) {
      out.fail(std::string("embedded instance invalid: ") + e.what());
      return out;
    }
  }
  if (cert.kind == "poisson") {
    verify_poisson(cert, &out);
  } else {
    verify_regularized(cert, &out);
  }
  return out;
}

VerifyOutcome verify_certificate_text(const std::string& text) {
  return verify_certificate(parse_certificate(text));
}

}  // namespace hyperlap
