// Command-line front end: certified Poisson solves, regularized solves,
// resolvents, pairwise responses, certificate verification, and debug dumps.
//
// Exit codes: 0 ok, 2 invalid instance, 3 solver failure, 4 verification
// failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlap/certificate_io.hpp"
#include "hyperlap/errors.hpp"
#include "hyperlap/instance_io.hpp"
#include "hyperlap/lifted.hpp"
#include "hyperlap/oracle.hpp"
#include "hyperlap/regularized.hpp"
#include "hyperlap/solver.hpp"

namespace {

using namespace hyperlap;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NotConnected:
    case ErrorCode::DemandNotZeroSum:
    case ErrorCode::NonpositiveWeight:
    case ErrorCode::EmptyEdge:
    case ErrorCode::ZeroTotalDegree:
    case ErrorCode::ZeroDegreeVertex:
    case ErrorCode::NonpositiveLambda:
    case ErrorCode::NonDyadicDemand:
      return 2;
    case ErrorCode::VerificationFailure:
      return 4;
    default:
      return 3;
  }
}

struct CommonFlags {
  double eps = 1e-9;
  long grid_bits = 20;
  std::string gamma = "1*2^-30";
  bool trace = false;
  std::string json_out;
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--eps", flags->eps, "first-stage additive gap target");
  cmd->add_option("--grid-bits", flags->grid_bits,
                  "rounding grid is 2^-grid_bits");
  cmd->add_option("--gamma", flags->gamma, "dual repair budget (dyadic)");
  cmd->add_flag("--trace", flags->trace, "print solver trace lines");
  cmd->add_option("--json-out", flags->json_out, "write the certificate here");
}

SolveOptions make_options(const CommonFlags& flags) {
  SolveOptions opts;
  opts.epsilon = flags.eps;
  opts.grid_bits = flags.grid_bits;
  opts.gamma = Dyadic::parse(flags.gamma);
  opts.first_stage.epsilon = flags.eps;
  if (flags.trace) {
    opts.first_stage.verbose = true;
    opts.first_stage.trace_sink = [](const std::string& line) {
      std::cerr << line << "\n";
    };
  }
  return opts;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << content << "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_certificate(const CertificateFile& cert, const CommonFlags& flags) {
  std::string text = serialize_certificate(cert);
  if (!flags.json_out.empty()) {
    write_text_file(flags.json_out, text);
    std::cout << "certificate written to " << flags.json_out << "\n";
  } else {
    std::cout << text << "\n";
  }
}

int run_solve(const std::string& path, const CommonFlags& flags) {
  Instance inst = load_instance(path);
  SolveOptions opts = make_options(flags);
  PoissonSolution sol = solve_poisson(inst.hypergraph, inst.demand, opts);
  std::cout << "primal objective: " << rational_to_string(sol.report.primal_value)
            << " (~" << sol.report.primal_value.get_d() << ")\n"
            << "dual objective:   " << rational_to_string(sol.report.dual_value)
            << " (~" << sol.report.dual_value.get_d() << ")\n"
            << "certified gap:    " << rational_to_string(sol.report.gap) << " (~"
            << sol.report.gap.get_d() << ")\n"
            << "first stage:      q=" << sol.first_stage.objective
            << " certified-gap=" << sol.first_stage.gap << " outer-iterations="
            << sol.first_stage.outer_iterations << "\n";
  emit_certificate(make_certificate(inst, sol, opts), flags);
  return 0;
}

int run_solve_reg(const std::string& path, const std::string& lambda_text,
                  const CommonFlags& flags) {
  Instance inst = load_instance(path);
  Dyadic lambda = Dyadic::parse(lambda_text);
  SolveOptions opts = make_options(flags);
  RegularizedSolution sol =
      solve_regularized(inst.hypergraph, lambda, inst.demand, opts);
  std::cout << "regularized primal: " << rational_to_string(sol.primal_value)
            << " (~" << sol.primal_value.get_d() << ")\n"
            << "regularized dual:   " << rational_to_string(sol.dual_value)
            << " (~" << sol.dual_value.get_d() << ")\n"
            << "certified gap:      " << rational_to_string(sol.gap) << " (~"
            << sol.gap.get_d() << ")\n";
  emit_certificate(make_certificate(inst, lambda, sol, opts), flags);
  return 0;
}

int run_resolvent(const std::string& path, const std::string& y_path,
                  const std::string& lambda_text, const CommonFlags& flags) {
  Instance inst = load_instance(path);
  Dyadic lambda = Dyadic::parse(lambda_text);
  json jy = json::parse(read_text_file(y_path));
  std::vector<Dyadic> y;
  for (const auto& v : jy) y.push_back(Dyadic::parse(v.get<std::string>()));
  SolveOptions opts = make_options(flags);
  ResolventResult res = resolvent(inst.hypergraph, lambda, y, opts);
  std::cout << "resolvent point:\n";
  for (size_t v = 0; v < res.x.size(); ++v) {
    std::cout << "  x[" << v << "] = " << rational_to_string(res.x[v]) << " (~"
              << res.x[v].get_d() << ")\n";
  }
  std::cout << "certified gap: " << rational_to_string(res.gap)
            << "  (so (lambda/2)*||x - J||_D^2 <= gap)\n";
  emit_certificate(make_certificate(inst, lambda, res.details, opts), flags);
  return 0;
}

int run_response(const std::string& path, int u, int v, const CommonFlags& flags) {
  Instance inst = load_instance(path);
  SolveOptions opts = make_options(flags);
  PairwiseResponse res = pairwise_response(inst.hypergraph, u, v, opts);
  std::cout << "response(" << u << ", " << v
            << ") = " << rational_to_string(res.response) << " (~"
            << res.response.get_d() << ")\n"
            << "certified objective gap: " << rational_to_string(res.gap) << " (~"
            << res.gap.get_d()
            << ")\nnote: the gap certifies the objective, not the response "
               "difference itself\n";
  if (!flags.json_out.empty()) {
    Instance dipole = inst;
    for (auto& s : dipole.demand) s = Dyadic::zero();
    dipole.demand[u] = Dyadic(1);
    dipole.demand[v] = Dyadic(-1);
    emit_certificate(make_certificate(dipole, res.run, opts), flags);
  }
  return 0;
}

int run_verify(const std::string& path, bool with_oracle) {
  CertificateFile cert = parse_certificate(read_text_file(path));
  VerifyOutcome outcome = verify_certificate(cert);
  for (const auto& msg : outcome.failures) std::cerr << "FAIL: " << msg << "\n";
  if (!outcome.ok) {
    std::cerr << "certificate verification failed\n";
    return 4;
  }
  std::cout << "exact checks passed: primal="
            << rational_to_string(outcome.recomputed_primal)
            << " dual=" << rational_to_string(outcome.recomputed_dual)
            << " gap=" << rational_to_string(outcome.recomputed_gap) << "\n";
  if (with_oracle && cert.kind == "poisson") {
    SubgradientResult ref = oracle_primal_poisson(cert.instance.hypergraph,
                                                  cert.instance.demand, 200000, 1.0);
    double lo = -outcome.recomputed_dual.get_d() - 2e-4;
    double hi = outcome.recomputed_primal.get_d() + 2e-4;
    std::cout << "oracle value " << ref.value << " expected within [" << lo << ", "
              << hi << "]\n";
    if (ref.value < lo || ref.value > hi) {
      std::cerr << "oracle cross-check failed\n";
      return 4;
    }
  }
  return 0;
}

int run_export_lifted(const std::string& path, const std::string& out_path) {
  Instance inst = load_instance(path);
  validate_instance(inst.hypergraph, inst.demand, /*require_connected=*/false);
  std::string dot = export_lifted_dot(build_lifted_graph(inst.hypergraph));
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    write_text_file(out_path, dot);
    std::cout << "lifted graph written to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified solver for cut-based hypergraph Poisson problems"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string instance_path, cert_path, y_path, lambda_text = "1", out_path;
  int u = 0, v = 1;
  bool with_oracle = false;

  auto* solve = app.add_subcommand("solve", "certified Poisson solve");
  solve->add_option("instance", instance_path)->required();
  add_common(solve, &flags);

  auto* solve_reg = app.add_subcommand("solve-reg", "regularized solve");
  solve_reg->add_option("instance", instance_path)->required();
  solve_reg->add_option("--lambda", lambda_text, "regularization weight (dyadic)")
      ->required();
  add_common(solve_reg, &flags);

  auto* resolvent_cmd = app.add_subcommand("resolvent", "proximal point of the cut energy");
  resolvent_cmd->add_option("instance", instance_path)->required();
  resolvent_cmd->add_option("--y-file", y_path, "JSON array of dyadic strings")
      ->required();
  resolvent_cmd->add_option("--lambda", lambda_text)->required();
  add_common(resolvent_cmd, &flags);

  auto* response = app.add_subcommand("response", "pairwise potential difference");
  response->add_option("instance", instance_path)->required();
  response->add_option("--u", u)->required();
  response->add_option("--v", v)->required();
  add_common(response, &flags);

  auto* verify = app.add_subcommand("verify", "re-check a certificate exactly");
  verify->add_option("certificate", cert_path)->required();
  verify->add_flag("--oracle", with_oracle, "also cross-check with the subgradient oracle");

  auto* export_cmd = app.add_subcommand("export-lifted", "dump the lifted graph (DOT)");
  export_cmd->add_option("instance", instance_path)->required();
  export_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(instance_path, flags);
    if (solve_reg->parsed()) return run_solve_reg(instance_path, lambda_text, flags);
    if (resolvent_cmd->parsed())
      return run_resolvent(instance_path, y_path, lambda_text, flags);
    if (response->parsed()) return run_response(instance_path, u, v, flags);
    if (verify->parsed()) return run_verify(cert_path, with_oracle);
    if (export_cmd->parsed()) return run_export_lifted(instance_path, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!flags.json_out.empty()) {
      nlohmann::json j{{"error", {{"code", error_code_name(e.code())},
                                  {"message", e.what()}}}};
      std::ofstream out(flags.json_out);
      if (out) out << j.dump(2) << "\n";
    }
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
