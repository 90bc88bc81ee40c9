#pragma once

#include <string>
#include <vector>

#include "hyperlap/certificate.hpp"
#include "hyperlap/instance_io.hpp"
#include "hyperlap/regularized.hpp"
#include "hyperlap/solver.hpp"

namespace hyperlap {

/// Self-contained certificate: embeds the instance, the solver parameters,
/// the exact rational primal point, the exact dyadic dual vector, and the
/// claimed objective values.  Everything a verifier needs is in the file.
struct CertificateFile {
  std::string kind;  // "poisson" or "regularized"
  Instance instance;
  std::uint64_t hash = 0;
  Dyadic lambda;  // regularized only
  double epsilon = 0;
  long grid_bits = 0;
  Dyadic gamma;
  PotentialVector x;
  EdgeLocalVector<Dyadic> eta;
  mpq_class primal_value;
  mpq_class dual_value;
  mpq_class gap;
};

CertificateFile make_certificate(const Instance& inst, const PoissonSolution& sol,
                                 const SolveOptions& options);
CertificateFile make_certificate(const Instance& inst, const Dyadic& lambda,
                                 const RegularizedSolution& sol,
                                 const SolveOptions& options);

std::string serialize_certificate(const CertificateFile& cert);
CertificateFile parse_certificate(const std::string& text);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> failures;
  mpq_class recomputed_primal;
  mpq_class recomputed_dual;
  mpq_class recomputed_gap;

  void fail(const std::string& message) {
    ok = false;
    failures.push_back(message);
  }
};

/// Re-checks every exact assertion from the file alone: instance hash,
/// normalization of x, per-edge zero sums, the demand equation B eta = s,
/// the claimed objective values, and gap nonnegativity.  For regularized
/// certificates the ground-edge dual components are reconstructed from the
/// vertex residuals before evaluating the regularized dual.
VerifyOutcome verify_certificate(const CertificateFile& cert);
VerifyOutcome verify_certificate_text(const std::string& text);

}  // namespace hyperlap
