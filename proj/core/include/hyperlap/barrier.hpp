#pragma once

#include <array>

#include "hyperlap/lifted.hpp"

namespace hyperlap {

/// Barrier data for one lifted arc epigraph.  Transport arcs use the
/// 3-parameter log barrier on {0 < f < cap, y > 0}; quadratic arcs use the
/// 6-parameter barrier on {0 < f < cap, y > f^2/(2w)}.  The uniform
/// self-concordance parameter over both classes is nu = 6.
struct BarrierSpec {
  ArcKind kind = ArcKind::Transport;
  double cap = 0;     // Lambda
  double weight = 1;  // w_e, used by quadratic arcs only

  static constexpr int kTransportNu = 3;
  static constexpr int kQuadraticNu = 6;
  static constexpr int kUniformNu = 6;

  int nu() const { return kind == ArcKind::Transport ? kTransportNu : kQuadraticNu; }
};

struct BarrierEval {
  double value = 0;
  std::array<double, 2> gradient{};      // d/df, d/dy
  std::array<std::array<double, 2>, 2> hessian{};  // symmetric positive definite
};

/// True when (f, y) lies strictly inside the arc's open epigraph.
bool barrier_in_domain(const BarrierSpec& spec, double f, double y);

/// Exact closed-form value/gradient/Hessian; throws OutOfDomain outside the
/// open epigraph.
BarrierEval evaluate_barrier(const BarrierSpec& spec, double f, double y);

/// Epigraph slack y - f^2/(2w) (just y for transport arcs).
double barrier_slack(const BarrierSpec& spec, double f, double y);

}  // namespace hyperlap
