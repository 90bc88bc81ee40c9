#include "hyperlap/barrier.hpp"

#include <cmath>
#include <string>

#include "hyperlap/errors.hpp"

namespace hyperlap {

double barrier_slack(const BarrierSpec& spec, double f, double y) {
  if (spec.kind == ArcKind::Transport) return y;
  return y - f * f / (2.0 * spec.weight);
}

bool barrier_in_domain(const BarrierSpec& spec, double f, double y) {
  return f > 0 && f < spec.cap && barrier_slack(spec, f, y) > 0;
}

BarrierEval evaluate_barrier(const BarrierSpec& spec, double f, double y) {
  if (!barrier_in_domain(spec, f, y)) {
    throw Error(ErrorCode::OutOfDomain,
                "barrier point (" + std::to_string(f) + ", " + std::to_string(y) +
                    ") outside the open epigraph");
  }
  BarrierEval out;
  double cap_slack = spec.cap - f;
  if (spec.kind == ArcKind::Transport) {
    out.value = -std::log(f) - std::log(cap_slack) - std::log(y);
    out.gradient = {-1.0 / f + 1.0 / cap_slack, -1.0 / y};
    out.hessian[0][0] = 1.0 / (f * f) + 1.0 / (cap_slack * cap_slack);
    out.hessian[0][1] = out.hessian[1][0] = 0.0;
    out.hessian[1][1] = 1.0 / (y * y);
    return out;
  }
  double w = spec.weight;
  double g = y - f * f / (2.0 * w);
  out.value = -std::log(f) - std::log(cap_slack) - 2.0 * std::log(y) - std::log(g);
  out.gradient = {-1.0 / f + 1.0 / cap_slack + f / (w * g),
                  -2.0 / y - 1.0 / g};
  out.hessian[0][0] = 1.0 / (f * f) + 1.0 / (cap_slack * cap_slack) +
                      1.0 / (w * g) + f * f / (w * w * g * g);
  out.hessian[0][1] = out.hessian[1][0] = -f / (w * g * g);
  out.hessian[1][1] = 2.0 / (y * y) + 1.0 / (g * g);
  return out;
}

}  // namespace hyperlap
