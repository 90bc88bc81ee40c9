#pragma once

#include <gmpxx.h>

#include <vector>

namespace hyperlap {

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// Standard-form linear program: min <c, x> subject to A x = b, x >= 0.
template <class Scalar>
struct StandardLP {
  std::vector<std::vector<Scalar>> A;  // rows x cols, dense
  std::vector<Scalar> b;
  std::vector<Scalar> c;
};

template <class Scalar>
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Scalar value{};
  std::vector<Scalar> x;
};

/// Two-phase tableau simplex.  The rational instantiation pivots with
/// Bland's rule on exact comparisons, so it terminates and its optimum is an
/// exact vertex; the double instantiation uses a most-negative rule with an
/// absolute tolerance and serves as a fast inner LP for iterative oracles.
LPResult<mpq_class> solve_standard_lp(const StandardLP<mpq_class>& lp);
LPResult<double> solve_standard_lp(const StandardLP<double>& lp);

}  // namespace hyperlap
