#include "hyperlap/simplex.hpp"

#include <algorithm>

#include "hyperlap/errors.hpp"

namespace hyperlap {

namespace {

template <class Scalar>
struct PivotPolicy;

template <>
struct PivotPolicy<mpq_class> {
  static bool negative(const mpq_class& v) { return v < 0; }
  static bool positive(const mpq_class& v) { return v > 0; }
  static constexpr bool bland = true;  // exact arithmetic, anti-cycling rule
};

template <>
struct PivotPolicy<double> {
  static constexpr double kTol = 1e-9;
  static bool negative(double v) { return v < -kTol; }
  static bool positive(double v) { return v > kTol; }
  static constexpr bool bland = false;
};

/// Full-tableau simplex over basis `basis` on columns [0, cols).  Columns in
/// `frozen` may not enter (used to pin phase-1 artificials).  Returns false
/// on unboundedness.
template <class Scalar>
bool run_simplex(std::vector<std::vector<Scalar>>& T, std::vector<int>& basis,
                 const std::vector<Scalar>& cost, int cols,
                 const std::vector<bool>& frozen, long max_pivots) {
  using P = PivotPolicy<Scalar>;
  int rows = static_cast<int>(basis.size());
  int rhs = cols;  // T rows have cols+1 entries, last is the RHS
  for (long pivot = 0; pivot < max_pivots; ++pivot) {
    // Reduced costs rc_j = c_j - c_B^T T_j.
    int enter = -1;
    Scalar best_rc{};
    for (int j = 0; j < cols; ++j) {
      if (frozen[j]) continue;
      Scalar rc = cost[j];
      for (int i = 0; i < rows; ++i) {
        if (cost[basis[i]] != Scalar(0) && T[i][j] != Scalar(0)) {
          rc -= cost[basis[i]] * T[i][j];
        }
      }
      if (P::negative(rc)) {
        if (P::bland) {
          enter = j;
          break;
        }
        if (enter < 0 || rc < best_rc) {
          enter = j;
          best_rc = rc;
        }
      }
    }
    if (enter < 0) return true;  // optimal

    int leave = -1;
    Scalar best_ratio{};
    for (int i = 0; i < rows; ++i) {
      if (!P::positive(T[i][enter])) continue;
      Scalar ratio = T[i][rhs] / T[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded

    // Pivot on (leave, enter).
    Scalar piv = T[leave][enter];
    for (int j = 0; j <= rhs; ++j) T[leave][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || T[i][enter] == Scalar(0)) continue;
      Scalar factor = T[i][enter];
      for (int j = 0; j <= rhs; ++j) T[i][j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }
  throw Error(ErrorCode::NumericalBreakdown, "simplex pivot budget exhausted");
}

template <class Scalar>
LPResult<Scalar> solve_impl(const StandardLP<Scalar>& lp) {
  int rows = static_cast<int>(lp.A.size());
  int n = static_cast<int>(lp.c.size());
  for (const auto& row : lp.A) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::InvariantViolation, "LP row size mismatch");
    }
  }

  // Tableau with artificial columns n..n+rows-1; flip rows to make b >= 0.
  int cols = n + rows;
  std::vector<std::vector<Scalar>> T(rows, std::vector<Scalar>(cols + 1, Scalar(0)));
  for (int i = 0; i < rows; ++i) {
    bool flip = lp.b[i] < Scalar(0);
    for (int j = 0; j < n; ++j) T[i][j] = flip ? Scalar(-lp.A[i][j]) : lp.A[i][j];
    T[i][n + i] = Scalar(1);
    T[i][cols] = flip ? Scalar(-lp.b[i]) : lp.b[i];
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = n + i;

  long max_pivots = 4096 + 64L * static_cast<long>(rows + cols) *
                               static_cast<long>(rows + cols);

  // Phase 1: minimize the artificial mass.
  std::vector<Scalar> phase1_cost(cols, Scalar(0));
  for (int j = n; j < cols; ++j) phase1_cost[j] = Scalar(1);
  std::vector<bool> frozen(cols, false);
  if (!run_simplex(T, basis, phase1_cost, cols, frozen, max_pivots)) {
    throw Error(ErrorCode::NumericalBreakdown, "phase-1 LP unbounded");
  }
  Scalar art_mass{};
  for (int i = 0; i < rows; ++i) {
    if (basis[i] >= n) art_mass += T[i][cols];
  }
  LPResult<Scalar> res;
  if (PivotPolicy<Scalar>::positive(art_mass)) {
    res.status = LPStatus::Infeasible;
    return res;
  }
  // Pivot leftover zero-value artificials out where possible; rows that have
  // no structural entry are redundant and stay pinned at zero.
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (T[i][j] != Scalar(0)) {
        Scalar piv = T[i][j];
        for (int k = 0; k <= cols; ++k) T[i][k] /= piv;
        for (int r = 0; r < rows; ++r) {
          if (r == i || T[r][j] == Scalar(0)) continue;
          Scalar factor = T[r][j];
          for (int k = 0; k <= cols; ++k) T[r][k] -= factor * T[i][k];
        }
        basis[i] = j;
        break;
      }
    }
  }

  // Phase 2: original objective, artificials frozen out.
  std::vector<Scalar> phase2_cost(cols, Scalar(0));
  for (int j = 0; j < n; ++j) phase2_cost[j] = lp.c[j];
  for (int j = n; j < cols; ++j) frozen[j] = true;
  if (!run_simplex(T, basis, phase2_cost, cols, frozen, max_pivots)) {
    res.status = LPStatus::Unbounded;
    return res;
  }

  res.status = LPStatus::Optimal;
  res.x.assign(n, Scalar(0));
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < n) res.x[basis[i]] = T[i][cols];
  }
  res.value = Scalar(0);
  for (int j = 0; j < n; ++j) res.value += lp.c[j] * res.x[j];
  return res;
}

}  // namespace

LPResult<mpq_class> solve_standard_lp(const StandardLP<mpq_class>& lp) {
  return solve_impl(lp);
}

LPResult<double> solve_standard_lp(const StandardLP<double>& lp) {
  return solve_impl(lp);
}

}  // namespace hyperlap
