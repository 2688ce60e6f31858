#include "apq/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apq/errors.hpp"

namespace apq {

namespace {

constexpr double kPivotEps = 1e-9;

/* Classic dense tableau: rows 0..m-1 are constraints, row m holds reduced
   costs, column ncols holds the right-hand side (and minus the objective
   value in the corner). */
struct Tableau {
  int m = 0;
  int ncols = 0;
  std::vector<std::vector<double>> T;
  std::vector<int> basis;

  void pivot(int row, int col) {
    double piv = T[row][col];
    for (double& v : T[row]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double factor = T[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) T[i][j] -= factor * T[row][j];
      T[i][col] = 0.0;  // kill roundoff in the pivot column
    }
    basis[row] = col;
  }

  // Bland's rule throughout: smallest eligible entering index, smallest
  // basic index among the minimum-ratio rows.  Returns false on unbounded.
  bool iterate() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (T[m][j] < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (T[i][enter] <= kPivotEps) continue;
        double ratio = T[i][ncols] / T[i][enter];
        if (ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio < best + 1e-12 && leave >= 0 &&
                   basis[i] < basis[leave]) {
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(int row) {
    T.erase(T.begin() + row);
    basis.erase(basis.begin() + row);
    --m;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int m = static_cast<int>(problem.A.size());
  const int nvar = static_cast<int>(problem.c.size());
  if (static_cast<int>(problem.b.size()) != m)
    throw input_error("solve_lp: b size does not match row count");
  for (const auto& row : problem.A)
    if (static_cast<int>(row.size()) != nvar)
      throw input_error("solve_lp: ragged constraint matrix");

  double b_scale = 1.0;
  for (double v : problem.b) b_scale = std::max(b_scale, std::abs(v));

  /* Phase 1: minimize the sum of artificial variables.  Artificials occupy
     columns nvar..nvar+m-1 and form the initial basis. */
  Tableau tab;
  tab.m = m;
  tab.ncols = nvar + m;
  tab.T.assign(m + 1, std::vector<double>(tab.ncols + 1, 0.0));
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    double sign = problem.b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nvar; ++j) tab.T[i][j] = sign * problem.A[i][j];
    tab.T[i][tab.ncols] = sign * problem.b[i];
    tab.T[i][nvar + i] = 1.0;
    tab.basis[i] = nvar + i;
  }
  // Reduced costs with unit cost on each (basic) artificial.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= tab.ncols; ++j) tab.T[m][j] -= tab.T[i][j];
  for (int i = 0; i < m; ++i) tab.T[m][nvar + i] = 0.0;

  tab.iterate();  // phase 1 is bounded below by 0

  LpSolution sol;
  double phase1 = -tab.T[m][tab.ncols];
  if (phase1 > 1e-7 * b_scale) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  /* Drive leftover artificials out of the basis; a row where no real
     column can pivot is redundant and gets dropped. */
  for (int i = tab.m - 1; i >= 0; --i) {
    if (tab.basis[i] < nvar) continue;
    int col = -1;
    for (int j = 0; j < nvar; ++j) {
      if (std::abs(tab.T[i][j]) > kPivotEps) {
        col = j;
        break;
      }
    }
    if (col >= 0)
      tab.pivot(i, col);
    else
      tab.drop_row(i);
  }

  // Remove artificial columns and install the phase-2 objective.
  for (int i = 0; i <= tab.m; ++i) {
    tab.T[i][nvar] = tab.T[i][tab.ncols];
    tab.T[i].resize(nvar + 1);
  }
  tab.ncols = nvar;
  for (int j = 0; j < nvar; ++j) tab.T[tab.m][j] = problem.c[j];
  tab.T[tab.m][nvar] = 0.0;
  for (int i = 0; i < tab.m; ++i) {
    double cb = problem.c[tab.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= nvar; ++j) tab.T[tab.m][j] -= cb * tab.T[i][j];
  }

  if (!tab.iterate()) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(nvar, 0.0);
  for (int i = 0; i < tab.m; ++i) sol.x[tab.basis[i]] = tab.T[i][nvar];
  sol.objective = 0.0;
  for (int j = 0; j < nvar; ++j) sol.objective += problem.c[j] * sol.x[j];
  return sol;
}

}  // namespace apq
