#ifndef APQ_SIMPLEX_HPP
#define APQ_SIMPLEX_HPP

#include <vector>

namespace apq {

/*
 * Minimal dense linear programming in standard form:
 *
 *   minimize    c' x
 *   subject to  A x = b,  x >= 0.
 *
 * Two-phase simplex with Bland's anti-cycling rule.  The problems solved
 * here have at most a few dozen rows and a few hundred columns, so a dense
 * deterministic tableau is the right tool; no effort is made to be fast.
 */
struct LpProblem {
  std::vector<std::vector<double>> A;  // m rows, each of length nvar
  std::vector<double> b;               // length m
  std::vector<double> c;               // length nvar
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;  // primal point (valid when Optimal)
  double objective = 0.0;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace apq

#endif  // APQ_SIMPLEX_HPP
