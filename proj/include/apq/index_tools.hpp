#ifndef APQ_INDEX_TOOLS_HPP
#define APQ_INDEX_TOOLS_HPP

#include <complex>
#include <vector>

#include "apq/poly.hpp"

namespace apq {

/*
 * The index of a polynomial along the vertical line Re x = a:
 *
 *   Ind(x - b) = -sign(Re b - a),   Ind(fg) = Ind f + Ind g,
 *
 * so Ind F is the (right roots) - (left roots) count, negated.  Computed
 * from the root multiset and cross-validated, when the roots are far
 * enough from the line, against the winding of the unwrapped argument of
 * F(a + it) over a long segment.  Roots within tol of the line raise
 * root_on_line.
 */
int index(const ComplexPoly& F, double a, double tol = 1e-9);

/*
 * Root-count inequalities for F with Re F >= 0 along Re x = a: writing
 * rho_{>a} / rho_{<a} for the root counts (with multiplicity) on either
 * side and k for the number of distinct on-line roots of odd multiplicity,
 *
 *   rho_{>a} <= rho_{<a} + k + 1   and   rho_{<a} <= rho_{>a} + k + 1;
 *
 * when equality holds and deg F is odd, the sign of the leading
 * coefficient is forced to (-1)^d (resp. (-1)^{d-1}) for deg F = 2d - 1.
 * The hypothesis is checked (nonneg_on_line); violations raise
 * hypothesis_fails.
 */
struct Lemma42Report {
  int rho_above = 0;
  int rho_below = 0;
  int k_odd_on_line = 0;
  bool inequalities_hold = false;
  bool equality_above = false;  // rho_{>a} == rho_{<a} + k + 1
  bool equality_below = false;  // rho_{<a} == rho_{>a} + k + 1
  bool leading_sign_checked = false;
  bool leading_sign_ok = true;
};

Lemma42Report lemma42_check(const ComplexPoly& F, double a);

/*
 * Sampled unwrapped argument of F along Re x = a.  `bound` is the sup of
 * |arg| over all samples, `small_bound` the sup over |t| <= window = 1/eps.
 * Sampling density is tied to deg F near the window with geometric spacing
 * outside; a minimum-modulus floor guards against sampling through a root
 * (near_zero_on_line).
 */
struct ArgumentProfile {
  double line = 0.0;
  std::vector<double> t;
  std::vector<double> arg;      // unwrapped along increasing t
  std::vector<double> modulus;
  double window = 0.0;
  double bound = 0.0;
  double small_bound = 0.0;
};

ArgumentProfile argument_profile(const ComplexPoly& F, double a, double eps,
                                 double t_max = 0.0, int n_samples = 0);

struct ApproximationCaps {
  int max_factor_count = 8;   // number of E-factor pairs n
  int max_power = 40;         // largest exponent l
  double margin = 0.1;        // keep sup |arg| below pi/2 - margin
};

/*
 * For the quadratic P(x) = -(x - a)(x - 1 + conj(a)) with Re a < 0,
 * construct F, nonnegative on Re x = 1/2, with F(x)P(x) of
 * (pi/2 - margin)-bounded, eps-small argument along the imaginary axis,
 * from the factors
 *
 *   E_l^-(x) = ((l + x - a)/l)^l,   E_l^+(x) = ((l + 1 - conj(a) - x)/l)^l,
 *
 * via R = (prod E^+ - 1)(prod E^- - 1) and F = R/P (exact division; the
 * remainder vanishes because R kills both roots of P).  The parameter
 * search increases the factor count first, then the exponents; exhaustion
 * raises search_exhausted.
 */
ComplexPoly good_approximation_quadratic(std::complex<double> a_root,
                                         double eps,
                                         const ApproximationCaps& caps = {});

/*
 * Combine per-factor approximations F_i (each with F_i P_i certified of
 * bounded small argument along the imaginary axis) into F with F * prod P_i
 * certified.  Single factor passes through; the product is re-certified
 * numerically and search_exhausted raised when the combined profile misses
 * the bound.
 */
struct ApproximationFactor {
  ComplexPoly P;
  ComplexPoly F;
};

ComplexPoly compose_good_approximations(
    const std::vector<ApproximationFactor>& factors, double eps);

/*
 * Non-unitarizability certificate for P positive on the imaginary axis
 * with all roots |Re| > 1: pair the roots of P across Re x = 0 (gamma with
 * -conj(gamma); failures raise pairing_failure), build the good
 * approximation of 1/P(2x - 1) from the per-pair quadratics, substitute
 * x -> (x+1)/2, and round the result to nearby rational coefficients.  The
 * returned F passes certificate_check_prop38(F, P); preconditions are
 * checked (input_error).
 */
ComplexPoly nonunitarizability_witness(const ComplexPoly& P, double eps = 0.3);

}  // namespace apq

#endif  // APQ_INDEX_TOOLS_HPP
