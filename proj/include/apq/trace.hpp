#ifndef APQ_TRACE_HPP
#define APQ_TRACE_HPP

#include <string>
#include <vector>

#include "apq/algebra.hpp"
#include "apq/poly.hpp"

namespace apq {

/*
 * Traces on A_P restrict to linear functionals on C[h] that kill every
 *
 *   delta_P(S) = S(x+1)P(x+1) - S(x-1)P(x-1).
 *
 * The quotient L(P) = C[x] / span{delta_P(S)} has dimension n - 1 where
 * n = deg P: delta_P(x^j) has degree j + n - 1 with leading coefficient
 * 2(j+n) p_n, so leading-term elimination reduces any polynomial to a
 * unique representative of degree <= n - 2.
 */
ComplexPoly delta_P(const ComplexPoly& S, const ComplexPoly& P);

class TraceBasis {
 public:
  TraceBasis() = default;
  TraceBasis(ComplexPoly P, int degree_cap);

  const ComplexPoly& P() const { return P_; }
  int n() const { return n_; }
  int dim() const { return n_ - 1; }
  int degree_cap() const { return degree_cap_; }

  /* Unique representative of degree <= n - 2 modulo the image of delta_P.
     Reducers beyond the stored cap are generated on demand; the operation
     is pure and exact for exact input. */
  ComplexPoly reduce(const ComplexPoly& F) const;

 private:
  ComplexPoly P_;
  int n_ = 0;
  int degree_cap_ = 0;
};

// degree_cap < 0 selects the default cap 2 deg P + 16.
TraceBasis build_basis(const ComplexPoly& P, int degree_cap = -1);

/*
 * A trace given by its values on the reduced monomial basis 1, x, ...,
 * x^{n-2}.  `hermitian` records whether the functional is real on R[ih]
 * (checked on the basis).  `provenance` is one of "petrov", "weight",
 * "pullback", "manual".  For quadrature-built traces `quad_error` carries
 * the absolute error estimate and `resolved_sign` the overall sign of P
 * that makes P nonnegative on the imaginary axis (+1 for P itself, -1 for
 * -P); it is 0 when not applicable.
 */
struct TraceFunctional {
  TraceBasis basis;
  std::vector<Scalar> values;
  bool hermitian = false;
  std::string provenance = "manual";
  int resolved_sign = 0;
  double quad_error = 0.0;
};

// T applied to a polynomial in h: reduce, then pair with the stored values.
Scalar trace_apply(const TraceFunctional& T, const ComplexPoly& F);

// T applied to an algebra element: traces are supported on the weight-0
// component.
Scalar trace_eval(const TraceFunctional& T, const AlgebraElement& u);

/*
 * The sesquilinear form (u, v) = T(u * r(v)).  Requires the antilinear
 * involution r, hence n even and P in R[ix].
 */
Scalar form_eval(const TraceFunctional& T, const AlgebraElement& u,
                 const AlgebraElement& v);

/*
 * The unique S with S(x+1) - S(x-1) = F(x) and S(0) = 0, solved by
 * top-down coefficient matching (deg S = deg F + 1).  When conj(F)(-x) =
 * F(x) this choice satisfies the normalization S(-x) = -conj(S)(x).
 */
ComplexPoly solve_difference(const ComplexPoly& F);

/*
 * The difference-equation trace attached to a root pair alpha, beta of P
 * with alpha + conj(beta) = 0: T(F) = S(beta) - S(alpha) where S solves
 * the difference equation, or T(F) = 2 S'(alpha) when alpha = beta.
 * Exact for exact inputs.  Throws not_a_pair when the root or pairing
 * requirement fails.
 */
TraceFunctional petrov_trace(const ComplexPoly& P, const Scalar& alpha,
                             const Scalar& beta);

// Quadrature controls for the weight-function trace.
struct QuadratureOptions {
  double target = 1e-12;  // relative agreement between refinements
  int initial_intervals = 256;
  int max_intervals = 1 << 18;
};

/*
 * Integral of F against the weight
 *
 *   w(x) = e^{pi i x} / ((e^{pi i x} + e^{pi i lambda})(e^{pi i x} + e^{-pi i lambda}))
 *        = 1 / (2 cos(pi x) + 2 cos(pi lambda)),
 *
 * along the imaginary axis, where w(it) = 1 / (2 cosh(pi t) + 2 cos(pi
 * lambda)) > 0.  The integrand decays like e^{-pi |t|}; the tail is
 * truncated accordingly and the rule refined until two successive
 * estimates agree.  error_out (optional) receives the absolute error
 * estimate.
 */
Scalar weight_integral(const ComplexPoly& F, double lambda,
                       const QuadratureOptions& quad = {},
                       double* error_out = nullptr);

/*
 * The trace T(F) = integral of F w along the imaginary axis, normalized so
 * that T(1) = 1.  Requires n even and P(±lambda) = 0 (else
 * factorization_mismatch), and a resolvable overall sign: either P or -P
 * must be nonnegative on the imaginary axis (else
 * sign_convention_unresolved); the resolved sign is recorded.
 */
TraceFunctional weight_function_trace(const ComplexPoly& P, double lambda,
                                      const QuadratureOptions& quad = {});

/*
 * Pull a trace for P2 back to a trace for P1 when Q = P1/P2 is a
 * polynomial nonnegative on the imaginary axis: F -> T2(reduce_{P2}(F)) is
 * a trace for P1 because delta_{P1}(S) = delta_{P2}(S Q).  Throws
 * not_divisible / not_nonnegative when the hypotheses fail.
 */
TraceFunctional pullback_trace(const TraceFunctional& T2,
                               const ComplexPoly& P1);

}  // namespace apq

#endif  // APQ_TRACE_HPP
