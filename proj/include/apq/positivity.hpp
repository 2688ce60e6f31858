#ifndef APQ_POSITIVITY_HPP
#define APQ_POSITIVITY_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apq/algebra.hpp"
#include "apq/poly.hpp"
#include "apq/trace.hpp"

namespace apq {

/*
 * Positivity of an invariant hermitian form on A_P reduces to positivity
 * of the associated trace on a cone C of weight-0 elements: every norm
 * (a, a) equals (b, b) for some b of weight 0 or 2, and those in turn
 * produce the two generator families below.  A hermitian trace T gives a
 * positive definite form exactly when T > 0 on the nonzero elements of C.
 */
enum class GeneratorKind { R1, R2 };

struct ConeGenerator {
  GeneratorKind kind = GeneratorKind::R1;
  ComplexPoly witness;  // the generating polynomial R
  ComplexPoly image;    // the resulting element of C[h], unreduced
};

/*
 * Generator images:
 *
 *   R1:  R(x) * conj(R)(-x)                (norm of the weight-0 element R(h))
 *   R2:  -Re_0( conj(R)(1-x) R(x-1) P(x-1) )  (norm of the weight-2 element R(h-1)e)
 *
 * where Re_0 is the involution-invariant part along Re x = 0.  Exact for
 * exact inputs; R must be nonzero.
 */
ConeGenerator cone_generator(GeneratorKind kind, const ComplexPoly& R,
                             const ComplexPoly& P);

/*
 * Replace a homogeneous even-weight element a by b of weight 0 or 2 with
 * (a, a) = (b, b) for every invariant form: for weight 2t >= 4 write
 * t = 2k + r with r in {0, 1} and move the k outer e's to -f's on the
 * right,
 *
 *   S(h)e^t  ->  (-1)^k S(h - 4k... ) ... e^r f^k   (computed in normal form),
 *
 * one proof move e X e |-> X e (-f) at a time; negative weights go through
 * the involution r first ((a, a) = (r(a), r(a)) for trace forms).  Throws
 * not_homogeneous for mixed-weight input.
 */
AlgebraElement reduce_norm_element(const AlgebraContext& ctx,
                                   const AlgebraElement& a);

/*
 * Truncated Gram matrices of the two generator families on the monomial
 * basis R = x^j, j = 0..D:
 *
 *   G1[j][k] = T((-1)^k x^{j+k})
 *   G2[j][k] = -1/2 [ T(K_{jk}) + conj-reflected T(K_{kj}) ],
 *              K_{jk}(x) = (x-1)^j (1-x)^k P(x-1),
 *
 * hermitized to machine precision.  `positive` holds when both minimal
 * eigenvalues exceed tol.
 */
struct GramReport {
  int degree = 0;
  Eigen::MatrixXcd G1;
  Eigen::MatrixXcd G2;
  std::pair<double, double> min_eigenvalues{0.0, 0.0};
  bool positive = false;
};

GramReport gram_matrices(const TraceFunctional& T, const ComplexPoly& P, int D,
                         double tol = 0.0);

/*
 * Nonnegative combination of cone generators whose reduction in L(P) is
 * numerically zero: a witness that 0 lies in the closed cone, hence that
 * no positive definite invariant form exists.
 */
struct LpCertificate {
  std::vector<std::pair<ConeGenerator, double>> terms;
  double residual = 0.0;          // norm of the reduced combination
  double combination_norm = 0.0;  // norm scale of the combination
};

struct LpOptions {
  int random_combinations = 64;   // extra generators with random complex R
  std::uint64_t seed = 20240901;  // deterministic generator sampling
  double feasibility_margin = 1e-7;
  double zero_witness_ratio = 1e-8;
};

struct LpOutcome {
  bool feasible = false;
  std::optional<TraceFunctional> point;      // interior trace when feasible
  std::optional<LpCertificate> certificate;  // 0-in-cone witness otherwise
  double margin = 0.0;  // Chebyshev margin (feasible) or residual ratio
};

/*
 * Decide, at truncation degree D, whether some hermitian trace is strictly
 * positive on the generator family (Chebyshev-center linear program over
 * the real coordinates T((ix)^m)), or whether a nonnegative combination of
 * generators reduces to ~0 in L(P).  Requires dim L(P) <= 12.  Throws
 * numerical_stall when neither side can be certified at tolerance.
 */
LpOutcome lp_feasibility(const ComplexPoly& P, int D, const LpOptions& opts = {});

/*
 * Exact sufficient test for 0 in C (hence non-unitarizability): F nonzero
 * with Re F >= 0 and Re F(x-1)P(x-1) >= 0 along Re x = 0, both checked
 * exactly via nonneg_on_line.
 */
bool certificate_check_prop38(const ComplexPoly& F, const ComplexPoly& P);

/*
 * The factor Q of P carrying exactly the roots with |Re| < 1 (with
 * multiplicity), normalized so that P/Q is a polynomial positive on the
 * imaginary axis.  All roots inner gives P itself; none gives the constant
 * 1.  Roots within tol of |Re| = 1 raise boundary_ambiguity.
 */
ComplexPoly inner_root_factor(const ComplexPoly& P, double tol = 1e-9);

enum class Status { Unitarizable, NotUnitarizable, Unknown };

struct RootCounts {
  int inner = 0;     // |Re| < 1 - tol, with multiplicity
  int boundary = 0;  // within tol of |Re| = 1
  int outer = 0;     // |Re| > 1 + tol
  bool ascending = false;  // P(it) -> +inf as t -> +-inf
};

struct Verdict {
  Status status = Status::Unknown;
  std::string rationale;
  std::optional<TraceFunctional> trace;   // Gram-positive evidence
  std::optional<ComplexPoly> certificate; // exact 0-in-cone evidence
  RootCounts root_counts;
};

/*
 * Top-level decision for the regular bimodule of A_P, P in R[ix]:
 *
 *   - at least three inner roots            -> Unitarizable;
 *   - n even, ascending, >= 1 inner root    -> Unitarizable;
 *   - n even, ascending, no inner/boundary  -> NotUnitarizable;
 *   - otherwise                             -> Unknown (honest: boundary
 *     roots and the descending-sign gaps are reported, never guessed).
 *
 * Unitarizable evidence is a trace passing Gram positivity at truncation D
 * (difference-equation and weight-function constructions, then an LP
 * search); NotUnitarizable evidence is a certificate polynomial passing
 * certificate_check_prop38.  Throws input_error when P is not in R[ix].
 */
Verdict decide_regular_unitarizability(const ComplexPoly& P, double tol = 1e-9,
                                       int D = 6);

const char* to_string(Status s);

}  // namespace apq

#endif  // APQ_POSITIVITY_HPP
