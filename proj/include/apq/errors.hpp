#ifndef APQ_ERRORS_HPP
#define APQ_ERRORS_HPP

#include <stdexcept>

namespace apq {

/* Error taxonomy shared by the whole library.
 *
 * input_error:     the request itself is malformed or outside an operation's
 *                  domain (bad polynomial text, involution not defined, ...).
 *                  The CLI maps these to exit code 2.
 * numerical_error: the computation is well-posed but could not be completed
 *                  at the requested tolerance (root iteration stalled, search
 *                  exhausted, boundary ambiguity, ...).  CLI exit code 3.
 */
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A strict root-location query cannot be answered because some root lies
 * within tol of the dividing line. */
struct boundary_ambiguity : numerical_error {
  using numerical_error::numerical_error;
};
/* Root iteration failed to reach the requested tolerance. */
struct non_convergence : numerical_error {
  using numerical_error::numerical_error;
};
/* A polynomial restricted to the given vertical line is not real-valued. */
struct not_real_on_line : input_error {
  using input_error::input_error;
};
/* The requested involution does not exist for this algebra. */
struct not_defined : input_error {
  using input_error::input_error;
};
/* (alpha, beta) is not an admissible root pair of P. */
struct not_a_pair : input_error {
  using input_error::input_error;
};
/* +-lambda are not roots of P. */
struct factorization_mismatch : input_error {
  using input_error::input_error;
};
/* Neither sign of P is nonnegative on the imaginary axis. */
struct sign_convention_unresolved : numerical_error {
  using numerical_error::numerical_error;
};
/* Polynomial quotient has a nonzero remainder. */
struct not_divisible : input_error {
  using input_error::input_error;
};
/* A cofactor required to be nonnegative on a line is not. */
struct not_nonnegative : input_error {
  using input_error::input_error;
};
/* An element required to be homogeneous has several weight components. */
struct not_homogeneous : input_error {
  using input_error::input_error;
};
/* An elimination pivot that can never vanish vanished (internal bug). */
struct degenerate_leading : std::logic_error {
  using std::logic_error::logic_error;
};
/* The LP is degenerate at tolerance: neither feasibility nor a 0-in-cone
 * witness could be established. */
struct numerical_stall : numerical_error {
  using numerical_error::numerical_error;
};
/* A root lies on (or within tol of) the reference line of an index query. */
struct root_on_line : numerical_error {
  using numerical_error::numerical_error;
};
/* Sampled modulus dipped below the configured floor. */
struct near_zero_on_line : numerical_error {
  using numerical_error::numerical_error;
};
/* The hypothesis of a checked lemma fails on the given input. */
struct hypothesis_fails : input_error {
  using input_error::input_error;
};
/* Parameter search ran out of its configured caps. */
struct search_exhausted : numerical_error {
  using numerical_error::numerical_error;
};
/* Roots could not be matched into conjugate pairs across the line. */
struct pairing_failure : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace apq

#endif
