#ifndef APQ_MODULES_HPP
#define APQ_MODULES_HPP

#include <optional>
#include <string>
#include <vector>

#include "apq/poly.hpp"

namespace apq {

enum class Parity { even, odd };

/*
 * An irreducible Harish-Chandra module is determined by its set of
 * h-weights: an arithmetic progression with difference 2 that starts at a
 * root of P plus 1 or at -infinity and ends at a root of P minus 1 or at
 * +infinity.  Unset endpoints mean the unbounded variants.  A doubly
 * infinite progression is either the symbolic one-parameter family (no
 * residue pinned) or a pinned member with `family_residue` = lambda_0, the
 * progression lambda_0 + 2Z.
 */
struct ModuleDescriptor {
  std::optional<Scalar> start;
  std::optional<Scalar> end;
  int step = 2;
  std::optional<Scalar> family_residue;

  bool is_family() const { return !start && !end && !family_residue; }
  bool is_finite() const { return start.has_value() && end.has_value(); }
  // Number of weights of a finite progression; throws input_error otherwise.
  int dimension() const;
  // The weight list of a finite progression, ascending.
  std::vector<Scalar> weights() const;
};

/*
 * All irreducible module descriptors for A_P: finite and half-infinite
 * progressions explicitly, the doubly infinite progressions as one
 * symbolic family (residues avoiding every root+1 modulo 2).  A
 * progression is irreducible exactly when no interior weight mu has
 * P(mu - 1) = 0, which pins finite modules to the first admissible end.
 * For odd n only bounded-below modules exist.  n_parity must match deg P.
 */
std::vector<ModuleDescriptor> enumerate_irreducibles(const ComplexPoly& P,
                                                     Parity n_parity,
                                                     double tol = 1e-9);

// Pin the symbolic family to the progression residue + 2Z.  Residues that
// hit a root+1 modulo 2 are rejected (the progression would be reducible).
ModuleDescriptor instantiate_family(const ComplexPoly& P,
                                    const ModuleDescriptor& family,
                                    const Scalar& residue, double tol = 1e-9);

struct UnitarityReport {
  bool unitarizable = false;
  std::optional<Scalar> failing_weight;
  std::string reason;
};

/*
 * Unitarizability of the module with weight set Λ: requires Λ ⊂ R and
 * P(λ-1) < 0 for every λ in Λ' (Λ minus its smallest element when bounded
 * below, all of Λ otherwise).  Decided by explicit evaluation inside the
 * window |λ| <= 2 + max |root of P| plus the asymptotic sign of P on any
 * unbounded tail; outside the window P has no further sign changes.
 * Requires the symmetries behind the form: n even and P even with real
 * coefficients (throws not_defined otherwise); a symbolic family must be
 * instantiated first (input_error).
 */
UnitarityReport is_unitarizable_module(const ComplexPoly& P,
                                       const ModuleDescriptor& d,
                                       double tol = 1e-9);

/*
 * The squared-norm ratio along the adjoint chain of the n = 2 bimodule
 * analysis: (eu, eu) = (k+1)/(4k+6) ((k+1)^2 - (lambda+1)^2) (u, u) for a
 * highest weight vector u of weight 2k.
 */
Scalar sl2_form_coefficient(int k, const Scalar& lambda);

struct BimoduleEntry {
  std::string name;
  bool unitarizable = false;
};

/*
 * The irreducible Harish-Chandra bimodule inventory for the n = 2 algebra
 * with parameter lambda ((lambda+1)^2 real), with each entry's
 * unitarizability decided by the sign of the chain coefficient at the
 * minimal highest weight:
 *
 *   - "regular" always appears; positive iff (lambda+1)^2 < 1;
 *   - lambda in Z (up to lambda ~ -2-lambda, excluding -1): "Ann(V)" and
 *     "End(V)" (the latter named "C" when dim V = 1), with chains starting
 *     at 2 lambda + 2 and 0 respectively;
 *   - lambda in 1/2 + Z: the "non-regular" bimodule with chain starting at
 *     2 lambda + 2 (half-integer steps).
 */
std::vector<BimoduleEntry> classify_sl2_bimodules(const Scalar& lambda);

// All lambda with P(lambda+1) = 0 and P(lambda-1) = 0, i.e. midpoints of
// root pairs at distance 2.
std::vector<Scalar> one_dim_bimodule_candidates(const ComplexPoly& P,
                                                double tol = 1e-9);

}  // namespace apq

#endif  // APQ_MODULES_HPP
