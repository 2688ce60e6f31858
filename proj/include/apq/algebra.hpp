#ifndef APQ_ALGEBRA_HPP
#define APQ_ALGEBRA_HPP

#include <map>
#include <string>

#include "apq/poly.hpp"

namespace apq {

/*
 * The algebra A_P is generated by e, f, h subject to
 *
 *   [h, e] = 2e,   [h, f] = -2f,   ef = P(h - 1),   fe = P(h + 1),
 *
 * where P is a fixed polynomial of degree n >= 2.  Under ad h the algebra
 * splits into even weight spaces: the weight-2k component is S(h)e^k for
 * k >= 0 and f^{-k}S(h) for k < 0, with S an arbitrary polynomial.  An
 * AlgebraElement stores the finitely many nonzero components of this
 * decomposition, keyed by weight.
 */
class AlgebraElement {
 public:
  AlgebraElement() = default;

  // Single component of weight k (k even): S(h)e^{k/2} or f^{-k/2}S(h).
  static AlgebraElement component(int k, const ComplexPoly& S);

  const std::map<int, ComplexPoly>& components() const { return comp_; }
  bool is_zero() const { return comp_.empty(); }

  // True when every stored coefficient is exact.
  bool is_exact() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const Scalar& c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    a += b;
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    a -= b;
    return a;
  }
  friend AlgebraElement operator*(const Scalar& c, AlgebraElement a) {
    a *= c;
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a) {
    a *= Scalar(-1);
    return a;
  }

  bool operator==(const AlgebraElement& rhs) const { return comp_ == rhs.comp_; }
  bool operator!=(const AlgebraElement& rhs) const { return !(*this == rhs); }

 private:
  // Invariant: values are nonzero polynomials, keys are even.
  std::map<int, ComplexPoly> comp_;

  void add_component(int k, const ComplexPoly& S);
};

// The defining parameter P together with its degree n = deg P >= 2.
struct AlgebraContext {
  ComplexPoly P;
  int n;

  explicit AlgebraContext(ComplexPoly P_in);
};

// Generators as elements: h is the weight-0 polynomial x, e and f sit in
// weights +2 and -2 with coefficient 1.
AlgebraElement gen_e();
AlgebraElement gen_f();
AlgebraElement gen_h();

// Polynomial in h as a weight-0 element.
AlgebraElement from_h_poly(const ComplexPoly& S);

// e^k and f^k for k >= 0 (k = 0 gives the unit).
AlgebraElement e_power(int k);
AlgebraElement f_power(int k);

// Normal form of the word f^a * S(h) * e^b (a, b >= 0).
AlgebraElement monomial(const AlgebraContext& ctx, int a, const ComplexPoly& S,
                        int b);

/*
 * Product in normal form.  Polynomials in h commute across powers of e and
 * f by argument shifts (S(h)e^k = e^k S(h+2k), S(h)f^k = f^k S(h-2k)), and
 * adjacent e/f pairs cancel into evaluations of P:
 *
 *   e^m f^m = prod_{j=1..m} P(h - 2j + 1),
 *   f S(h) e = P(h+1) S(h+2).
 *
 * Exact inputs give an exact result.
 */
AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& u,
                        const AlgebraElement& v);

/*
 * The antilinear algebra involution r: e -> -f, f -> -e, h -> -h, with
 * complex conjugation on coefficients.  Defined when n is even and
 * P lies in R[ix] (equivalently conj(P)(-x) = P(x)); otherwise throws
 * not_defined.
 */
AlgebraElement involution_r(const AlgebraContext& ctx, const AlgebraElement& u);

/*
 * The linear antiautomorphism tau: e -> e, f -> (-1)^n f, h -> -h, with
 * tau(uv) = tau(v)tau(u) and tau^2 = id.  Defined exactly when
 * P(x) = (-1)^n P(-x); otherwise throws not_defined.
 */
AlgebraElement antiinvolution_tau(const AlgebraContext& ctx,
                                  const AlgebraElement& u);

/*
 * Which symmetries of the graded algebra lift to A_P.  Each flag records
 * the polynomial identity that characterizes the lift:
 *
 *   tau_antiinvolution   e -> e, f -> (-1)^n f, h -> -h     P(x) = (-1)^n P(-x)
 *   sign_involution      e -> -e, f -> -f, h -> h           always lifts
 *   sign_antiinvolution  e -> -e, f -> (-1)^{n+1} f, h -> -h  (-1)^n P(x) = P(-x)
 *   swap_antiinvolution  e -> f, f -> e, h -> h             always lifts
 *   swap_involution      e -> f, f -> e, h -> -h            n even and P(x) = P(-x)
 *   r_lifts              e -> -f, f -> -e, h -> -h (antilinear)  n even and conj(P)(-x) = P(x)
 *   tau_r_commute        n even and P(x) = P(-x) with real coefficients
 */
struct LiftingReport {
  int n = 0;
  bool tau_antiinvolution = false;
  bool sign_involution = true;
  bool sign_antiinvolution = false;
  bool swap_antiinvolution = true;
  bool swap_involution = false;
  bool r_lifts = false;
  bool tau_r_commute = false;
};

LiftingReport lifting_report(const ComplexPoly& P);

// The S_k of the normal form, or the zero polynomial when the component is
// absent (including odd k, which never carries a component).
ComplexPoly weight_component(const AlgebraElement& u, int k);

/*
 * Text form: components are rendered in increasing weight as
 *
 *   f^a*(c0,c1,...)(h)      (weight -2a)
 *   (c0,c1,...)(h)          (weight 0)
 *   (c0,c1,...)(h)*e^b      (weight +2b)
 *
 * joined by " + ", with exponent 1 omitted.  parse_element accepts this
 * grammar plus the bare generator forms "e", "f", "h" with optional
 * integer exponents.
 */
std::string to_string(const AlgebraElement& u);
AlgebraElement parse_element(const std::string& text);

}  // namespace apq

#endif  // APQ_ALGEBRA_HPP
