#ifndef APQ_POLY_HPP
#define APQ_POLY_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apq/scalar.hpp"

namespace apq {

/* Dense univariate polynomial with Scalar (dual exact/float) coefficients,
 * ascending degree, trailing zeros trimmed (zero polynomial = empty). */
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { normalize(); }
  ComplexPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { normalize(); }
  static ComplexPoly constant(const Scalar& v) { return ComplexPoly({v}); }
  static ComplexPoly monomial(int deg, const Scalar& coeff = Scalar(1));
  /* The identity polynomial x. */
  static ComplexPoly x() { return monomial(1); }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /* Coefficient of x^k; zero beyond the stored degree. */
  const Scalar& coeff(int k) const;
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_exact() const;

  Scalar eval(const Scalar& z) const;
  std::complex<double> eval(std::complex<double> z) const;
  std::vector<std::complex<double>> cd_coeffs() const;

  ComplexPoly derivative() const;
  ComplexPoly operator-() const;
  friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(const Scalar& s, const ComplexPoly& a);
  friend bool operator==(const ComplexPoly& a, const ComplexPoly& b);
  friend bool operator!=(const ComplexPoly& a, const ComplexPoly& b) { return !(a == b); }

 private:
  void normalize();
  std::vector<Scalar> c_;
};

struct RootMultiset {
  struct Entry {
    std::complex<double> value;
    int multiplicity;
  };
  std::vector<Entry> roots;  // sorted by (Re, Im)
  double residual = 0.0;     // max |P(root)| over the refined roots
  int total() const;
};

enum class Cmp { lt, le, gt, ge, eq };

/* S(x + c). */
ComplexPoly shift(const ComplexPoly& s, const Scalar& c);
/* Coefficient-wise complex conjugation. */
ComplexPoly conj_coeffs(const ComplexPoly& s);
/* S(alpha*x + beta) by Horner composition; exact when inputs are. */
ComplexPoly compose_linear(const ComplexPoly& s, const Scalar& alpha, const Scalar& beta);
/* S-bar(2a - x): on the vertical line Re x = a this evaluates to conj(S(x)). */
ComplexPoly bar_reflect(const ComplexPoly& s, const Scalar& a);
/* Polynomial real/imaginary part along Re x = a:
 * re_line = (S + bar_reflect(S,a))/2, im_line = (S - bar_reflect(S,a))/(2i);
 * re_line + i*im_line = S identically. */
ComplexPoly re_line(const ComplexPoly& s, const Scalar& a);
ComplexPoly im_line(const ComplexPoly& s, const Scalar& a);

/* Euclidean division a = q*b + r, deg r < deg b. */
std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& a, const ComplexPoly& b);
/* Quotient when the remainder is exactly zero, nullopt otherwise. */
std::optional<ComplexPoly> exact_divide(const ComplexPoly& a, const ComplexPoly& b);
/* Monic gcd over Q(i); both inputs must be exact. */
ComplexPoly poly_gcd(const ComplexPoly& a, const ComplexPoly& b);
/* Yun square-free decomposition (exact inputs): list of (factor, multiplicity)
 * with f = leading * prod factor_i^i, factors monic, pairwise coprime. */
std::vector<std::pair<ComplexPoly, int>> yun_squarefree(const ComplexPoly& f);

/* All complex roots with multiplicities.  Exact inputs go through the
 * square-free decomposition (multiplicities read off exactly, each square-free
 * factor solved by Aberth-Ehrlich iteration); float inputs fall back to Aberth
 * on P itself with greedy clustering at tol. */
RootMultiset roots(const ComplexPoly& p, double tol);

/* Number of roots (with multiplicity) whose real part compares to a as
 * requested.  eq counts the band |Re - a| <= tol; le/ge absorb the band;
 * lt/gt are strict and raise boundary_ambiguity if the band is inhabited. */
int rho_count(const ComplexPoly& p, double a, Cmp cmp, double tol);

/* True iff P(it) is real for all real t, i.e. P is fixed by re_line at 0. */
bool in_R_ix(const ComplexPoly& p);

/* True iff t -> S(a + it) is real and >= 0 for all real t.  Exact inputs are
 * decided symbolically (leading sign, degree parity, and odd-multiplicity real
 * roots via Sturm sequences); float inputs use the root-based fallback.
 * Raises not_real_on_line when im_line(S, a) != 0. */
bool nonneg_on_line(const ComplexPoly& s, const Scalar& a);

/* Comma-separated coefficient list, ascending degree, entries in the Scalar
 * text form (`a`, `ai`, `a+bi`). */
ComplexPoly parse_poly(const std::string& text);
std::string to_string(const ComplexPoly& p);

}  // namespace apq

#endif
