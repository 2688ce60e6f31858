#ifndef APQ_SCALAR_HPP
#define APQ_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <complex>
#include <string>

#include "apq/errors.hpp"

namespace apq {

using Rational = boost::multiprecision::mpq_rational;

/* A complex number in a dual representation: an exact Gaussian rational
 * (re_ + i*im_) when constructed symbolically, or a double pair otherwise.
 * The double view approx_ is kept in sync in both modes, so read-only float
 * consumers never need to branch.  Ring operations preserve exactness when
 * both operands are exact; any inexact operand poisons the result.
 */
class Scalar {
 public:
  Scalar() : exact_(true), re_(0), im_(0), approx_(0.0, 0.0) {}
  Scalar(int v) : exact_(true), re_(v), im_(0), approx_(double(v), 0.0) {}
  Scalar(long v) : exact_(true), re_(v), im_(0), approx_(double(v), 0.0) {}
  Scalar(const Rational& re, const Rational& im = Rational(0))
      : exact_(true), re_(re), im_(im) {
    sync();
  }
  static Scalar inexact(std::complex<double> z) {
    Scalar s;
    s.exact_ = false;
    s.approx_ = z;
    return s;
  }
  static Scalar inexact(double re, double im = 0.0) {
    return inexact(std::complex<double>(re, im));
  }
  /* i as an exact scalar. */
  static Scalar I() { return Scalar(Rational(0), Rational(1)); }

  bool exact() const { return exact_; }
  std::complex<double> cd() const { return approx_; }
  double re_d() const { return approx_.real(); }
  double im_d() const { return approx_.imag(); }
  const Rational& re_q() const {
    require_exact();
    return re_;
  }
  const Rational& im_q() const {
    require_exact();
    return im_;
  }

  bool is_zero() const {
    return exact_ ? (re_ == 0 && im_ == 0) : approx_ == std::complex<double>(0.0, 0.0);
  }
  bool is_real() const { return exact_ ? im_ == 0 : approx_.imag() == 0.0; }

  Scalar conj() const {
    if (exact_) return Scalar(re_, -im_);
    return inexact(std::conj(approx_));
  }

  Scalar operator-() const {
    if (exact_) return Scalar(-re_, -im_);
    return inexact(-approx_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    return inexact(a.approx_ + b.approx_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    return inexact(a.approx_ - b.approx_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_)
      return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return inexact(a.approx_ * b.approx_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw input_error("scalar division by zero");
    if (a.exact_ && b.exact_) {
      Rational d = b.re_ * b.re_ + b.im_ * b.im_;
      return Scalar((a.re_ * b.re_ + a.im_ * b.im_) / d,
                    (a.im_ * b.re_ - a.re_ * b.im_) / d);
    }
    return inexact(a.approx_ / b.approx_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /* Equality is exact-vs-exact rational comparison when possible, double
   * comparison otherwise.  Mixed exact/inexact compares the double views. */
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.approx_ == b.approx_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  double abs_d() const { return std::abs(approx_); }

 private:
  void sync() {
    approx_ = std::complex<double>(re_.convert_to<double>(), im_.convert_to<double>());
  }
  void require_exact() const {
    if (!exact_) throw input_error("exact rational view requested from an inexact scalar");
  }

  bool exact_;
  Rational re_, im_;
  std::complex<double> approx_;
};

/* Text form: `a`, `ai`, or `a+bi` where each numeric part is an integer,
 * a fraction p/q, or a decimal (decimals are read as exact rationals:
 * "0.25" means 1/4). */
Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);

/* Shortest double rendering that round-trips through strtod. */
std::string format_double(double v);

}  // namespace apq

#endif
