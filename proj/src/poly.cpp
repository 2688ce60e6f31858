#include "apq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace apq {

namespace {

using Int = boost::multiprecision::mpz_int;
using CD = std::complex<double>;

const Scalar kZero{};

/* ---------------- scalar text handling ---------------- */

bool is_sign(char c) { return c == '+' || c == '-'; }

/* GMP string constructors treat a leading 0 as an octal prefix; always strip. */
Int digits_to_int(std::string digits) {
  size_t first = digits.find_first_not_of('0');
  if (first == std::string::npos) return Int(0);
  return Int(digits.substr(first));
}

Rational pow10_rational(long e) {
  Rational r = 1;
  Rational ten = 10;
  for (long i = 0; i < std::labs(e); ++i) r *= ten;
  if (e < 0) return Rational(1) / r;
  return r;
}

/* Integer, fraction p/q, or decimal-with-exponent, as an exact rational. */
Rational parse_number(const std::string& in, const std::string& ctx) {
  if (in.empty()) throw input_error("empty number in scalar '" + ctx + "'");
  std::string s = in;
  bool neg = false;
  if (is_sign(s[0])) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw input_error("bare sign in scalar '" + ctx + "'");
  auto slash = s.find('/');
  Rational val;
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos ||
        den.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("bad fraction '" + in + "' in scalar '" + ctx + "'");
    Int d = digits_to_int(den);
    if (d == 0) throw input_error("zero denominator in scalar '" + ctx + "'");
    val = Rational(digits_to_int(num)) / Rational(d);
  } else {
    long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      std::string es = s.substr(e + 1);
      s.erase(e);
      if (es.empty() || (is_sign(es[0]) && es.size() == 1) ||
          es.find_first_not_of("0123456789", is_sign(es[0]) ? 1 : 0) != std::string::npos)
        throw input_error("bad exponent in scalar '" + ctx + "'");
      exp10 = std::strtol(es.c_str(), nullptr, 10);
    }
    auto dot = s.find('.');
    std::string digits = s;
    long frac_len = 0;
    if (dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      frac_len = long(s.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("bad number '" + in + "' in scalar '" + ctx + "'");
    val = Rational(digits_to_int(digits)) * pow10_rational(exp10 - frac_len);
  }
  return neg ? -val : val;
}

/* Split "a+bi" at the top-level sign (one not opening the string and not part
 * of an exponent). */
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (is_sign(s[i]) && s[i - 1] != 'e' && s[i - 1] != 'E') {
      out.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw input_error("empty scalar");
  auto terms = split_terms(s);
  if (terms.size() > 2) throw input_error("too many terms in scalar '" + text + "'");
  Rational re = 0, im = 0;
  bool saw_im = false;
  for (const auto& t : terms) {
    bool imag = !t.empty() && t.back() == 'i';
    std::string body = imag ? t.substr(0, t.size() - 1) : t;
    if (imag && (body.empty() || (body.size() == 1 && is_sign(body[0]))))
      body += "1";  // "i", "+i", "-i"
    Rational v = parse_number(body, text);
    if (imag) {
      if (saw_im) throw input_error("two imaginary terms in scalar '" + text + "'");
      im = v;
      saw_im = true;
    } else {
      if (terms.size() == 2 && &t == &terms[1])
        throw input_error("real term after imaginary in scalar '" + text + "'");
      re = v;
    }
  }
  return Scalar(re, im);
}

std::string format_double(double v) {
  for (int prec = 15; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    if (std::strtod(os.str().c_str(), nullptr) == v) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string to_string(const Scalar& s) {
  if (s.exact()) {
    const Rational &re = s.re_q(), &im = s.im_q();
    if (im == 0) return rational_str(re);
    std::string imag;
    if (im == 1)
      imag = "i";
    else if (im == -1)
      imag = "-i";
    else
      imag = rational_str(im) + "i";
    if (re == 0) return imag;
    return rational_str(re) + (im > 0 ? "+" : "") + imag;
  }
  double re = s.re_d(), im = s.im_d();
  if (im == 0.0) return format_double(re);
  std::string imag = format_double(im) + "i";
  if (re == 0.0) return imag;
  return format_double(re) + (im > 0 ? "+" : "") + imag;
}

/* ---------------- ComplexPoly basics ---------------- */

void ComplexPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ComplexPoly ComplexPoly::monomial(int deg, const Scalar& coeff) {
  std::vector<Scalar> c(deg + 1, Scalar(0));
  c[deg] = coeff;
  return ComplexPoly(std::move(c));
}

const Scalar& ComplexPoly::coeff(int k) const {
  if (k < 0 || k >= int(c_.size())) return kZero;
  return c_[k];
}

bool ComplexPoly::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.exact(); });
}

Scalar ComplexPoly::eval(const Scalar& z) const {
  Scalar acc(0);
  for (int k = int(c_.size()) - 1; k >= 0; --k) acc = acc * z + c_[k];
  return acc;
}

std::complex<double> ComplexPoly::eval(std::complex<double> z) const {
  CD acc(0.0, 0.0);
  for (int k = int(c_.size()) - 1; k >= 0; --k) acc = acc * z + c_[k].cd();
  return acc;
}

std::vector<CD> ComplexPoly::cd_coeffs() const {
  std::vector<CD> out(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) out[k] = c_[k].cd();
  return out;
}

ComplexPoly ComplexPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Scalar> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = Scalar(long(k)) * c_[k];
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::operator-() const {
  std::vector<Scalar> d(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) d[k] = -c_[k];
  return ComplexPoly(std::move(d));
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<Scalar> d(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(int(k)) + b.coeff(int(k));
  return ComplexPoly(std::move(d));
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<Scalar> d(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(int(k)) - b.coeff(int(k));
  return ComplexPoly(std::move(d));
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> d(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return ComplexPoly(std::move(d));
}

ComplexPoly operator*(const Scalar& s, const ComplexPoly& a) {
  std::vector<Scalar> d(a.c_.size());
  for (size_t k = 0; k < a.c_.size(); ++k) d[k] = s * a.c_[k];
  return ComplexPoly(std::move(d));
}

bool operator==(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (size_t k = 0; k < a.c_.size(); ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

int RootMultiset::total() const {
  int t = 0;
  for (const auto& r : roots) t += r.multiplicity;
  return t;
}

/* ---------------- substitutions and line parts ---------------- */

ComplexPoly compose_linear(const ComplexPoly& s, const Scalar& alpha, const Scalar& beta) {
  if (s.is_zero()) return {};
  ComplexPoly lin({beta, alpha});
  ComplexPoly acc = ComplexPoly::constant(s.leading());
  for (int k = s.degree() - 1; k >= 0; --k) acc = acc * lin + ComplexPoly::constant(s.coeff(k));
  return acc;
}

ComplexPoly shift(const ComplexPoly& s, const Scalar& c) {
  return compose_linear(s, Scalar(1), c);
}

ComplexPoly conj_coeffs(const ComplexPoly& s) {
  std::vector<Scalar> d(s.coeffs().size());
  for (size_t k = 0; k < d.size(); ++k) d[k] = s.coeffs()[k].conj();
  return ComplexPoly(std::move(d));
}

ComplexPoly bar_reflect(const ComplexPoly& s, const Scalar& a) {
  if (!a.is_real()) throw input_error("bar_reflect: line parameter must be real");
  return compose_linear(conj_coeffs(s), Scalar(-1), Scalar(2) * a);
}

ComplexPoly re_line(const ComplexPoly& s, const Scalar& a) {
  Scalar half(Rational(1) / 2);
  return half * (s + bar_reflect(s, a));
}

ComplexPoly im_line(const ComplexPoly& s, const Scalar& a) {
  Scalar minus_half_i(Rational(0), Rational(-1) / 2);  // 1/(2i)
  return minus_half_i * (s - bar_reflect(s, a));
}

/* ---------------- division, gcd, square-free ---------------- */

std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& a, const ComplexPoly& b) {
  if (b.is_zero()) throw input_error("polynomial division by zero");
  int db = b.degree();
  std::vector<Scalar> rem(a.coeffs());
  if (int(rem.size()) - 1 < db) return {ComplexPoly{}, a};
  std::vector<Scalar> quot(rem.size() - db, Scalar(0));
  Scalar lead = b.leading();
  for (int k = int(rem.size()) - 1; k >= db; --k) {
    if (rem[k].is_zero()) continue;
    Scalar t = rem[k] / lead;
    quot[k - db] = t;
    rem[k] = Scalar(0);  // exact cancellation by construction
    for (int j = 0; j < db; ++j) rem[k - db + j] -= t * b.coeff(j);
  }
  return {ComplexPoly(std::move(quot)), ComplexPoly(std::move(rem))};
}

std::optional<ComplexPoly> exact_divide(const ComplexPoly& a, const ComplexPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

namespace {
ComplexPoly monicize(const ComplexPoly& p) {
  if (p.is_zero() || p.leading() == Scalar(1)) return p;
  return (Scalar(1) / p.leading()) * p;
}
}  // namespace

ComplexPoly poly_gcd(const ComplexPoly& a, const ComplexPoly& b) {
  if (!a.is_exact() || !b.is_exact())
    throw input_error("poly_gcd requires exact coefficients");
  ComplexPoly u = monicize(a), v = monicize(b);
  while (!v.is_zero()) {
    ComplexPoly r = divmod(u, v).second;
    u = v;
    v = monicize(r);
  }
  return u;
}

std::vector<std::pair<ComplexPoly, int>> yun_squarefree(const ComplexPoly& f) {
  if (!f.is_exact()) throw input_error("yun_squarefree requires exact coefficients");
  if (f.degree() < 1) return {};
  ComplexPoly F = monicize(f);
  ComplexPoly g = poly_gcd(F, F.derivative());
  std::vector<std::pair<ComplexPoly, int>> out;
  if (g.degree() == 0) {
    out.emplace_back(F, 1);
    return out;
  }
  ComplexPoly b = *exact_divide(F, g);
  ComplexPoly c = *exact_divide(F.derivative(), g);
  ComplexPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    ComplexPoly ai = poly_gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    b = *exact_divide(b, ai);
    c = *exact_divide(d, ai);
    d = c - b.derivative();
  }
  return out;
}

/* ---------------- root finding ---------------- */

namespace {

/* Horner evaluation of p and p' in one pass. */
void eval_with_derivative(const std::vector<CD>& c, CD z, CD& p, CD& dp) {
  p = c.back();
  dp = CD(0.0, 0.0);
  for (int k = int(c.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

/* Magnitude bound used as an evaluation condition number at z. */
double eval_scale(const std::vector<CD>& c, CD z) {
  double az = std::abs(z), pw = 1.0, s = 0.0;
  for (const CD& ck : c) {
    s += std::abs(ck) * pw;
    pw *= az;
  }
  return std::max(s, 1e-300);
}

/* Aberth-Ehrlich simultaneous iteration on a monic polynomial (ascending
 * coefficients, leading == 1).  Roots are accepted either by step size or by
 * residual relative to the evaluation scale, so clustered roots (square-free
 * input aside) terminate too. */
std::vector<CD> aberth(const std::vector<CD>& coeffs) {
  int n = int(coeffs.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-coeffs[0]};
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(coeffs[k]));
  radius = 1.0 + radius;
  std::vector<CD> z(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * (k + 0.35) / n + 0.42;
    z[k] = 0.8 * radius * CD(std::cos(ang), std::sin(ang));
  }
  const int max_iters = 600;
  for (int iter = 0; iter < max_iters; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      CD p, dp;
      eval_with_derivative(coeffs, z[i], p, dp);
      double scale = eval_scale(coeffs, z[i]);
      if (std::abs(p) <= 1e-15 * scale) continue;  // residual-converged
      all_done = false;
      if (dp == CD(0.0, 0.0)) {
        z[i] += CD(1e-6 * radius, 1e-6 * radius);
        continue;
      }
      CD ratio = p / dp;
      CD sum(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        CD diff = z[i] - z[j];
        if (diff == CD(0.0, 0.0)) diff = CD(1e-12 * radius, 0.0);
        sum += 1.0 / diff;
      }
      CD denom = 1.0 - ratio * sum;
      CD w = (denom == CD(0.0, 0.0)) ? ratio : ratio / denom;
      z[i] -= w;
      if (std::abs(w) > 1e-14 * (1.0 + std::abs(z[i]))) all_done = false;
    }
    if (all_done) return z;
  }
  // Accept if every residual is small despite step-based stalling.
  for (int i = 0; i < n; ++i) {
    CD p, dp;
    eval_with_derivative(coeffs, z[i], p, dp);
    if (std::abs(p) > 1e-10 * eval_scale(coeffs, z[i]))
      throw non_convergence("root iteration did not converge");
  }
  return z;
}

void newton_polish(const std::vector<CD>& coeffs, CD& z, int steps = 3) {
  for (int s = 0; s < steps; ++s) {
    CD p, dp;
    eval_with_derivative(coeffs, z, p, dp);
    if (dp == CD(0.0, 0.0)) return;
    CD step = p / dp;
    if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) return;  // reject wild steps
    z -= step;
  }
}

std::vector<CD> monic_cd(const ComplexPoly& p) {
  auto c = p.cd_coeffs();
  CD lead = c.back();
  for (auto& ck : c) ck /= lead;
  c.back() = CD(1.0, 0.0);
  return c;
}

bool root_order(const RootMultiset::Entry& a, const RootMultiset::Entry& b) {
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

}  // namespace

RootMultiset roots(const ComplexPoly& p, double tol) {
  if (p.is_zero()) throw input_error("roots of the zero polynomial");
  RootMultiset out;
  if (p.degree() == 0) return out;
  if (p.is_exact()) {
    for (const auto& [factor, mult] : yun_squarefree(p)) {
      auto c = monic_cd(factor);
      auto zs = aberth(c);
      for (CD& z : zs) {
        newton_polish(c, z);
        out.roots.push_back({z, mult});
      }
    }
  } else {
    auto c = monic_cd(p);
    auto zs = aberth(c);
    std::sort(zs.begin(), zs.end(), [](CD a, CD b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    // Greedy clustering at tol: a root joins the current cluster if it is
    // within tol of the cluster seed.
    std::vector<bool> used(zs.size(), false);
    for (size_t i = 0; i < zs.size(); ++i) {
      if (used[i]) continue;
      CD sum = zs[i];
      int cnt = 1;
      used[i] = true;
      for (size_t j = i + 1; j < zs.size(); ++j) {
        if (!used[j] && std::abs(zs[j] - zs[i]) <= tol) {
          sum += zs[j];
          ++cnt;
          used[j] = true;
        }
      }
      CD centroid = sum / double(cnt);
      if (cnt == 1) newton_polish(c, centroid);
      out.roots.push_back({centroid, cnt});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), root_order);
  double resid = 0.0;
  for (const auto& r : out.roots) resid = std::max(resid, std::abs(p.eval(r.value)));
  out.residual = resid;
  return out;
}

int rho_count(const ComplexPoly& p, double a, Cmp cmp, double tol) {
  auto rs = roots(p, tol);
  if (cmp == Cmp::lt || cmp == Cmp::gt) {
    for (const auto& r : rs.roots)
      if (std::abs(r.value.real() - a) <= tol)
        throw boundary_ambiguity("root within tol of the line Re x = " + format_double(a));
  }
  int count = 0;
  for (const auto& r : rs.roots) {
    double d = r.value.real() - a;
    bool in = false;
    switch (cmp) {
      case Cmp::lt: in = d < -tol; break;
      case Cmp::le: in = d <= tol; break;
      case Cmp::gt: in = d > tol; break;
      case Cmp::ge: in = d >= -tol; break;
      case Cmp::eq: in = std::abs(d) <= tol; break;
    }
    if (in) count += r.multiplicity;
  }
  return count;
}

bool in_R_ix(const ComplexPoly& p) {
  /* P(it) real for real t <=> coefficient of x^k is real for even k and
   * purely imaginary for odd k. */
  double scale = 0.0;
  for (const Scalar& c : p.coeffs()) scale = std::max(scale, c.abs_d());
  for (int k = 0; k <= p.degree(); ++k) {
    const Scalar& c = p.coeff(k);
    if (c.exact()) {
      if (k % 2 == 0 ? c.im_q() != 0 : c.re_q() != 0) return false;
    } else {
      double off = k % 2 == 0 ? std::abs(c.im_d()) : std::abs(c.re_d());
      if (off > 1e-12 * (1.0 + scale)) return false;
    }
  }
  return true;
}

/* ---------------- real-line sign analysis (Sturm) ---------------- */

namespace {

using RatPoly = std::vector<Rational>;  // ascending, trailing zeros trimmed

void rat_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(Rational(long(k)) * p[k]);
  return d;
}

/* Remainder of a by b over Q. */
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  int db = int(b.size()) - 1;
  Rational lead = b.back();
  for (int k = int(a.size()) - 1; k >= db; --k) {
    if (a[k] == 0) continue;
    Rational t = a[k] / lead;
    a[k] = 0;
    for (int j = 0; j < db; ++j) a[k - db + j] -= t * b[j];
  }
  rat_trim(a);
  return a;
}

/* Scale to a primitive integer polynomial, preserving sign. */
void rat_primitive(RatPoly& p) {
  if (p.empty()) return;
  Int l = 1;
  for (const Rational& q : p) l = lcm(l, Int(denominator(q)));
  Int g = 0;
  std::vector<Int> ints(p.size());
  for (size_t k = 0; k < p.size(); ++k) {
    ints[k] = Int(numerator(p[k] * Rational(l)));
    g = gcd(g, abs(ints[k]));
  }
  if (g == 0) return;
  for (size_t k = 0; k < p.size(); ++k) p[k] = Rational(ints[k] / g);
}

int rat_sign(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

/* Sign variations in the Sturm chain evaluated at +inf (dir=+1) or -inf. */
int variations_at_infinity(const std::vector<RatPoly>& chain, int dir) {
  int var = 0, prev = 0;
  for (const RatPoly& p : chain) {
    if (p.empty()) continue;
    int s = rat_sign(p.back());
    if (dir < 0 && (p.size() - 1) % 2 == 1) s = -s;
    if (prev != 0 && s != 0 && s != prev) ++var;
    if (s != 0) prev = s;
  }
  return var;
}

/* Number of distinct real roots of p (any multiplicities). */
int sturm_distinct_real_roots(RatPoly p) {
  rat_trim(p);
  if (int(p.size()) - 1 < 1) return 0;
  std::vector<RatPoly> chain;
  rat_primitive(p);
  chain.push_back(p);
  RatPoly d = rat_derivative(p);
  rat_primitive(d);
  chain.push_back(d);
  while (!chain.back().empty() && chain.back().size() > 1) {
    RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
    for (Rational& q : r) q = -q;
    rat_primitive(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return variations_at_infinity(chain, -1) - variations_at_infinity(chain, +1);
}

/* Exact decision of g(t) >= 0 for all real t, g with rational coefficients. */
bool rat_nonneg_on_reals(const RatPoly& g) {
  RatPoly p = g;
  rat_trim(p);
  if (p.empty()) return true;
  int deg = int(p.size()) - 1;
  if (deg == 0) return p[0] >= 0;
  if (deg % 2 == 1 || p.back() < 0) return false;
  /* Remaining risk: a real root of odd multiplicity.  Convert to a Scalar
   * poly and reuse the exact square-free machinery. */
  std::vector<Scalar> sc(p.size());
  for (size_t k = 0; k < p.size(); ++k) sc[k] = Scalar(p[k]);
  for (const auto& [factor, mult] : yun_squarefree(ComplexPoly(std::move(sc)))) {
    if (mult % 2 == 0) continue;
    RatPoly fr(factor.degree() + 1);
    for (int k = 0; k <= factor.degree(); ++k) fr[k] = factor.coeff(k).re_q();
    if (sturm_distinct_real_roots(fr) > 0) return false;
  }
  return true;
}

}  // namespace

bool nonneg_on_line(const ComplexPoly& s, const Scalar& a) {
  if (!a.is_real()) throw input_error("nonneg_on_line: line parameter must be real");
  if (s.is_zero()) return true;
  double scale = 0.0;
  for (const Scalar& c : s.coeffs()) scale = std::max(scale, c.abs_d());
  ComplexPoly im = im_line(s, a);
  if (!im.is_zero()) {
    if (s.is_exact() && a.exact()) throw not_real_on_line("im_line(S, a) != 0");
    double imax = 0.0;
    for (const Scalar& c : im.coeffs()) imax = std::max(imax, c.abs_d());
    if (imax > 1e-9 * (1.0 + scale)) throw not_real_on_line("im_line(S, a) not negligible");
  }
  ComplexPoly sr = re_line(s, a);
  ComplexPoly g = compose_linear(sr, Scalar::I(), a);  // g(t) = S(a + it), real coeffs
  if (g.is_zero()) return true;
  if (g.is_exact()) {
    RatPoly gr(g.degree() + 1);
    for (int k = 0; k <= g.degree(); ++k) {
      if (g.coeff(k).im_q() != 0)
        throw degenerate_leading("line restriction of a re_line-fixed polynomial not real");
      gr[k] = g.coeff(k).re_q();
    }
    return rat_nonneg_on_reals(gr);
  }
  /* Float fallback: leading/parity test plus odd-multiplicity near-real
   * clusters. */
  int deg = g.degree();
  double lead = g.coeff(deg).re_d();
  if (deg % 2 == 1) return false;
  if (deg == 0) return lead >= 0.0;
  if (lead < 0.0) return false;
  auto rs = roots(g, 1e-7);
  for (const auto& r : rs.roots)
    if (r.multiplicity % 2 == 1 && std::abs(r.value.imag()) <= 1e-6 * (1.0 + std::abs(r.value)))
      return false;
  return true;
}

/* ---------------- polynomial text format ---------------- */

ComplexPoly parse_poly(const std::string& text) {
  std::vector<Scalar> coeffs;
  std::string cur;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, cur, ',')) {
    coeffs.push_back(parse_scalar(cur));
    any = true;
  }
  if (!any) throw input_error("empty polynomial text");
  return ComplexPoly(std::move(coeffs));
}

std::string to_string(const ComplexPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k) out += ",";
    out += to_string(p.coeff(k));
  }
  return out;
}

}  // namespace apq
