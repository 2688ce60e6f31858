#include "apq/algebra.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "apq/errors.hpp"

namespace apq {

namespace {

// Exact polynomial identity when both sides are exact, otherwise a relative
// coefficient tolerance.  Used by the lifting-condition checks.
bool poly_identity(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  int d = std::max(a.degree(), b.degree());
  double scale = 0.0;
  for (int k = 0; k <= d; ++k)
    scale = std::max({scale, std::abs(a.coeff(k).cd()), std::abs(b.coeff(k).cd())});
  if (scale == 0.0) return true;
  for (int k = 0; k <= d; ++k)
    if (std::abs(a.coeff(k).cd() - b.coeff(k).cd()) > 1e-12 * scale) return false;
  return true;
}

bool poly_real_coeffs(const ComplexPoly& p) {
  double scale = 0.0;
  for (const auto& c : p.coeffs()) scale = std::max(scale, std::abs(c.cd()));
  for (const auto& c : p.coeffs()) {
    if (c.exact()) {
      if (!c.is_real()) return false;
    } else if (std::abs(c.cd().imag()) > 1e-12 * scale) {
      return false;
    }
  }
  return true;
}

// prod_{j=1..m} P(x - 2j + 1)
ComplexPoly cancellation_product(const ComplexPoly& P, int m) {
  ComplexPoly out{Scalar(1)};
  for (int j = 1; j <= m; ++j) out = out * shift(P, Scalar(1 - 2 * j));
  return out;
}

}  // namespace

AlgebraElement AlgebraElement::component(int k, const ComplexPoly& S) {
  if (k % 2 != 0) throw input_error("algebra weights must be even integers");
  AlgebraElement u;
  u.add_component(k, S);
  return u;
}

void AlgebraElement::add_component(int k, const ComplexPoly& S) {
  if (S.degree() < 0) return;
  auto it = comp_.find(k);
  if (it == comp_.end()) {
    comp_.emplace(k, S);
    return;
  }
  it->second = it->second + S;
  if (it->second.degree() < 0) comp_.erase(it);
}

bool AlgebraElement::is_exact() const {
  for (const auto& [k, S] : comp_) {
    (void)k;
    if (!S.is_exact()) return false;
  }
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  for (const auto& [k, S] : rhs.comp_) add_component(k, S);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  for (const auto& [k, S] : rhs.comp_) add_component(k, -S);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    comp_.clear();
    return *this;
  }
  for (auto& [k, S] : comp_) {
    (void)k;
    S = c * S;
  }
  return *this;
}

AlgebraContext::AlgebraContext(ComplexPoly P_in) : P(std::move(P_in)), n(P.degree()) {
  if (n < 2) throw input_error("defining polynomial must have degree at least 2");
}

AlgebraElement gen_e() { return AlgebraElement::component(2, ComplexPoly{Scalar(1)}); }
AlgebraElement gen_f() { return AlgebraElement::component(-2, ComplexPoly{Scalar(1)}); }
AlgebraElement gen_h() { return AlgebraElement::component(0, ComplexPoly::x()); }

AlgebraElement from_h_poly(const ComplexPoly& S) {
  AlgebraElement u;
  if (S.degree() >= 0) u = AlgebraElement::component(0, S);
  return u;
}

AlgebraElement e_power(int k) {
  if (k < 0) throw input_error("negative generator power");
  return AlgebraElement::component(2 * k, ComplexPoly{Scalar(1)});
}

AlgebraElement f_power(int k) {
  if (k < 0) throw input_error("negative generator power");
  return AlgebraElement::component(-2 * k, ComplexPoly{Scalar(1)});
}

AlgebraElement monomial(const AlgebraContext& ctx, int a, const ComplexPoly& S,
                        int b) {
  if (a < 0 || b < 0) throw input_error("negative generator power");
  if (S.degree() < 0) return AlgebraElement();
  /* Cancel the innermost f..e pair repeatedly: f Q(h) e = P(h+1) Q(h+2).
     Each step shortens the word by two letters, so this terminates with a
     pure normal-form monomial. */
  ComplexPoly Q = S;
  while (a > 0 && b > 0) {
    Q = shift(ctx.P, Scalar(1)) * shift(Q, Scalar(2));
    --a;
    --b;
  }
  return AlgebraElement::component(a > 0 ? -2 * a : 2 * b, Q);
}

AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& u,
                        const AlgebraElement& v) {
  AlgebraElement out;
  for (const auto& [k1, S1] : u.components()) {
    int a1 = k1 < 0 ? -k1 / 2 : 0;
    int b1 = k1 > 0 ? k1 / 2 : 0;
    for (const auto& [k2, S2] : v.components()) {
      int a2 = k2 < 0 ? -k2 / 2 : 0;
      int b2 = k2 > 0 ? k2 / 2 : 0;
      /* f^{a1} S1(h) e^{b1} * f^{a2} S2(h) e^{b2}: contract the middle
         e^{b1} f^{a2} into M(h) = prod_{j=1..m} P(h-2j+1) with
         m = min(b1, a2), then push the leftover e- or f-power outward
         through the h-polynomials by argument shifts. */
      int m = std::min(b1, a2);
      ComplexPoly M = cancellation_product(ctx.P, m);
      if (b1 >= a2) {
        int c = b1 - a2;
        ComplexPoly S =
            S1 * shift(M, Scalar(-2 * c)) * shift(S2, Scalar(-2 * c));
        out += monomial(ctx, a1, S, c + b2);
      } else {
        int c = a2 - b1;
        ComplexPoly S =
            shift(S1, Scalar(-2 * c)) * shift(M, Scalar(-2 * c)) * S2;
        out += monomial(ctx, a1 + c, S, b2);
      }
    }
  }
  return out;
}

AlgebraElement involution_r(const AlgebraContext& ctx, const AlgebraElement& u) {
  if (ctx.n % 2 != 0)
    throw not_defined("the antilinear involution requires even degree");
  if (!in_R_ix(ctx.P))
    throw not_defined(
        "the antilinear involution requires P with real values on the "
        "imaginary axis");
  /* r(f^a S(h) e^b) = (-f)^b conj(S)(-h) (-e)^a read through the
     homomorphism property: images of the factors multiply in the same
     order, giving (-1)^{a+b} e^a conj(S)(-h) f^b. */
  AlgebraElement out;
  for (const auto& [k, S] : u.components()) {
    int a = k < 0 ? -k / 2 : 0;
    int b = k > 0 ? k / 2 : 0;
    ComplexPoly Sbar = compose_linear(conj_coeffs(S), Scalar(-1), Scalar(0));
    AlgebraElement img = multiply(ctx, e_power(a), from_h_poly(Sbar));
    img = multiply(ctx, img, f_power(b));
    if ((a + b) % 2 != 0) img *= Scalar(-1);
    out += img;
  }
  return out;
}

AlgebraElement antiinvolution_tau(const AlgebraContext& ctx,
                                  const AlgebraElement& u) {
  ComplexPoly flipped = compose_linear(ctx.P, Scalar(-1), Scalar(0));
  if (ctx.n % 2 != 0) flipped = -flipped;
  if (!poly_identity(ctx.P, flipped))
    throw not_defined("P(x) = (-1)^n P(-x) fails, so tau does not lift");
  /* tau reverses products, so tau(f^a S(h) e^b) =
     tau(e)^b tau(S(h)) tau(f)^a = (-1)^{na} e^b S(-h) f^a. */
  AlgebraElement out;
  for (const auto& [k, S] : u.components()) {
    int a = k < 0 ? -k / 2 : 0;
    int b = k > 0 ? k / 2 : 0;
    ComplexPoly Sflip = compose_linear(S, Scalar(-1), Scalar(0));
    AlgebraElement img = multiply(ctx, e_power(b), from_h_poly(Sflip));
    img = multiply(ctx, img, f_power(a));
    if ((ctx.n * a) % 2 != 0) img *= Scalar(-1);
    out += img;
  }
  return out;
}

LiftingReport lifting_report(const ComplexPoly& P) {
  if (P.degree() < 2)
    throw input_error("defining polynomial must have degree at least 2");
  LiftingReport rep;
  rep.n = P.degree();
  ComplexPoly mirrored = compose_linear(P, Scalar(-1), Scalar(0));
  bool even_symmetric = poly_identity(P, mirrored);
  bool parity_symmetric =
      poly_identity(P, rep.n % 2 == 0 ? mirrored : -mirrored);
  rep.tau_antiinvolution = parity_symmetric;
  rep.sign_involution = true;
  rep.sign_antiinvolution = parity_symmetric;
  rep.swap_antiinvolution = true;
  rep.swap_involution = rep.n % 2 == 0 && even_symmetric;
  rep.r_lifts = rep.n % 2 == 0 && in_R_ix(P);
  rep.tau_r_commute = rep.n % 2 == 0 && even_symmetric && poly_real_coeffs(P);
  return rep;
}

ComplexPoly weight_component(const AlgebraElement& u, int k) {
  auto it = u.components().find(k);
  if (it == u.components().end()) return ComplexPoly();
  return it->second;
}

std::string to_string(const AlgebraElement& u) {
  if (u.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, S] : u.components()) {
    if (!first) out << " + ";
    first = false;
    if (k < 0) {
      out << "f";
      if (k < -2) out << "^" << (-k / 2);
      out << "*";
    }
    out << "(" << to_string(S) << ")(h)";
    if (k > 0) {
      out << "*e";
      if (k > 2) out << "^" << (k / 2);
    }
  }
  return out.str();
}

namespace {

int parse_exponent(const std::string& t, size_t& pos) {
  if (pos >= t.size() || t[pos] != '^') return 1;
  ++pos;
  size_t start = pos;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
  if (pos == start) throw input_error("expected integer exponent in element text");
  return std::atoi(t.substr(start, pos - start).c_str());
}

// One term of the grammar: [f[^a]*] (coeffs)(h) [*e[^b]], or a bare
// generator e/f/h with optional exponent.
AlgebraElement parse_term(const std::string& t) {
  size_t pos = 0;
  auto bare = [&](char g) {
    ++pos;
    int k = parse_exponent(t, pos);
    if (pos != t.size()) throw input_error("trailing text after generator power");
    if (g == 'h') return from_h_poly(ComplexPoly::monomial(k, Scalar(1)));
    return g == 'e' ? e_power(k) : f_power(k);
  };
  if (!t.empty() && (t[0] == 'e' || t[0] == 'h')) return bare(t[0]);
  if (!t.empty() && t[0] == 'f' &&
      (t.size() == 1 || t[1] == '^') &&
      t.find('*') == std::string::npos)
    return bare('f');

  int a = 0;
  if (pos < t.size() && t[pos] == 'f') {
    ++pos;
    a = parse_exponent(t, pos);
    if (pos >= t.size() || t[pos] != '*')
      throw input_error("expected '*' after f-power in element text");
    ++pos;
  }
  if (pos >= t.size() || t[pos] != '(')
    throw input_error("expected '(' starting coefficient list");
  int depth = 1;
  size_t start = ++pos;
  while (pos < t.size() && depth > 0) {
    if (t[pos] == '(') ++depth;
    if (t[pos] == ')') --depth;
    ++pos;
  }
  if (depth != 0) throw input_error("unbalanced parentheses in element text");
  ComplexPoly S = parse_poly(t.substr(start, pos - 1 - start));
  if (pos + 3 > t.size() || t.compare(pos, 3, "(h)") != 0)
    throw input_error("expected '(h)' after coefficient list");
  pos += 3;
  int b = 0;
  if (pos < t.size()) {
    if (t[pos] != '*' || pos + 1 >= t.size() || t[pos + 1] != 'e')
      throw input_error("expected '*e' after '(h)'");
    pos += 2;
    b = parse_exponent(t, pos);
    if (pos != t.size()) throw input_error("trailing text in element term");
  }
  if (a > 0 && b > 0)
    throw input_error("element text must be in normal form (f- and e-powers "
                      "cannot both appear in one term)");
  if (S.degree() < 0) return AlgebraElement();
  return AlgebraElement::component(a > 0 ? -2 * a : 2 * b, S);
}

}  // namespace

AlgebraElement parse_element(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw input_error("empty element text");
  if (s == "0") return AlgebraElement();
  AlgebraElement out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == '+' && depth == 0)) {
      if (i == start) throw input_error("empty term in element text");
      out += parse_term(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace apq
