#include "apq/trace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "apq/errors.hpp"

namespace apq {

namespace {

constexpr double kPi = 3.14159265358979323846;

Scalar i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar::I();
    case 2: return Scalar(-1);
    default: return Scalar(0) - Scalar::I();
  }
}

double coeff_scale(const ComplexPoly& p) {
  double s = 0.0;
  for (const auto& c : p.coeffs()) s += std::abs(c.cd());
  return s;
}

bool approx_root(const ComplexPoly& P, const Scalar& z) {
  if (P.is_exact() && z.exact()) return P.eval(z).is_zero();
  double zmag = std::max(1.0, std::abs(z.cd()));
  double scale = 0.0, pw = 1.0;
  for (int k = 0; k <= P.degree(); ++k) {
    scale += std::abs(P.coeff(k).cd()) * pw;
    pw *= zmag;
  }
  return std::abs(P.eval(z.cd())) <= 1e-7 * std::max(scale, 1e-300);
}

bool scalar_real_within(const Scalar& c, double tol) {
  if (c.exact()) return c.is_real();
  return std::abs(c.cd().imag()) <= tol * (1.0 + std::abs(c.cd()));
}

bool values_hermitian(const std::vector<Scalar>& values, double tol) {
  /* T is real on R[ih] iff i^m T(x^m) is real for every basis monomial. */
  for (size_t m = 0; m < values.size(); ++m)
    if (!scalar_real_within(i_power(static_cast<int>(m)) * values[m], tol))
      return false;
  return true;
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v,
                                  size_t lo, size_t hi) {
  if (hi - lo == 1) return v[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

ComplexPoly delta_P(const ComplexPoly& S, const ComplexPoly& P) {
  return shift(S, Scalar(1)) * shift(P, Scalar(1)) -
         shift(S, Scalar(-1)) * shift(P, Scalar(-1));
}

TraceBasis::TraceBasis(ComplexPoly P, int degree_cap)
    : P_(std::move(P)), n_(P_.degree()), degree_cap_(degree_cap) {
  if (n_ < 2) throw input_error("defining polynomial must have degree at least 2");
  if (degree_cap_ < n_ - 1)
    throw input_error("degree cap must be at least deg P - 1");
}

ComplexPoly TraceBasis::reduce(const ComplexPoly& F) const {
  ComplexPoly R = F;
  while (R.degree() >= n_ - 1) {
    int d = R.degree();
    /* delta_P(x^j) has degree j + n - 1 and leading coefficient
       2(j+n) p_n, which never vanishes; eliminate the degree-d term. */
    ComplexPoly reducer =
        delta_P(ComplexPoly::monomial(d - n_ + 1, Scalar(1)), P_);
    if (reducer.degree() != d)
      throw degenerate_leading("elimination pivot vanished");
    Scalar ratio = R.leading() / reducer.leading();
    double scale = 0.0;
    for (const Scalar& c : R.coeffs()) scale = std::max(scale, std::abs(c.cd()));
    R = R - ratio * reducer;
    /* The top coefficient cancels exactly in infinite precision; drop the
       floating residue so inexact input cannot stall the elimination. */
    if (R.degree() >= d) {
      if (std::abs(R.coeff(d).cd()) > 1e-8 * (1.0 + scale))
        throw degenerate_leading("elimination failed to lower degree");
      std::vector<Scalar> cs(R.coeffs().begin(), R.coeffs().begin() + d);
      R = ComplexPoly(cs);
    }
  }
  return R;
}

TraceBasis build_basis(const ComplexPoly& P, int degree_cap) {
  if (P.degree() < 2)
    throw input_error("defining polynomial must have degree at least 2");
  if (degree_cap < 0) degree_cap = 2 * P.degree() + 16;
  return TraceBasis(P, degree_cap);
}

Scalar trace_apply(const TraceFunctional& T, const ComplexPoly& F) {
  ComplexPoly R = T.basis.reduce(F);
  Scalar out(0);
  for (int k = 0; k <= R.degree(); ++k) out = out + R.coeff(k) * T.values[k];
  return out;
}

Scalar trace_eval(const TraceFunctional& T, const AlgebraElement& u) {
  ComplexPoly S0 = weight_component(u, 0);
  if (S0.degree() < 0) return Scalar(0);
  return trace_apply(T, S0);
}

Scalar form_eval(const TraceFunctional& T, const AlgebraElement& u,
                 const AlgebraElement& v) {
  AlgebraContext ctx(T.basis.P());
  return trace_eval(T, multiply(ctx, u, involution_r(ctx, v)));
}

ComplexPoly solve_difference(const ComplexPoly& F) {
  ComplexPoly S, R = F;
  for (int k = F.degree() + 1; k >= 1; --k) {
    Scalar c = R.coeff(k - 1);
    if (c.is_zero()) continue;
    /* (x+1)^k - (x-1)^k has degree k-1 and leading coefficient 2k, so the
       coefficient of x^{k-1} in the remainder fixes s_k; the free constant
       s_0 is set to zero. */
    Scalar sk = c / Scalar(2 * k);
    S = S + ComplexPoly::monomial(k, sk);
    ComplexPoly pk = ComplexPoly::monomial(k, Scalar(1));
    R = R - sk * (shift(pk, Scalar(1)) - shift(pk, Scalar(-1)));
  }
  return S;
}

TraceFunctional petrov_trace(const ComplexPoly& P, const Scalar& alpha,
                             const Scalar& beta) {
  if (!approx_root(P, alpha) || !approx_root(P, beta))
    throw not_a_pair("alpha and beta must be roots of P");
  Scalar pair_sum = alpha + beta.conj();
  bool paired = pair_sum.exact()
                    ? pair_sum.is_zero()
                    : std::abs(pair_sum.cd()) <=
                          1e-9 * (1.0 + std::abs(alpha.cd()) + std::abs(beta.cd()));
  if (!paired) throw not_a_pair("root pair must satisfy alpha + conj(beta) = 0");

  bool coincide = (alpha.exact() && beta.exact())
                      ? alpha == beta
                      : std::abs(alpha.cd() - beta.cd()) <=
                            1e-12 * (1.0 + std::abs(alpha.cd()));

  TraceFunctional T;
  T.basis = build_basis(P);
  T.provenance = "petrov";
  for (int m = 0; m <= P.degree() - 2; ++m) {
    ComplexPoly S = solve_difference(ComplexPoly::monomial(m, Scalar(1)));
    Scalar val = coincide ? Scalar(2) * S.derivative().eval(alpha)
                          : S.eval(beta) - S.eval(alpha);
    T.values.push_back(val);
  }
  T.hermitian = values_hermitian(T.values, 1e-9);
  return T;
}

Scalar weight_integral(const ComplexPoly& F, double lambda,
                       const QuadratureOptions& quad, double* error_out) {
  if (lambda < 0.0 || lambda >= 1.0)
    throw input_error("lambda must lie in [0, 1)");
  double cospl = std::cos(kPi * lambda);
  double C = std::max(coeff_scale(F), 1e-300);
  int d = std::max(F.degree(), 0);

  /* Truncation: |F(it) w(it)| <= C (1+|t|)^d e^{-pi|t|} (1 + o(1)); choose
     T0 so the tail integral is below a tenth of the target. */
  double T0 = 8.0;
  for (int it = 0; it < 40; ++it) {
    double want =
        (std::log(20.0 * C / quad.target) + d * std::log1p(T0)) / kPi;
    if (want <= T0) break;
    T0 = want;
  }
  double tail = 2.0 * C * std::pow(1.0 + T0, d) * std::exp(-kPi * T0) / kPi;

  /* Integrate the even part G(t) = g(t) + g(-t) over [0, T0] so that odd
     monomials come out exactly zero; composite Simpson, refined until two
     levels agree, summed pairwise for run-to-run determinism. */
  auto g = [&](double t) -> std::complex<double> {
    double w = 1.0 / (2.0 * std::cosh(kPi * t) + 2.0 * cospl);
    return (F.eval(std::complex<double>(0.0, t)) +
            F.eval(std::complex<double>(0.0, -t))) *
           w;
  };
  auto simpson = [&](int N) -> std::complex<double> {
    double h = T0 / N;
    std::vector<std::complex<double>> terms;
    terms.reserve(N + 1);
    for (int k = 0; k <= N; ++k) {
      double wgt = (k == 0 || k == N) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      terms.push_back(wgt * g(k * h));
    }
    return pairwise_sum(terms, 0, terms.size()) * (h / 3.0);
  };

  int N = quad.initial_intervals;
  std::complex<double> prev = simpson(N), cur = prev;
  double disagreement = std::abs(cur);
  while (N < quad.max_intervals) {
    N *= 2;
    cur = simpson(N);
    disagreement = std::abs(cur - prev);
    if (disagreement <= quad.target * (1.0 + std::abs(cur))) break;
    prev = cur;
  }
  if (error_out) *error_out = disagreement + tail;
  return Scalar::inexact(cur);
}

TraceFunctional weight_function_trace(const ComplexPoly& P, double lambda,
                                      const QuadratureOptions& quad) {
  if (P.degree() < 2 || P.degree() % 2 != 0)
    throw input_error("weight-function trace requires even degree at least 2");
  if (!approx_root(P, Scalar::inexact(lambda)) ||
      !approx_root(P, Scalar::inexact(-lambda)))
    throw factorization_mismatch("±lambda must be roots of P");

  int sign = 0;
  if (nonneg_on_line(P, Scalar(0)))
    sign = 1;
  else if (nonneg_on_line(-P, Scalar(0)))
    sign = -1;
  else
    throw sign_convention_unresolved(
        "neither sign of P is nonnegative on the imaginary axis");

  TraceFunctional T;
  T.basis = build_basis(P);
  T.provenance = "weight";
  T.resolved_sign = sign;

  double err0 = 0.0;
  Scalar raw0 = weight_integral(ComplexPoly{Scalar(1)}, lambda, quad, &err0);
  double denom = raw0.cd().real();
  if (!(denom > 0.0)) throw numerical_stall("weight integral of 1 not positive");

  double worst = err0 / denom;
  T.values.push_back(Scalar::inexact(1.0));
  for (int m = 1; m <= P.degree() - 2; ++m) {
    double errm = 0.0;
    Scalar raw = weight_integral(ComplexPoly::monomial(m, Scalar(1)), lambda,
                                 quad, &errm);
    std::complex<double> val = raw.cd() / denom;
    worst = std::max(worst, (errm + std::abs(val) * err0) / denom);
    T.values.push_back(Scalar::inexact(val));
  }
  T.quad_error = worst;
  T.hermitian = values_hermitian(T.values, std::max(1e-9, 10.0 * worst));
  return T;
}

TraceFunctional pullback_trace(const TraceFunctional& T2,
                               const ComplexPoly& P1) {
  const ComplexPoly& P2 = T2.basis.P();
  auto [Q, rem] = divmod(P1, P2);
  bool divides;
  if (P1.is_exact() && P2.is_exact()) {
    divides = rem.degree() < 0;
  } else {
    divides = true;
    double scale = std::max(coeff_scale(P1), 1e-300);
    for (const auto& c : rem.coeffs())
      if (std::abs(c.cd()) > 1e-9 * scale) divides = false;
  }
  if (!divides || Q.degree() < 0)
    throw not_divisible("P1 is not a polynomial multiple of P2");
  if (!nonneg_on_line(Q, Scalar(0)))
    throw not_nonnegative("P1/P2 must be nonnegative on the imaginary axis");

  TraceFunctional T;
  T.basis = build_basis(P1);
  T.provenance = "pullback";
  T.quad_error = T2.quad_error;
  for (int m = 0; m <= P1.degree() - 2; ++m)
    T.values.push_back(trace_apply(T2, ComplexPoly::monomial(m, Scalar(1))));
  T.hermitian = values_hermitian(T.values, std::max(1e-9, 10.0 * T.quad_error));
  return T;
}

}  // namespace apq
