#include "apq/index_tools.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "apq/errors.hpp"
#include "apq/positivity.hpp"

namespace apq {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

double coeff_scale(const ComplexPoly& p) {
  double s = 0.0;
  for (const Scalar& c : p.coeffs()) s = std::max(s, std::abs(c.cd()));
  return s;
}

/* Horner evaluation with a renormalized accumulator: the argument (and the
 * log-modulus) survive even where |F| overflows the double range far out on
 * the line.  Only downward renormalization is needed; the accumulator can
 * dip harmlessly into denormals near a root. */
struct LogVal {
  double arg = 0.0;
  double log_mod = 0.0;
  double rel = 1.0;  // |F(z)| relative to sum_k |c_k| |z|^k: cancellation meter
};

LogVal scaled_eval(const std::vector<cd>& coeffs, cd z) {
  cd acc(0.0, 0.0);
  double acc_abs = 0.0;
  double log_scale = 0.0;
  const double az = std::abs(z);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    const cd c = *it * std::exp(-log_scale);
    acc = acc * z + c;
    acc_abs = acc_abs * az + std::abs(c);
    const double m = std::max(std::abs(acc), acc_abs);
    if (m > 1e120) {
      acc /= m;
      acc_abs /= m;
      log_scale += std::log(m);
    }
  }
  const double m = std::abs(acc);
  return {std::arg(acc),
          m > 0.0 ? log_scale + std::log(m)
                  : -std::numeric_limits<double>::infinity(),
          acc_abs > 0.0 ? m / acc_abs : 0.0};  // acc_abs = 0 only at F(0) = 0
}

std::vector<cd> cd_coeff_vector(const ComplexPoly& p) {
  std::vector<cd> out;
  out.reserve(p.coeffs().size());
  for (const Scalar& c : p.coeffs()) out.push_back(c.cd());
  return out;
}

/* Total argument change of F along Re x = a over t in [-T, T], from step-wise
 * principal differences.  Sets *coarse when any step exceeds pi/2 (the
 * unwrapping is then unreliable and the caller refines). */
double unwrapped_sweep(const std::vector<cd>& coeffs, double a, double T,
                       long n, bool* coarse) {
  *coarse = false;
  double prev = scaled_eval(coeffs, cd(a, -T)).arg;
  double total = 0.0;
  for (long i = 1; i <= n; ++i) {
    const double t = -T + 2.0 * T * double(i) / double(n);
    const double cur = scaled_eval(coeffs, cd(a, t)).arg;
    const double d = std::remainder(cur - prev, 2.0 * kPi);
    if (std::abs(d) > 0.5 * kPi) {
      *coarse = true;
      return 0.0;
    }
    total += d;
    prev = cur;
  }
  return total;
}

/* Doubles are dyadic rationals, so Rational(v) is exact; used to place exact
 * vertical lines for the hypothesis checks. */
Scalar exact_real(double v) { return Scalar(Rational(v)); }

/* Round v to `bits` significant bits: the nearby dyadic rational p/2^k. */
Rational dyadic_rational(double v, int bits) {
  if (v == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(v, &e);
  Rational r(static_cast<long>(std::llround(std::ldexp(m, bits))));
  for (int sh = e - bits; sh > 0; --sh) r *= 2;
  for (int sh = e - bits; sh < 0; ++sh) r /= 2;
  return r;
}

ComplexPoly dyadic_poly(const ComplexPoly& p, int bits) {
  std::vector<Scalar> cs;
  cs.reserve(p.coeffs().size());
  for (const Scalar& c : p.coeffs()) {
    const cd z = c.cd();
    cs.emplace_back(dyadic_rational(z.real(), bits),
                    dyadic_rational(z.imag(), bits));
  }
  return ComplexPoly(cs);
}

/* ---- E-factor machinery ----------------------------------------------
 *
 * For real alpha < 0, b = 1 - alpha and uniform exponents l (n factor
 * pairs), the candidate is
 *
 *   R = (R+ - 1)(R- - 1),  R-(x) = ((l + x - alpha)/l)^(n l),
 *                          R+(x) = ((l + b - x)/l)^(n l).
 *
 * On x = it the argument of R is available in closed form: the powers
 * contribute n*l times the principal argument of the base (the bases stay
 * in the right half-plane), and subtracting 1 adds arg(1 - 1/R^{+-}),
 * principal since |R^{+-}| > 1 there.  No coefficients, no overflow, no
 * unwrapping — the search over (n, l) uses this directly. */
double pair_R_arg(double alpha, int n, int l, double t) {
  const double b = 1.0 - alpha;
  const double e = double(n) * double(l);
  const cd base_m = cd(double(l) - alpha, t) / double(l);
  const cd base_p = cd(double(l) + b, -t) / double(l);
  double total = 0.0;
  for (const cd& base : {base_m, base_p}) {
    const double argv = e * std::arg(base);
    const double logv = e * std::log(std::abs(base));
    if (logv > 40.0) {
      total += argv;  // 1/R below 4e-18: subtracting 1 is invisible
    } else {
      const cd R = std::exp(cd(logv, argv));
      total += argv + std::arg(1.0 - 1.0 / R);
    }
  }
  return total;
}

struct SearchProfile {
  double bound = 0.0;
  double small = 0.0;
};

/* R has real coefficients, so arg R(it) is odd in t: scan t >= 0 only. */
SearchProfile search_profile(double alpha, int n, int l, double w_small) {
  SearchProfile sp;
  const long n_in = 4096;
  for (long i = 0; i <= n_in; ++i) {
    const double t = w_small * double(i) / double(n_in);
    const double a = std::abs(pair_R_arg(alpha, n, l, t));
    sp.bound = std::max(sp.bound, a);
    sp.small = std::max(sp.small, a);
  }
  const double t_max = std::max(2048.0, 8.0 * double(n) * double(l));
  const double ratio = 1.0 + 1.0 / (8.0 * double(n) * double(l));
  for (double t = w_small * ratio; t < t_max; t *= ratio)
    sp.bound = std::max(sp.bound, std::abs(pair_R_arg(alpha, n, l, t)));
  return sp;
}

ComplexPoly poly_pow(const ComplexPoly& base, int e) {
  ComplexPoly out{Scalar(1)};
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

ComplexPoly build_R_poly(double alpha, int n, int l) {
  const double b = 1.0 - alpha;
  const ComplexPoly one{Scalar(1)};
  const ComplexPoly base_m({Scalar::inexact((double(l) - alpha) / double(l)),
                            Scalar::inexact(1.0 / double(l))});
  const ComplexPoly base_p({Scalar::inexact((double(l) + b) / double(l)),
                            Scalar::inexact(-1.0 / double(l))});
  return (poly_pow(base_p, n * l) - one) * (poly_pow(base_m, n * l) - one);
}

/* -(y - a)(y - 1 + conj(a)): the pair quadratic through a and 1 - conj(a). */
ComplexPoly pair_quadratic(cd a) {
  const cd r2 = 1.0 - std::conj(a);
  return ComplexPoly({Scalar::inexact(-a * r2), Scalar::inexact(a + r2),
                      Scalar::inexact(-1.0)});
}

}  // namespace

int index(const ComplexPoly& F, double a, double tol) {
  if (F.is_zero()) throw input_error("index: F must be nonzero");
  if (F.degree() == 0) return 0;
  const RootMultiset rs = roots(F, 1e-9);
  int ind = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_mod = 0.0;
  for (const auto& e : rs.roots) {
    const double dr = e.value.real() - a;
    if (std::abs(dr) <= tol * (1.0 + std::abs(e.value)))
      throw root_on_line("index: a root of F lies within tol of Re x = a");
    ind += dr > 0.0 ? -e.multiplicity : e.multiplicity;
    min_gap = std::min(min_gap, std::abs(dr));
    max_mod = std::max(max_mod, std::abs(e.value));
  }
  /* Cross-check against the winding of the argument along the line; skipped
   * when roots crowd the line (the sweep would need too many samples). */
  if (min_gap >= 0.05) {
    const int deg = F.degree();
    const double T = 10.0 * deg * (1.0 + max_mod);
    const std::vector<cd> coeffs = cd_coeff_vector(F);
    long n = 4096 + 512L * deg;
    for (int attempt = 0; attempt < 6; ++attempt, n *= 2) {
      bool coarse = false;
      const double sweep = unwrapped_sweep(coeffs, a, T, n, &coarse);
      if (coarse) continue;
      if (std::abs(sweep / kPi - std::round(sweep / kPi)) > 0.45) continue;
      if (std::lround(sweep / kPi) != ind)
        throw numerical_error(
            "index: winding along the line disagrees with the root count");
      break;
    }
  }
  return ind;
}

Lemma42Report lemma42_check(const ComplexPoly& F, double a) {
  if (F.is_zero()) throw input_error("lemma42_check: F must be nonzero");
  const Scalar sa = exact_real(a);
  if (!nonneg_on_line(re_line(F, sa), sa))
    throw hypothesis_fails(
        "lemma42_check: Re F is negative somewhere on Re x = a");
  Lemma42Report rep;
  const double tol = 1e-9;
  const int on_line = rho_count(F, a, Cmp::eq, tol);
  rep.rho_above = rho_count(F, a, Cmp::ge, tol) - on_line;
  rep.rho_below = rho_count(F, a, Cmp::le, tol) - on_line;
  for (const auto& e : roots(F, 1e-9).roots)
    if (std::abs(e.value.real() - a) <= tol && e.multiplicity % 2 == 1)
      ++rep.k_odd_on_line;
  const int k = rep.k_odd_on_line;
  rep.inequalities_hold = rep.rho_above <= rep.rho_below + k + 1 &&
                          rep.rho_below <= rep.rho_above + k + 1;
  rep.equality_above = rep.rho_above == rep.rho_below + k + 1;
  rep.equality_below = rep.rho_below == rep.rho_above + k + 1;
  if ((rep.equality_above || rep.equality_below) && F.degree() % 2 == 1) {
    /* deg F = 2d - 1: the leading coefficient is real of sign (-1)^d when
     * the right side saturates, (-1)^{d-1} when the left side does. */
    rep.leading_sign_checked = true;
    const int d = (F.degree() + 1) / 2;
    const cd lead = F.leading().cd();
    const int expect = rep.equality_above ? (d % 2 == 0 ? 1 : -1)
                                          : (d % 2 == 1 ? 1 : -1);
    rep.leading_sign_ok = std::abs(lead.imag()) <= 1e-9 * std::abs(lead) &&
                          (lead.real() > 0.0) == (expect > 0);
  }
  return rep;
}

ArgumentProfile argument_profile(const ComplexPoly& F, double a, double eps,
                                 double t_max, int n_samples) {
  if (F.is_zero()) throw input_error("argument_profile: F must be nonzero");
  if (!(eps > 0.0)) throw input_error("argument_profile: eps must be positive");
  ArgumentProfile prof;
  prof.line = a;
  prof.window = 1.0 / eps;
  const int deg = std::max(1, F.degree());
  if (t_max <= 0.0) t_max = std::max(4.0 * prof.window, 2048.0);
  const double w = std::min(prof.window, t_max);
  const std::vector<cd> coeffs = cd_coeff_vector(F);
  long n_in = n_samples > 0
                  ? std::max(16L, static_cast<long>(n_samples))
                  : std::clamp<long>(
                        64L * deg * static_cast<long>(std::ceil(2.0 * w + 1.0)),
                        4096L, 1L << 17);
  double ratio = 1.0 + 1.0 / (8.0 * deg);
  for (int attempt = 0;; ++attempt) {
    std::vector<double> ts;
    std::vector<double> tail;
    for (double t = w * ratio; t < t_max; t *= ratio) tail.push_back(t);
    tail.push_back(t_max);
    ts.reserve(2 * tail.size() + n_in + 1);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) ts.push_back(-*it);
    for (long i = 0; i <= n_in; ++i)
      ts.push_back(-w + 2.0 * w * double(i) / double(n_in));
    ts.insert(ts.end(), tail.begin(), tail.end());

    std::vector<double> principal(ts.size()), logmod(ts.size());
    double min_rel = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const LogVal v = scaled_eval(coeffs, cd(a, ts[i]));
      principal[i] = v.arg;
      logmod[i] = v.log_mod;
      min_rel = std::min(min_rel, v.rel);
    }
    if (min_rel < 1e-12)
      throw near_zero_on_line(
          "argument_profile: |F| nearly vanishes on the sampled line");

    std::vector<double> args(ts.size());
    args[0] = principal[0];
    bool coarse = false;
    for (std::size_t i = 1; i < ts.size(); ++i) {
      const double d = std::remainder(principal[i] - principal[i - 1], 2.0 * kPi);
      if (std::abs(d) > 0.5 * kPi) coarse = true;
      args[i] = args[i - 1] + d;
    }
    if (coarse && attempt < 3) {
      n_in *= 2;
      ratio = 1.0 + (ratio - 1.0) / 2.0;
      continue;
    }

    prof.t = std::move(ts);
    prof.arg = std::move(args);
    prof.modulus.resize(logmod.size());
    for (std::size_t i = 0; i < logmod.size(); ++i)
      prof.modulus[i] = std::exp(std::clamp(logmod[i], -700.0, 700.0));
    prof.bound = 0.0;
    prof.small_bound = 0.0;
    for (std::size_t i = 0; i < prof.t.size(); ++i) {
      prof.bound = std::max(prof.bound, std::abs(prof.arg[i]));
      if (std::abs(prof.t[i]) <= prof.window + 1e-12)
        prof.small_bound = std::max(prof.small_bound, std::abs(prof.arg[i]));
    }
    return prof;
  }
}

ComplexPoly good_approximation_quadratic(std::complex<double> a_root,
                                         double eps,
                                         const ApproximationCaps& caps) {
  if (!(a_root.real() < 0.0))
    throw input_error("good_approximation_quadratic: Re a must be negative");
  if (!(eps > 0.0))
    throw input_error("good_approximation_quadratic: eps must be positive");
  if (caps.max_factor_count < 1 || caps.max_power < 1 ||
      !(caps.margin > 0.0) || !(caps.margin < kPi / 2))
    throw input_error("good_approximation_quadratic: invalid search caps");
  const double alpha = a_root.real();
  const double mu = a_root.imag();
  /* The pair quadratic is the vertical shift by i mu of the real-coordinate
   * one; certify the real-coordinate R on the imaginary axis over a window
   * widened by |mu| so the shifted window is covered. */
  const double w_small = 1.0 / eps + std::abs(mu);
  const double arg_cap = kPi / 2 - caps.margin;
  double best_excess = std::numeric_limits<double>::infinity();
  SearchProfile best;
  int best_n = 0, best_l = 0;
  for (int l = 1; l <= caps.max_power; ++l) {
    for (int n = 1; n <= caps.max_factor_count; ++n) {
      const SearchProfile sp = search_profile(alpha, n, l, w_small);
      const double excess =
          std::max(sp.bound - arg_cap, sp.small - eps);
      if (excess < best_excess) {
        best_excess = excess;
        best = sp;
        best_n = n;
        best_l = l;
      }
      if (sp.bound > arg_cap || sp.small > eps) continue;

      const ComplexPoly R = build_R_poly(alpha, n, l);
      ArgumentProfile prof;
      try {
        prof = argument_profile(R, 0.0, 1.0 / w_small);
      } catch (const numerical_error&) {
        continue;
      }
      if (prof.bound > arg_cap || prof.small_bound > eps) continue;

      const ComplexPoly P_real({Scalar::inexact(-alpha * (1.0 - alpha)),
                                Scalar(1), Scalar(-1)});
      auto qr = divmod(R, P_real);
      if (coeff_scale(qr.second) > 1e-8 * (1.0 + coeff_scale(R)))
        throw numerical_error(
            "good_approximation_quadratic: R is not divisible by the pair "
            "quadratic");
      if (mu == 0.0) return qr.first;
      return compose_linear(qr.first, Scalar(1),
                            Scalar::inexact(cd(0.0, -mu)));
    }
  }
  std::ostringstream os;
  os << "good_approximation_quadratic: search exhausted at caps (n <= "
     << caps.max_factor_count << ", l <= " << caps.max_power
     << "); best profile bound " << best.bound << ", window bound "
     << best.small << " at n = " << best_n << ", l = " << best_l;
  throw search_exhausted(os.str());
}

ComplexPoly compose_good_approximations(
    const std::vector<ApproximationFactor>& factors, double eps) {
  if (factors.empty())
    throw input_error("compose_good_approximations: no factors given");
  if (!(eps > 0.0))
    throw input_error("compose_good_approximations: eps must be positive");
  ComplexPoly F{Scalar(1)};
  ComplexPoly certified{Scalar(1)};
  for (const auto& f : factors) {
    if (f.F.is_zero() || f.P.is_zero())
      throw input_error("compose_good_approximations: zero factor");
    F = F * f.F;
    certified = certified * (f.F * f.P);
  }
  const ArgumentProfile prof = argument_profile(certified, 0.0, eps);
  if (prof.bound > kPi / 2 - 0.02 || prof.small_bound > eps) {
    std::ostringstream os;
    os << "compose_good_approximations: combined profile misses the gate "
          "(bound "
       << prof.bound << ", window bound " << prof.small_bound << ")";
    throw search_exhausted(os.str());
  }
  return F;
}

ComplexPoly nonunitarizability_witness(const ComplexPoly& P, double eps) {
  if (P.is_zero() || P.degree() < 2 || P.degree() % 2 != 0)
    throw input_error(
        "nonunitarizability_witness: P must have even degree >= 2");
  if (!(eps > 0.0))
    throw input_error("nonunitarizability_witness: eps must be positive");
  if (!in_R_ix(P))
    throw input_error(
        "nonunitarizability_witness: P must be real on the imaginary axis");
  if (!nonneg_on_line(P, Scalar(0)))
    throw input_error(
        "nonunitarizability_witness: P must be nonnegative on the imaginary "
        "axis");
  const RootMultiset rs = roots(P, 1e-9);
  for (const auto& e : rs.roots)
    if (std::abs(e.value.real()) <= 1.0 + 1e-9 * (1.0 + std::abs(e.value)))
      throw input_error(
          "nonunitarizability_witness: every root must satisfy |Re| > 1");

  /* Pair the left-half roots z with their mirrors -conj(z); in y = (x+1)/2
   * coordinates the pair becomes the quadratic through a = (z+1)/2 and
   * 1 - conj(a). */
  struct PairEntry {
    cd a;
    int mult;
  };
  std::vector<PairEntry> pairs;
  std::vector<RootMultiset::Entry> rights;
  for (const auto& e : rs.roots)
    if (e.value.real() > 0.0) rights.push_back(e);
  int k = 0;
  for (const auto& e : rs.roots) {
    if (e.value.real() > 0.0) continue;
    const cd target = -std::conj(e.value);
    int need = e.multiplicity;
    for (auto& r : rights) {
      if (r.multiplicity == 0 ||
          std::abs(r.value - target) > 1e-6 * (1.0 + std::abs(target)))
        continue;
      const int take = std::min(need, r.multiplicity);
      need -= take;
      r.multiplicity -= take;
      if (need == 0) break;
    }
    if (need > 0)
      throw pairing_failure(
          "nonunitarizability_witness: no mirror partner -conj(z) for a root "
          "of P");
    pairs.push_back({(e.value + 1.0) / 2.0, e.multiplicity});
    k += e.multiplicity;
  }
  for (const auto& r : rights)
    if (r.multiplicity > 0)
      throw pairing_failure(
          "nonunitarizability_witness: unmatched root in the right half "
          "plane");

  /* Per-pair approximations under small internal caps.  The window target
   * starts at eps and is relaxed when the capped search cannot meet it: the
   * final certificate depends only on the argument staying below pi/2, which
   * the composite profile re-checks. */
  ApproximationCaps wcaps;
  wcaps.max_factor_count = 4;
  wcaps.max_power = 8;
  ComplexPoly F_tilde;
  ComplexPoly prod_quads{Scalar(1)};
  std::vector<ApproximationFactor> factors;
  bool composed = false;
  std::string last_failure;
  for (int attempt = 0; attempt < 4 && !composed; ++attempt) {
    const double eps_i = std::min(eps * double(1 << attempt), 1.5);
    factors.clear();
    prod_quads = ComplexPoly{Scalar(1)};
    bool have_factors = true;
    std::map<std::pair<long, long>, ComplexPoly> cache;
    for (const auto& p : pairs) {
      const auto key = std::make_pair(std::lround(p.a.real() * 1e9),
                                      std::lround(p.a.imag() * 1e9));
      auto it = cache.find(key);
      if (it == cache.end()) {
        try {
          it = cache.emplace(key, good_approximation_quadratic(p.a, eps_i,
                                                               wcaps))
                   .first;
        } catch (const search_exhausted& ex) {
          last_failure = ex.what();
          have_factors = false;
          break;
        }
      }
      const ComplexPoly quad = pair_quadratic(p.a);
      for (int m = 0; m < p.mult; ++m) {
        factors.push_back({quad, it->second});
        prod_quads = prod_quads * quad;
      }
    }
    if (!have_factors) continue;
    try {
      F_tilde = compose_good_approximations(factors, 1.45);
      composed = true;
    } catch (const search_exhausted& ex) {
      last_failure = ex.what();
    }
  }
  if (!composed)
    throw search_exhausted(
        "nonunitarizability_witness: no certified approximation within the "
        "internal caps (" +
        last_failure + ")");

  /* P(2y - 1) = C * prod of pair quadratics with C real positive; divide it
   * out so F * P(2y-1) keeps the certified argument. */
  const ComplexPoly P2 = compose_linear(P, Scalar(2), Scalar(-1));
  const cd C = P2.leading().cd() / prod_quads.leading().cd();
  if (!(C.real() > 0.0) || std::abs(C.imag()) > 1e-6 * std::abs(C))
    throw numerical_error(
        "nonunitarizability_witness: leading normalization is not positive");
  const ComplexPoly F_y = F_tilde * ComplexPoly{Scalar::inexact(1.0 / C.real())};
  const Scalar half(Rational(1, 2));
  const ComplexPoly F_float = compose_linear(F_y, half, half);

  /* Round to nearby dyadic rationals at increasing precision until the
   * exact certificate check accepts. */
  for (const int bits : {24, 40, 53}) {
    const ComplexPoly F_exact = dyadic_poly(F_float, bits);
    if (F_exact.is_zero()) continue;
    if (certificate_check_prop38(F_exact, P)) return F_exact;
  }
  throw numerical_error(
      "nonunitarizability_witness: rationalized certificate failed the exact "
      "check");
}

}  // namespace apq
