#include "apq/modules.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "apq/algebra.hpp"
#include "apq/errors.hpp"

namespace apq {

namespace {

using cd = std::complex<double>;

/* Number of +2 steps from `from` to `to`, or -1 when `to` is not in the
   progression from + 2Z_{>=0}.  Near-misses inside a guard band around the
   matching tolerance are reported as ambiguous rather than silently
   dropped. */
int steps_between(cd from, cd to, double tol) {
  double atol = std::max(tol, 1e-12) * (1.0 + std::abs(from) + std::abs(to));
  cd diff = to - from;
  long j = std::lround(diff.real() / 2.0);
  if (j < 0) return -1;
  double resid = std::abs(diff - cd(2.0 * j, 0.0));
  if (resid <= atol) return static_cast<int>(j);
  if (resid <= 30.0 * atol)
    throw boundary_ambiguity("progression endpoint matching is ambiguous");
  return -1;
}

int descriptor_rank(const ModuleDescriptor& d) {
  if (d.is_finite()) return 0;
  if (d.start) return 1;
  if (d.end) return 2;
  return 3;
}

double descriptor_key(const ModuleDescriptor& d) {
  if (d.start) return d.start->cd().real();
  if (d.end) return d.end->cd().real();
  return 0.0;
}

Scalar chain_coefficient(const Scalar& k, const Scalar& mu) {
  Scalar kp1 = k + Scalar(1);
  return kp1 / (Scalar(4) * k + Scalar(6)) * (kp1 * kp1 - mu);
}

bool scalar_positive(const Scalar& c) {
  if (c.exact()) return c.is_real() && c.re_q() > 0;
  return c.cd().real() > 1e-12 * (1.0 + std::abs(c.cd()));
}

}  // namespace

int ModuleDescriptor::dimension() const {
  if (!is_finite())
    throw input_error("dimension is defined for finite progressions only");
  cd diff = end->cd() - start->cd();
  long j = std::lround(diff.real() / step);
  if (j < 0 || std::abs(diff - cd(double(step) * j, 0.0)) >
                   1e-6 * (1.0 + std::abs(diff)))
    throw input_error("endpoints do not lie in a common progression");
  return static_cast<int>(j) + 1;
}

std::vector<Scalar> ModuleDescriptor::weights() const {
  int dim = dimension();
  std::vector<Scalar> out;
  out.reserve(dim);
  for (int k = 0; k < dim; ++k) out.push_back(*start + Scalar(step * k));
  return out;
}

std::vector<ModuleDescriptor> enumerate_irreducibles(const ComplexPoly& P,
                                                     Parity n_parity,
                                                     double tol) {
  if (P.degree() < 2)
    throw input_error("defining polynomial must have degree at least 2");
  bool even = P.degree() % 2 == 0;
  if ((n_parity == Parity::even) != even)
    throw input_error("declared parity does not match deg P");

  RootMultiset rm = roots(P, tol);
  std::vector<cd> starts, ends;
  for (const auto& e : rm.roots) {
    starts.push_back(e.value + 1.0);
    ends.push_back(e.value - 1.0);
  }

  std::vector<ModuleDescriptor> out;
  /* A progression starting at s stays irreducible until the first end
     point it meets; with no end point it runs to +infinity. */
  for (cd s : starts) {
    int best = -1;
    cd best_t;
    for (cd t : ends) {
      int j = steps_between(s, t, tol);
      if (j >= 0 && (best < 0 || j < best)) {
        best = j;
        best_t = t;
      }
    }
    ModuleDescriptor d;
    d.start = Scalar::inexact(s);
    if (best >= 0) d.end = Scalar::inexact(best_t);
    out.push_back(d);
  }
  if (even) {
    /* (-inf, t] is irreducible when no other end point lies below t in the
       same progression; these exist only for even n.  The doubly infinite
       progressions form one symbolic family. */
    for (cd t : ends) {
      bool blocked = false;
      for (cd t2 : ends)
        if (steps_between(t2, t, tol) > 0) blocked = true;
      if (!blocked) {
        ModuleDescriptor d;
        d.end = Scalar::inexact(t);
        out.push_back(d);
      }
    }
    out.push_back(ModuleDescriptor{});
  }

  std::sort(out.begin(), out.end(),
            [](const ModuleDescriptor& a, const ModuleDescriptor& b) {
              int ra = descriptor_rank(a), rb = descriptor_rank(b);
              if (ra != rb) return ra < rb;
              return descriptor_key(a) < descriptor_key(b);
            });
  return out;
}

ModuleDescriptor instantiate_family(const ComplexPoly& P,
                                    const ModuleDescriptor& family,
                                    const Scalar& residue, double tol) {
  if (!family.is_family())
    throw input_error("descriptor is not the symbolic doubly infinite family");
  RootMultiset rm = roots(P, tol);
  for (const auto& e : rm.roots) {
    cd wall = e.value + 1.0;
    cd diff = residue.cd() - wall;
    long j = std::lround(diff.real() / 2.0);
    double atol =
        std::max(tol, 1e-12) * (1.0 + std::abs(residue.cd()) + std::abs(wall));
    if (std::abs(diff - cd(2.0 * j, 0.0)) <= atol)
      throw input_error(
          "residue meets a root+1 progression, so the module is reducible");
  }
  ModuleDescriptor d;
  d.family_residue = residue;
  return d;
}

UnitarityReport is_unitarizable_module(const ComplexPoly& P,
                                       const ModuleDescriptor& d, double tol) {
  LiftingReport rep = lifting_report(P);
  if (!rep.tau_r_commute)
    throw not_defined(
        "module unitarity requires even degree and P(x) = P(-x) with real "
        "coefficients");
  if (d.is_family())
    throw input_error("instantiate the symbolic family before testing unitarity");

  UnitarityReport out;
  double rtol = std::max(tol, 1e-12);
  for (const auto& ep : {d.start, d.end, d.family_residue}) {
    if (ep && std::abs(ep->cd().imag()) > rtol * (1.0 + std::abs(ep->cd()))) {
      out.failing_weight = *ep;
      out.reason = "weight set is not contained in the real line";
      return out;
    }
  }

  RootMultiset rm = roots(P, rtol);
  double R = 0.0;
  for (const auto& e : rm.roots) R = std::max(R, std::abs(e.value));
  double W = 2.0 + R;
  double lc = P.leading().cd().real();

  /* Strict negativity of P(weight - 1); exact inputs decide exactly. */
  auto check_weight = [&](const Scalar& lam) -> bool {
    Scalar v = P.eval(lam - Scalar(1));
    if (v.exact()) {
      if (v.is_real() && v.re_q() < 0) return true;
      out.failing_weight = lam;
      if (v.is_zero())
        out.reason = "P(weight - 1) vanishes";
      else if (v.is_real() && v.re_q() > 0)
        out.reason = "P(weight - 1) is positive";
      else
        out.reason = "P(weight - 1) is not negative";
      return false;
    }
    double am = std::max(1.0, std::abs(lam.cd() - 1.0));
    double scale = 0.0, pw = 1.0;
    for (int k = 0; k <= P.degree(); ++k) {
      scale += std::abs(P.coeff(k).cd()) * pw;
      pw *= am;
    }
    double re = v.cd().real();
    if (re < -rtol * scale) return true;
    out.failing_weight = lam;
    out.reason = re > rtol * scale ? "P(weight - 1) is positive"
                                   : "P(weight - 1) vanishes within tolerance";
    return false;
  };
  auto tail_fail = [&](const Scalar& witness) {
    out.failing_weight = witness;
    out.reason = "asymptotic sign of P is not negative on the unbounded tail";
  };

  if (d.family_residue) {
    Scalar res = *d.family_residue;
    double rr = res.cd().real();
    long klo = static_cast<long>(std::ceil((-W - rr) / 2.0));
    long khi = static_cast<long>(std::floor((W - rr) / 2.0));
    for (long k = klo; k <= khi; ++k)
      if (!check_weight(res + Scalar(2 * k))) return out;
    if (!(lc < 0.0)) {
      tail_fail(res + Scalar(2 * (khi + 1)));
      return out;
    }
  } else if (d.start && d.end) {
    Scalar s = *d.start;
    int dim = d.dimension();
    for (int k = 1; k < dim; ++k)
      if (!check_weight(s + Scalar(2 * k))) return out;
  } else if (d.start) {
    Scalar s = *d.start;
    double sr = s.cd().real();
    long khi = static_cast<long>(std::floor((W - sr) / 2.0));
    for (long k = 1; k <= khi; ++k)
      if (!check_weight(s + Scalar(2 * k))) return out;
    if (!(lc < 0.0)) {
      tail_fail(s + Scalar(2 * std::max(khi + 1, 1L)));
      return out;
    }
  } else {
    Scalar t = *d.end;
    double tr = t.cd().real();
    long khi = static_cast<long>(std::floor((tr + W) / 2.0));
    for (long k = 0; k <= khi; ++k)
      if (!check_weight(t - Scalar(2 * k))) return out;
    if (!(lc < 0.0)) {
      tail_fail(t - Scalar(2 * (std::max(khi, 0L) + 1)));
      return out;
    }
  }
  out.unitarizable = true;
  out.reason = "P(weight - 1) < 0 across the weight set";
  return out;
}

Scalar sl2_form_coefficient(int k, const Scalar& lambda) {
  if (k < 0) throw input_error("chain index must be nonnegative");
  Scalar lp1 = lambda + Scalar(1);
  return chain_coefficient(Scalar(k), lp1 * lp1);
}

std::vector<BimoduleEntry> classify_sl2_bimodules(const Scalar& lambda) {
  Scalar lp1 = lambda + Scalar(1);
  Scalar mu = lp1 * lp1;
  bool mu_real = mu.exact()
                     ? mu.is_real()
                     : std::abs(mu.cd().imag()) <= 1e-9 * (1.0 + std::abs(mu.cd()));
  if (!mu_real) throw input_error("(lambda+1)^2 must be real");

  std::vector<BimoduleEntry> out;
  /* The regular bimodule's adjoint chain covers every even highest weight.
     Positivity at chain index k means mu < (k+1)^2, which then holds for
     every larger k, so the minimal index decides the whole chain. */
  out.push_back({"regular", scalar_positive(chain_coefficient(Scalar(0), mu))});

  bool lambda_real = lambda.exact()
                         ? lambda.is_real()
                         : std::abs(lambda.cd().imag()) <=
                               1e-9 * (1.0 + std::abs(lambda.cd()));
  if (!lambda_real) return out;  // only the regular bimodule exists

  /* lambda and -2-lambda give the same algebra; normalize to [-1, inf). */
  bool integer = false, half_integer = false;
  long m = 0;
  Scalar norm(0);
  if (lambda.exact()) {
    Rational lr = lambda.re_q();
    if (lr < -1) lr = Rational(-2) - lr;
    Rational twice = Rational(2) * lr;
    if (boost::multiprecision::denominator(lr) == 1 && lr >= 0) {
      integer = true;
      m = boost::multiprecision::numerator(lr).convert_to<long>();
    } else if (boost::multiprecision::denominator(twice) == 1 &&
               boost::multiprecision::numerator(twice) % 2 != 0) {
      half_integer = true;
    }
    norm = Scalar(lr);
  } else {
    double lr = lambda.cd().real();
    if (lr < -1.0) lr = -2.0 - lr;
    double tol = 1e-9 * (1.0 + std::abs(lr));
    if (std::abs(lr - std::round(lr)) <= tol && std::round(lr) >= 0.0) {
      integer = true;
      m = std::lround(lr);
    } else if (std::abs(2.0 * lr - std::round(2.0 * lr)) <= 2.0 * tol &&
               std::lround(2.0 * lr) % 2 != 0) {
      half_integer = true;
    }
    norm = Scalar::inexact(lr);
  }

  if (integer) {
    /* End(V) for dim V = m+1 spans highest weights 0..2m; its chain is the
       finite run k = 0..m-1, empty when m = 0 (the bimodule C). */
    bool end_ok = true;
    for (long k = 0; k < m; ++k)
      if (!scalar_positive(chain_coefficient(Scalar(k), mu))) {
        end_ok = false;
        break;
      }
    out.push_back({m == 0 ? "C" : "End(V)", end_ok});
    // Ann(V): increasing chain starting at k = m+1.
    out.push_back(
        {"Ann(V)", scalar_positive(chain_coefficient(Scalar(m + 1), mu))});
  } else if (half_integer) {
    // Minimal highest weight 2 lambda + 2, so the chain starts at the
    // half-integer k = lambda + 1.
    out.push_back({"non-regular",
                   scalar_positive(chain_coefficient(norm + Scalar(1), mu))});
  }
  return out;
}

std::vector<Scalar> one_dim_bimodule_candidates(const ComplexPoly& P,
                                                double tol) {
  RootMultiset rm = roots(P, tol);
  std::vector<cd> found;
  for (const auto& hi : rm.roots) {
    for (const auto& lo : rm.roots) {
      cd diff = hi.value - lo.value;
      double atol = std::max(tol, 1e-12) *
                    (1.0 + std::abs(hi.value) + std::abs(lo.value));
      if (std::abs(diff - 2.0) > atol) continue;
      cd lam = (hi.value + lo.value) / 2.0;
      bool dup = false;
      for (cd seen : found)
        if (std::abs(seen - lam) <= 10.0 * atol) dup = true;
      if (!dup) found.push_back(lam);
    }
  }
  std::sort(found.begin(), found.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<Scalar> out;
  for (cd lam : found) out.push_back(Scalar::inexact(lam));
  return out;
}

}  // namespace apq
