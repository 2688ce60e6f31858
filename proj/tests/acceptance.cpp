/*
 * Acceptance gate for the library: ten end-to-end criteria, one pass/fail
 * line each, nonzero exit when any fails.  Tolerances and time limits are
 * pinned here and nowhere else.
 */
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apq/algebra.hpp"
#include "apq/errors.hpp"
#include "apq/index_tools.hpp"
#include "apq/modules.hpp"
#include "apq/poly.hpp"
#include "apq/positivity.hpp"
#include "apq/trace.hpp"
#include "module_oracle.hpp"
#include "test_util.hpp"

using namespace apq;
using namespace apq::testutil;
using cd = std::complex<double>;

namespace {

int failures = 0;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

void criterion(int num, const char* name, double limit_s,
               const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string msg;
  try {
    body();
  } catch (const std::exception& e) {
    ok = false;
    msg = e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  if (ok && dt > limit_s) {
    ok = false;
    msg = "time limit " + std::to_string(limit_s) + " s exceeded";
  }
  std::printf("%2d. %-52s %s  (%.2f s)%s%s\n", num, name, ok ? "pass" : "FAIL",
              dt, msg.empty() ? "" : " -- ", msg.c_str());
  if (!ok) ++failures;
}

const ComplexPoly kQuarter = parse_poly("1/4,0,-1");
const ComplexPoly kFour = parse_poly("4,0,-1");

/* Random homogeneous-component sums with |weight| <= 4 and polynomial
 * degree capped so the total filtration degree stays <= 4. */
AlgebraElement random_small_element() {
  AlgebraElement u;
  int terms = rand_int(1, 3);
  for (int t = 0; t < terms; ++t) {
    int k = 2 * rand_int(-2, 2);
    ComplexPoly S = rand_poly(rand_int(0, 4 - std::abs(k) / 2));
    u += AlgebraElement::component(k, S);
  }
  return u;
}

void c1_trace_space_dimension() {
  for (int deg : {2, 4, 6})
    for (int rep = 0; rep < 3; ++rep) {
      ComplexPoly P = rand_poly_R_ix(deg);
      require(build_basis(P).dim() == deg - 1,
              "dimension != n - 1 at degree " + std::to_string(deg));
    }
  for (int deg : {3, 5})
    for (int rep = 0; rep < 3; ++rep) {
      ComplexPoly P = rand_poly(deg);
      require(build_basis(P).dim() == deg - 1,
              "dimension != n - 1 at degree " + std::to_string(deg));
    }
}

void c2_algebra_identities() {
  for (int trial = 0; trial < 20; ++trial) {
    ComplexPoly P = rand_poly(rand_int(2, 4));
    AlgebraContext ctx(P);
    for (int m = 1; m <= 4; ++m) {
      AlgebraElement prod = multiply(ctx, f_power(m), e_power(m));
      ComplexPoly expect{Scalar(1)};
      for (int j = 1; j <= m; ++j) expect = expect * shift(P, Scalar(2 * j - 1));
      require(prod == from_h_poly(expect),
              "f^m e^m != prod P(h + 2j - 1) at m = " + std::to_string(m));
    }
  }
}

void c3_trace_property() {
  AlgebraContext ctx(kQuarter);
  TraceFunctional T =
      petrov_trace(kQuarter, Scalar(Rational(-1, 2)), Scalar(Rational(1, 2)));
  for (int trial = 0; trial < 50; ++trial) {
    AlgebraElement u = random_small_element();
    AlgebraElement v = random_small_element();
    Scalar uv = trace_eval(T, multiply(ctx, u, v));
    Scalar vu = trace_eval(T, multiply(ctx, v, u));
    require(uv == vu, "T(uv) != T(vu) exactly");
  }
  TraceFunctional W = weight_function_trace(kQuarter, 0.5);
  for (int j = 0; j <= 6; ++j) {
    ComplexPoly d = delta_P(ComplexPoly::monomial(j), kQuarter);
    require(std::abs(trace_apply(W, d).cd()) <= 1e-8,
            "weight trace does not annihilate a difference image");
  }
}

void c4_cross_construction() {
  TraceFunctional Tp =
      petrov_trace(kQuarter, Scalar(Rational(-1, 2)), Scalar(Rational(1, 2)));
  TraceFunctional W = weight_function_trace(kQuarter, 0.5);
  Scalar p1 = trace_apply(Tp, ComplexPoly{Scalar(1)});
  for (std::size_t m = 0; m < Tp.values.size(); ++m) {
    cd a = Tp.values[m].cd() / p1.cd();  // petrov normalized to T(1) = 1
    cd b = W.values[m].cd();             // weight construction has T(1) = 1
    require(std::abs(a - b) <= 1e-7 * (1.0 + std::abs(a)),
            "constructions disagree on the reduced basis");
  }
  TraceBasis basis = build_basis(kQuarter);
  ComplexPoly x2 = ComplexPoly::monomial(2);
  require(basis.reduce(x2) == ComplexPoly{Scalar(Rational(-1, 4))},
          "reduce(x^2) != -1/4");
  require(std::abs(trace_apply(Tp, x2).cd() / p1.cd() - cd(-0.25)) <= 1e-12,
          "normalized difference-equation T(x^2) != -1/4");
  require(std::abs(trace_apply(W, x2).cd() - cd(-0.25)) <= 1e-7,
          "weight-function T(x^2) != -1/4");
}

void check_verdict(const ComplexPoly& P, Status expect) {
  Verdict v = decide_regular_unitarizability(P);
  require(v.status == expect, "unexpected verdict for " + to_string(P));
  if (v.status == Status::NotUnitarizable) {
    require(v.certificate.has_value(), "missing certificate");
    require(certificate_check_prop38(*v.certificate, P),
            "certificate fails the exact check");
  }
  if (v.status == Status::Unitarizable) {
    require(v.trace.has_value(), "missing trace evidence");
    GramReport g = gram_matrices(*v.trace, P, 6);
    require(g.min_eigenvalues.first > 0.0 && g.min_eigenvalues.second > 0.0,
            "trace evidence not Gram-positive at degree 6");
  }
}

void c5_regular_decisions() {
  check_verdict(kQuarter, Status::Unitarizable);
  check_verdict(kFour, Status::NotUnitarizable);
  check_verdict(kQuarter * kQuarter * kQuarter, Status::Unitarizable);
}

void c6_lp_consistency() {
  LpOutcome pos = lp_feasibility(kQuarter, 4);
  require(pos.feasible && pos.point.has_value(),
          "no feasible trace for 1/4 - x^2 at degree 4");
  LpOutcome neg = lp_feasibility(kFour, 4);
  require(!neg.feasible && neg.certificate.has_value(),
          "no 0-in-cone combination for 4 - x^2 at degree 4");
}

void c7_module_oracle() {
  const char* polys[5] = {
      "9/16,0,-5/2,0,1",    // (x^2 - 1/4)(x^2 - 9/4)
      "49/16,0,-25/2,0,1",  // (x^2 - 1/4)(x^2 - 49/4)
      "225/16,0,-17/2,0,1", // (x^2 - 9/4)(x^2 - 25/4)
      "25/81,0,-26/9,0,1",  // (x^2 - 1/9)(x^2 - 25/9)
      "100,0,-29,0,1",      // (x^2 - 4)(x^2 - 25)
  };
  int total = 0;
  for (const char* s : polys) {
    ComplexPoly P = parse_poly(s);
    for (const ModuleDescriptor& d : enumerate_irreducibles(P, Parity::even)) {
      if (!d.is_finite()) continue;
      ++total;
      require(d.dimension() <= 12, "descriptor dimension exceeds 12");
      bool predicted = is_unitarizable_module(P, d).unitarizable;
      bool brute = oracle_unitarizable(P, d).unitarizable;
      require(predicted == brute,
              "predicate and brute-force recursion disagree for " +
                  std::string(s));
    }
  }
  require(total == 10, "expected exactly 10 finite descriptors, saw " +
                           std::to_string(total));
}

void c8_sl2_regression() {
  struct Case {
    Scalar lambda;
    bool regular_unitarizable;
  };
  const Case cases[5] = {
      {Scalar(Rational(-1, 2)), true},
      {Scalar(Rational(0)), false},
      {Scalar(Rational(3)), false},
      {Scalar(Rational(1, 2)), false},
      {Scalar(Rational(-3, 10)), true},
  };
  for (const Case& c : cases) {
    bool found = false;
    for (const BimoduleEntry& e : classify_sl2_bimodules(c.lambda))
      if (e.name == "regular") {
        found = true;
        require(e.unitarizable == c.regular_unitarizable,
                "regular bimodule misclassified at lambda = " +
                    to_string(c.lambda));
      }
    require(found, "regular bimodule missing from the inventory");
  }
  bool ann_ok = false;
  for (const BimoduleEntry& e : classify_sl2_bimodules(Scalar(Rational(3))))
    if (e.name == "Ann(V)") ann_ok = e.unitarizable;
  require(ann_ok, "annihilator bimodule not unitarizable at lambda = 3");
  require(sl2_form_coefficient(0, Scalar(Rational(-1, 2))) ==
              Scalar(Rational(1, 8)),
          "chain coefficient (0, -1/2) != 1/8");
}

void c9_appendix_machinery() {
  int done = 0, attempts = 0;
  while (done < 100 && attempts < 1000) {
    ++attempts;
    ComplexPoly G = rand_poly(rand_int(1, 3));
    ComplexPoly H = rand_poly(rand_int(1, 3));
    try {
      int ig = index(G, 0.0);
      int ih = index(H, 0.0);
      require(index(G * H, 0.0) == ig + ih, "index not additive");
      ++done;
    } catch (const root_on_line&) {
      continue;
    }
  }
  require(done == 100, "could not assemble 100 product samples");

  for (int trial = 0; trial < 50; ++trial) {
    ComplexPoly G = rand_poly(rand_int(1, 3));
    Lemma42Report rep = lemma42_check(G * bar_reflect(G, Scalar(0)), 0.0);
    require(rep.inequalities_hold, "root-count inequality violated");
  }

  for (const char* s : {"4,0,-1", "36,0,-13,0,1"}) {
    ComplexPoly P = parse_poly(s);
    ComplexPoly F = nonunitarizability_witness(P);
    require(certificate_check_prop38(F, P),
            "witness fails the exact certificate check for " + std::string(s));
  }
}

void c10_two_trace_diagnostic() {
  ComplexPoly P = parse_poly("9/64,0,-13/16,0,1");  // (x^2-1/4)(x^2-9/16)
  TraceFunctional T1 =
      petrov_trace(P, Scalar(Rational(-1, 2)), Scalar(Rational(1, 2)));
  TraceFunctional T2 =
      petrov_trace(P, Scalar(Rational(-3, 4)), Scalar(Rational(3, 4)));
  for (const TraceFunctional* T : {&T1, &T2}) {
    GramReport g = gram_matrices(*T, P, 4);
    require(g.min_eigenvalues.first > 0.0 && g.min_eigenvalues.second > 0.0,
            "root-pair trace not Gram-positive at degree 4");
  }
  // Coordinates in L(P) are exact; independence via an exact 2x2 minor.
  bool independent = false;
  const std::size_t dim = T1.values.size();
  for (std::size_t a = 0; a < dim && !independent; ++a)
    for (std::size_t b = a + 1; b < dim && !independent; ++b)
      independent = !(T1.values[a] * T2.values[b] - T1.values[b] * T2.values[a])
                         .is_zero();
  require(independent, "trace coordinate vectors linearly dependent");
}

}  // namespace

int main() {
  criterion(1, "trace-space dimension is deg P - 1", 1.0,
            c1_trace_space_dimension);
  criterion(2, "product formula f^m e^m = prod P(h + 2j - 1)", 5.0,
            c2_algebra_identities);
  criterion(3, "trace symmetry and difference-image annihilation", 10.0,
            c3_trace_property);
  criterion(4, "difference-equation and quadrature traces agree", 5.0,
            c4_cross_construction);
  criterion(5, "regular-bimodule decisions with checked evidence", 60.0,
            c5_regular_decisions);
  criterion(6, "linear program matches the decisions at degree 4", 30.0,
            c6_lp_consistency);
  criterion(7, "finite-module unitarity matches brute-force forms", 5.0,
            c7_module_oracle);
  criterion(8, "n = 2 bimodule inventory and chain coefficient", 1.0,
            c8_sl2_regression);
  criterion(9, "index additivity, root-count bounds, witnesses", 60.0,
            c9_appendix_machinery);
  criterion(10, "two independent Gram-positive traces at degree 4", 10.0,
            c10_two_trace_diagnostic);
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
