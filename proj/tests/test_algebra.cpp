#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apq/algebra.hpp"
#include "apq/errors.hpp"
#include "test_util.hpp"

using namespace apq;
using namespace apq::testutil;

namespace {

AlgebraContext quarter_ctx() {
  // P = 1/4 - x^2, the n = 2 workhorse example.
  return AlgebraContext(ComplexPoly{Scalar(Rational(1, 4)), Scalar(0), Scalar(-1)});
}

ComplexPoly rand_defining_poly() { return rand_poly(rand_int(2, 4), false); }

AlgebraElement rand_element(int max_power = 2, int max_deg = 2) {
  AlgebraElement u;
  int terms = rand_int(1, 3);
  for (int t = 0; t < terms; ++t) {
    int k = 2 * rand_int(-max_power, max_power);
    ComplexPoly S = rand_poly(rand_int(0, max_deg), false);
    if (S.degree() >= 0) u += AlgebraElement::component(k, S);
  }
  return u;
}

}  // namespace

TEST_CASE("defining relations in normal form") {
  AlgebraContext ctx = quarter_ctx();
  AlgebraElement e = gen_e(), f = gen_f(), h = gen_h();

  CHECK(multiply(ctx, e, f) == from_h_poly(shift(ctx.P, Scalar(-1))));
  CHECK(multiply(ctx, f, e) == from_h_poly(shift(ctx.P, Scalar(1))));
  CHECK(multiply(ctx, h, e) - multiply(ctx, e, h) == Scalar(2) * e);
  CHECK(multiply(ctx, h, f) - multiply(ctx, f, h) == Scalar(-2) * f);

  // f^2 e^2 reduces innermost-first: f (fe) e = f P(h+1) e = P(h+1)P(h+3).
  AlgebraElement f2 = multiply(ctx, f, f);
  AlgebraElement e2 = multiply(ctx, e, e);
  CHECK(multiply(ctx, f2, e2) ==
        from_h_poly(shift(ctx.P, Scalar(1)) * shift(ctx.P, Scalar(3))));
}

TEST_CASE("iterated cancellation products for random P") {
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraContext ctx(rand_defining_poly());
    AlgebraElement fm, em;
    fm += from_h_poly(ComplexPoly{Scalar(1)});
    em += from_h_poly(ComplexPoly{Scalar(1)});
    ComplexPoly fe_prod{Scalar(1)}, ef_prod{Scalar(1)};
    for (int m = 1; m <= 4; ++m) {
      fm = multiply(ctx, gen_f(), fm);
      em = multiply(ctx, gen_e(), em);
      fe_prod = fe_prod * shift(ctx.P, Scalar(2 * m - 1));
      ef_prod = ef_prod * shift(ctx.P, Scalar(1 - 2 * m));
      CHECK(multiply(ctx, fm, em) == from_h_poly(fe_prod));
      CHECK(multiply(ctx, em, fm) == from_h_poly(ef_prod));
    }
  }
}

TEST_CASE("multiplication is associative on random triples") {
  for (int trial = 0; trial < 50; ++trial) {
    AlgebraContext ctx(rand_defining_poly());
    AlgebraElement u = rand_element(), v = rand_element(), w = rand_element();
    AlgebraElement left = multiply(ctx, multiply(ctx, u, v), w);
    AlgebraElement right = multiply(ctx, u, multiply(ctx, v, w));
    REQUIRE(left.is_exact());
    CHECK(left == right);
  }
}

TEST_CASE("monomial builder agrees with generator products") {
  AlgebraContext ctx = quarter_ctx();
  ComplexPoly S = parse_poly("1,-2,3");
  AlgebraElement word =
      multiply(ctx, f_power(2), multiply(ctx, from_h_poly(S), e_power(1)));
  CHECK(monomial(ctx, 2, S, 1) == word);
  CHECK(monomial(ctx, 0, S, 0) == from_h_poly(S));
}

TEST_CASE("tau reverses products and squares to the identity") {
  AlgebraContext ctx = quarter_ctx();
  CHECK(antiinvolution_tau(ctx, gen_e()) == gen_e());
  CHECK(antiinvolution_tau(ctx, gen_f()) == gen_f());
  CHECK(antiinvolution_tau(ctx, gen_h()) == Scalar(-1) * gen_h());

  // tau(ef) = P(-h-1), which for even P equals fe = P(h+1).
  AlgebraElement ef = multiply(ctx, gen_e(), gen_f());
  CHECK(antiinvolution_tau(ctx, ef) ==
        from_h_poly(compose_linear(shift(ctx.P, Scalar(-1)), Scalar(-1), Scalar(0))));
  CHECK(antiinvolution_tau(ctx, ef) == multiply(ctx, gen_f(), gen_e()));

  for (int trial = 0; trial < 50; ++trial) {
    AlgebraElement u = rand_element(), v = rand_element();
    AlgebraElement lhs = antiinvolution_tau(ctx, multiply(ctx, u, v));
    AlgebraElement rhs = multiply(ctx, antiinvolution_tau(ctx, v),
                                  antiinvolution_tau(ctx, u));
    CHECK(lhs == rhs);
    CHECK(antiinvolution_tau(ctx, antiinvolution_tau(ctx, u)) == u);
  }
}

TEST_CASE("tau in odd degree flips the sign of f") {
  AlgebraContext ctx(ComplexPoly::monomial(3, Scalar(1)));  // P = x^3
  CHECK(antiinvolution_tau(ctx, gen_e()) == gen_e());
  CHECK(antiinvolution_tau(ctx, gen_f()) == Scalar(-1) * gen_f());
  AlgebraElement ef = multiply(ctx, gen_e(), gen_f());
  CHECK(antiinvolution_tau(ctx, ef) ==
        Scalar(-1) * multiply(ctx, gen_f(), gen_e()));
}

TEST_CASE("tau refuses polynomials without the parity symmetry") {
  AlgebraContext ctx(parse_poly("0,1,1"));  // P = x + x^2
  CHECK_THROWS_AS(antiinvolution_tau(ctx, gen_e()), not_defined);
}

TEST_CASE("r is an antilinear involutive automorphism") {
  AlgebraContext ctx = quarter_ctx();
  CHECK(involution_r(ctx, gen_e()) == Scalar(-1) * gen_f());
  CHECK(involution_r(ctx, gen_f()) == Scalar(-1) * gen_e());
  CHECK(involution_r(ctx, gen_h()) == Scalar(-1) * gen_h());
  CHECK(involution_r(ctx, multiply(ctx, gen_h(), gen_h())) ==
        multiply(ctx, gen_h(), gen_h()));
  // Antilinearity: r(i h) = conj(i) * (-h) = i h.
  CHECK(involution_r(ctx, Scalar::I() * gen_h()) == Scalar::I() * gen_h());

  for (int trial = 0; trial < 50; ++trial) {
    AlgebraElement u = rand_element(), v = rand_element();
    CHECK(involution_r(ctx, involution_r(ctx, u)) == u);
    CHECK(involution_r(ctx, u + v) ==
          involution_r(ctx, u) + involution_r(ctx, v));
    Scalar c(Rational(3), Rational(-2));
    CHECK(involution_r(ctx, c * u) == c.conj() * involution_r(ctx, u));
    // r preserves product order: it is a homomorphism, not an
    // antihomomorphism ([h,e] = 2e maps to [-h,-f] = 2(-f) consistently).
    CHECK(involution_r(ctx, multiply(ctx, u, v)) ==
          multiply(ctx, involution_r(ctx, u), involution_r(ctx, v)));
  }
}

TEST_CASE("r is rejected for odd degree or P outside R[ix]") {
  AlgebraContext odd(ComplexPoly::monomial(3, Scalar(1)));
  CHECK_THROWS_AS(involution_r(odd, gen_e()), not_defined);
  AlgebraContext bad(parse_poly("i,0,1"));  // constant term i is not real
  CHECK_THROWS_AS(involution_r(bad, gen_e()), not_defined);
}

TEST_CASE("ad h scales each component by its weight") {
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraContext ctx(rand_defining_poly());
    AlgebraElement u = rand_element();
    AlgebraElement comm =
        multiply(ctx, gen_h(), u) - multiply(ctx, u, gen_h());
    AlgebraElement expected;
    for (const auto& [k, S] : u.components())
      if (k != 0) expected += Scalar(k) * AlgebraElement::component(k, S);
    CHECK(comm == expected);
    for (const auto& [k, S] : u.components())
      CHECK(weight_component(comm, k) == Scalar(k) * S);
  }
}

TEST_CASE("weight projection of normal forms") {
  AlgebraContext ctx = quarter_ctx();
  AlgebraElement ef = multiply(ctx, gen_e(), gen_f());
  CHECK(weight_component(ef, 0) == shift(ctx.P, Scalar(-1)));
  CHECK(weight_component(gen_e(), 0).degree() < 0);
  AlgebraElement mix = from_h_poly(ComplexPoly::monomial(3, Scalar(1))) + gen_e();
  CHECK(weight_component(mix, 2) == ComplexPoly{Scalar(1)});
  CHECK(weight_component(mix, 3).degree() < 0);
}

TEST_CASE("lifting report evaluates the symmetry identities") {
  LiftingReport quarter = lifting_report(parse_poly("1/4,0,-1"));
  CHECK(quarter.n == 2);
  CHECK(quarter.tau_antiinvolution);
  CHECK(quarter.sign_involution);
  CHECK(quarter.sign_antiinvolution);
  CHECK(quarter.swap_antiinvolution);
  CHECK(quarter.swap_involution);
  CHECK(quarter.r_lifts);
  CHECK(quarter.tau_r_commute);

  LiftingReport cubic = lifting_report(ComplexPoly::monomial(3, Scalar(1)));
  CHECK(cubic.n == 3);
  CHECK(cubic.tau_antiinvolution);  // x^3 = -(-x)^3
  CHECK(!cubic.swap_involution);
  CHECK(!cubic.r_lifts);
  CHECK(!cubic.tau_r_commute);  // no commuting pair in odd degree

  LiftingReport skew = lifting_report(parse_poly("0,1,1"));
  CHECK(!skew.tau_antiinvolution);
  CHECK(skew.sign_involution);
  CHECK(skew.swap_antiinvolution);
}

TEST_CASE("element text round trips") {
  AlgebraContext ctx = quarter_ctx();
  AlgebraElement ef = multiply(ctx, gen_e(), gen_f());
  CHECK(to_string(ef) == "(-3/4,2,-1)(h)");
  CHECK(parse_element(to_string(ef)) == ef);

  AlgebraElement mixed = f_power(2) + from_h_poly(parse_poly("0,1")) +
                         Scalar(Rational(1, 2)) * e_power(1);
  CHECK(to_string(mixed) == "f^2*(1)(h) + (0,1)(h) + (1/2)(h)*e");
  CHECK(parse_element(to_string(mixed)) == mixed);

  CHECK(parse_element("e") == gen_e());
  CHECK(parse_element("f^3") == f_power(3));
  CHECK(parse_element("h^2") == from_h_poly(ComplexPoly::monomial(2, Scalar(1))));
  CHECK(parse_element("0").is_zero());

  for (int trial = 0; trial < 30; ++trial) {
    AlgebraElement u = rand_element();
    CHECK(parse_element(to_string(u)) == u);
  }

  CHECK_THROWS_AS(parse_element("e*f"), input_error);
  CHECK_THROWS_AS(parse_element("f*(1)(h)*e"), input_error);
  CHECK_THROWS_AS(parse_element("(1,2)(x)"), input_error);
  CHECK_THROWS_AS(parse_element(""), input_error);
}
