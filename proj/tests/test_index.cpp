#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "apq/errors.hpp"
#include "apq/index_tools.hpp"
#include "apq/poly.hpp"
#include "apq/positivity.hpp"
#include "test_util.hpp"

using namespace apq;
using namespace apq::testutil;
using cd = std::complex<double>;

namespace {

const double kPi = 3.14159265358979323846;

// -(y - a)(y - 1 + conj(a)) for a = -1: the quadratic 2 + y - y^2.
const ComplexPoly kQuadA1 = parse_poly("2,1,-1");

}  // namespace

TEST_CASE("index of simple examples") {
  CHECK(index(parse_poly("-2,1"), 0.0) == -1);       // x - 2
  CHECK(index(parse_poly("-1,0,1"), 0.0) == 0);      // (x-1)(x+1)
  CHECK(index(ComplexPoly{Scalar(5)}, 0.0) == 0);    // constants never wind
  CHECK(index(parse_poly("-8,12,-6,1"), 0.0) == -3); // (x-2)^3
  CHECK(index(parse_poly("-2,1"), 3.0) == 1);        // root left of the line

  CHECK_THROWS_AS(index(ComplexPoly::x(), 0.0), root_on_line);
  CHECK_THROWS_AS(index(parse_poly("-1,1"), 1.0), root_on_line);
  CHECK_THROWS_AS(index(ComplexPoly(), 0.0), input_error);
}

TEST_CASE("index is additive on random products") {
  int done = 0, attempts = 0;
  while (done < 100 && attempts < 1000) {
    ++attempts;
    ComplexPoly G = rand_poly(rand_int(1, 3));
    ComplexPoly H = rand_poly(rand_int(1, 3));
    try {
      // Winding cross-validation runs inside each call; a disagreement
      // would surface as numerical_error and fail the test.
      int ig = index(G, 0.0);
      int ih = index(H, 0.0);
      CHECK(index(G * H, 0.0) == ig + ih);
      ++done;
    } catch (const root_on_line&) {
      continue;  // resample: a factor root hugged the line
    }
  }
  CHECK(done == 100);
}

TEST_CASE("root-count inequalities under line nonnegativity") {
  // -x^2 is t^2 >= 0 on the imaginary axis; the double root at 0 is even.
  Lemma42Report rep = lemma42_check(parse_poly("0,0,-1"), 0.0);
  CHECK(rep.rho_above == 0);
  CHECK(rep.rho_below == 0);
  CHECK(rep.k_odd_on_line == 0);
  CHECK(rep.inequalities_hold);
  CHECK_FALSE(rep.equality_above);
  CHECK_FALSE(rep.equality_below);

  CHECK(lemma42_check(ComplexPoly{Scalar(1)}, 0.0).inequalities_hold);

  // G * bar-reflected G is |G|^2 on the line: both sides balance exactly.
  for (int trial = 0; trial < 20; ++trial) {
    ComplexPoly G = rand_poly(rand_int(1, 3));
    ComplexPoly F = G * bar_reflect(G, Scalar(0));
    Lemma42Report r = lemma42_check(F, 0.0);
    CHECK(r.inequalities_hold);
    CHECK(r.rho_above == r.rho_below);
    CHECK_FALSE(r.equality_above);
    CHECK_FALSE(r.equality_below);
  }

  CHECK_THROWS_AS(lemma42_check(ComplexPoly::monomial(2), 0.0),
                  hypothesis_fails);
  CHECK_THROWS_AS(lemma42_check(ComplexPoly(), 0.0), input_error);
}

TEST_CASE("saturated root-count inequalities force the leading sign") {
  // 1 - x: one root right of the line, none left, saturating rho_> = 1.
  Lemma42Report above = lemma42_check(parse_poly("1,-1"), 0.0);
  CHECK(above.equality_above);
  CHECK(above.leading_sign_checked);
  CHECK(above.leading_sign_ok);

  // 1 + x saturates the mirror inequality with leading sign +1.
  Lemma42Report below = lemma42_check(parse_poly("1,1"), 0.0);
  CHECK(below.equality_below);
  CHECK(below.leading_sign_checked);
  CHECK(below.leading_sign_ok);
}

TEST_CASE("argument profile of elementary functions") {
  ArgumentProfile flat = argument_profile(ComplexPoly{Scalar(1)}, 0.0, 1.0);
  CHECK(flat.bound <= 1e-15);
  CHECK(flat.window == 1.0);

  // 1/4 - x^2 is 1/4 + t^2 on the axis: argument identically zero.
  ArgumentProfile real_pos = argument_profile(parse_poly("1/4,0,-1"), 0.0, 0.5);
  CHECK(real_pos.bound <= 1e-12);

  // 2 + x on the axis has argument atan(t/2): small near 0, pi/2 at infinity.
  ArgumentProfile lin = argument_profile(parse_poly("2,1"), 0.0, 1.0);
  CHECK(lin.bound < kPi / 2);
  CHECK(lin.bound > 1.5);
  CHECK(lin.small_bound == doctest::Approx(std::atan(0.5)).epsilon(1e-3));
  for (std::size_t i = 1; i < lin.t.size(); ++i) CHECK(lin.t[i] > lin.t[i - 1]);

  CHECK_THROWS_AS(argument_profile(ComplexPoly::x(), 0.0, 1.0),
                  near_zero_on_line);
  CHECK_THROWS_AS(argument_profile(ComplexPoly(), 0.0, 1.0), input_error);
  CHECK_THROWS_AS(argument_profile(ComplexPoly{Scalar(1)}, 0.0, 0.0),
                  input_error);
}

TEST_CASE("good approximation for the quadratic with root -1") {
  ComplexPoly F = good_approximation_quadratic(cd(-1.0, 0.0), 0.3);
  CHECK(F.degree() == 30);

  // F is real nonnegative along Re x = 1/2 ...
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0, 20.0}) {
    cd v = F.eval(cd(0.5, t));
    CHECK(std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v)));
    CHECK(v.real() > 0.0);
  }
  // ... and F * P has small bounded argument along the imaginary axis.
  ArgumentProfile prof = argument_profile(F * kQuadA1, 0.0, 0.3);
  CHECK(prof.bound < kPi / 2 - 0.05);
  CHECK(prof.small_bound <= 0.3 + 1e-9);

  CHECK_THROWS_AS(good_approximation_quadratic(cd(1.0, 0.0), 0.3), input_error);
  CHECK_THROWS_AS(good_approximation_quadratic(cd(-1.0, 0.0), -1.0),
                  input_error);
  ApproximationCaps tight;
  tight.max_factor_count = 1;
  tight.max_power = 2;
  CHECK_THROWS_AS(good_approximation_quadratic(cd(-1.0, 0.0), 0.01, tight),
                  search_exhausted);
}

TEST_CASE("composition of certified approximations") {
  ComplexPoly F = good_approximation_quadratic(cd(-1.0, 0.0), 0.3);
  std::vector<ApproximationFactor> one = {{kQuadA1, F}};
  CHECK(compose_good_approximations(one, 0.35) == F);

  std::vector<ApproximationFactor> two = {{kQuadA1, F}, {kQuadA1, F}};
  ComplexPoly F2 = compose_good_approximations(two, 0.7);
  CHECK(F2.degree() == 2 * F.degree());
  ArgumentProfile prof = argument_profile(F2 * kQuadA1 * kQuadA1, 0.0, 0.7);
  CHECK(prof.bound < kPi / 2 - 0.02);

  CHECK_THROWS_AS(compose_good_approximations({}, 0.3), input_error);
  std::vector<ApproximationFactor> bad = {{kQuadA1, ComplexPoly()}};
  CHECK_THROWS_AS(compose_good_approximations(bad, 0.3), input_error);
}

TEST_CASE("non-unitarizability witness for quadratic and quartic examples") {
  ComplexPoly four = parse_poly("4,0,-1");
  ComplexPoly W = nonunitarizability_witness(four);
  CHECK(W.is_exact());
  CHECK(certificate_check_prop38(W, four));

  ComplexPoly quartic = parse_poly("36,0,-13,0,1");  // (4-x^2)(9-x^2)
  ComplexPoly W4 = nonunitarizability_witness(quartic);
  CHECK(W4.is_exact());
  CHECK(certificate_check_prop38(W4, quartic));

  // Roots off the real axis pair across the imaginary axis just as well.
  ComplexPoly cq = parse_poly("25,0,-6,0,1");  // roots +-(2 +- i){pairs}
  ComplexPoly Wc = nonunitarizability_witness(cq);
  CHECK(Wc.is_exact());
  CHECK(certificate_check_prop38(Wc, cq));
}

TEST_CASE("witness preconditions") {
  CHECK_THROWS_AS(nonunitarizability_witness(parse_poly("1/4,0,-1")),
                  input_error);  // roots inside the strip
  CHECK_THROWS_AS(nonunitarizability_witness(parse_poly("1,0,-1")),
                  input_error);  // roots on the strip boundary
  CHECK_THROWS_AS(nonunitarizability_witness(parse_poly("-4,0,1")),
                  input_error);  // negative on the imaginary axis
  CHECK_THROWS_AS(nonunitarizability_witness(parse_poly("0,1")), input_error);
  CHECK_THROWS_AS(nonunitarizability_witness(parse_poly("4,0,-1"), 0.0),
                  input_error);
}
