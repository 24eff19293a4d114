#include <doctest.h>

#include <cmath>
#include <string>

#include "lue/errors.hpp"
#include "lue/test_function.hpp"

using namespace lue;

TEST_CASE("atoms evaluate to their closed forms") {
  CHECK(TestFunction::identity()(2.5) == 2.5);
  CHECK(TestFunction::constant(3)(7.0) == 3.0);
  CHECK(TestFunction::power(2)(3.0) == 9.0);
  CHECK(TestFunction::poly({1, 0, 2})(2.0) == 9.0);
  CHECK(TestFunction::cheb({0, 1})(3.0) == doctest::Approx(-0.5));  // P_2(1) = -1/2
  CHECK(TestFunction::indicator(0, 2)(1.0) == 1.0);
  CHECK(TestFunction::indicator(0, 2)(2.5) == 0.0);
  CHECK(TestFunction::abs_shift()(0.5) == 1.5);
  CHECK(TestFunction::abs(1.0)(-1.0) == 2.0);
  CHECK(TestFunction::hat(0, 1, 3)(2.0) == doctest::Approx(0.5));
}

TEST_CASE("descriptors round-trip through text") {
  for (const char* s : {"identity", "const 3", "power 2", "poly 0 0 1", "cheb 1 0.5",
                        "indicator 0 2", "abs-shift", "abs 0.25", "hat -1 0 1",
                        "2 * identity + shift 0.1 power 3", "cheb-ext 0.5 1 2 3"}) {
    const TestFunction f = TestFunction::parse(s);
    const TestFunction g = TestFunction::parse(f.to_string());
    CHECK(g.to_string() == f.to_string());
    for (double x : {0.0, 0.7, 3.9, 4.6, 6.0}) CHECK(f(x) == g(x));
  }
  const TestFunction f = TestFunction::poly({0.1, 1.0 / 3.0});
  CHECK(TestFunction::parse(f.to_string())(1.0) == f(1.0));
}

TEST_CASE("malformed descriptors are rejected") {
  CHECK_THROWS_AS(TestFunction::parse("bogus"), InvalidArgument);
  CHECK_THROWS_AS(TestFunction::parse("power"), InvalidArgument);
  CHECK_THROWS_AS(TestFunction::parse("indicator 2 1"), InvalidArgument);
  CHECK_THROWS_AS(TestFunction::parse("const 1,5"), InvalidArgument);
  CHECK_THROWS_AS(parse_number("1e"), InvalidArgument);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(18.0) == "18");
  for (double v : {1.0 / 3.0, 1e-300, 6.02214076e23, -2.5})
    CHECK(parse_number(format_number(v)) == v);
}

TEST_CASE("structural hints") {
  CHECK(TestFunction::constant(2).is_constant());
  CHECK_FALSE(TestFunction::identity().is_constant());
  CHECK(TestFunction::power(3).degree_hint() == 3);
  const auto bp = TestFunction::hat(0, 1, 3).breakpoints();
  REQUIRE(bp.size() == 3);
  CHECK(bp[1] == 1.0);
  CHECK(TestFunction::indicator(0, 2).jumps().size() == 2);
  CHECK(TestFunction::abs_shift().jumps().empty());
}

TEST_CASE("cheb-ext blends to a constant with matching slope") {
  const double eps = 0.5;
  const TestFunction f = TestFunction::cheb_ext(eps, 0.25, {1.0, -0.5});
  const double b = 4 + eps;
  const double e = 4 + 2 * eps;
  const double h = 1e-6;
  CHECK(f(b - h) == doctest::Approx(f(b + h)).epsilon(1e-5));
  CHECK((f(b) - f(b - h)) / h == doctest::Approx((f(b + h) - f(b)) / h).epsilon(1e-4));
  CHECK(f(e + 1) == f(e + 5));
  CHECK((f(e) - f(e - h)) / h == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("algebra on test functions") {
  const TestFunction f = TestFunction::identity() + 2.0 * TestFunction::power(2);
  CHECK(f(3.0) == 21.0);
  CHECK(f.shifted(1.0)(2.0) == f(3.0));
  CHECK((f - f)(1.7) == 0.0);
}
