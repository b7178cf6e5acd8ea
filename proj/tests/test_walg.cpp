#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "equispec/welement.hpp"

using namespace equispec;

namespace {

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return Rational(num(rng), den(rng));
}

ParamPoly rand_param(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2:
      return ParamPoly(rand_rational(rng));
    case 3:
      return rand_rational(rng) * ParamPoly::k();
    case 4:
      return rand_rational(rng) * ParamPoly::q();
    default:
      return ParamPoly(rand_rational(rng)) + rand_rational(rng) * ParamPoly::k();
  }
}

DPoly rand_dpoly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  DPoly f;
  const int d = deg(rng);
  for (int i = 0; i <= d; ++i) f += rand_param(rng) * DPoly::D().pow(i);
  return f;
}

WElement rand_welement(std::mt19937& rng) {
  std::uniform_int_distribution<int> mode(-4, 4), nterm(1, 2);
  WElement w;
  const int terms = nterm(rng);
  for (int i = 0; i < terms; ++i) w += WElement::make(mode(rng), rand_dpoly(rng, 4));
  w += WElement::central(rand_param(rng));
  return w;
}

}  // namespace

TEST_CASE("shift is substitution D -> D + m", "[walg]") {
  CHECK(DPoly::D().shift(1) == DPoly::linear(ParamPoly(1)));
  const DPoly d2 = DPoly::D() * DPoly::D();
  CHECK(d2.shift(-2) == d2 - 4 * ParamPoly(1) * DPoly::D() + DPoly(4));
  CHECK(DPoly(1).shift(17) == DPoly(1));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> m(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const DPoly f = rand_dpoly(rng, 4);
    const int a = m(rng), b = m(rng);
    CHECK(f.shift(a).shift(b) == f.shift(a + b));
  }

  // substitution is a ring homomorphism
  for (int i = 0; i < 50; ++i) {
    const DPoly f = rand_dpoly(rng, 3), g = rand_dpoly(rng, 3);
    const int a = m(rng);
    CHECK((f * g).shift(a) == f.shift(a) * g.shift(a));
    CHECK((f + g).shift(a) == f.shift(a) + g.shift(a));
  }
}

TEST_CASE("symbol product composes circle operators", "[walg]") {
  auto [m1, f1] = symbol_product(1, DPoly(1), -1, DPoly(1));
  CHECK(m1 == 0);
  CHECK(f1 == DPoly(1));

  auto [m2, f2] = symbol_product(1, DPoly::D(), -1, DPoly::D());
  CHECK(m2 == 0);
  CHECK(f2 == DPoly::linear(ParamPoly(-1)) * DPoly::D());

  auto [m3, f3] = symbol_product(0, DPoly::D(), 0, DPoly::D());
  CHECK(m3 == 0);
  CHECK(f3 == DPoly::D() * DPoly::D());
}

TEST_CASE("cocycle values and support", "[walg]") {
  CHECK(cocycle(1, DPoly(1), -1, DPoly(1)) == ParamPoly(1));
  CHECK(cocycle(2, DPoly::D(), -2, DPoly::D()) == ParamPoly(-1));
  CHECK(cocycle(1, DPoly::D(), -1, DPoly::D()).is_zero());
  CHECK(cocycle(2, DPoly::D(), 1, DPoly::D()).is_zero());  // n + m != 0

  std::mt19937 rng(9);
  std::uniform_int_distribution<int> mode(-4, 4);
  for (int i = 0; i < 60; ++i) {
    const int n = mode(rng);
    const DPoly f = rand_dpoly(rng, 4), g = rand_dpoly(rng, 4);
    CHECK(cocycle(n, f, -n, g) == -cocycle(-n, g, n, f));
  }
}

TEST_CASE("bracket reproduces first commutators", "[walg]") {
  const WElement wd = WElement::make(0, DPoly::D());
  const WElement wzd = WElement::make(1, DPoly::D());
  CHECK(bracket(wd, wzd) == wzd);

  const WElement wz = WElement::make(1, DPoly(1));
  const WElement wzinv = WElement::make(-1, DPoly(1));
  CHECK(bracket(wz, wzinv) == WElement::central(ParamPoly(1)));

  const WElement a = WElement::make(2, DPoly::D());
  const WElement b = WElement::make(-2, DPoly::D());
  const WElement expected =
      WElement::make(0, Rational(-4) * ParamPoly(1) * DPoly::D()) +
      WElement::central(ParamPoly(-1));
  CHECK(bracket(a, b) == expected);
}

TEST_CASE("bracket is antisymmetric including central parts", "[walg]") {
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    const WElement x = rand_welement(rng), y = rand_welement(rng);
    CHECK(bracket(x, y) == -bracket(y, x));
  }
}

TEST_CASE("bracket is bilinear", "[walg]") {
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    const WElement x = rand_welement(rng), y = rand_welement(rng), z = rand_welement(rng);
    const ParamPoly a = rand_param(rng), b = rand_param(rng);
    CHECK(bracket(a * x + b * y, z) == a * bracket(x, z) + b * bracket(y, z));
    CHECK(bracket(z, a * x + b * y) == a * bracket(z, x) + b * bracket(z, y));
  }
}

TEST_CASE("bracket W-part agrees with symbol product commutation", "[walg]") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> mode(-4, 4);
  for (int i = 0; i < 50; ++i) {
    const int n = mode(rng), m = mode(rng);
    const DPoly f = rand_dpoly(rng, 3), g = rand_dpoly(rng, 3);
    const WElement br = bracket(WElement::make(n, f), WElement::make(m, g));
    auto [mode_fg, fg] = symbol_product(n, f, m, g);
    auto [mode_gf, gf] = symbol_product(m, g, n, f);
    REQUIRE(mode_fg == mode_gf);
    CHECK(br.mode(mode_fg) == fg - gf);
  }
}

TEST_CASE("jacobi identity holds exactly", "[walg]") {
  const WElement x = WElement::make(1, DPoly(1));
  const WElement y = WElement::make(-1, DPoly(1));
  const WElement z = WElement::make(0, DPoly::D());
  CHECK(jacobi_residual(x, y, z).is_zero());
  CHECK(jacobi_residual(x, y, WElement()).is_zero());

  std::mt19937 rng(29);
  for (int i = 0; i < 50; ++i)
    CHECK(jacobi_residual(rand_welement(rng), rand_welement(rng), rand_welement(rng))
              .is_zero());
}

TEST_CASE("central term of the mode-n pair matches the closed form", "[walg]") {
  for (int n = 1; n <= 6; ++n) {
    const ParamPoly psi = cocycle(n, DPoly::D(), -n, DPoly::D());
    const Rational expected = -Rational(n * n * n - n) / 6;
    CHECK(psi == ParamPoly(expected));
  }
}

TEST_CASE("rendering is exact and parse-round-trippable", "[walg]") {
  const WElement w =
      WElement::make(2, DPoly::D() * DPoly::D() + ParamPoly::k() * DPoly::D());
  CHECK(to_string(w) == "W(z^2*(D^2 + (k)*D))");
  const WElement c = WElement::central(ParamPoly(-1));
  CHECK(to_string(c) == "(c)*(-1)");
  CHECK(to_string(WElement()) == "0");
  CHECK(parse_welement(to_string(w + c)) == w + c);

  std::mt19937 rng(41);
  for (int i = 0; i < 100; ++i) {
    const WElement x = rand_welement(rng);
    CHECK(parse_welement(to_string(x)) == x);
  }
}
