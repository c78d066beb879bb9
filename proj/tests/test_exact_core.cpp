#include <doctest.h>

#include <random>

#include "tracefield/ball.hpp"
#include "tracefield/errors.hpp"
#include "tracefield/factor.hpp"
#include "tracefield/matrix.hpp"
#include "tracefield/polynomial.hpp"
#include "tracefield/rational.hpp"

using namespace tf;

namespace {

IntPoly ip(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}

IntPoly mod_reduce(const IntPoly& f, long p) {
  std::vector<Integer> v;
  for (auto c : f.coeffs()) {
    Integer r = c % p;
    if (r < 0) r += p;
    v.push_back(r);
  }
  return IntPoly(v);
}

// Monic normalization of f modulo p, used to compare with factor products.
IntPoly monic_mod(const IntPoly& f, long p) {
  IntPoly g = mod_reduce(f, p);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), g.lc().get_mpz_t(), Integer(p).get_mpz_t());
  return mod_reduce(g * inv, p);
}

}  // namespace

TEST_CASE("rational canonical strings") {
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("-6/3")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("integer factoring helpers") {
  auto f = factor_integer(Integer(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == 2);
  CHECK(f[0].second == 3);
  CHECK(radical(Integer(360)) == 30);
  CHECK(is_squarefree(Integer(30)));
  CHECK_FALSE(is_squarefree(Integer(12)));
  Integer big = Integer("1000000007") * Integer("998244353");
  auto g = factor_integer(big);
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == Integer("998244353"));
}

TEST_CASE("poly_discriminant") {
  CHECK(poly_discriminant(ip({-1, -1, 1})) == 5);
  CHECK(poly_discriminant(ip({-5, 0, 1})) == 20);
  CHECK(poly_discriminant(ip({-1, -4, 0, 1})) == 229);
  CHECK_THROWS_AS(poly_discriminant(ip({3})), InputError);
  // Oracle for cubics x^3 + px + q: -4p^3 - 27q^2.
  for (long p = -5; p <= 5; ++p)
    for (long q = -5; q <= 5; ++q)
      CHECK(poly_discriminant(ip({q, p, 0, 1})) == -4 * p * p * p - 27 * q * q);
}

TEST_CASE("factor_mod_p examples") {
  auto a = factor_mod_p(ip({-5, 0, 1}), 2);
  REQUIRE(a.size() == 1);
  CHECK(a[0].factor == ip({1, 1}));
  CHECK(a[0].multiplicity == 2);
  auto b = factor_mod_p(ip({1, 0, 1}), 5);
  REQUIRE(b.size() == 2);
  CHECK(b[0].factor == ip({2, 1}));
  CHECK(b[1].factor == ip({3, 1}));
  auto c = factor_mod_p(ip({1, 0, 1}), 3);
  REQUIRE(c.size() == 1);
  CHECK(c[0].factor == ip({1, 0, 1}));
  CHECK_THROWS_AS(factor_mod_p(ip({1, 0, 1}), 4), InputError);
  CHECK_THROWS_AS(factor_mod_p(ip({3, 0, 3}), 3), InputError);
}

TEST_CASE("factor_mod_p reconstructs random polynomials") {
  std::mt19937_64 rng(11);
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (int trial = 0; trial < 300; ++trial) {
    long p = primes[rng() % 15];
    int deg = 1 + static_cast<int>(rng() % 6);
    std::vector<Integer> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
    if (c.back() % p == 0) c.back() = 1;
    IntPoly f(c);
    auto fac = factor_mod_p(f, p);
    IntPoly prod = ip({1});
    for (auto& m : fac) {
      CHECK(m.factor.is_monic());
      for (int k = 0; k < m.multiplicity; ++k) prod = mod_reduce(prod * m.factor, p);
      // Irreducible: no proper factorization of its own.
      auto self = factor_mod_p(m.factor, p);
      CHECK(self.size() == 1);
      CHECK(self[0].multiplicity == 1);
    }
    CHECK(prod == monic_mod(f, p));
    for (std::size_t i = 1; i < fac.size(); ++i) CHECK(poly_less(fac[i - 1].factor, fac[i].factor));
  }
}

TEST_CASE("factor_over_integers") {
  auto a = factor_over_integers(ip({-1, 0, 1}));
  REQUIRE(a.factors.size() == 2);
  CHECK(a.factors[0].factor == ip({-1, 1}));
  CHECK(a.factors[1].factor == ip({1, 1}));
  auto b = factor_over_integers(ip({1, 0, 1}));
  REQUIRE(b.factors.size() == 1);
  auto c = factor_over_integers(ip({4, 0, 0, 0, 1}));
  REQUIRE(c.factors.size() == 2);
  CHECK(c.factors[0].factor == ip({2, -2, 1}));
  CHECK(c.factors[1].factor == ip({2, 2, 1}));
  CHECK_FALSE(is_irreducible(ip({-1, 0, 0, 1})));
  CHECK(is_irreducible(ip({1, 0, -10, 0, 1})));
  // Swinnerton-Dyer style product needing recombination.
  IntPoly big = ip({1, 0, -10, 0, 1}) * ip({-2, 0, 0, 1}) * ip({-2, 0, 0, 1}) * ip({3, 6});
  auto d = factor_over_integers(big);
  IntPoly prod = ip({1});
  for (auto& f : d.factors)
    for (int k = 0; k < f.multiplicity; ++k) prod = prod * f.factor;
  CHECK(prod * d.content == big);
  CHECK(d.content == 3);
  CHECK(d.factors.size() == 3);
}

TEST_CASE("factor_over_integers random products") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    IntPoly f = ip({1});
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < parts; ++k) {
      int deg = 1 + static_cast<int>(rng() % 3);
      std::vector<Integer> c;
      for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % 11) - 5);
      c.emplace_back(1 + static_cast<long>(rng() % 2));
      f = f * IntPoly(c);
    }
    auto r = factor_over_integers(f);
    IntPoly prod = IntPoly::constant(r.content);
    for (auto& g : r.factors) {
      CHECK(is_irreducible(g.factor));
      for (int k = 0; k < g.multiplicity; ++k) prod = prod * g.factor;
    }
    CHECK(prod == f);
  }
}

TEST_CASE("hermite_normal_form") {
  auto id = IntMatrix::identity(3);
  auto r = hermite_normal_form(id);
  CHECK(r.H == id);
  CHECK(r.U == id);
  auto m = IntMatrix::from_rows({{2, 0}, {1, 1}});
  auto h = hermite_normal_form(m);
  CHECK(h.H == IntMatrix::from_rows({{1, 1}, {0, 2}}));
  CHECK(h.U * m == h.H);
  auto z = hermite_normal_form(IntMatrix(2, 3));
  CHECK(z.H.is_zero());
  CHECK(z.U == IntMatrix::identity(2));
}

TEST_CASE("hermite_normal_form random") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 21) - 10;
    auto h = hermite_normal_form(m);
    CHECK(h.U * m == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    // Echelon shape with positive reduced pivots.
    long last = -1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < rows; ++i) {
      long piv = -1;
      for (std::size_t j = 0; j < cols; ++j)
        if (h.H(i, j) != 0) {
          piv = static_cast<long>(j);
          break;
        }
      if (piv < 0) {
        zero_seen = true;
        continue;
      }
      CHECK_FALSE(zero_seen);
      CHECK(piv > last);
      CHECK(h.H(i, static_cast<std::size_t>(piv)) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h.H(k, static_cast<std::size_t>(piv)) >= 0);
        CHECK(h.H(k, static_cast<std::size_t>(piv)) < h.H(i, static_cast<std::size_t>(piv)));
      }
      last = piv;
    }
  }
}

TEST_CASE("min_poly_of_matrix") {
  auto p1 = min_poly_of_matrix(RationalMatrix::identity(3));
  CHECK(p1 == RatPoly({Rational(-1), Rational(1)}));
  auto p2 = min_poly_of_matrix(RationalMatrix::from_rows({{0, 1}, {0, 0}}));
  CHECK(p2 == RatPoly({Rational(0), Rational(0), Rational(1)}));
  auto comp = RationalMatrix::from_rows({{0, 1}, {1, 1}});
  CHECK(min_poly_of_matrix(comp) == RatPoly({Rational(-1), Rational(-1), Rational(1)}));
  CHECK_THROWS_AS(min_poly_of_matrix(RationalMatrix(2, 3)), InputError);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 5;
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    if (trial % 3 == 0) m = m * m;  // occasionally repeated eigenvalues
    CHECK(evaluate(min_poly_of_matrix(m), m).is_zero());
  }
}

TEST_CASE("inverse and kernel") {
  auto m = RationalMatrix::from_rows({{2, 1}, {1, 3}});
  auto inv = inverse(m);
  CHECK(inv == RationalMatrix::from_rows({{Rational(3, 5), Rational(-1, 5)}, {Rational(-1, 5), Rational(2, 5)}}));
  CHECK_THROWS_AS(inverse(RationalMatrix::from_rows({{1, 2}, {2, 4}})), DomainError);
  auto k = kernel(RationalMatrix::from_rows({{1, 2, 3}}));
  CHECK(k.rows() == 2);
  CHECK(determinant(IntMatrix::from_rows({{2, 1}, {1, 3}})) == 5);
}

TEST_CASE("count_real_roots") {
  CHECK(count_real_roots(ip({-2, 0, 1})) == 2);
  CHECK(count_real_roots(ip({1, 0, 1})) == 0);
  CHECK(count_real_roots(ip({-1, -4, 0, 1})) == 3);
  CHECK(count_real_roots(ip({-1, -1, 0, 1})) == 1);
}

TEST_CASE("isolate_complex_roots examples") {
  auto r = isolate_complex_roots(ip({-2, 0, 1}), 128);
  REQUIRE(r.size() == 2);
  CHECK(r[0].re_double() == doctest::Approx(-1.41421356237));
  CHECK(r[1].re_double() == doctest::Approx(1.41421356237));
  CHECK(r[0].real_midpoint());
  CHECK(r[0].rad_double() < std::ldexp(1.0, -64));
  auto i = isolate_complex_roots(ip({1, 0, 1}), 64);
  REQUIRE(i.size() == 2);
  CHECK(i[0].im_double() == doctest::Approx(-1.0));
  CHECK(i[1].im_double() == doctest::Approx(1.0));
  CHECK(i[1].contains(0, 1));
  auto c = isolate_complex_roots(ip({-1, -4, 0, 1}), 128);
  REQUIRE(c.size() == 3);
  CHECK(c[0].re_double() == doctest::Approx(-1.8608).epsilon(1e-3));
  CHECK(c[1].re_double() == doctest::Approx(-0.2541).epsilon(1e-3));
  CHECK(c[2].re_double() == doctest::Approx(2.1149).epsilon(1e-3));
  CHECK_THROWS_AS(isolate_complex_roots(ip({1, 2, 1}), 64), InputError);
}

TEST_CASE("root isolation agrees with Sturm counts") {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 50) {
    int deg = 3 + static_cast<int>(rng() % 2);
    std::vector<Integer> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % 21) - 10);
    c.emplace_back(1);
    IntPoly f(c);
    if (!is_squarefree(f)) continue;
    ++done;
    auto balls = isolate_complex_roots(f, 128);
    REQUIRE(balls.size() == static_cast<std::size_t>(deg));
    int real = 0;
    for (auto& b : balls) {
      if (b.real_midpoint()) ++real;
      CHECK(evaluate(f, b).contains_zero());
    }
    CHECK(real == count_real_roots(f));
  }
}

TEST_CASE("ball arithmetic encloses exact values") {
  auto third = ComplexBall::from_rational(Rational(1, 3), 80);
  auto three = ComplexBall::from_integer(3, 80);
  CHECK((third * three).contains(1));
  CHECK((third + third + third).contains(1));
  CHECK_FALSE((third * three).contains(Rational(1) + Rational(1, Integer(1) << 60)));
}
