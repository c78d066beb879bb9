#include <doctest.h>

#include "tracefield/errors.hpp"
#include "tracefield/order.hpp"

using namespace tf;

namespace {
IntPoly ip(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}
RationalMatrix golden_basis() {
  return RationalMatrix::from_rows({{Rational(1), Rational(0)}, {Rational(1, 2), Rational(1, 2)}});
}
}  // namespace

TEST_CASE("dedekind criterion") {
  CHECK_FALSE(dedekind_p_maximal(ip({-5, 0, 1}), 2));
  CHECK(dedekind_p_maximal(ip({-1, -1, 1}), 5));
  CHECK(dedekind_p_maximal(ip({-5, 0, 1}), 5));
  CHECK(dedekind_p_maximal(ip({-2, 0, 1}), 2));
  CHECK(dedekind_p_maximal(ip({-3, 0, 1}), 2));
  CHECK_FALSE(dedekind_p_maximal(ip({-8, 0, 1}), 2));
  CHECK(dedekind_p_maximal(ip({1, -2, -1, 1}), 7));
  CHECK_FALSE(dedekind_p_maximal(ip({-12, 0, 1}), 2));
}

TEST_CASE("build_order") {
  auto F = NumberField::create(ip({-1, -1, 1}));
  auto O = build_order(F);
  CHECK(O.disc() == 5);
  CHECK(O.provenance() == OrderProvenance::CertifiedSquarefree);
  CHECK(O.gram() == IntMatrix::from_rows({{2, 1}, {1, 3}}));

  auto K = NumberField::create(ip({-5, 0, 1}));
  CHECK_THROWS_WITH_AS(build_order(K), doctest::Contains("needs integral basis"), InputError);
  auto V = build_order(K, golden_basis(), Integer(5));
  CHECK(V.disc() == 5);
  CHECK(V.index() == 2);
  CHECK(V.provenance() == OrderProvenance::UserSuppliedValidated);
  CHECK(V.gram() == IntMatrix::from_rows({{2, 1}, {1, 3}}));
  // Rebuilding from the produced basis revalidates.
  CHECK(build_order(K, V.basis()).disc() == 5);
  CHECK_THROWS_WITH_AS(build_order(K, golden_basis(), Integer(7)), doctest::Contains("claimed discriminant"),
                       InputError);
  // Z[sqrt 5] itself is a ring but not maximal at 2.
  CHECK_THROWS_WITH_AS(build_order(K, RationalMatrix::identity(2)), doctest::Contains("not maximal"), InputError);
  CHECK(build_order(K, RationalMatrix::identity(2), std::nullopt, true).provenance() ==
        OrderProvenance::UserSuppliedTrusted);
  // (1 + sqrt5)/4 is not integral.
  auto bad = RationalMatrix::from_rows({{Rational(1), Rational(0)}, {Rational(1, 4), Rational(1, 4)}});
  CHECK_THROWS_AS(build_order(K, bad), InputError);
  // Half-integral theta alone does not contain Z[theta].
  auto small = RationalMatrix::from_rows({{Rational(1), Rational(0)}, {Rational(0), Rational(2)}});
  CHECK_THROWS_WITH_AS(build_order(K, small), doctest::Contains("Z[theta]"), InputError);

  auto Q2 = build_order(NumberField::create(ip({-2, 0, 1})));
  CHECK(Q2.provenance() == OrderProvenance::CertifiedDedekind);
  CHECK(Q2.gram() == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  auto Q1 = build_order(NumberField::create(ip({0, 1})));
  CHECK(Q1.gram() == IntMatrix::from_rows({{1}}));
  CHECK(Q1.disc() == 1);
}

TEST_CASE("order_p_maximal agrees with Dedekind on power bases") {
  for (auto f : {ip({-5, 0, 1}), ip({-2, 0, 1}), ip({-3, 0, 1}), ip({1, -2, -1, 1}), ip({-8, 0, 1}), ip({1, 0, 1}),
                 ip({-12, 0, 1}), ip({-2, 0, 0, 1}), ip({-4, 0, 0, 1}), ip({1, 1, 1, 1, 1})}) {
    auto K = NumberField::create(f);
    auto O = build_order(K, RationalMatrix::identity(static_cast<std::size_t>(K.degree())), std::nullopt, true);
    for (const auto& [p, e] : factor_integer(K.poly_disc()))
      if (e >= 2) CHECK_MESSAGE(order_p_maximal(O, p) == dedekind_p_maximal(f, p), to_string(f), " at ", p);
  }
}

TEST_CASE("discriminant split and fundamental") {
  auto a = discriminant_split(5);
  CHECK(a.d_s == 1);
  CHECK(a.d_f == 5);
  CHECK(a.rad_ds == 1);
  auto b = discriminant_split(20);
  CHECK(b.d_s == 4);
  CHECK(b.d_f == 5);
  CHECK(b.rad_ds == 2);
  auto c = discriminant_split(8);
  CHECK(c.d_s == 8);
  CHECK(c.d_f == 1);
  CHECK(c.rad_ds == 2);
  CHECK(discriminant_split(-23).d_f == 23);
  CHECK(is_fundamental(5));
  CHECK(is_fundamental(8));
  CHECK_FALSE(is_fundamental(20));
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(12));
  CHECK_FALSE(is_fundamental(49));
  for (long d = 1; d <= 1000000; d += (d < 5000 ? 1 : 997)) {
    auto s = discriminant_split(d);
    CHECK(s.d_s * s.d_f == d);
    CHECK(gcd(s.d_s, s.d_f) == 1);
    CHECK(is_squarefree(s.d_f));
    CHECK(s.rad_ds == radical(s.d_s));
  }
}

TEST_CASE("prime shapes and tameness") {
  auto F = build_order(NumberField::create(ip({-1, -1, 1})));
  auto s5 = prime_shape(F, 5);
  CHECK(s5.reliable);
  REQUIRE(s5.pairs.size() == 1);
  CHECK(s5.pairs[0] == std::pair<int, int>(2, 1));
  auto s2 = prime_shape(F, 2);
  REQUIRE(s2.pairs.size() == 1);
  CHECK(s2.pairs[0] == std::pair<int, int>(1, 2));
  auto V = build_order(NumberField::create(ip({-5, 0, 1})), golden_basis());
  CHECK_FALSE(prime_shape(V, 2).reliable);
  CHECK(prime_shape(V, 2).pairs.empty());
  CHECK(tameness(V, 2) == Tameness::Tame);  // 2 does not divide d_K = 5
  auto Q2 = build_order(NumberField::create(ip({-2, 0, 1})));
  CHECK(tameness(Q2, 2) == Tameness::Wild);
  CHECK(tameness(F, 5) == Tameness::Tame);
  CHECK(tameness(F, 3) == Tameness::Tame);
  auto C = build_order(NumberField::create(ip({-1, -4, 0, 1})));
  for (Integer p : {2, 3, 5, 7, 229}) {
    auto s = prime_shape(C, p);
    int sum = 0;
    for (auto [e, f] : s.pairs) sum += e * f;
    CHECK(sum == 3);
    bool ramified = false;
    for (auto [e, f] : s.pairs) ramified = ramified || e > 1;
    CHECK(ramified == (C.disc() % p == 0));
  }
}

TEST_CASE("certify_sn") {
  CHECK(certify_sn(NumberField::create(ip({-1, -1, 1}))) == SnCertificate::CertifiedSn);
  CHECK(certify_sn(NumberField::create(ip({-1, -4, 0, 1}))) == SnCertificate::CertifiedSn);
  CHECK(certify_sn(NumberField::create(ip({-1, 3, 1, -5, 0, 1}))) == SnCertificate::CertifiedSn);
  // Abelian and other small-group quartics never certify.
  CHECK(certify_sn(NumberField::create(ip({1, 1, 1, 1, 1}))) == SnCertificate::Unknown);
  CHECK(certify_sn(NumberField::create(ip({1, 0, -10, 0, 1}))) == SnCertificate::Unknown);
  CHECK(certify_sn(NumberField::create(ip({1, 0, 0, 0, 1}))) == SnCertificate::Unknown);
  CHECK(certify_sn(NumberField::create(ip({5, 0, 5, 0, 1}))) == SnCertificate::Unknown);
  CHECK(certify_sn(NumberField::create(ip({1, -2, -1, 1}))) == SnCertificate::Unknown);
}
