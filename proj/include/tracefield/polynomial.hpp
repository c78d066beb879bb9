#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracefield/rational.hpp"

namespace tf {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Always canonical: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient list and degree -1.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, int deg) {
    std::vector<T> c(static_cast<std::size_t>(deg) + 1, T(0));
    c.back() = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  /// Coefficient of x^i; zero past the degree.
  T operator[](int i) const {
    return (i < 0 || i > degree()) ? T(0) : c_[static_cast<std::size_t>(i)];
  }
  const T& lc() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

RatPoly to_rational(const IntPoly& f);
/// Clears denominators and divides out the content; the result has a
/// positive leading coefficient.
IntPoly primitive_part(const RatPoly& f);
IntPoly primitive_part(const IntPoly& f);
/// gcd of the coefficients, signed like the leading coefficient.
Integer content(const IntPoly& f);

struct RatDivMod {
  RatPoly quotient, remainder;
};
RatDivMod divmod(const RatPoly& a, const RatPoly& b);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
/// Monic gcd (zero when both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly make_monic(const RatPoly& f);
/// Exact quotient a / b in Z[x], or nullopt when b does not divide a.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
/// Product of the distinct irreducible factors, primitive.
IntPoly squarefree_part(const IntPoly& f);
bool is_squarefree(const IntPoly& f);

Rational resultant(const RatPoly& a, const RatPoly& b);
/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f). Throws InputError on a
/// constant polynomial.
Integer poly_discriminant(const IntPoly& f);

/// Number of distinct real roots, by a Sturm sequence.
int count_real_roots(const IntPoly& f);
/// Distinct real roots of a squarefree f in the closed interval [a, b].
int count_real_roots(const RatPoly& f, const Rational& a, const Rational& b);

std::string to_string(const IntPoly& f, const std::string& var = "x");
std::string to_string(const RatPoly& f, const std::string& var = "x");
/// Coefficient arrays as canonical strings, ascending degree.
std::vector<std::string> coefficient_strings(const RatPoly& f);

}  // namespace tf
