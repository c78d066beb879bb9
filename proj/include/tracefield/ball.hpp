#pragma once

#include <mpfr.h>

#include <string>

#include "tracefield/polynomial.hpp"
#include "tracefield/rational.hpp"

namespace tf {

/// Owning wrapper around an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  int sign() const { return mpfr_sgn(v_); }

 private:
  mpfr_t v_;
  bool live_ = false;
};

/// A closed disc in C: midpoint (re, im) at working precision plus a
/// radius that bounds every rounding and propagated error. Arithmetic is
/// inclusion-preserving: the exact result of an operation on any points
/// of the operands lies inside the result ball.
class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec = 128);

  static ComplexBall from_rational(const Rational& q, mpfr_prec_t prec);
  static ComplexBall from_integer(const Integer& z, mpfr_prec_t prec);
  /// Exact point (radius 0) at the given midpoint.
  static ComplexBall point(const Real& re, const Real& im);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  const Real& rad() const { return rad_; }
  mpfr_prec_t precision() const { return re_.precision(); }
  void set_radius(const Real& r);
  void add_error(const Real& e);

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  ComplexBall operator-() const;

  /// Upper bound of |z| over the ball.
  Real abs_upper() const;
  /// Lower bound of |z| over the ball (zero when the ball contains 0).
  Real abs_lower() const;
  bool contains(const Rational& re, const Rational& im = 0) const;
  bool contains_zero() const { return contains(0, 0); }
  /// True when the midpoint lies on the real axis.
  bool real_midpoint() const { return im_.sign() == 0; }
  double re_double() const { return re_.to_double(); }
  double im_double() const { return im_.to_double(); }
  double rad_double() const { return rad_.to_double(); }

 private:
  Real re_, im_, rad_;
};

/// Horner evaluation of a rational polynomial on a ball.
ComplexBall evaluate(const RatPoly& p, const ComplexBall& z);
ComplexBall evaluate(const IntPoly& p, const ComplexBall& z);

/// Upper bound of |a - b| over both balls, and a lower bound.
Real distance_upper(const ComplexBall& a, const ComplexBall& b);
Real distance_lower(const ComplexBall& a, const ComplexBall& b);

/// Certified isolation of the roots of a squarefree integer polynomial:
/// deg f pairwise disjoint balls, each containing exactly one root, with
/// radii at most 2^(-precision_bits/2). Real roots get balls centred on
/// the real axis; the balls of non-real roots avoid the real axis.
/// Ordered by real part, then imaginary part. Throws InputError on a
/// non-squarefree input and BudgetError when 4096 bits do not suffice.
std::vector<ComplexBall> isolate_complex_roots(const IntPoly& f, int precision_bits);

}  // namespace tf
