#include "tracefield/ball.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "tracefield/errors.hpp"

namespace tf {

namespace {
constexpr mpfr_prec_t kRadPrec = 64;
}

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
  live_ = true;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
  live_ = true;
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
  live_ = true;
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

std::string Real::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

ComplexBall ComplexBall::from_rational(const Rational& q, mpfr_prec_t prec) {
  ComplexBall b(prec);
  if (mpfr_set_q(b.re_.get(), q.get_mpq_t(), MPFR_RNDN) != 0)
    mpfr_mul_2si(b.rad_.get(), b.re_.get(), -prec, MPFR_RNDU), mpfr_abs(b.rad_.get(), b.rad_.get(), MPFR_RNDU);
  return b;
}

ComplexBall ComplexBall::from_integer(const Integer& z, mpfr_prec_t prec) {
  ComplexBall b(prec);
  if (mpfr_set_z(b.re_.get(), z.get_mpz_t(), MPFR_RNDN) != 0)
    mpfr_mul_2si(b.rad_.get(), b.re_.get(), -prec, MPFR_RNDU), mpfr_abs(b.rad_.get(), b.rad_.get(), MPFR_RNDU);
  return b;
}

ComplexBall ComplexBall::point(const Real& re, const Real& im) {
  ComplexBall b(std::max(re.precision(), im.precision()));
  mpfr_set(b.re_.get(), re.get(), MPFR_RNDN);
  mpfr_set(b.im_.get(), im.get(), MPFR_RNDN);
  return b;
}

void ComplexBall::set_radius(const Real& r) { mpfr_set(rad_.get(), r.get(), MPFR_RNDU); }

void ComplexBall::add_error(const Real& e) { mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU); }

namespace {

// |re| + |im| rounded up: an upper bound for the modulus of the midpoint.
Real mid_l1(const ComplexBall& a) {
  Real s(kRadPrec), ai(kRadPrec);
  mpfr_abs(s.get(), a.re().get(), MPFR_RNDU);
  mpfr_abs(ai.get(), a.im().get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), ai.get(), MPFR_RNDU);
  return s;
}

// Adds 2^(shift - prec) * (|x| + |y|) to rad.
void add_rounding(Real& rad, const Real& x, const Real& y, mpfr_prec_t prec, int shift) {
  Real ax(kRadPrec), ay(kRadPrec);
  mpfr_abs(ax.get(), x.get(), MPFR_RNDU);
  mpfr_abs(ay.get(), y.get(), MPFR_RNDU);
  mpfr_add(ax.get(), ax.get(), ay.get(), MPFR_RNDU);
  mpfr_mul_2si(ax.get(), ax.get(), shift - prec, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), ax.get(), MPFR_RNDU);
}

}  // namespace

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  ComplexBall r(p);
  mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_rounding(r.rad_, r.re_, r.im_, p, 0);
  return r;
}

ComplexBall ComplexBall::operator-() const {
  ComplexBall r = *this;
  mpfr_neg(r.re_.get(), r.re_.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
  return r;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return a + (-b); }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  ComplexBall r(p);
  Real t1(p), t2(p), t3(p), t4(p);
  mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(r.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(r.im_.get(), t3.get(), t4.get(), MPFR_RNDN);
  // Propagated error |a| rb + |b| ra + ra rb.
  Real na = mid_l1(a), nb = mid_l1(b), tmp(kRadPrec);
  mpfr_mul(r.rad_.get(), na.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), nb.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), tmp.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), tmp.get(), MPFR_RNDU);
  // Rounding of the four products and the two sums.
  add_rounding(r.rad_, t1, t2, p, 2);
  add_rounding(r.rad_, t3, t4, p, 2);
  return r;
}

Real ComplexBall::abs_upper() const {
  Real s(kRadPrec), t(kRadPrec);
  mpfr_sqr(s.get(), re_.get(), MPFR_RNDU);
  mpfr_sqr(t.get(), im_.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), rad_.get(), MPFR_RNDU);
  return s;
}

Real ComplexBall::abs_lower() const {
  Real s(kRadPrec), t(kRadPrec);
  mpfr_sqr(s.get(), re_.get(), MPFR_RNDD);
  mpfr_sqr(t.get(), im_.get(), MPFR_RNDD);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDD);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDD);
  mpfr_sub(s.get(), s.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(s.get()) < 0) mpfr_set_zero(s.get(), 1);
  return s;
}

namespace {

// Upper and lower bounds of |x - y| where x, y are exact reals.
void abs_diff_bounds(mpfr_srcptr x, mpfr_srcptr y, Real& lo, Real& hi) {
  Real up(kRadPrec), dn(kRadPrec);
  mpfr_sub(up.get(), x, y, MPFR_RNDU);
  mpfr_sub(dn.get(), x, y, MPFR_RNDD);
  if (mpfr_sgn(dn.get()) > 0) {
    mpfr_set(lo.get(), dn.get(), MPFR_RNDD);
    mpfr_set(hi.get(), up.get(), MPFR_RNDU);
  } else if (mpfr_sgn(up.get()) < 0) {
    mpfr_neg(lo.get(), up.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), dn.get(), MPFR_RNDU);
  } else {
    mpfr_set_zero(lo.get(), 1);
    mpfr_abs(up.get(), up.get(), MPFR_RNDU);
    mpfr_abs(dn.get(), dn.get(), MPFR_RNDU);
    mpfr_max(hi.get(), up.get(), dn.get(), MPFR_RNDU);
  }
}

void mid_distance(const ComplexBall& a, const ComplexBall& b, Real& lo, Real& hi) {
  Real rlo(kRadPrec), rhi(kRadPrec), ilo(kRadPrec), ihi(kRadPrec);
  abs_diff_bounds(a.re().get(), b.re().get(), rlo, rhi);
  abs_diff_bounds(a.im().get(), b.im().get(), ilo, ihi);
  mpfr_hypot(lo.get(), rlo.get(), ilo.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), rhi.get(), ihi.get(), MPFR_RNDU);
}

}  // namespace

Real distance_upper(const ComplexBall& a, const ComplexBall& b) {
  Real lo(kRadPrec), hi(kRadPrec);
  mid_distance(a, b, lo, hi);
  mpfr_add(hi.get(), hi.get(), a.rad().get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), b.rad().get(), MPFR_RNDU);
  return hi;
}

Real distance_lower(const ComplexBall& a, const ComplexBall& b) {
  Real lo(kRadPrec), hi(kRadPrec);
  mid_distance(a, b, lo, hi);
  mpfr_sub(lo.get(), lo.get(), a.rad().get(), MPFR_RNDD);
  mpfr_sub(lo.get(), lo.get(), b.rad().get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  return lo;
}

bool ComplexBall::contains(const Rational& qre, const Rational& qim) const {
  const mpfr_prec_t p = precision() + 64;
  Real xr(p), xi(p);
  mpfr_set_q(xr.get(), qre.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(xi.get(), qim.get_mpq_t(), MPFR_RNDN);
  // The conversion error of the target point is at most 2^-p |q|.
  ComplexBall target(p);
  mpfr_set(target.re_.get(), xr.get(), MPFR_RNDN);
  mpfr_set(target.im_.get(), xi.get(), MPFR_RNDN);
  add_rounding(target.rad_, xr, xi, p, 0);
  Real lo(kRadPrec), hi(kRadPrec);
  mid_distance(*this, target, lo, hi);
  mpfr_add(hi.get(), hi.get(), target.rad_.get(), MPFR_RNDU);
  return mpfr_lessequal_p(hi.get(), rad_.get()) != 0;
}

ComplexBall evaluate(const RatPoly& p, const ComplexBall& z) {
  ComplexBall acc(z.precision());
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + ComplexBall::from_rational(p[i], z.precision());
  return acc;
}

ComplexBall evaluate(const IntPoly& p, const ComplexBall& z) {
  ComplexBall acc(z.precision());
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + ComplexBall::from_integer(p[i], z.precision());
  return acc;
}

namespace {

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
};

void cx_set_prec(Cx& z, mpfr_prec_t p) {
  mpfr_prec_round(z.re.get(), p, MPFR_RNDN);
  mpfr_prec_round(z.im.get(), p, MPFR_RNDN);
}

void cx_mul(Cx& r, const Cx& a, const Cx& b, mpfr_prec_t p) {
  Real t1(p), t2(p), t3(p), t4(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t3.get(), t4.get(), MPFR_RNDN);
}

void cx_div(Cx& r, const Cx& a, const Cx& b, mpfr_prec_t p) {
  Real den(p), t1(p), t2(p), re(p);
  mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t1.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), den.get(), t1.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.re.get(), re.get(), den.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), t1.get(), den.get(), MPFR_RNDN);
}

double cx_abs(const Cx& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

// Log2 of |z| without overflow/underflow trouble at high precision.
double cx_log2_abs(const Cx& z, mpfr_prec_t p) {
  Real h(p);
  mpfr_hypot(h.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  if (mpfr_zero_p(h.get())) return -1e9;
  Real l(53);
  mpfr_log2(l.get(), h.get(), MPFR_RNDN);
  return l.to_double();
}

// Aberth iterations at precision p; returns true on convergence.
bool aberth(const IntPoly& f, std::vector<Cx>& z, mpfr_prec_t p, int max_iter) {
  const int n = f.degree();
  std::vector<Real> a;
  for (int i = 0; i <= n; ++i) {
    Real c(p);
    mpfr_set_z(c.get(), f[i].get_mpz_t(), MPFR_RNDN);
    a.push_back(std::move(c));
  }
  for (auto& zi : z) cx_set_prec(zi, p);
  Cx val(p), der(p), ratio(p), sum(p), diff(p), inv(p), corr(p), one(p), tmp(p);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = -1e9;
    for (int i = 0; i < n; ++i) {
      // Horner for f and f'.
      mpfr_set(val.re.get(), a[n].get(), MPFR_RNDN);
      mpfr_set_zero(val.im.get(), 1);
      mpfr_set_zero(der.re.get(), 1);
      mpfr_set_zero(der.im.get(), 1);
      for (int k = n - 1; k >= 0; --k) {
        cx_mul(tmp, der, z[i], p);
        mpfr_add(der.re.get(), tmp.re.get(), val.re.get(), MPFR_RNDN);
        mpfr_set(der.im.get(), tmp.im.get(), MPFR_RNDN);
        mpfr_add(der.im.get(), der.im.get(), val.im.get(), MPFR_RNDN);
        cx_mul(tmp, val, z[i], p);
        mpfr_add(val.re.get(), tmp.re.get(), a[k].get(), MPFR_RNDN);
        mpfr_set(val.im.get(), tmp.im.get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) continue;
      if (mpfr_zero_p(der.re.get()) && mpfr_zero_p(der.im.get())) {
        mpfr_set_d(z[i].re.get(), z[i].re.to_double() + 1e-3, MPFR_RNDN);
        worst = 0;
        continue;
      }
      cx_div(ratio, val, der, p);
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
        if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
        cx_div(inv, one, diff, p);
        mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
      }
      cx_mul(tmp, ratio, sum, p);
      mpfr_ui_sub(tmp.re.get(), 1, tmp.re.get(), MPFR_RNDN);
      mpfr_neg(tmp.im.get(), tmp.im.get(), MPFR_RNDN);
      cx_div(corr, ratio, tmp, p);
      mpfr_sub(z[i].re.get(), z[i].re.get(), corr.re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), corr.im.get(), MPFR_RNDN);
      const double rel = cx_log2_abs(corr, p) - std::log2(1.0 + cx_abs(z[i]));
      worst = std::max(worst, rel);
    }
    if (worst < -static_cast<double>(p) + 12) return true;
  }
  return false;
}

std::vector<Cx> initial_guess(const IntPoly& f, mpfr_prec_t p) {
  const int n = f.degree();
  const double lc = f.lc().get_d();
  // Run Aberth in double precision first.
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  double radius = 0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(f[k].get_d() / lc), 1.0 / (n - k)));
  radius = std::max(2 * radius, 1e-3);
  const double centre = -f[n - 1].get_d() / (n * lc);
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] =
        centre + radius * std::polar(1.0, 2 * std::numbers::pi * k / n + 0.7);
  auto fval = [&](std::complex<double> x, std::complex<double>& d) {
    std::complex<double> v = f[n].get_d();
    d = 0;
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + v;
      v = v * x + f[k].get_d();
    }
    return v;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> d;
      auto v = fval(z[static_cast<std::size_t>(i)], d);
      if (std::abs(d) == 0 || !std::isfinite(std::abs(v))) continue;
      auto ratio = v / d;
      std::complex<double> s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      auto corr = ratio / (1.0 - ratio * s);
      if (!std::isfinite(std::abs(corr))) continue;
      z[static_cast<std::size_t>(i)] -= corr;
      worst = std::max(worst, std::abs(corr) / (1 + std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (worst < 1e-14) break;
  }
  std::vector<Cx> out;
  for (auto v : z) {
    Cx c(p);
    mpfr_set_d(c.re.get(), v.real(), MPFR_RNDN);
    mpfr_set_d(c.im.get(), v.imag(), MPFR_RNDN);
    out.push_back(std::move(c));
  }
  return out;
}

// Forces exactly r1 real approximations and conjugate-symmetric pairs.
bool snap(std::vector<Cx>& z, int r1) {
  const int n = static_cast<int>(z.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mpfr_cmpabs(z[static_cast<std::size_t>(a)].im.get(), z[static_cast<std::size_t>(b)].im.get()) < 0;
  });
  std::vector<Cx> upper;
  std::vector<Cx> out;
  for (int k = 0; k < n; ++k) {
    Cx& c = z[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    if (k < r1) {
      mpfr_set_zero(c.im.get(), 1);
      out.push_back(c);
    } else if (mpfr_sgn(c.im.get()) > 0) {
      upper.push_back(c);
    }
  }
  if (static_cast<int>(upper.size()) * 2 != n - r1) return false;
  for (auto& c : upper) {
    out.push_back(c);
    Cx conj = c;
    mpfr_neg(conj.im.get(), conj.im.get(), MPFR_RNDN);
    out.push_back(std::move(conj));
  }
  z = std::move(out);
  return true;
}

// Weierstrass inclusion radii n |f(z_i)| / |lc prod (z_i - z_j)|; empty
// vector when some denominator cannot be bounded away from zero.
std::vector<Real> inclusion_radii(const IntPoly& f, const std::vector<ComplexBall>& pts) {
  const int n = f.degree();
  std::vector<Real> radii;
  const mpfr_prec_t p = pts.front().precision();
  for (int i = 0; i < n; ++i) {
    const ComplexBall& zi = pts[static_cast<std::size_t>(i)];
    ComplexBall val = evaluate(f, zi);
    ComplexBall den = ComplexBall::from_integer(f.lc(), p);
    for (int j = 0; j < n; ++j)
      if (j != i) den = den * (zi - pts[static_cast<std::size_t>(j)]);
    Real lo = den.abs_lower();
    if (mpfr_zero_p(lo.get())) return {};
    Real r = val.abs_upper();
    mpfr_div(r.get(), r.get(), lo.get(), MPFR_RNDU);
    mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    radii.push_back(std::move(r));
  }
  return radii;
}

}  // namespace

std::vector<ComplexBall> isolate_complex_roots(const IntPoly& f, int precision_bits) {
  if (f.degree() < 1) throw InputError("isolate_complex_roots: constant polynomial");
  if (precision_bits < 1) throw InputError("isolate_complex_roots: precision must be positive");
  if (!is_squarefree(f)) throw InputError("isolate_complex_roots: polynomial is not squarefree");
  const int n = f.degree();
  const int r1 = count_real_roots(f);
  mpfr_prec_t p = std::max<mpfr_prec_t>(precision_bits, 32) + 64;
  std::vector<Cx> z = initial_guess(f, p);
  Real target(kRadPrec);
  mpfr_set_ui_2exp(target.get(), 1, -(precision_bits / 2), MPFR_RNDD);
  while (true) {
    if (p > 4096 + 64) throw BudgetError("root isolation did not certify within 4096 bits");
    aberth(f, z, p, 200 + 10 * n);
    std::vector<Cx> snapped = z;
    if (snap(snapped, r1)) {
      std::vector<ComplexBall> pts;
      for (const auto& c : snapped) pts.push_back(ComplexBall::point(c.re, c.im));
      auto radii = inclusion_radii(f, pts);
      bool ok = !radii.empty();
      for (int i = 0; ok && i < n; ++i) {
        auto& ri = radii[static_cast<std::size_t>(i)];
        if (mpfr_greater_p(ri.get(), target.get())) ok = false;
        const auto& zi = pts[static_cast<std::size_t>(i)];
        if (ok && !zi.real_midpoint()) {
          Real aim(kRadPrec);
          mpfr_abs(aim.get(), zi.im().get(), MPFR_RNDD);
          if (mpfr_lessequal_p(aim.get(), ri.get())) ok = false;
        }
        for (int j = 0; ok && j < i; ++j) {
          ComplexBall a = pts[static_cast<std::size_t>(i)], b = pts[static_cast<std::size_t>(j)];
          a.set_radius(ri);
          b.set_radius(radii[static_cast<std::size_t>(j)]);
          if (mpfr_zero_p(distance_lower(a, b).get())) ok = false;
        }
      }
      if (ok) {
        for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)].set_radius(radii[static_cast<std::size_t>(i)]);
        std::sort(pts.begin(), pts.end(), [](const ComplexBall& a, const ComplexBall& b) {
          int c = mpfr_cmp(a.re().get(), b.re().get());
          if (c != 0) return c < 0;
          return mpfr_cmp(a.im().get(), b.im().get()) < 0;
        });
        return pts;
      }
    }
    p *= 2;
  }
}

}  // namespace tf
