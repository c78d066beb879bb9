#include "tracefield/number_field.hpp"

#include "tracefield/errors.hpp"
#include "tracefield/factor.hpp"

namespace tf {

NumberField NumberField::create(const IntPoly& f) {
  if (f.degree() < 1) throw InputError("defining polynomial must be nonconstant");
  if (!f.is_monic()) throw InputError("defining polynomial " + to_string(f) + " is not monic");
  if (f.degree() > 1) {
    auto fac = factor_over_integers(f);
    if (fac.factors.size() != 1 || fac.factors[0].multiplicity != 1)
      throw InputError("defining polynomial " + to_string(f) + " is reducible: factor " +
                       to_string(fac.factors[0].factor));
  }
  auto d = std::make_shared<Data>();
  d->poly = f;
  const int n = f.degree();
  d->sig.r1 = count_real_roots(f);
  d->sig.r2 = (n - d->sig.r1) / 2;
  d->poly_disc = poly_discriminant(f);

  std::vector<Rational> cur(static_cast<std::size_t>(n), Rational(0));
  cur[0] = 1;
  for (int k = 0; k <= 2 * n - 2; ++k) {
    d->reductions.push_back(cur);
    // Multiply by theta and reduce with x^n = -(f_0 + ... + f_{n-1} x^{n-1}).
    Rational top = cur[static_cast<std::size_t>(n - 1)];
    for (int i = n - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] -= top * Rational(f[i]);
  }

  // Newton's identities for the power sums of the roots.
  auto a = [&](int i) { return Rational(f[i]); };
  d->traces.assign(static_cast<std::size_t>(2 * n - 1), Rational(0));
  d->traces[0] = n;
  for (int k = 1; k <= 2 * n - 2; ++k) {
    Rational s = 0;
    for (int i = 1; i <= std::min(k - 1, n); ++i) s += a(n - i) * d->traces[static_cast<std::size_t>(k - i)];
    if (k <= n) s += Rational(k) * a(n - k);
    d->traces[static_cast<std::size_t>(k)] = -s;
  }
  NumberField K;
  K.d_ = std::move(d);
  return K;
}

FieldElement NumberField::zero() const {
  return FieldElement(*this, std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0)));
}

FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::theta() const {
  if (degree() == 1) return from_rational(-Rational(poly()[0]));
  auto c = std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0));
  c[1] = 1;
  return FieldElement(*this, c);
}

FieldElement NumberField::from_rational(const Rational& q) const {
  auto c = std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0));
  c[0] = q;
  return FieldElement(*this, c);
}

FieldElement NumberField::element(std::vector<Rational> coords) const { return FieldElement(*this, std::move(coords)); }

FieldElement::FieldElement(NumberField field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
  if (c_.size() != static_cast<std::size_t>(field_.degree()))
    throw InputError("field element needs " + std::to_string(field_.degree()) + " coordinates");
}

bool FieldElement::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

namespace {
void same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field().same_as(b.field())) throw InputError("field elements belong to different fields");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  same_field(a, b);
  auto c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement FieldElement::operator-() const {
  auto c = c_;
  for (auto& v : c) v = -v;
  return FieldElement(field_, std::move(c));
}

FieldElement operator*(const Rational& q, const FieldElement& a) {
  auto c = a.c_;
  for (auto& v : c) v *= q;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  same_field(a, b);
  const std::size_t n = a.c_.size();
  std::vector<Rational> conv(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) conv[i + j] += a.c_[i] * b.c_[j];
  }
  const auto& red = a.field_.power_reductions();
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += conv[k] * red[k][i];
  }
  return FieldElement(a.field_, std::move(out));
}

bool operator==(const FieldElement& a, const FieldElement& b) { return a.field_.same_as(b.field_) && a.c_ == b.c_; }

RationalMatrix FieldElement::mult_matrix() const {
  const std::size_t n = c_.size();
  RationalMatrix m(n, n);
  FieldElement cur = *this;
  const FieldElement th = field_.theta();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cur.c_[i];
    if (j + 1 < n) cur = cur * th;
  }
  return m;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  std::vector<Rational> e0(c_.size(), Rational(0));
  e0[0] = 1;
  return FieldElement(field_, tf::inverse(mult_matrix()) * e0);
}

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement r = field_.one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Rational FieldElement::trace() const {
  const auto& t = field_.power_traces();
  Rational s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * t[i];
  return s;
}

Rational FieldElement::norm() const { return determinant(mult_matrix()); }

RatPoly FieldElement::min_poly() const { return min_poly_of_matrix(mult_matrix()); }

std::vector<std::string> FieldElement::to_strings() const {
  std::vector<std::string> out;
  for (const auto& v : c_) out.push_back(to_string(v));
  return out;
}

EmbeddingTable::EmbeddingTable(const NumberField& field, int precision_bits)
    : field_(field), bits_(precision_bits), sigma_(isolate_complex_roots(field.poly(), precision_bits)) {
  conj_.resize(sigma_.size());
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    conj_[i] = i;
    if (sigma_[i].real_midpoint()) continue;
    for (std::size_t j = 0; j < sigma_.size(); ++j) {
      if (j == i) continue;
      if (mpfr_equal_p(sigma_[i].re().get(), sigma_[j].re().get()) &&
          mpfr_cmpabs(sigma_[i].im().get(), sigma_[j].im().get()) == 0 &&
          sigma_[i].im().sign() == -sigma_[j].im().sign()) {
        conj_[i] = j;
        break;
      }
    }
  }
}

int EmbeddingTable::real_count() const {
  int r = 0;
  for (const auto& s : sigma_)
    if (s.real_midpoint()) ++r;
  return r;
}

ComplexBall EmbeddingTable::apply(std::size_t i, const FieldElement& a) const {
  if (!a.field().same_as(field_)) throw InputError("element does not belong to the embedded field");
  return evaluate(a.as_poly(), sigma_[i]);
}

}  // namespace tf
