#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tracefield/ball.hpp"
#include "tracefield/matrix.hpp"
#include "tracefield/polynomial.hpp"

namespace tf {

class FieldElement;

struct Signature {
  int r1 = 0;
  int r2 = 0;
};

/// K = Q[x]/(f) for a monic irreducible integer polynomial f. Cheap to
/// copy: copies share the immutable field data.
class NumberField {
 public:
  /// Certifies irreducibility and computes the signature. Throws
  /// InputError for a constant, non-monic or reducible f (naming a factor).
  static NumberField create(const IntPoly& f);

  const IntPoly& poly() const { return d_->poly; }
  int degree() const { return d_->poly.degree(); }
  Signature signature() const { return d_->sig; }
  bool totally_real() const { return d_->sig.r2 == 0; }
  /// disc(f), the discriminant of the defining polynomial.
  const Integer& poly_disc() const { return d_->poly_disc; }

  FieldElement zero() const;
  FieldElement one() const;
  /// The class of x, written theta.
  FieldElement theta() const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement element(std::vector<Rational> coords) const;

  /// Power-basis coordinates of theta^k for 0 <= k <= 2n-2.
  const std::vector<std::vector<Rational>>& power_reductions() const { return d_->reductions; }
  /// tr(theta^k) for 0 <= k <= 2n-2.
  const std::vector<Rational>& power_traces() const { return d_->traces; }

  bool same_as(const NumberField& o) const { return d_ == o.d_ || d_->poly == o.d_->poly; }

 private:
  struct Data {
    IntPoly poly;
    Signature sig;
    Integer poly_disc;
    std::vector<std::vector<Rational>> reductions;
    std::vector<Rational> traces;
  };
  std::shared_ptr<const Data> d_;
};

/// An element of a number field in power-basis coordinates.
class FieldElement {
 public:
  FieldElement(NumberField field, std::vector<Rational> coords);

  const NumberField& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  RatPoly as_poly() const { return RatPoly(c_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rational& q, const FieldElement& a);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Throws DomainError on zero.
  FieldElement inverse() const;
  FieldElement pow(unsigned long e) const;
  /// Column j holds the coordinates of a * theta^j.
  RationalMatrix mult_matrix() const;
  Rational trace() const;
  Rational norm() const;
  RatPoly min_poly() const;
  std::vector<std::string> to_strings() const;

 private:
  NumberField field_;
  std::vector<Rational> c_;
};

/// Images of theta under the embeddings, in the fixed root order.
class EmbeddingTable {
 public:
  EmbeddingTable(const NumberField& field, int precision_bits);

  const NumberField& field() const { return field_; }
  int precision_bits() const { return bits_; }
  std::size_t size() const { return sigma_.size(); }
  const ComplexBall& sigma(std::size_t i) const { return sigma_[i]; }
  bool is_real(std::size_t i) const { return sigma_[i].real_midpoint(); }
  int real_count() const;
  /// sigma_i(a) by ball evaluation of the coordinate polynomial.
  ComplexBall apply(std::size_t i, const FieldElement& a) const;
  /// Conjugate index of embedding i (itself when real).
  std::size_t conjugate(std::size_t i) const { return conj_[i]; }

 private:
  NumberField field_;
  int bits_;
  std::vector<ComplexBall> sigma_;
  std::vector<std::size_t> conj_;
};

}  // namespace tf
