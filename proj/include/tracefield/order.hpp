#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracefield/matrix.hpp"
#include "tracefield/number_field.hpp"

namespace tf {

enum class OrderProvenance { CertifiedSquarefree, CertifiedDedekind, UserSuppliedValidated, UserSuppliedTrusted };
std::string to_string(OrderProvenance p);

/// The ring of integers of a number field with a chosen Z-basis.
class MaximalOrder {
 public:
  const NumberField& field() const { return field_; }
  int degree() const { return field_.degree(); }
  /// Row i holds the power-basis coordinates of omega_i.
  const RationalMatrix& basis() const { return basis_; }
  const Integer& disc() const { return disc_; }
  OrderProvenance provenance() const { return prov_; }
  /// [O : Z[theta]].
  const Integer& index() const { return index_; }

  FieldElement element(std::size_t i) const;
  /// Element with the given coordinates in the order basis.
  FieldElement from_coords(const std::vector<Rational>& c) const;
  /// Coordinates of a field element in the order basis.
  std::vector<Rational> coords(const FieldElement& a) const;
  /// Integer coordinates of omega_i * omega_j in the order basis.
  const std::vector<Integer>& product(std::size_t i, std::size_t j) const {
    return mult_[i * static_cast<std::size_t>(degree()) + j];
  }
  /// Order coordinates of 1.
  const std::vector<Integer>& unit_coords() const { return unit_; }
  /// Trace Gram matrix tr(omega_i omega_j).
  const IntMatrix& gram() const { return gram_; }
  /// Power-basis coordinates of the element with order coordinates x.
  std::vector<Rational> to_power(const std::vector<Rational>& x) const;

 private:
  friend MaximalOrder build_order(const NumberField&, const std::optional<RationalMatrix>&,
                                  const std::optional<Integer>&, bool);
  friend MaximalOrder make_order_unchecked(const NumberField&, const RationalMatrix&, OrderProvenance);
  NumberField field_;
  RationalMatrix basis_, basis_inv_;
  Integer disc_, index_;
  OrderProvenance prov_ = OrderProvenance::CertifiedSquarefree;
  std::vector<std::vector<Integer>> mult_;
  std::vector<Integer> unit_;
  IntMatrix gram_;
};

/// Dedekind criterion: is Z[theta] maximal at p for the root theta of f?
bool dedekind_p_maximal(const IntPoly& f, const Integer& p);

/// Power basis when it is certified maximal; otherwise the user basis,
/// validated as a ring containing Z[theta] with integral traces and the
/// claimed discriminant. Maximality of a user basis is checked at every
/// p with p^2 | disc unless `trusted`. Throws InputError("needs integral
/// basis") or an InputError naming the failed check.
MaximalOrder build_order(const NumberField& K, const std::optional<RationalMatrix>& user_basis = std::nullopt,
                         const std::optional<Integer>& claimed_disc = std::nullopt, bool trusted = false);

/// Is the ring spanned by `basis` (order coordinates taken from its
/// multiplication table) maximal at p? Ring of multipliers of the
/// p-radical.
bool order_p_maximal(const MaximalOrder& O, const Integer& p);

struct DiscriminantSplit {
  Integer d_s, d_f, rad_ds;
};
DiscriminantSplit discriminant_split(const Integer& d);
bool is_fundamental(const Integer& d);

struct PrimeShape {
  Integer p;
  std::vector<std::pair<int, int>> pairs;  ///< (e, f)
  bool reliable = false;
};
PrimeShape prime_shape(const MaximalOrder& O, const Integer& p);

enum class Tameness { Tame, Wild, Unknown };
std::string to_string(Tameness t);
Tameness tameness(const MaximalOrder& O, const Integer& p);

enum class SnCertificate { CertifiedSn, Unknown };
std::string to_string(SnCertificate s);
/// Jordan's criterion on Frobenius cycle types at the first
/// `prime_budget` primes not dividing disc(f).
SnCertificate certify_sn(const NumberField& K, int prime_budget = 200);

}  // namespace tf
