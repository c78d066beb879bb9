#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracefield/ball.hpp"
#include "tracefield/lattice.hpp"
#include "tracefield/matrix.hpp"
#include "tracefield/order.hpp"

namespace tf {

using Vector = std::vector<Rational>;

/// Finite-dimensional Q-algebra given by structure constants
/// e_i e_j = sum_k c(i, j, k) e_k.
class StructureAlgebra {
 public:
  StructureAlgebra() = default;
  /// `consts` is indexed (i * dim + j) * dim + k. Checks the unity on
  /// every basis pair and, when `check_associative`, associativity on
  /// every basis triple; throws InputError on failure.
  StructureAlgebra(std::size_t dim, std::vector<Rational> consts, Vector unity, bool check_associative = true);

  std::size_t dim() const { return dim_; }
  const Vector& unity() const { return unity_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  Vector basis_vector(std::size_t i) const;
  Vector mul(const Vector& x, const Vector& y) const;
  /// Column j holds x * e_j.
  RationalMatrix mult_matrix(const Vector& x) const;
  RatPoly min_poly(const Vector& x) const;
  Vector evaluate(const RatPoly& p, const Vector& x) const;
  bool is_commutative() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
  Vector unity_;
};

/// sum_i psi(v_i*) phi(v_i) for the standard basis v_i of Q^n with the
/// dual basis taken with respect to the Gram matrix B. psi and phi are
/// dim(A) x n matrices whose column i is the image of v_i. Throws
/// InputError on a singular or non-symmetric B.
Vector casimir_general(const RationalMatrix& B, const RationalMatrix& psi, const RationalMatrix& phi,
                       const StructureAlgebra& A);

/// A Q-linear map between number fields, in order coordinates: column j
/// holds the target-order coordinates of the image of the j-th source
/// order basis element.
struct LinearMap {
  MaximalOrder source, target;
  RationalMatrix matrix;

  LinearMap(MaximalOrder src, MaximalOrder dst, RationalMatrix m);
  static LinearMap identity(const MaximalOrder& O);
  FieldElement apply(const FieldElement& x) const;
  /// phi^t G_target phi == G_source.
  bool is_isometry() const;
  /// Same map in power-basis coordinates on both sides.
  RationalMatrix power_matrix() const;
};

struct TensorComponent {
  IntPoly factor;             ///< irreducible factor of the primitive element's minimal polynomial
  Vector idempotent;          ///< e_k
  RationalMatrix basis;       ///< columns span e_k (K (x) L)
  int degree_over_K = 0;      ///< [E_k : K]
};

/// K (x) L with the product basis alpha_i (x) beta_j, index i * m + j.
class TensorAlgebra {
 public:
  TensorAlgebra(const MaximalOrder& OK, const MaximalOrder& OL);

  const MaximalOrder& left() const { return OK_; }
  const MaximalOrder& right() const { return OL_; }
  std::size_t dim() const { return alg_.dim(); }
  const StructureAlgebra& algebra() const { return alg_; }
  /// a (x) b for order coordinates a of O_K and b of O_L.
  Vector pure(const Vector& a, const Vector& b) const;
  /// theta_K (x) 1 and 1 (x) theta_L.
  Vector left_generator() const;
  Vector right_generator() const;

  /// Decomposition into fields via a primitive element found with a
  /// fixed-seed schedule. Throws BudgetError after `retry_budget` tries.
  const std::vector<TensorComponent>& components(int retry_budget = 256) const;
  const Vector& primitive_element(int retry_budget = 256) const;
  const RatPoly& primitive_min_poly(int retry_budget = 256) const;

 private:
  void decompose(int retry_budget) const;
  MaximalOrder OK_, OL_;
  StructureAlgebra alg_;
  mutable bool decomposed_ = false;
  mutable Vector primitive_;
  mutable RatPoly primitive_poly_;
  mutable std::vector<TensorComponent> comps_;
};

enum class Disjointness { Disjoint, NotDisjoint, Unknown };
std::string to_string(Disjointness d);
struct DisjointnessResult {
  Disjointness verdict = Disjointness::Unknown;
  std::optional<RatPoly> witness_min_poly;
};
DisjointnessResult linearly_disjoint(const TensorAlgebra& T, int retry_budget = 64);

/// Whether K and L are isomorphic: some component of K (x) L has degree
/// [K:Q] over Q. Exact for every pair of equal-degree fields.
bool fields_isomorphic(const TensorAlgebra& T);

struct ComponentCasimir {
  int degree_over_K = 0;
  RatPoly min_poly;
  Integer M;
  bool is_zero = false;
};

struct CasimirElement {
  Vector coords;
  RatPoly min_poly;
  Integer M;
  bool is_rational = false;
  std::vector<ComponentCasimir> components;
};

/// Least m > 0 with m * x integral, from the minimal polynomial.
Integer integrality_scale(const RatPoly& min_poly);
/// Is lambda * x p-integral (p = 0: integral at every prime)?
bool scaled_integral(const RatPoly& min_poly, const Rational& lambda, const Integer& p = 0);

/// c = sum_i alpha_i* (x) phi(alpha_i) in K (x) L. Throws InputError on
/// a dimension mismatch.
CasimirElement casimir_element(const TensorAlgebra& T, const LinearMap& phi);

bool is_p_integral(const CasimirElement& c, const Integer& p);

struct Check {
  std::string name;
  bool passed = false;
  bool applicable = true;
  std::string detail;
};

struct IntegrityReport {
  Integer d_K;
  DiscriminantSplit split;
  bool fundamental = false;
  std::vector<std::pair<Integer, Tameness>> tameness;
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Integrality statements for the Casimir element of an isometry.
/// Throws InputError when phi is not an isometry of the integral trace
/// forms and PropertyViolation (naming the prime and minimal polynomial)
/// when a statement fails.
IntegrityReport verify_integrality_theorem(const TensorAlgebra& T, const LinearMap& phi, const CasimirElement& c);

struct BoundReport {
  std::vector<Check> checks;
  bool single_component = false;
  bool equality = false;  ///< single-component case: [KL:K] == M^2
  bool all_passed() const;
};
BoundReport casimir_bound_check(const TensorAlgebra& T, const LinearMap& phi, const CasimirElement& c);

struct UMatrix {
  std::vector<std::vector<ComplexBall>> U;
  Real residual;  ///< upper bound of max |(U U^t - I)_ij|
};
UMatrix numeric_U_matrix(const LinearMap& phi, int precision_bits);

struct FourierResult {
  std::vector<ComplexBall> coefficients;  ///< <sigma_1 phi, sigma_i>
  Real residual;
};
/// Expands sigma_1 o phi in the embeddings of K and measures the
/// distance between the reassembled and exact images of the basis.
FourierResult fourier_reconstruct(const LinearMap& phi, int precision_bits);

enum class SmallClass { Zero, PlusInvRad, MinusInvRad, Other };
std::string to_string(SmallClass s);
struct SmallResult {
  SmallClass verdict = SmallClass::Other;
  bool hypotheses_hold = false;  ///< every |theta(c)| <= 1/rad certified
  bool components_small = false;  ///< every component value in {0, +-1/rad}
  std::string detail;
};
/// Classifies c against {0, +-1/rad(d_s)} using the U-matrix values
/// theta_ij(c) = U_ij. Retries with doubled precision when a comparison
/// is undecided and throws BudgetError past 4096 bits.
SmallResult small_casimir_classifier(const CasimirElement& c, const LinearMap& phi, const DiscriminantSplit& split,
                                     int precision_bits);

}  // namespace tf
