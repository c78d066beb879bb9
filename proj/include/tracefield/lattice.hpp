#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracefield/matrix.hpp"
#include "tracefield/order.hpp"

namespace tf {

enum class LatticeOrigin { FullOrder, TraceZero, Perp, Generic };
std::string to_string(LatticeOrigin o);

/// A positive definite (or at least nondegenerate) integral lattice
/// given by its Gram matrix. Lattices cut out of an order also remember
/// their basis in order coordinates, so that isometries of the order
/// can be restricted to them.
struct TraceLattice {
  IntMatrix gram;
  LatticeOrigin origin = LatticeOrigin::Generic;
  std::optional<std::vector<Integer>> unit_coords;
  /// Rows: basis vectors in order coordinates (empty for generic lattices).
  IntMatrix basis;

  std::size_t rank() const { return gram.rows(); }
  /// Validates symmetry and nondegeneracy.
  static TraceLattice generic(const IntMatrix& gram);
};

TraceLattice gram_of_order(const MaximalOrder& O);
/// Row i: order coordinates of the dual basis element alpha_i*.
RationalMatrix dual_basis(const MaximalOrder& O);
TraceLattice trace_zero_lattice(const MaximalOrder& O);
TraceLattice perp_lattice(const MaximalOrder& O);

bool is_positive_definite(const IntMatrix& g);

/// LLL reduction of a Gram matrix (delta = 3/4). Returns P unimodular
/// with P^t G P reduced; the columns of P are the new basis vectors.
IntMatrix lll_transform(const IntMatrix& gram);

struct ShortVector {
  std::vector<Integer> v;
  Integer norm;
};
/// All nonzero x with x^t G x <= bound, one per +- pair (first nonzero
/// coordinate positive), sorted by norm then by coordinates descending.
/// Throws UnsupportedInput when G is not positive definite.
std::vector<ShortVector> short_vectors(const TraceLattice& L, const Rational& bound);

struct AutGroupResult {
  std::vector<IntMatrix> generators;
  Integer order;
  /// Every group element, sorted lexicographically descending.
  std::vector<IntMatrix> elements;
};

/// Node budget shared by the backtracking searches.
struct SearchBudget {
  std::uint64_t nodes = 10'000'000;
};

/// All T with T^t G T = G. Throws UnsupportedInput on an indefinite
/// lattice and BudgetError when the search exceeds the budget.
AutGroupResult automorphism_group(const TraceLattice& L, SearchBudget budget = {});

struct IsometryResult {
  bool found = false;
  std::optional<IntMatrix> map;  ///< T with T^t G1 T = G2
  std::string certificate;       ///< reason when not found
};
IsometryResult isometry(const TraceLattice& L1, const TraceLattice& L2, SearchBudget budget = {});

enum class UnitSign { PlusOne, MinusOne };
std::string to_string(UnitSign s);
/// For T with T^t G_target T = G_source (columns are images of the
/// source basis), checks T u_source = +-u_target. Throws
/// PropertyViolation otherwise.
UnitSign check_unit_image(const IntMatrix& T, const TraceLattice& source, const TraceLattice& target);

/// Restricts an isometry T between full-order lattices (order
/// coordinates, columns are images) to sublattices given by their
/// bases. Returns nullopt when T does not map sub_source onto
/// sub_target.
std::optional<IntMatrix> restrict_isometry(const IntMatrix& T, const TraceLattice& sub_source,
                                           const TraceLattice& sub_target);

/// True iff T^t G1 T = lambda G2 for some rational lambda > 0 and
/// unimodular T.
bool shape_similar(const TraceLattice& L1, const TraceLattice& L2, SearchBudget budget = {});

bool is_isometry(const IntMatrix& T, const IntMatrix& g_target, const IntMatrix& g_source);

}  // namespace tf
