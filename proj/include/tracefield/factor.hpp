#pragma once

#include <cstddef>
#include <vector>

#include "tracefield/polynomial.hpp"

namespace tf {

struct ModFactor {
  IntPoly factor;  ///< monic, coefficients reduced into [0, p)
  int multiplicity;
};

/// Factorization of f over F_p. Factors are monic, irreducible and
/// pairwise distinct, ordered by degree and then by coefficient list
/// (ascending powers, compared lexicographically).
std::vector<ModFactor> factor_mod_p(const IntPoly& f, const Integer& p);

struct IntFactor {
  IntPoly factor;  ///< primitive, positive leading coefficient
  int multiplicity;
};

struct IntFactorization {
  Integer content;  ///< signed so that content * prod(factors) == f
  std::vector<IntFactor> factors;
};

/// Irreducible factorization over Z by modular factorization at one good
/// prime, Hensel lifting and exhaustive subset recombination. Throws
/// BudgetError (listing the factors split off so far) once more than
/// `subset_budget` subsets have been tried.
IntFactorization factor_over_integers(const IntPoly& f, std::size_t subset_budget = std::size_t{1} << 22);

bool is_irreducible(const IntPoly& f);

/// Total order used for deterministic factor lists.
bool poly_less(const IntPoly& a, const IntPoly& b);

}  // namespace tf
