#include "tracefield/casimir.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "tracefield/errors.hpp"
#include "tracefield/factor.hpp"

namespace tf {

// ---------------------------------------------------------------------------
// StructureAlgebra

StructureAlgebra::StructureAlgebra(std::size_t dim, std::vector<Rational> consts, Vector unity,
                                   bool check_associative)
    : dim_(dim), c_(std::move(consts)), unity_(std::move(unity)) {
  if (c_.size() != dim_ * dim_ * dim_) throw InputError("structure constant table has the wrong size");
  if (unity_.size() != dim_) throw InputError("unity has the wrong length");
  for (std::size_t i = 0; i < dim_; ++i) {
    const Vector e = basis_vector(i);
    if (mul(unity_, e) != e || mul(e, unity_) != e) throw InputError("unity is not a two-sided identity");
  }
  if (!check_associative) return;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const Vector eij = mul(basis_vector(i), basis_vector(j));
      for (std::size_t k = 0; k < dim_; ++k) {
        const Vector ek = basis_vector(k);
        if (mul(eij, ek) != mul(basis_vector(i), mul(basis_vector(j), ek)))
          throw InputError("structure constants are not associative");
      }
    }
}

Vector StructureAlgebra::basis_vector(std::size_t i) const {
  Vector v(dim_, Rational(0));
  v[i] = 1;
  return v;
}

Vector StructureAlgebra::mul(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw InputError("algebra element has the wrong length");
  Vector out(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0) continue;
      const Rational xy = x[i] * y[j];
      const Rational* row = &c_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k)
        if (row[k] != 0) out[k] += xy * row[k];
    }
  }
  return out;
}

RationalMatrix StructureAlgebra::mult_matrix(const Vector& x) const {
  RationalMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Rational* row = &c_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k)
        if (row[k] != 0) m(k, j) += x[i] * row[k];
    }
  }
  return m;
}

RatPoly StructureAlgebra::min_poly(const Vector& x) const { return min_poly_of_matrix(mult_matrix(x)); }

Vector StructureAlgebra::evaluate(const RatPoly& p, const Vector& x) const {
  Vector acc(dim_, Rational(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = mul(acc, x);
    for (std::size_t i = 0; i < dim_; ++i) acc[i] += p[k] * unity_[i];
  }
  return acc;
}

bool StructureAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (c(i, j, k) != c(j, i, k)) return false;
  return true;
}

Vector casimir_general(const RationalMatrix& B, const RationalMatrix& psi, const RationalMatrix& phi,
                       const StructureAlgebra& A) {
  if (!B.is_square()) throw InputError("pairing matrix is not square");
  if (B.transpose() != B) throw InputError("pairing matrix is not symmetric");
  const std::size_t n = B.rows();
  if (psi.rows() != A.dim() || phi.rows() != A.dim() || psi.cols() != n || phi.cols() != n)
    throw InputError("maps do not match the pairing and the algebra");
  if (determinant(B) == 0) throw InputError("pairing matrix is singular");
  const RationalMatrix Binv = inverse(B);
  Vector out(A.dim(), Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    // psi(v_i*) with v_i* = sum_k Binv(i, k) v_k
    Vector a(A.dim(), Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
      if (Binv(i, k) == 0) continue;
      for (std::size_t r = 0; r < A.dim(); ++r) a[r] += Binv(i, k) * psi(r, k);
    }
    const Vector prod = A.mul(a, phi.col(i));
    for (std::size_t r = 0; r < A.dim(); ++r) out[r] += prod[r];
  }
  return out;
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(MaximalOrder src, MaximalOrder dst, RationalMatrix m)
    : source(std::move(src)), target(std::move(dst)), matrix(std::move(m)) {
  if (matrix.rows() != static_cast<std::size_t>(target.degree()) ||
      matrix.cols() != static_cast<std::size_t>(source.degree()))
    throw InputError("linear map has shape " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + ", expected " + std::to_string(target.degree()) + "x" +
                     std::to_string(source.degree()));
}

LinearMap LinearMap::identity(const MaximalOrder& O) {
  return LinearMap(O, O, RationalMatrix::identity(static_cast<std::size_t>(O.degree())));
}

FieldElement LinearMap::apply(const FieldElement& x) const {
  const Vector a = source.coords(x);
  Vector b(matrix.rows(), Rational(0));
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) b[i] += matrix(i, j) * a[j];
  return target.from_coords(b);
}

bool LinearMap::is_isometry() const {
  if (matrix.rows() != matrix.cols()) return false;
  return matrix.transpose() * to_rational(target.gram()) * matrix == to_rational(source.gram());
}

RationalMatrix LinearMap::power_matrix() const {
  // target power coords = Bt^t * matrix * (source coords), source coords = Bs^-t * power
  return target.basis().transpose() * matrix * inverse(source.basis().transpose());
}

// ---------------------------------------------------------------------------
// TensorAlgebra

namespace {

std::vector<Rational> order_consts(const MaximalOrder& O) {
  const std::size_t n = static_cast<std::size_t>(O.degree());
  std::vector<Rational> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = O.product(i, j);
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = p[k];
    }
  return c;
}

Vector to_vector(const std::vector<Integer>& v) { return Vector(v.begin(), v.end()); }

StructureAlgebra tensor_structure(const MaximalOrder& OK, const MaximalOrder& OL) {
  const std::size_t n = static_cast<std::size_t>(OK.degree());
  const std::size_t m = static_cast<std::size_t>(OL.degree());
  // The factor tables come from field arithmetic; checking them is cheap
  // and covers the tensor product.
  const StructureAlgebra A(n, order_consts(OK), to_vector(OK.unit_coords()));
  const StructureAlgebra B(m, order_consts(OL), to_vector(OL.unit_coords()));
  const std::size_t d = n * m;
  std::vector<Rational> c(d * d * d, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t p = 0; p < n; ++p) {
        const Rational& a = A.c(i, k, p);
        if (a == 0) continue;
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t l = 0; l < m; ++l)
            for (std::size_t q = 0; q < m; ++q) {
              const Rational& b = B.c(j, l, q);
              if (b == 0) continue;
              c[((i * m + j) * d + (k * m + l)) * d + (p * m + q)] = a * b;
            }
      }
  Vector unity(d, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) unity[i * m + j] = A.unity()[i] * B.unity()[j];
  return StructureAlgebra(d, std::move(c), std::move(unity), false);
}

// Inverse of a modulo p over Q (a and p coprime).
RatPoly inverse_mod(const RatPoly& a, const RatPoly& p) {
  RatPoly r0 = p, r1 = a % p, s0, s1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    const auto qr = divmod(r0, r1);
    RatPoly s2 = s0 - qr.quotient * s1;
    r0 = std::move(r1);
    r1 = qr.remainder;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw InternalError("factors of a squarefree polynomial are not coprime");
  return (s0 * (Rational(1) / r0[0])) % p;
}

// Indices of a maximal independent subset of the columns (or rows) of m.
std::vector<std::size_t> independent_columns(const RationalMatrix& m) {
  std::vector<std::size_t> chosen;
  std::vector<std::vector<Rational>> echelon;  // reduced vectors with their pivot
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Rational> v = m.col(j);
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = v[pivots[e]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * echelon[e][i];
    }
    std::size_t piv = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        piv = i;
        break;
      }
    if (piv == v.size()) continue;
    const Rational inv = Rational(1) / v[piv];
    for (auto& x : v) x *= inv;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = echelon[e][piv];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) echelon[e][i] -= f * v[i];
    }
    echelon.push_back(std::move(v));
    pivots.push_back(piv);
    chosen.push_back(j);
  }
  return chosen;
}

RationalMatrix select_columns(const RationalMatrix& m, const std::vector<std::size_t>& cols) {
  RationalMatrix r(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(i, cols[j]);
  return r;
}

// Matrix R of multiplication by x on the invariant subspace spanned by
// the columns of V: M(x) V = V R.
RationalMatrix restrict_to(const RationalMatrix& Mx, const RationalMatrix& V) {
  const RationalMatrix MV = Mx * V;
  const auto rows = independent_columns(V.transpose());
  RationalMatrix Vs(rows.size(), V.cols()), MVs(rows.size(), V.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < V.cols(); ++j) {
      Vs(i, j) = V(rows[i], j);
      MVs(i, j) = MV(rows[i], j);
    }
  return inverse(Vs) * MVs;
}

}  // namespace

TensorAlgebra::TensorAlgebra(const MaximalOrder& OK, const MaximalOrder& OL)
    : OK_(OK), OL_(OL), alg_(tensor_structure(OK, OL)) {}

Vector TensorAlgebra::pure(const Vector& a, const Vector& b) const {
  const std::size_t n = static_cast<std::size_t>(OK_.degree());
  const std::size_t m = static_cast<std::size_t>(OL_.degree());
  if (a.size() != n || b.size() != m) throw InputError("pure tensor factors have the wrong length");
  Vector v(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) v[i * m + j] = a[i] * b[j];
  return v;
}

Vector TensorAlgebra::left_generator() const {
  return pure(OK_.coords(OK_.field().theta()), to_vector(OL_.unit_coords()));
}

Vector TensorAlgebra::right_generator() const {
  return pure(to_vector(OK_.unit_coords()), OL_.coords(OL_.field().theta()));
}

void TensorAlgebra::decompose(int retry_budget) const {
  if (decomposed_) return;
  const std::size_t d = dim();
  const Vector tk = left_generator(), tl = right_generator();
  std::mt19937_64 rng(0x7f4a7c15u);
  std::uniform_int_distribution<int> coef(-3, 3);
  bool found = false;
  for (int attempt = 0; attempt < retry_budget && !found; ++attempt) {
    Vector z(d, Rational(0));
    if (attempt < 8) {
      for (std::size_t i = 0; i < d; ++i) z[i] = Rational(attempt + 1) * tk[i] + tl[i];
    } else {
      for (std::size_t i = 0; i < d; ++i) z[i] = coef(rng);
    }
    RatPoly mp = alg_.min_poly(z);
    if (static_cast<std::size_t>(mp.degree()) == d) {
      primitive_ = std::move(z);
      primitive_poly_ = std::move(mp);
      found = true;
    }
  }
  if (!found)
    throw BudgetError("no primitive element of the tensor algebra found in " + std::to_string(retry_budget) +
                      " tries");

  auto fac = factor_over_integers(primitive_part(primitive_poly_));
  std::vector<IntPoly> factors;
  for (const auto& f : fac.factors) {
    if (f.multiplicity != 1) throw InternalError("tensor algebra of two fields is not reduced");
    factors.push_back(f.factor);
  }
  std::sort(factors.begin(), factors.end(), poly_less);

  const int n = OK_.degree();
  std::vector<TensorComponent> comps;
  for (const auto& f : factors) {
    const RatPoly Pk = make_monic(to_rational(f));
    const RatPoly Qk = divmod(primitive_poly_, Pk).quotient;
    const RatPoly e = (Qk * inverse_mod(Qk, Pk)) % primitive_poly_;
    TensorComponent c;
    c.factor = f;
    c.idempotent = alg_.evaluate(e, primitive_);
    const RationalMatrix Me = alg_.mult_matrix(c.idempotent);
    c.basis = select_columns(Me, independent_columns(Me));
    if (static_cast<int>(c.basis.cols()) != f.degree())
      throw InternalError("component dimension differs from its factor degree");
    c.degree_over_K = f.degree() / n;
    comps.push_back(std::move(c));
  }
  comps_ = std::move(comps);
  decomposed_ = true;
}

const std::vector<TensorComponent>& TensorAlgebra::components(int retry_budget) const {
  decompose(retry_budget);
  return comps_;
}

const Vector& TensorAlgebra::primitive_element(int retry_budget) const {
  decompose(retry_budget);
  return primitive_;
}

const RatPoly& TensorAlgebra::primitive_min_poly(int retry_budget) const {
  decompose(retry_budget);
  return primitive_poly_;
}

std::string to_string(Disjointness d) {
  switch (d) {
    case Disjointness::Disjoint: return "Disjoint";
    case Disjointness::NotDisjoint: return "NotDisjoint";
    case Disjointness::Unknown: break;
  }
  return "Unknown";
}

DisjointnessResult linearly_disjoint(const TensorAlgebra& T, int retry_budget) {
  DisjointnessResult r;
  try {
    const auto& comps = T.components(retry_budget);
    r.witness_min_poly = T.primitive_min_poly();
    r.verdict = comps.size() == 1 ? Disjointness::Disjoint : Disjointness::NotDisjoint;
  } catch (const BudgetError&) {
    r.verdict = Disjointness::Unknown;
  }
  return r;
}

bool fields_isomorphic(const TensorAlgebra& T) {
  const int n = T.left().degree();
  if (n != T.right().degree()) return false;
  for (const auto& c : T.components())
    if (c.factor.degree() == n) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Casimir element

Integer integrality_scale(const RatPoly& mp) {
  const int k = mp.degree();
  Integer M = 1;
  // Collect the primes of all denominators, then take the worst ratio.
  Integer dens = 1;
  for (int i = 1; i <= k; ++i) dens = lcm(dens, Rational(mp[k - i]).get_den());
  for (const auto& [p, unused] : factor_integer(dens)) {
    (void)unused;
    unsigned long e = 0;
    for (int i = 1; i <= k; ++i) {
      const Integer den = Rational(mp[k - i]).get_den();
      const unsigned long v = valuation(den, p);
      e = std::max(e, (v + static_cast<unsigned long>(i) - 1) / static_cast<unsigned long>(i));
    }
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    M *= pe;
  }
  return M;
}

bool scaled_integral(const RatPoly& mp, const Rational& lambda, const Integer& p) {
  const int k = mp.degree();
  Rational lp = 1;
  for (int i = 1; i <= k; ++i) {
    lp *= lambda;
    const Rational b = lp * mp[k - i];
    const Integer& den = b.get_den();
    if (p == 0) {
      if (den != 1) return false;
    } else if (den % p == 0) {
      return false;
    }
  }
  return true;
}

CasimirElement casimir_element(const TensorAlgebra& T, const LinearMap& phi) {
  const MaximalOrder& OK = T.left();
  const MaximalOrder& OL = T.right();
  if (phi.source.degree() != OK.degree() || phi.target.degree() != OL.degree() ||
      !phi.source.field().same_as(OK.field()) || !phi.target.field().same_as(OL.field()))
    throw InputError("linear map does not go between the fields of the tensor algebra");
  if (phi.source.basis() != OK.basis() || phi.target.basis() != OL.basis())
    throw InputError("linear map is written in different order bases than the tensor algebra");
  const std::size_t n = static_cast<std::size_t>(OK.degree());
  const std::size_t m = static_cast<std::size_t>(OL.degree());
  const RationalMatrix C = inverse(to_rational(OK.gram())) * phi.matrix.transpose();
  CasimirElement c;
  c.coords.assign(n * m, Rational(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < m; ++j) c.coords[k * m + j] = C(k, j);

  const StructureAlgebra& A = T.algebra();
  const RationalMatrix Mc = A.mult_matrix(c.coords);
  c.min_poly = min_poly_of_matrix(Mc);
  c.M = integrality_scale(c.min_poly);
  c.is_rational = c.min_poly.degree() == 1;
  for (const auto& comp : T.components()) {
    ComponentCasimir cc;
    cc.degree_over_K = comp.degree_over_K;
    cc.min_poly = min_poly_of_matrix(restrict_to(Mc, comp.basis));
    cc.M = integrality_scale(cc.min_poly);
    cc.is_zero = cc.min_poly == RatPoly::x();
    c.components.push_back(std::move(cc));
  }
  return c;
}

bool is_p_integral(const CasimirElement& c, const Integer& p) { return scaled_integral(c.min_poly, 1, p); }

// ---------------------------------------------------------------------------
// Theorem checks

bool IntegrityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.applicable || c.passed; });
}

bool BoundReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.applicable || c.passed; });
}

namespace {

void require_isometry(const LinearMap& phi) {
  if (!is_integral(phi.matrix) || !phi.is_isometry())
    throw InputError("map is not an isometry of the integral trace forms");
  const Rational det = determinant(phi.matrix);
  if (det != 1 && det != -1) throw InputError("map is not an isometry of the integral trace forms");
}

void fail_on(const std::vector<Check>& checks, const RatPoly& mp) {
  for (const auto& c : checks)
    if (c.applicable && !c.passed)
      throw PropertyViolation("check " + c.name + " failed (" + c.detail + ") for min poly " + to_string(mp));
}

}  // namespace

IntegrityReport verify_integrality_theorem(const TensorAlgebra& T, const LinearMap& phi, const CasimirElement& c) {
  require_isometry(phi);
  IntegrityReport r;
  const MaximalOrder& OK = T.left();
  r.d_K = OK.disc();
  const Integer ad = abs(r.d_K);
  r.split = discriminant_split(ad);
  r.fundamental = is_fundamental(r.d_K);
  for (const auto& [p, e] : factor_integer(ad)) {
    (void)e;
    r.tameness.emplace_back(p, tameness(OK, p));
  }
  const RatPoly& mp = c.min_poly;

  auto add = [&](std::string name, bool applicable, bool passed, std::string detail) {
    r.checks.push_back(Check{std::move(name), passed, applicable, std::move(detail)});
  };
  add("dK_c_integral", true, scaled_integral(mp, Rational(ad)), "d_K = " + to_string(r.d_K));
  add("ds_c_integral", true, scaled_integral(mp, Rational(r.split.d_s)), "d_s = " + to_string(r.split.d_s));
  for (const auto& [p, e] : factor_integer(r.split.d_f)) {
    (void)e;
    add("c_integral_at_" + to_string(p), true, scaled_integral(mp, 1, p), "p = " + to_string(p) + " divides d_f");
  }
  bool all_tame = true;
  for (const auto& [p, t] : r.tameness) {
    if (r.split.d_s % p != 0) continue;
    if (t == Tameness::Tame) {
      add("p_c_integral_at_" + to_string(p), true, scaled_integral(mp, Rational(p), p),
          "tame at p = " + to_string(p));
    } else {
      all_tame = false;
    }
  }
  add("rad_ds_c_integral", all_tame, all_tame && scaled_integral(mp, Rational(r.split.rad_ds)),
      all_tame ? "every p | d_s tame, rad(d_s) = " + to_string(r.split.rad_ds)
               : "skipped: some p | d_s not certified tame");
  const bool even_fund = r.fundamental && r.d_K % 2 == 0;
  add("two_rad_ds_c_integral_at_2", even_fund, even_fund && scaled_integral(mp, Rational(2 * r.split.rad_ds), 2),
      even_fund ? "fundamental even discriminant" : "skipped: discriminant not fundamental and even");
  add("two_c_integral_at_2", even_fund, even_fund && scaled_integral(mp, 2, 2),
      even_fund ? "fundamental even discriminant" : "skipped: discriminant not fundamental and even");
  fail_on(r.checks, mp);
  return r;
}

BoundReport casimir_bound_check(const TensorAlgebra& T, const LinearMap& phi, const CasimirElement& c) {
  require_isometry(phi);
  BoundReport r;
  const MaximalOrder& OK = T.left();
  if (!OK.field().totally_real()) {
    r.checks.push_back(Check{"totally_real", false, false, "skipped: K is not totally real"});
    return r;
  }
  const Integer ad = abs(OK.disc());
  const auto split = discriminant_split(ad);
  bool all_tame = true;
  for (const auto& [p, e] : factor_integer(split.d_s)) {
    (void)e;
    if (tameness(OK, p) != Tameness::Tame) all_tame = false;
  }
  const bool sharp = all_tame || is_fundamental(OK.disc());
  auto add = [&](std::string name, bool applicable, bool passed, std::string detail) {
    r.checks.push_back(Check{std::move(name), passed, applicable, std::move(detail)});
  };
  add("M_le_ds", true, c.M <= split.d_s, "M = " + to_string(c.M) + ", d_s = " + to_string(split.d_s));
  add("M_le_rad_ds", sharp, !sharp || c.M <= split.rad_ds,
      sharp ? "M = " + to_string(c.M) + ", rad(d_s) = " + to_string(split.rad_ds)
            : "skipped: not tame and not fundamental");

  const auto& comps = c.components;
  r.single_component = comps.size() == 1;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& cc = comps[k];
    const std::string tag = "component_" + std::to_string(k);
    if (cc.is_zero) {
      add(tag + "_degree_le_M2", false, true, "skipped: c vanishes in this component");
      continue;
    }
    const Integer M2 = cc.M * cc.M;
    const Integer deg = cc.degree_over_K;
    add(tag + "_degree_le_M2", true, deg <= M2,
        "[E:K] = " + to_string(deg) + ", M^2 = " + to_string(M2));
    const Rational inv = Rational(1) / Rational(cc.M);
    const bool unit = cc.min_poly == RatPoly({-inv, Rational(1)}) || cc.min_poly == RatPoly({inv, Rational(1)});
    const bool eq = deg == M2;
    // Equality forces M c = +-1 in any component; the converse needs the
    // component to carry every embedding pair, i.e. a single component.
    const bool ok = r.single_component ? (eq == unit) : (!eq || unit);
    add(tag + "_equality", true, ok,
        std::string("[E:K] == M^2 is ") + (eq ? "true" : "false") + ", M c = +-1 is " + (unit ? "true" : "false"));
    if (r.single_component) r.equality = eq;
  }
  fail_on(r.checks, c.min_poly);
  return r;
}

// ---------------------------------------------------------------------------
// Numerics

namespace {

struct DualImages {
  std::vector<FieldElement> dual;    // alpha_k* in K
  std::vector<FieldElement> images;  // phi(alpha_k) in L
};

DualImages dual_images(const LinearMap& phi) {
  const RationalMatrix Ginv = inverse(to_rational(phi.source.gram()));
  DualImages d;
  const std::size_t n = static_cast<std::size_t>(phi.source.degree());
  for (std::size_t k = 0; k < n; ++k) {
    d.dual.push_back(phi.source.from_coords(Ginv.row(k)));
    d.images.push_back(phi.target.from_coords(phi.matrix.col(k)));
  }
  return d;
}

Real max_real(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_max(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

// Guard bits on top of the requested precision: the isolating discs of
// the roots only shrink below 2^(-bits/2) by default.
int working_bits(int bits) { return bits + 64; }

}  // namespace

UMatrix numeric_U_matrix(const LinearMap& phi, int bits) {
  const std::size_t n = static_cast<std::size_t>(phi.source.degree());
  if (phi.target.degree() != phi.source.degree()) throw InputError("U matrix needs fields of equal degree");
  const int wb = working_bits(bits);
  const EmbeddingTable EK(phi.source.field(), wb), EL(phi.target.field(), wb);
  const DualImages d = dual_images(phi);
  std::vector<std::vector<ComplexBall>> sd(n), ti(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      sd[i].push_back(EK.apply(i, d.dual[k]));
      ti[i].push_back(EL.apply(i, d.images[k]));
    }
  UMatrix u;
  u.U.assign(n, std::vector<ComplexBall>(n, ComplexBall(wb)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexBall acc(wb);
      for (std::size_t k = 0; k < n; ++k) acc = acc + sd[i][k] * ti[j][k];
      u.U[i][j] = acc;
    }
  u.residual = Real(wb);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexBall acc = ComplexBall::from_integer(i == j ? -1 : 0, wb);
      for (std::size_t l = 0; l < n; ++l) acc = acc + u.U[i][l] * u.U[j][l];
      u.residual = max_real(u.residual, acc.abs_upper());
    }
  return u;
}

FourierResult fourier_reconstruct(const LinearMap& phi, int bits) {
  if (!phi.source.field().same_as(phi.target.field()))
    throw InputError("Fourier expansion needs a map from a field to itself");
  const std::size_t n = static_cast<std::size_t>(phi.source.degree());
  const int wb = working_bits(bits);
  const EmbeddingTable E(phi.source.field(), wb);
  const DualImages d = dual_images(phi);
  // phi(alpha_k*) by linearity
  std::vector<FieldElement> phi_dual;
  for (std::size_t k = 0; k < n; ++k) phi_dual.push_back(phi.apply(d.dual[k]));
  FourierResult r;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexBall acc(wb);
    for (std::size_t k = 0; k < n; ++k)
      acc = acc + E.apply(0, phi_dual[k]) * E.apply(i, phi.source.element(k));
    r.coefficients.push_back(acc);
  }
  r.residual = Real(wb);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexBall sum(wb);
    const FieldElement aj = phi.source.element(j);
    for (std::size_t i = 0; i < n; ++i) sum = sum + r.coefficients[i] * E.apply(i, aj);
    r.residual = max_real(r.residual, distance_upper(sum, E.apply(0, d.images[j])));
  }
  return r;
}

std::string to_string(SmallClass s) {
  switch (s) {
    case SmallClass::Zero: return "Zero";
    case SmallClass::PlusInvRad: return "PlusInvRad";
    case SmallClass::MinusInvRad: return "MinusInvRad";
    case SmallClass::Other: break;
  }
  return "Other";
}

SmallResult small_casimir_classifier(const CasimirElement& c, const LinearMap& phi, const DiscriminantSplit& split,
                                     int bits) {
  SmallResult r;
  const Rational inv = Rational(1) / Rational(split.rad_ds);
  const RatPoly x = RatPoly::x();
  const RatPoly xm = RatPoly({-inv, Rational(1)}), xp = RatPoly({inv, Rational(1)});
  if (c.min_poly == x) r.verdict = SmallClass::Zero;
  else if (c.min_poly == xm) r.verdict = SmallClass::PlusInvRad;
  else if (c.min_poly == xp) r.verdict = SmallClass::MinusInvRad;

  const RatPoly small = x * xm * xp;
  r.components_small = !c.components.empty() && std::all_of(c.components.begin(), c.components.end(), [&](const auto& cc) {
    return (small % cc.min_poly).is_zero();
  });

  if (!phi.source.field().totally_real() || !phi.target.field().totally_real()) {
    r.detail = "hypotheses not met: fields not totally real";
    return r;
  }
  for (const auto& [p, e] : factor_integer(split.d_s)) {
    (void)e;
    if (tameness(phi.source, p) != Tameness::Tame) {
      r.detail = "hypotheses not met: ramification at " + to_string(p) + " not certified tame";
      return r;
    }
  }

  // The values theta(c) are the roots of the minimal polynomial, all
  // real here; Sturm decides exactly whether they lie in [-1/r, 1/r].
  const bool inside = count_real_roots(c.min_poly, -inv, inv) == c.min_poly.degree();
  for (int b = bits;; b *= 2) {
    if (b > 4096) throw BudgetError("small-value comparison undecided at 4096 bits");
    const UMatrix u = numeric_U_matrix(phi, b);
    Real bound(working_bits(b) + 64);
    mpfr_set_q(bound.get(), inv.get_mpq_t(), MPFR_RNDU);
    bool exceeds = false;
    for (const auto& row : u.U)
      for (const auto& z : row)
        if (mpfr_cmp(z.abs_lower().get(), bound.get()) > 0) exceeds = true;
    if (inside && exceeds) throw InternalError("ball values contradict the exact root count");
    if (inside || exceeds) break;
  }
  r.hypotheses_hold = inside;
  if (!inside) {
    r.detail = "some |theta(c)| exceeds 1/rad(d_s)";
    r.verdict = SmallClass::Other;
    return r;
  }
  if (!r.components_small)
    throw PropertyViolation("|theta(c)| <= 1/rad(d_s) everywhere but c is not in {0, +-1/rad(d_s)}: min poly " +
                            to_string(c.min_poly));
  r.detail = "every |theta(c)| <= 1/rad(d_s); component values in {0, +-1/rad(d_s)}";
  return r;
}

}  // namespace tf
