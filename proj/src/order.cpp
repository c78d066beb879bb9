#include "tracefield/order.hpp"

#include <algorithm>

#include "tracefield/errors.hpp"
#include "tracefield/factor.hpp"
#include "zp_poly.hpp"

namespace tf {

std::string to_string(OrderProvenance p) {
  switch (p) {
    case OrderProvenance::CertifiedSquarefree: return "certified-squarefree";
    case OrderProvenance::CertifiedDedekind: return "certified-dedekind";
    case OrderProvenance::UserSuppliedValidated: return "user-supplied-validated";
    case OrderProvenance::UserSuppliedTrusted: return "user-supplied-trusted";
  }
  return "?";
}

std::string to_string(Tameness t) {
  switch (t) {
    case Tameness::Tame: return "tame";
    case Tameness::Wild: return "wild";
    case Tameness::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(SnCertificate s) { return s == SnCertificate::CertifiedSn ? "certified-sn" : "unknown"; }

FieldElement MaximalOrder::element(std::size_t i) const { return field_.element(basis_.row(i)); }

std::vector<Rational> MaximalOrder::to_power(const std::vector<Rational>& x) const {
  return basis_.transpose() * x;
}

FieldElement MaximalOrder::from_coords(const std::vector<Rational>& c) const { return field_.element(to_power(c)); }

std::vector<Rational> MaximalOrder::coords(const FieldElement& a) const {
  if (!a.field().same_as(field_)) throw InputError("element does not belong to the order's field");
  return basis_inv_.transpose() * a.coords();
}

MaximalOrder make_order_unchecked(const NumberField& K, const RationalMatrix& basis, OrderProvenance prov) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  if (basis.rows() != n || basis.cols() != n)
    throw InputError("integral basis must be " + std::to_string(n) + "x" + std::to_string(n));
  if (determinant(basis) == 0) throw InputError("integral basis is singular");
  MaximalOrder O;
  O.field_ = K;
  O.basis_ = basis;
  O.basis_inv_ = inverse(basis);
  O.prov_ = prov;
  if (!is_integral(O.basis_inv_)) throw InputError("integral basis does not contain Z[theta]");
  Rational idx = abs(Rational(1) / determinant(basis));
  O.index_ = idx.get_num();

  std::vector<Rational> e0(n, Rational(0));
  e0[0] = 1;
  for (const auto& v : O.basis_inv_.transpose() * e0) O.unit_.push_back(v.get_num());

  std::vector<FieldElement> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(O.element(i));
  O.mult_.resize(n * n);
  O.gram_ = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FieldElement prod = w[i] * w[j];
      auto c = O.coords(prod);
      std::vector<Integer> ci;
      for (const auto& v : c) {
        if (!is_integral(v)) throw InputError("integral basis is not closed under multiplication");
        ci.push_back(v.get_num());
      }
      O.mult_[i * n + j] = std::move(ci);
      Rational t = prod.trace();
      if (!is_integral(t)) throw InputError("integral basis has a non-integral trace");
      O.gram_(i, j) = t.get_num();
    }
  O.disc_ = determinant(O.gram_);
  return O;
}

bool dedekind_p_maximal(const IntPoly& f, const Integer& p) {
  if (!is_prime(p)) throw InputError("dedekind_p_maximal: " + to_string(p) + " is not prime");
  if (p >= (Integer(1) << 62)) throw UnsupportedInput("dedekind_p_maximal: prime too large");
  using namespace detail;
  const Zp F(p.get_ui());
  auto fac = factor_mod_p(f, p);
  IntPoly g = IntPoly::constant(1), h = IntPoly::constant(1);
  for (const auto& m : fac) {
    g = g * m.factor;
    for (int k = 1; k < m.multiplicity; ++k) h = h * m.factor;
  }
  // F = (g h - f) / p must share no factor with gcd(g, h) modulo p.
  IntPoly gh = g * h - f;
  std::vector<Integer> fc;
  for (const auto& c : gh.coeffs()) {
    if (c % p != 0) throw InternalError("dedekind_p_maximal: lift is not congruent to f");
    fc.push_back(c / p);
  }
  ZpPoly Fp = reduce(F, IntPoly(fc));
  ZpPoly d = gcd(F, reduce(F, g), reduce(F, h));
  d = gcd(F, d, Fp);
  return degree(d) == 0;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

Integer mod_p(const Integer& a, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

// Right kernel of A (rows x cols) over F_p; each returned vector has
// entries in [0, p).
IntRows kernel_mod_p(IntRows a, std::size_t cols, const Integer& p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && mod_p(a[piv][c], p) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Integer inv;
    Integer lead = mod_p(a[r][c], p);
    mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), p.get_mpz_t());
    for (auto& v : a[r]) v = mod_p(v * inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      Integer m = mod_p(a[i][c], p);
      if (m == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_p(a[i][j] - m * a[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  IntRows out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Integer> v(cols, Integer(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = mod_p(-a[i][free], p);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Integer> order_mul(const MaximalOrder& O, const std::vector<Integer>& x, const std::vector<Integer>& y,
                               const Integer& p) {
  const std::size_t n = x.size();
  std::vector<Integer> out(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      Integer s = x[i] * y[j];
      const auto& m = O.product(i, j);
      for (std::size_t k = 0; k < n; ++k) out[k] += s * m[k];
    }
  }
  if (p != 0)
    for (auto& v : out) v = mod_p(v, p);
  return out;
}

}  // namespace

bool order_p_maximal(const MaximalOrder& O, const Integer& p) {
  const std::size_t n = static_cast<std::size_t>(O.degree());
  // q = p^k >= n, so that x^q = 0 mod p exactly on the p-radical.
  Integer q = p;
  while (q < static_cast<long>(n)) q *= p;
  IntRows frob(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> base(n, Integer(0)), acc = O.unit_coords();
    base[i] = 1;
    for (auto& v : acc) v = mod_p(v, p);
    Integer e = q;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = order_mul(O, acc, base, p);
      base = order_mul(O, base, base, p);
      e >>= 1;
    }
    for (std::size_t k = 0; k < n; ++k) frob[k][i] = acc[k];
  }
  IntRows rad = kernel_mod_p(frob, n, p);
  IntMatrix gens(rad.size() + n, n);
  for (std::size_t r = 0; r < rad.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) gens(r, c) = rad[r][c];
  for (std::size_t c = 0; c < n; ++c) gens(rad.size() + c, c) = p;
  IntMatrix H = hermite_normal_form(gens).H;
  RationalMatrix BI(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) BI(r, c) = H(r, c);
  RationalMatrix BIinv = inverse(BI);
  // Column i: for each radical basis vector b_j, the radical coordinates
  // of omega_i * b_j modulo p.
  IntRows cond(n * n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> wi(n, Integer(0));
    wi[i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Integer> bj(n);
      for (std::size_t c = 0; c < n; ++c) bj[c] = H(j, c);
      auto prod = order_mul(O, wi, bj, 0);
      std::vector<Rational> pr(prod.begin(), prod.end());
      auto z = BIinv.transpose() * pr;
      for (std::size_t l = 0; l < n; ++l) {
        if (!is_integral(z[l])) throw InternalError("p-radical is not an ideal");
        cond[j * n + l][i] = mod_p(z[l].get_num(), p);
      }
    }
  }
  return kernel_mod_p(cond, n, p).empty();
}

MaximalOrder build_order(const NumberField& K, const std::optional<RationalMatrix>& user_basis,
                         const std::optional<Integer>& claimed_disc, bool trusted) {
  const Integer& d = K.poly_disc();
  auto check_claim = [&](const MaximalOrder& O) {
    if (claimed_disc && *claimed_disc != O.disc())
      throw InputError("claimed discriminant " + to_string(*claimed_disc) + " does not match Gram determinant " +
                       to_string(O.disc()));
  };
  if (user_basis) {
    MaximalOrder O = make_order_unchecked(
        K, *user_basis, trusted ? OrderProvenance::UserSuppliedTrusted : OrderProvenance::UserSuppliedValidated);
    check_claim(O);
    if (!trusted)
      for (const auto& [p, e] : factor_integer(O.disc()))
        if (e >= 2 && !order_p_maximal(O, p))
          throw InputError("integral basis is not maximal at p = " + to_string(p));
    return O;
  }
  const auto id = RationalMatrix::identity(static_cast<std::size_t>(K.degree()));
  if (is_squarefree(d)) {
    MaximalOrder O = make_order_unchecked(K, id, OrderProvenance::CertifiedSquarefree);
    check_claim(O);
    return O;
  }
  for (const auto& [p, e] : factor_integer(d))
    if (e >= 2 && !dedekind_p_maximal(K.poly(), p))
      throw InputError("needs integral basis: Z[theta] is not maximal at p = " + to_string(p));
  MaximalOrder O = make_order_unchecked(K, id, OrderProvenance::CertifiedDedekind);
  check_claim(O);
  return O;
}

DiscriminantSplit discriminant_split(const Integer& d) {
  if (d == 0) throw InputError("discriminant_split: zero discriminant");
  DiscriminantSplit s{1, 1, 1};
  for (const auto& [p, e] : factor_integer(d)) {
    if (e == 1) {
      s.d_f *= p;
    } else {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      s.d_s *= pe;
      s.rad_ds *= p;
    }
  }
  return s;
}

bool is_fundamental(const Integer& d) {
  if (d == 0) return false;
  Integer r = mod_p(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  Integer m = d / 4;
  Integer rm = mod_p(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

PrimeShape prime_shape(const MaximalOrder& O, const Integer& p) {
  PrimeShape s;
  s.p = p;
  if (O.index() % p == 0) return s;
  for (const auto& m : factor_mod_p(O.field().poly(), p)) s.pairs.emplace_back(m.multiplicity, m.factor.degree());
  s.reliable = true;
  return s;
}

Tameness tameness(const MaximalOrder& O, const Integer& p) {
  if (p > O.degree()) return Tameness::Tame;
  if (O.disc() % p != 0) return Tameness::Tame;
  PrimeShape s = prime_shape(O, p);
  if (!s.reliable) return Tameness::Unknown;
  for (const auto& [e, f] : s.pairs)
    if (e % p == 0) return Tameness::Wild;
  return Tameness::Tame;
}

SnCertificate certify_sn(const NumberField& K, int prime_budget) {
  const int n = K.degree();
  if (n <= 2) return SnCertificate::CertifiedSn;
  bool transposition = false, long_cycle = false;
  int scanned = 0;
  for (Integer p = 2; scanned < prime_budget; p = next_prime(p)) {
    if (K.poly_disc() % p == 0) continue;
    ++scanned;
    std::vector<int> degs;
    for (const auto& m : factor_mod_p(K.poly(), p)) degs.push_back(m.factor.degree());
    std::sort(degs.begin(), degs.end());
    const int twos = static_cast<int>(std::count(degs.begin(), degs.end(), 2));
    const int ones = static_cast<int>(std::count(degs.begin(), degs.end(), 1));
    if (twos == 1 && ones == n - 2) transposition = true;
    if (degs.size() == 2 && degs[0] == 1 && degs[1] == n - 1) long_cycle = true;
    if (transposition && long_cycle) return SnCertificate::CertifiedSn;
  }
  return SnCertificate::Unknown;
}

}  // namespace tf
