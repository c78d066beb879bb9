#include "tracefield/factor.hpp"

#include <algorithm>

#include "tracefield/errors.hpp"
#include "zp_poly.hpp"

namespace tf {

using detail::u64;
using detail::Zp;
using detail::ZpPoly;

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::vector<ModFactor> factor_mod_p(const IntPoly& f, const Integer& p) {
  if (!is_prime(p)) throw InputError("factor_mod_p: " + to_string(p) + " is not prime");
  if (p >= (Integer(1) << 62)) throw UnsupportedInput("factor_mod_p: prime too large");
  const Zp F(p.get_ui());
  ZpPoly g = detail::reduce(F, f);
  if (g.empty()) throw InputError("factor_mod_p: polynomial vanishes mod " + to_string(p));
  std::vector<ModFactor> out;
  for (auto& [h, m] : detail::factor_monic(F, detail::monic(F, g))) out.push_back({detail::lift(h), m});
  std::sort(out.begin(), out.end(),
            [](const ModFactor& a, const ModFactor& b) { return poly_less(a.factor, b.factor); });
  return out;
}

namespace {

// Polynomial arithmetic over Z / m with symmetric or nonnegative reps.
IntPoly mod_coeffs(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c;
  for (const auto& v : f.coeffs()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    c.push_back(r);
  }
  return IntPoly(std::move(c));
}

IntPoly symmetric_coeffs(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c;
  const Integer half = m / 2;
  for (const auto& v : f.coeffs()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (r > half) r -= m;
    c.push_back(r);
  }
  return IntPoly(std::move(c));
}

// Lifts f == a*b (mod p), a monic, gcd(a, b) = 1 mod p, to mod p^k.
// Linear Hensel lifting; on return a is monic mod p^k.
void hensel_lift(const Zp& F, const IntPoly& f, IntPoly& a, IntPoly& b, unsigned k) {
  const Integer p(static_cast<unsigned long>(F.p()));
  ZpPoly ga, s, t;
  detail::xgcd(F, detail::reduce(F, a), detail::reduce(F, b), ga, s, t);
  if (detail::degree(ga) != 0) throw InternalError("Hensel lifting of non-coprime factors");
  const ZpPoly a_bar = detail::reduce(F, a);
  Integer pj = p;
  for (unsigned j = 1; j < k; ++j) {
    IntPoly err = f - a * b;
    std::vector<Integer> ec;
    for (const auto& v : err.coeffs()) {
      if (!mpz_divisible_p(v.get_mpz_t(), pj.get_mpz_t())) throw InternalError("Hensel invariant broken");
      ec.push_back(v / pj);
    }
    const ZpPoly e = detail::reduce(F, IntPoly(std::move(ec)));
    // a*db + b*da == e with deg da < deg a.
    const ZpPoly da = detail::mod(F, detail::mul(F, t, e), a_bar);
    const ZpPoly db =
        detail::quot(F, detail::sub(F, e, detail::mul(F, detail::reduce(F, b), da)), a_bar);
    a += detail::lift(da) * pj;
    b += detail::lift(db) * pj;
    pj *= p;
    a = mod_coeffs(a, pj);
    b = mod_coeffs(b, pj);
  }
}

struct SquarefreeTerm {
  IntPoly poly;
  int multiplicity;
};

// Squarefree decomposition over Z of a primitive polynomial.
std::vector<SquarefreeTerm> squarefree_terms(const IntPoly& f) {
  std::vector<SquarefreeTerm> out;
  RatPoly rf = to_rational(f);
  RatPoly c = gcd(rf, rf.derivative());
  RatPoly w = divmod(rf, c).quotient;
  int i = 1;
  while (w.degree() > 0) {
    RatPoly y = gcd(w, c);
    RatPoly z = divmod(w, y).quotient;
    if (z.degree() > 0) out.push_back({primitive_part(z), i});
    ++i;
    w = y;
    c = divmod(c, y).quotient;
  }
  return out;
}

Integer coefficient_bound(const IntPoly& g) {
  // Mignotte: any factor h of g satisfies ||h||_inf <= 2^deg(g) ||g||_2.
  Integer norm2 = 0;
  for (const auto& v : g.coeffs()) norm2 += v * v;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  return (Integer(1) << g.degree()) * root * abs(g.lc());
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::string partial_certificate(const std::vector<IntPoly>& found, const IntPoly& rest) {
  std::string s = "factor recombination budget exceeded; split off so far: [";
  for (std::size_t i = 0; i < found.size(); ++i) s += (i ? ", " : "") + to_string(found[i]);
  return s + "], unresolved cofactor " + to_string(rest);
}

// Irreducible factors of a squarefree primitive polynomial, lc > 0.
std::vector<IntPoly> zassenhaus(IntPoly g, std::size_t budget, std::size_t& spent) {
  if (g.degree() <= 1) return {g};
  // Pick the good prime with the fewest modular factors among the first few.
  std::vector<ModFactor> best;
  Integer best_p = 0;
  int good_seen = 0;
  for (Integer p = 3; good_seen < 6; p = next_prime(p)) {
    if (mpz_divisible_p(g.lc().get_mpz_t(), p.get_mpz_t())) continue;
    const Zp F(p.get_ui());
    ZpPoly gb = detail::reduce(F, g);
    if (detail::degree(detail::gcd(F, gb, detail::derivative(F, gb))) != 0) continue;
    ++good_seen;
    auto fac = factor_mod_p(g, p);
    if (best_p == 0 || fac.size() < best.size()) {
      best = std::move(fac);
      best_p = p;
    }
    if (best.size() == 1) return {g};
  }
  const Zp F(best_p.get_ui());
  const Integer bound = 2 * coefficient_bound(g) + 1;
  unsigned k = 1;
  Integer pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }

  // Multifactor lift by peeling one factor at a time.
  std::vector<IntPoly> lifted;
  {
    IntPoly rest = g;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
      IntPoly a = best[i].factor;
      ZpPoly b_bar = detail::quot(F, detail::reduce(F, rest), detail::reduce(F, a));
      IntPoly b = detail::lift(b_bar);
      hensel_lift(F, rest, a, b, k);
      lifted.push_back(a);
      rest = b;
    }
    // Remaining factor: make it monic mod p^k.
    Integer inv;
    mpz_invert(inv.get_mpz_t(), rest.lc().get_mpz_t(), pk.get_mpz_t());
    lifted.push_back(mod_coeffs(rest * inv, pk));
  }

  std::vector<IntPoly> found;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool split = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    do {
      if (++spent > budget) throw BudgetError(partial_certificate(found, g));
      IntPoly h = IntPoly::constant(g.lc());
      for (std::size_t i : idx) h = mod_coeffs(h * lifted[i], pk);
      h = primitive_part(symmetric_coeffs(h, pk));
      auto q = divide_exact(g, h);
      if (!q) continue;
      found.push_back(h);
      g = *q;
      std::vector<IntPoly> remaining;
      for (std::size_t i = 0, j = 0; i < lifted.size(); ++i) {
        if (j < idx.size() && idx[j] == i) {
          ++j;
          continue;
        }
        remaining.push_back(lifted[i]);
      }
      lifted = std::move(remaining);
      split = true;
      break;
    } while (next_combination(idx, lifted.size()));
    if (!split) ++s;
  }
  if (g.degree() > 0) found.push_back(g);
  return found;
}

}  // namespace

IntFactorization factor_over_integers(const IntPoly& f, std::size_t subset_budget) {
  if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
  IntFactorization out;
  out.content = content(f);
  IntPoly g = primitive_part(f);
  if (g.degree() == 0) return out;
  std::size_t spent = 0;
  for (const auto& term : squarefree_terms(g)) {
    for (auto& h : zassenhaus(term.poly, subset_budget, spent)) out.factors.push_back({h, term.multiplicity});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const IntFactor& a, const IntFactor& b) { return poly_less(a.factor, b.factor); });
  return out;
}

bool is_irreducible(const IntPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_over_integers(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace tf
