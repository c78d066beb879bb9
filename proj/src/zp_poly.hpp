#pragma once

// Dense polynomials over a prime field F_p with p < 2^62. Internal to
// the factorization code.

#include <cstdint>
#include <vector>

#include "tracefield/polynomial.hpp"

namespace tf::detail {

using u64 = std::uint64_t;

class Zp {
 public:
  explicit Zp(u64 p) : p_(p) {}
  u64 p() const { return p_; }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p_ - 2); }
  u64 reduce(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }

 private:
  u64 p_;
};

/// Coefficients ascending; canonical (no trailing zeros).
using ZpPoly = std::vector<u64>;

void trim(ZpPoly& a);
int degree(const ZpPoly& a);
ZpPoly reduce(const Zp& F, const IntPoly& f);
IntPoly lift(const ZpPoly& a);
ZpPoly add(const Zp& F, const ZpPoly& a, const ZpPoly& b);
ZpPoly sub(const Zp& F, const ZpPoly& a, const ZpPoly& b);
ZpPoly mul(const Zp& F, const ZpPoly& a, const ZpPoly& b);
ZpPoly scale(const Zp& F, const ZpPoly& a, u64 s);
void divmod(const Zp& F, const ZpPoly& a, const ZpPoly& b, ZpPoly& q, ZpPoly& r);
ZpPoly mod(const Zp& F, const ZpPoly& a, const ZpPoly& b);
ZpPoly quot(const Zp& F, const ZpPoly& a, const ZpPoly& b);
ZpPoly monic(const Zp& F, const ZpPoly& a);
ZpPoly gcd(const Zp& F, ZpPoly a, ZpPoly b);
ZpPoly derivative(const Zp& F, const ZpPoly& a);
/// base^e mod m.
ZpPoly powmod(const Zp& F, ZpPoly base, const Integer& e, const ZpPoly& m);
/// Returns (g, s, t) with s*a + t*b = g monic.
void xgcd(const Zp& F, const ZpPoly& a, const ZpPoly& b, ZpPoly& g, ZpPoly& s, ZpPoly& t);

/// Monic irreducible factors with multiplicities, unsorted.
std::vector<std::pair<ZpPoly, int>> factor_monic(const Zp& F, const ZpPoly& f);

}  // namespace tf::detail
