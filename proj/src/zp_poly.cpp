#include "zp_poly.hpp"

#include <algorithm>
#include <random>

#include "tracefield/errors.hpp"

namespace tf::detail {

void trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

ZpPoly reduce(const Zp& F, const IntPoly& f) {
  ZpPoly r;
  for (const auto& c : f.coeffs()) r.push_back(F.reduce(c));
  trim(r);
  return r;
}

IntPoly lift(const ZpPoly& a) {
  std::vector<Integer> c;
  for (u64 v : a) c.emplace_back(static_cast<unsigned long>(v));
  return IntPoly(std::move(c));
}

ZpPoly add(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  ZpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

ZpPoly sub(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  ZpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

ZpPoly mul(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

ZpPoly scale(const Zp& F, const ZpPoly& a, u64 s) {
  ZpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

void divmod(const Zp& F, const ZpPoly& a, const ZpPoly& b, ZpPoly& q, ZpPoly& r) {
  if (b.empty()) throw DomainError("division by zero polynomial mod p");
  r = a;
  const int db = degree(b);
  if (degree(a) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(a) - db + 1), 0);
  const u64 inv_lc = F.inv(b.back());
  for (int i = degree(a); i >= db; --i) {
    const u64 c = F.mul(r[static_cast<std::size_t>(i)], inv_lc);
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = F.sub(slot, F.mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  trim(r);
  trim(q);
}

ZpPoly mod(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  ZpPoly q, r;
  divmod(F, a, b, q, r);
  return r;
}

ZpPoly quot(const Zp& F, const ZpPoly& a, const ZpPoly& b) {
  ZpPoly q, r;
  divmod(F, a, b, q, r);
  return q;
}

ZpPoly monic(const Zp& F, const ZpPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

ZpPoly gcd(const Zp& F, ZpPoly a, ZpPoly b) {
  while (!b.empty()) {
    ZpPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

ZpPoly derivative(const Zp& F, const ZpPoly& a) {
  if (a.size() <= 1) return {};
  ZpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], static_cast<u64>(i) % F.p());
  trim(r);
  return r;
}

ZpPoly powmod(const Zp& F, ZpPoly base, const Integer& e, const ZpPoly& m) {
  ZpPoly result{1};
  result = mod(F, result, m);
  base = mod(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(F, mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(F, mul(F, result, base), m);
  }
  return result;
}

void xgcd(const Zp& F, const ZpPoly& a, const ZpPoly& b, ZpPoly& g, ZpPoly& s, ZpPoly& t) {
  ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ZpPoly q, r;
    divmod(F, r0, r1, q, r);
    ZpPoly s2 = sub(F, s0, mul(F, q, s1));
    ZpPoly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = F.inv(r0.back());
  g = scale(F, r0, inv);
  s = scale(F, s0, inv);
  t = scale(F, t0, inv);
}

namespace {

// Squarefree decomposition of a monic polynomial over F_p.
std::vector<std::pair<ZpPoly, int>> squarefree_decomposition(const Zp& F, const ZpPoly& f) {
  std::vector<std::pair<ZpPoly, int>> out;
  ZpPoly c = gcd(F, f, derivative(F, f));
  ZpPoly w = quot(F, f, c);
  int i = 1;
  while (degree(w) > 0) {
    ZpPoly y = gcd(F, w, c);
    ZpPoly z = quot(F, w, y);
    if (degree(z) > 0) out.emplace_back(monic(F, z), i);
    ++i;
    w = std::move(y);
    c = quot(F, c, w);
  }
  if (degree(c) > 0) {
    // c is a p-th power: take the p-th root coefficientwise.
    ZpPoly root;
    for (std::size_t k = 0; k < c.size(); k += F.p()) root.push_back(c[k]);
    const int p = static_cast<int>(F.p());
    for (auto& [g, m] : squarefree_decomposition(F, monic(F, root))) out.emplace_back(g, m * p);
  }
  return out;
}

// Splits a squarefree monic f into the products of its irreducible
// factors of each degree.
std::vector<std::pair<ZpPoly, int>> distinct_degree(const Zp& F, ZpPoly f) {
  std::vector<std::pair<ZpPoly, int>> out;
  const ZpPoly x{0, 1};
  ZpPoly h = mod(F, x, f);
  int d = 0;
  while (degree(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(F, h, Integer(static_cast<unsigned long>(F.p())), f);
    ZpPoly g = gcd(F, f, sub(F, h, x));
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = quot(F, f, g);
      h = mod(F, h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(monic(F, f), degree(f));
  return out;
}

void equal_degree(const Zp& F, const ZpPoly& f, int d, std::mt19937_64& rng,
                  std::vector<ZpPoly>& out) {
  if (degree(f) == d) {
    out.push_back(monic(F, f));
    return;
  }
  const int n = degree(f);
  std::uniform_int_distribution<u64> coef(0, F.p() - 1);
  while (true) {
    ZpPoly a(static_cast<std::size_t>(n));
    for (auto& v : a) v = coef(rng);
    trim(a);
    if (degree(a) < 1) continue;
    ZpPoly b;
    if (F.p() == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      ZpPoly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = mod(F, mul(F, t, t), f);
        acc = add(F, acc, t);
      }
      b = acc;
    } else {
      Integer e;
      mpz_ui_pow_ui(e.get_mpz_t(), F.p(), static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = sub(F, powmod(F, a, e, f), ZpPoly{1});
    }
    ZpPoly g = gcd(F, f, b);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, quot(F, f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<ZpPoly, int>> factor_monic(const Zp& F, const ZpPoly& f) {
  std::vector<std::pair<ZpPoly, int>> out;
  if (degree(f) < 1) return out;
  std::mt19937_64 rng(0x5eed);
  for (const auto& [part, mult] : squarefree_decomposition(F, f)) {
    for (const auto& [block, d] : distinct_degree(F, part)) {
      std::vector<ZpPoly> pieces;
      equal_degree(F, block, d, rng, pieces);
      for (auto& g : pieces) out.emplace_back(std::move(g), mult);
    }
  }
  return out;
}

}  // namespace tf::detail
