#include "tracefield/polynomial.hpp"

#include <sstream>

#include "tracefield/errors.hpp"

namespace tf {

RatPoly to_rational(const IntPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

Integer content(const IntPoly& f) {
  Integer g = 0;
  for (const auto& v : f.coeffs()) g = gcd(g, v);
  if (!f.is_zero() && f.lc() < 0) g = -g;
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return {};
  Integer g = content(f);
  std::vector<Integer> c;
  for (const auto& v : f.coeffs()) c.emplace_back(v / g);
  return IntPoly(std::move(c));
}

IntPoly primitive_part(const RatPoly& f) {
  if (f.is_zero()) return {};
  Integer den = 1;
  for (const auto& v : f.coeffs()) den = lcm(den, v.get_den());
  std::vector<Integer> c;
  for (const auto& v : f.coeffs()) c.emplace_back(v.get_num() * (den / v.get_den()));
  return primitive_part(IntPoly(std::move(c)));
}

RatDivMod divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational inv_lc = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    const Rational coef = r[static_cast<std::size_t>(i)] * inv_lc;
    if (coef == 0) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= coef * b[j];
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).remainder; }

RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  return f * Rational(1 / f.lc());
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1), Integer(0));
  for (int i = a.degree(); i >= db; --i) {
    const Integer& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) return std::nullopt;
    const Integer coef = top / b.lc();
    q[static_cast<std::size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= coef * b[j];
  }
  for (int i = 0; i < db; ++i)
    if (r[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.degree() <= 0) return primitive_part(f);
  RatPoly rf = to_rational(f);
  RatPoly g = gcd(rf, rf.derivative());
  return primitive_part(divmod(rf, g).quotient);
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() <= 0) return true;
  RatPoly rf = to_rational(f);
  return gcd(rf, rf.derivative()).degree() == 0;
}

Rational resultant(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  // Res(a, b) via the Euclidean recurrence
  // Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r), r = a mod b.
  RatPoly x = a, y = b;
  Rational acc = 1;
  while (true) {
    const int m = x.degree(), n = y.degree();
    if (n == 0) {
      Rational p = 1;
      for (int i = 0; i < m; ++i) p *= y.lc();
      return acc * p;
    }
    RatPoly r = x % y;
    if (r.is_zero()) return 0;
    if ((m * n) % 2 == 1) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc *= y.lc();
    x = std::move(y);
    y = std::move(r);
  }
}

Integer poly_discriminant(const IntPoly& f) {
  if (f.degree() < 1) throw InputError("discriminant of a constant polynomial");
  const int n = f.degree();
  if (n == 1) return 1;
  RatPoly rf = to_rational(f);
  Rational d = resultant(rf, rf.derivative()) / Rational(f.lc());
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  if (!is_integral(d)) throw InternalError("non-integral discriminant");
  return d.get_num();
}

namespace {

int sign_changes(const std::vector<int>& s) {
  int changes = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<RatPoly> sturm_sequence(const RatPoly& f) {
  std::vector<RatPoly> seq;
  seq.push_back(f);
  seq.push_back(f.derivative());
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    RatPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int changes_at(const std::vector<RatPoly>& seq, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    s.push_back(sgn(p.eval(x)));
  }
  return sign_changes(s);
}

}  // namespace

int count_real_roots(const IntPoly& f) {
  if (f.degree() < 1) return 0;
  const auto seq = sturm_sequence(to_rational(f));
  std::vector<int> at_neg, at_pos;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    const int s = sgn(p.lc());
    at_pos.push_back(s);
    at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

int count_real_roots(const RatPoly& f, const Rational& a, const Rational& b) {
  if (f.degree() < 1 || b < a) return 0;
  const auto seq = sturm_sequence(f);
  int n = changes_at(seq, a) - changes_at(seq, b);
  if (f.eval(a) == 0) ++n;
  return n;
}

namespace {

template <class T>
std::string poly_string(const Poly<T>& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    T c = f[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = (c == 1);
    if (!unit || i == 0) out << to_string(c);
    if (i >= 1) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

}  // namespace

std::string to_string(const IntPoly& f, const std::string& var) { return poly_string(f, var); }
std::string to_string(const RatPoly& f, const std::string& var) { return poly_string(f, var); }

std::vector<std::string> coefficient_strings(const RatPoly& f) {
  std::vector<std::string> out;
  for (const auto& c : f.coeffs()) out.push_back(to_string(c));
  return out;
}

}  // namespace tf
