#include "tracefield/matrix.hpp"

#include <utility>

namespace tf {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

bool is_integral(const RationalMatrix& m) {
  for (const auto& v : m.data())
    if (v.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RationalMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InternalError("expected an integral matrix");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Rational inv = 1 / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

int rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return static_cast<int>(rref(a).size());
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw DomainError("singular matrix");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RationalMatrix kernel(const RationalMatrix& m) {
  RationalMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return RationalMatrix(0, m.cols());
  return RationalMatrix::from_rows(basis);
}

std::optional<std::vector<Rational>> solve_left(const RationalMatrix& m, const std::vector<Rational>& b) {
  // x m = b  <=>  m^T x^T = b^T.
  const RationalMatrix mt = m.transpose();
  RationalMatrix aug(mt.rows(), mt.cols() + 1);
  for (std::size_t i = 0; i < mt.rows(); ++i) {
    for (std::size_t j = 0; j < mt.cols(); ++j) aug(i, j) = mt(i, j);
    aug(i, mt.cols()) = b[i];
  }
  auto pivots = rref(aug);
  std::vector<Rational> x(mt.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == mt.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, mt.cols());
  }
  return x;
}

namespace {

void row_combine(IntMatrix& m, std::size_t r, std::size_t i, const Integer& a, const Integer& b,
                 const Integer& c, const Integer& d) {
  // (row_r, row_i) <- (a row_r + b row_i, c row_r + d row_i)
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(r, j), y = m(i, j);
    m(r, j) = a * x + b * y;
    m(i, j) = c * x + d * y;
  }
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix H = m;
  IntMatrix U = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (std::size_t i = r + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0) continue;
      const Integer a = H(r, c), b = H(i, c);
      const auto eg = xgcd(a, b);
      const Integer ra = a / eg.g, rb = b / eg.g;
      row_combine(H, r, i, eg.s, eg.t, -rb, ra);
      row_combine(U, r, i, eg.s, eg.t, -rb, ra);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      for (std::size_t j = 0; j < H.cols(); ++j) H(r, j) = -H(r, j);
      for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const Integer q = floor_div(H(k, c), H(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < H.cols(); ++j) H(k, j) -= q * H(r, j);
      for (std::size_t j = 0; j < U.cols(); ++j) U(k, j) -= q * U(r, j);
    }
    ++r;
  }
  return {std::move(H), std::move(U)};
}

RatPoly min_poly_of_matrix(const RationalMatrix& m) {
  if (!m.is_square()) throw InputError("minimal polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return RatPoly{Rational(1)};
  const std::size_t len = n * n;
  // Echelon rows of flattened powers, each with its expression in the powers.
  struct Row {
    std::vector<Rational> v;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  RationalMatrix power = RationalMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Rational> v = power.data();
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    for (const auto& row : basis) {
      if (v[row.pivot] == 0) continue;
      const Rational f = v[row.pivot] / row.v[row.pivot];
      for (std::size_t j = 0; j < len; ++j)
        if (row.v[j] != 0) v[j] -= f * row.v[j];
      for (std::size_t j = 0; j < row.combo.size(); ++j) combo[j] -= f * row.combo[j];
    }
    std::size_t pivot = 0;
    while (pivot < len && v[pivot] == 0) ++pivot;
    if (pivot == len) return RatPoly(std::move(combo));
    basis.push_back({std::move(v), std::move(combo), pivot});
    power = power * m;
  }
  throw InternalError("minimal polynomial exceeds matrix size");
}

RationalMatrix evaluate(const RatPoly& p, const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix acc(n, n);
  for (int i = p.degree(); i >= 0; --i) acc = acc * m + p[i] * RationalMatrix::identity(n);
  return acc;
}

std::vector<std::vector<std::string>> to_strings(const RationalMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

std::vector<std::vector<std::string>> to_strings(const IntMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

}  // namespace tf
