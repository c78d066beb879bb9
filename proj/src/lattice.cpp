#include "tracefield/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tracefield/errors.hpp"

namespace tf {

std::string to_string(LatticeOrigin o) {
  switch (o) {
    case LatticeOrigin::FullOrder: return "full-order";
    case LatticeOrigin::TraceZero: return "trace-zero";
    case LatticeOrigin::Perp: return "perp";
    case LatticeOrigin::Generic: return "generic";
  }
  return "?";
}

std::string to_string(UnitSign s) { return s == UnitSign::PlusOne ? "+1" : "-1"; }

TraceLattice TraceLattice::generic(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  if (gram.rows() > 0 && determinant(gram) == 0) throw InputError("Gram matrix is singular");
  TraceLattice L;
  L.gram = gram;
  return L;
}

TraceLattice gram_of_order(const MaximalOrder& O) {
  TraceLattice L;
  L.gram = O.gram();
  L.origin = LatticeOrigin::FullOrder;
  L.unit_coords = O.unit_coords();
  L.basis = IntMatrix::identity(static_cast<std::size_t>(O.degree()));
  return L;
}

RationalMatrix dual_basis(const MaximalOrder& O) { return inverse(to_rational(O.gram())); }

namespace {

// Integer row vectors x with x . t = 0, as the rows of a canonical basis.
IntMatrix integer_kernel(const std::vector<Integer>& t) {
  const std::size_t n = t.size();
  IntMatrix col(n, 1);
  for (std::size_t i = 0; i < n; ++i) col(i, 0) = t[i];
  auto hr = hermite_normal_form(col);
  std::size_t first_zero = 0;
  while (first_zero < n && hr.H(first_zero, 0) != 0) ++first_zero;
  IntMatrix K(n - first_zero, n);
  for (std::size_t r = first_zero; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) K(r - first_zero, c) = hr.U(r, c);
  if (K.rows() == 0) return K;
  return hermite_normal_form(K).H;
}

IntMatrix sub_gram(const IntMatrix& B, const IntMatrix& G) { return B * G * B.transpose(); }

std::vector<Integer> trace_vector(const MaximalOrder& O) {
  return O.gram() * O.unit_coords();
}

}  // namespace

TraceLattice trace_zero_lattice(const MaximalOrder& O) {
  TraceLattice L;
  L.origin = LatticeOrigin::TraceZero;
  L.basis = integer_kernel(trace_vector(O));
  L.gram = sub_gram(L.basis, O.gram());
  return L;
}

TraceLattice perp_lattice(const MaximalOrder& O) {
  const std::size_t n = static_cast<std::size_t>(O.degree());
  IntMatrix gens(n + 1, n);
  for (std::size_t c = 0; c < n; ++c) gens(0, c) = O.unit_coords()[c];
  for (std::size_t i = 0; i < n; ++i) gens(i + 1, i) = static_cast<long>(n);
  IntMatrix H = hermite_normal_form(gens).H;
  IntMatrix B(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) B(r, c) = H(r, c);
  auto k = integer_kernel(B * trace_vector(O));
  TraceLattice L;
  L.origin = LatticeOrigin::Perp;
  L.basis = k.rows() == 0 ? IntMatrix(0, n) : hermite_normal_form(k * B).H;
  L.gram = sub_gram(L.basis, O.gram());
  return L;
}

bool is_positive_definite(const IntMatrix& g) {
  if (!g.is_symmetric()) return false;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = g(i, j);
    if (determinant(m) <= 0) return false;
  }
  return true;
}

namespace {

void require_pd(const IntMatrix& g) {
  if (!is_positive_definite(g)) throw UnsupportedInput("lattice is not positive definite");
}

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

// Gram-Schmidt data of a Gram matrix: mu (strictly lower part) and the
// squared norms B of the orthogonalized vectors.
void gso(const IntMatrix& g, RationalMatrix& mu, std::vector<Rational>& B) {
  const std::size_t n = g.rows();
  mu = RationalMatrix(n, n);
  B.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = Rational(g(i, j));
      for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * B[l];
      mu(i, j) = s / B[j];
    }
    Rational s = Rational(g(i, i));
    for (std::size_t l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * B[l];
    B[i] = s;
  }
}

}  // namespace

IntMatrix lll_transform(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix P = IntMatrix::identity(n);
  if (n <= 1) return P;
  require_pd(gram);
  const Rational delta(3, 4);
  auto current = [&] { return P.transpose() * gram * P; };
  IntMatrix G = current();
  RationalMatrix mu;
  std::vector<Rational> B;
  std::size_t k = 1;
  while (k < n) {
    gso(G, mu, B);
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_nearest(mu(k, jj));
      if (q == 0) continue;
      for (std::size_t r = 0; r < n; ++r) P(r, k) -= q * P(r, jj);
      G = current();
      gso(G, mu, B);
    }
    if (B[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
      for (std::size_t r = 0; r < n; ++r) std::swap(P(r, k), P(r, k - 1));
      G = current();
      k = std::max<std::size_t>(1, k - 1);
    } else {
      ++k;
    }
  }
  return P;
}

namespace {

bool vec_greater(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Integer quad(const IntMatrix& g, const std::vector<Integer>& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += g(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

std::vector<ShortVector> enumerate_short(const IntMatrix& g, const Rational& bound) {
  const std::size_t n = g.rows();
  std::vector<ShortVector> out;
  if (n == 0 || bound <= 0) return out;
  // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  RationalMatrix q = to_rational(g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  std::vector<Integer> x(n, Integer(0));
  std::vector<Rational> T(n + 1);
  T[n] = bound;
  // Depth-first over coordinates n-1 .. 0.
  struct Level {
    Integer cur, hi;
    Rational centre;
  };
  std::vector<Level> lv(n);
  auto open = [&](std::size_t i) {
    Rational u = 0;
    for (std::size_t j = i + 1; j < n; ++j) u += q(i, j) * x[j];
    lv[i].centre = -u;
    double s = std::sqrt(std::max(0.0, Rational(T[i + 1] / q(i, i)).get_d()));
    double c = lv[i].centre.get_d();
    lv[i].cur = Integer(std::floor(c - s)) - 1;
    lv[i].hi = Integer(std::ceil(c + s)) + 1;
  };
  std::size_t i = n - 1;
  open(i);
  while (true) {
    if (lv[i].cur > lv[i].hi) {
      if (i == n - 1) break;
      ++i;
      ++lv[i].cur;
      continue;
    }
    x[i] = lv[i].cur;
    Rational d = Rational(x[i]) - lv[i].centre;
    Rational used = q(i, i) * d * d;
    if (used > T[i + 1]) {
      ++lv[i].cur;
      continue;
    }
    T[i] = T[i + 1] - used;
    if (i == 0) {
      bool nonzero = false, positive = false;
      for (const auto& v : x)
        if (v != 0) {
          nonzero = true;
          positive = v > 0;
          break;
        }
      if (nonzero && positive) {
        Integer nrm = quad(g, x);
        if (nrm <= bound) out.push_back({x, nrm});
      }
      ++lv[0].cur;
      continue;
    }
    --i;
    open(i);
  }
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return vec_greater(a.v, b.v);
  });
  return out;
}

}  // namespace

std::vector<ShortVector> short_vectors(const TraceLattice& L, const Rational& bound) {
  require_pd(L.gram);
  return enumerate_short(L.gram, bound);
}

bool is_isometry(const IntMatrix& T, const IntMatrix& g_target, const IntMatrix& g_source) {
  if (T.rows() != g_target.rows() || T.cols() != g_source.rows()) return false;
  return T.transpose() * g_target * T == g_source;
}

namespace {

std::vector<Integer> flatten(const IntMatrix& m) { return m.data(); }

bool matrix_greater(const IntMatrix& a, const IntMatrix& b) { return vec_greater(a.data(), b.data()); }

// Backtracking search for T with T^t GA T = GB; columns of T are
// images of the basis vectors of GB inside the lattice of GA.
class IsometrySearch {
 public:
  IsometrySearch(const IntMatrix& ga, const IntMatrix& gb, SearchBudget budget)
      : GA(ga), GB(gb), n(ga.rows()), budget_(budget) {}

  std::vector<IntMatrix> run(bool find_all) {
    find_all_ = find_all;
    Integer bound = 0;
    for (std::size_t j = 0; j < n; ++j) bound = std::max(bound, GB(j, j));
    auto SA = expand(enumerate_short(GA, bound));
    auto SB = expand(enumerate_short(GB, bound));
    if (SA.size() != SB.size()) return {};
    cand_.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Integer> ej(n, Integer(0));
      ej[j] = 1;
      auto fpB = fingerprint(GB, SB, ej, j);
      for (const auto& x : SA) {
        tick();
        if (quad(GA, x) != GB(j, j)) continue;
        if (fingerprint(GA, SA, x, j) != fpB) continue;
        cand_[j].push_back({x, GA * x});
      }
      if (cand_[j].empty()) return {};
    }
    order_.resize(n);
    for (std::size_t j = 0; j < n; ++j) order_[j] = j;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return cand_[a].size() < cand_[b].size(); });
    chosen_.assign(n, nullptr);
    recurse(0);
    return std::move(found_);
  }

 private:
  struct Cand {
    std::vector<Integer> x, gx;
  };

  static std::vector<std::vector<Integer>> expand(const std::vector<ShortVector>& s) {
    std::vector<std::vector<Integer>> out;
    for (const auto& v : s) {
      out.push_back(v.v);
      auto neg = v.v;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
    return out;
  }

  // For each k: number of vectors y with y^t G y = GB_kk and x^t G y = GB_jk.
  std::vector<std::size_t> fingerprint(const IntMatrix& G, const std::vector<std::vector<Integer>>& S,
                                       const std::vector<Integer>& x, std::size_t j) {
    std::vector<std::size_t> fp(n, 0);
    auto gx = G * x;
    for (const auto& y : S) {
      tick();
      Integer ny = quad(G, y);
      Integer ip = 0;
      for (std::size_t i = 0; i < n; ++i) ip += gx[i] * y[i];
      for (std::size_t k = 0; k < n; ++k)
        if (ny == GB(k, k) && ip == GB(j, k)) ++fp[k];
    }
    return fp;
  }

  void tick() {
    if (++nodes_ > budget_.nodes)
      throw BudgetError("lattice search exceeded its node budget of " + std::to_string(budget_.nodes));
  }

  void recurse(std::size_t depth) {
    if (!find_all_ && !found_.empty()) return;
    if (depth == n) {
      IntMatrix T(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) T(i, j) = chosen_[j]->x[i];
      if (abs(determinant(T)) == 1) found_.push_back(std::move(T));
      return;
    }
    const std::size_t j = order_[depth];
    for (const auto& c : cand_[j]) {
      tick();
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t i = order_[d];
        Integer ip = 0;
        for (std::size_t r = 0; r < n; ++r) ip += c.gx[r] * chosen_[i]->x[r];
        ok = ip == GB(i, j);
      }
      if (!ok) continue;
      chosen_[j] = &c;
      recurse(depth + 1);
      if (!find_all_ && !found_.empty()) return;
    }
    chosen_[j] = nullptr;
  }

  const IntMatrix& GA;
  const IntMatrix& GB;
  std::size_t n;
  SearchBudget budget_;
  std::uint64_t nodes_ = 0;
  bool find_all_ = false;
  std::vector<std::vector<Cand>> cand_;
  std::vector<std::size_t> order_;
  std::vector<const Cand*> chosen_;
  std::vector<IntMatrix> found_;
};

IntMatrix int_inverse(const IntMatrix& m) { return to_integer(inverse(to_rational(m))); }

std::multiset<Integer> norm_multiset(const IntMatrix& g, const Integer& bound) {
  std::multiset<Integer> s;
  for (const auto& v : enumerate_short(g, bound)) s.insert(v.norm);
  return s;
}

}  // namespace

AutGroupResult automorphism_group(const TraceLattice& L, SearchBudget budget) {
  require_pd(L.gram);
  const std::size_t n = L.rank();
  AutGroupResult res;
  if (n == 0) {
    res.order = 1;
    res.elements.push_back(IntMatrix(0, 0));
    return res;
  }
  IntMatrix P = lll_transform(L.gram);
  IntMatrix Pinv = int_inverse(P);
  IntMatrix Gr = P.transpose() * L.gram * P;
  IsometrySearch search(Gr, Gr, budget);
  for (auto& Tr : search.run(true)) {
    IntMatrix T = P * Tr * Pinv;
    if (!is_isometry(T, L.gram, L.gram)) throw InternalError("automorphism search produced a non-automorphism");
    res.elements.push_back(std::move(T));
  }
  std::sort(res.elements.begin(), res.elements.end(), matrix_greater);
  res.order = static_cast<unsigned long>(res.elements.size());

  // Greedy generators: -I first, then the largest elements not yet generated.
  const IntMatrix I = IntMatrix::identity(n);
  const IntMatrix minusI = Integer(-1) * I;
  std::set<std::vector<Integer>> group{flatten(I)};
  std::vector<IntMatrix> members{I};
  auto add_generator = [&](const IntMatrix& g) {
    res.generators.push_back(g);
    // Closure under multiplication by all generators.
    for (std::size_t idx = 0; idx < members.size(); ++idx)
      for (const auto& h : res.generators) {
        IntMatrix prod = members[idx] * h;
        if (group.insert(flatten(prod)).second) members.push_back(std::move(prod));
      }
  };
  if (std::find(res.elements.begin(), res.elements.end(), minusI) != res.elements.end() && n > 0)
    add_generator(minusI);
  for (const auto& e : res.elements) {
    if (group.size() == res.elements.size()) break;
    if (!group.count(flatten(e))) add_generator(e);
  }
  if (group.size() != res.elements.size()) throw InternalError("automorphism elements do not form a group");
  return res;
}

IsometryResult isometry(const TraceLattice& L1, const TraceLattice& L2, SearchBudget budget) {
  require_pd(L1.gram);
  require_pd(L2.gram);
  IsometryResult r;
  if (L1.rank() != L2.rank()) {
    r.certificate = "rank mismatch";
    return r;
  }
  const std::size_t n = L1.rank();
  if (L1.gram == L2.gram) {
    r.found = true;
    r.map = IntMatrix::identity(n);
    return r;
  }
  Integer d1 = determinant(L1.gram), d2 = determinant(L2.gram);
  if (d1 != d2) {
    r.certificate = "determinant mismatch: " + to_string(d1) + " vs " + to_string(d2);
    return r;
  }
  IntMatrix P1 = lll_transform(L1.gram), P2 = lll_transform(L2.gram);
  IntMatrix G1 = P1.transpose() * L1.gram * P1, G2 = P2.transpose() * L2.gram * P2;
  Integer bound = 0;
  for (std::size_t j = 0; j < n; ++j) bound = std::max({bound, G1(j, j), G2(j, j)});
  if (norm_multiset(G1, bound) != norm_multiset(G2, bound)) {
    r.certificate = "short-vector norm multisets differ up to " + to_string(bound);
    return r;
  }
  IsometrySearch search(G1, G2, budget);
  auto found = search.run(false);
  if (found.empty()) {
    r.certificate = "exhaustive search found no isometry";
    return r;
  }
  IntMatrix T = P1 * found.front() * int_inverse(P2);
  if (!is_isometry(T, L1.gram, L2.gram)) throw InternalError("isometry search produced an invalid map");
  r.found = true;
  r.map = std::move(T);
  return r;
}

UnitSign check_unit_image(const IntMatrix& T, const TraceLattice& source, const TraceLattice& target) {
  if (!source.unit_coords || !target.unit_coords)
    throw InputError("check_unit_image needs full-order lattices");
  auto img = T * *source.unit_coords;
  if (img == *target.unit_coords) return UnitSign::PlusOne;
  auto neg = *target.unit_coords;
  for (auto& v : neg) v = -v;
  if (img == neg) return UnitSign::MinusOne;
  std::string s;
  for (const auto& v : img) s += (s.empty() ? "" : ",") + to_string(v);
  throw PropertyViolation("isometry maps 1 to (" + s + "), which is not +-1");
}

std::optional<IntMatrix> restrict_isometry(const IntMatrix& T, const TraceLattice& sub_source,
                                           const TraceLattice& sub_target) {
  const std::size_t r = sub_source.basis.rows();
  if (sub_target.basis.rows() != r) return std::nullopt;
  if (r == 0) return IntMatrix(0, 0);
  RationalMatrix Bt = to_rational(sub_target.basis);
  IntMatrix out(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    auto img = T * sub_source.basis.row(j);
    std::vector<Rational> imq(img.begin(), img.end());
    auto c = solve_left(Bt, imq);
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) {
      if (!is_integral((*c)[i])) return std::nullopt;
      out(i, j) = (*c)[i].get_num();
    }
  }
  if (abs(determinant(out)) != 1) return std::nullopt;
  return out;
}

bool shape_similar(const TraceLattice& L1, const TraceLattice& L2, SearchBudget budget) {
  const std::size_t r = L1.rank();
  if (r == 0 || L2.rank() != r) throw InputError("shape_similar needs two lattices of equal positive rank");
  require_pd(L1.gram);
  require_pd(L2.gram);
  Rational ratio(determinant(L1.gram), determinant(L2.gram));
  ratio.canonicalize();
  Integer a, b;
  if (!mpz_root(a.get_mpz_t(), ratio.get_num_mpz_t(), r)) return false;
  if (!mpz_root(b.get_mpz_t(), ratio.get_den_mpz_t(), r)) return false;
  // lambda = a / b: look for T^t (b G1) T = a G2.
  return isometry(TraceLattice::generic(b * L1.gram), TraceLattice::generic(a * L2.gram), budget).found;
}

}  // namespace tf
