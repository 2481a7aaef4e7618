#include "qtwist/connect.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qtwist/divpow.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"

namespace qtwist {

namespace {

XPoly x_power(int e) { return XPoly::monomial(LocScalar(1), e); }

}  // namespace

ConnModule ConnModule::trivial(int p, int m, Side side, int rank) {
  ConnModule mod{p, m, side, rank, Matrix(rank, Vec(rank))};
  mod.validate();
  return mod;
}

void ConnModule::validate() const {
  validate_prime(p);
  if (m < 0 || m > 3) throw DomainError("ConnModule: level must be in 0..3");
  if (rank < 0) throw DomainError("ConnModule: negative rank");
  if (static_cast<int>(theta.size()) != rank) throw DomainError("ConnModule: matrix has wrong row count");
  for (const auto& row : theta)
    if (static_cast<int>(row.size()) != rank) throw DomainError("ConnModule: matrix is not square");
}

Vec theta_apply(const ConnModule& mod, const Vec& v) {
  mod.validate();
  if (static_cast<int>(v.size()) != mod.rank)
    throw DomainError("theta_apply: vector length " + std::to_string(v.size()) + " != rank " +
                      std::to_string(mod.rank));
  const int k = ipow(mod.p, mod.m);
  const LocScalar z(q_int(k));
  Vec out(mod.rank);
  for (int j = 0; j < mod.rank; ++j) {
    if (v[j].is_zero()) continue;
    out[j] += xpoly::q_derivative(v[j], k).scaled(z);
    const XPoly s = xpoly::sigma_power(v[j], k);
    for (int i = 0; i < mod.rank; ++i)
      if (!mod.theta[i][j].is_zero()) out[i] += s * mod.theta[i][j];
  }
  return out;
}

Vec rel_frobenius(const Vec& v, int p) {
  Vec out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(xpoly::substitute_x_power(f, p));
  return out;
}

Matrix rel_frobenius(const Matrix& a, int p) {
  Matrix out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(rel_frobenius(row, p));
  return out;
}

ConnModule level_raise(const ConnModule& mod) {
  mod.validate();
  if (mod.side != Side::APrime) throw DomainError("level_raise: expected a module over A'");
  if (mod.m < 1) throw DomainError("level_raise: level must be at least 1");
  ConnModule out{mod.p, mod.m - 1, Side::A, mod.rank, rel_frobenius(mod.theta, mod.p)};
  const XPoly lift = x_power(mod.p - 1);
  for (auto& row : out.theta)
    for (auto& f : row) f = f * lift;
  return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, Vec(m));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw DomainError("mat_mul: shape mismatch");
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

bool is_horizontal(const Matrix& u, const ConnModule& m1, const ConnModule& m2) {
  m1.validate();
  m2.validate();
  if (m1.p != m2.p || m1.m != m2.m || m1.side != m2.side)
    throw DomainError("is_horizontal: modules of different type");
  if (static_cast<int>(u.size()) != m2.rank) throw DomainError("is_horizontal: shape mismatch");
  // column j of u is the image of e_j; theta2 of it must equal u theta1(e_j)
  const Matrix rhs = mat_mul(u, m1.theta);
  for (int j = 0; j < m1.rank; ++j) {
    Vec col(m2.rank);
    for (int i = 0; i < m2.rank; ++i) {
      if (static_cast<int>(u[i].size()) != m1.rank) throw DomainError("is_horizontal: shape mismatch");
      col[i] = u[i][j];
    }
    const Vec lhs = theta_apply(m2, col);
    for (int i = 0; i < m2.rank; ++i)
      if (lhs[i] != rhs[i][j]) return false;
  }
  return true;
}

CommuteSides commute_check(int p, int m, const CoordPoly& f) {
  validate_prime(p);
  if (m < 1) throw DomainError("commute_check: level must be at least 1");
  if (f.side() != Side::APrime) throw DomainError("commute_check: expected an element of A'");
  const int k = ipow(p, m);
  const int k0 = ipow(p, m - 1);
  const XPoly& g = f.poly();
  const XPoly fg = xpoly::substitute_x_power(g, p);
  CommuteSides s;
  s.sigma_lhs = xpoly::substitute_x_power(xpoly::sigma_power(g, k), p);
  s.sigma_rhs = xpoly::sigma_power(fg, k0);
  s.deriv_lhs = (x_power(p - 1) * xpoly::substitute_x_power(xpoly::q_derivative(g, k), p))
                    .scaled(LocScalar(q_int(p, k0)));
  s.deriv_rhs = xpoly::q_derivative(fg, k0);
  return s;
}

DescentResult descent_solve(const ConnModule& mod) {
  mod.validate();
  if (mod.side != Side::A) throw DomainError("descent_solve: expected a module over A");
  if (mod.m + 1 > 3) throw DomainError("descent_solve: target level out of range");
  const int p = mod.p;
  ConnModule out{p, mod.m + 1, Side::APrime, mod.rank, Matrix(mod.rank, Vec(mod.rank))};
  for (int i = 0; i < mod.rank; ++i) {
    for (int j = 0; j < mod.rank; ++j) {
      const XPoly& f = mod.theta[i][j];
      std::vector<LocScalar> c;
      for (int e = 0; e <= f.degree(); ++e) {
        const LocScalar& fe = f.coeffs()[e];
        if (fe.is_zero()) continue;
        if (e < p - 1 || (e - (p - 1)) % p != 0) {
          std::ostringstream why;
          why << "x^" << e << " has nonzero coefficient; exponents must be p-1 mod p";
          return NoSolution{i, j, why.str()};
        }
        const size_t k = static_cast<size_t>((e - (p - 1)) / p);
        if (c.size() <= k) c.resize(k + 1);
        c[k] = fe;
      }
      out.theta[i][j] = XPoly(std::move(c));
    }
  }
  return out;
}

bool in_adic_ideal(const LocScalar& z, int p, int n) {
  if (n <= 0 || z.is_zero()) return true;
  const QPoly num = z.num().shift_to_t();
  for (int j = 0; j < n && j <= num.degree(); ++j) {
    const Integer& a = num.coeffs()[j];
    if (a != 0 && p_valuation(a, p) < n - j) return false;
  }
  return true;
}

QuasiNilpotence quasi_nilpotence_check(const ConnModule& mod, const TruncationSpec& t, int k_cap) {
  mod.validate();
  if (t.N < 1 || t.d < 0) throw DomainError("quasi_nilpotence_check: need N >= 1 and d >= 0");
  QuasiNilpotence res;
  res.nilpotent = true;
  if (mod.rank == 0) return res;
  const TruncRing ring(mod.p, t.N);
  for (int i = 0; i < mod.rank; ++i) {
    for (int j = 0; j <= t.d; ++j) {
      TruncSection s(mod.rank);
      s[i].assign(j + 1, ring.zero());
      s[i][j] = ring.from_integer(1);
      int k = 0;
      auto vanishes = [&] {
        for (const auto& row : s)
          for (const auto& c : row)
            if (!ring.is_zero(c)) return false;
        return true;
      };
      while (!vanishes() && k < k_cap) {
        s = theta_apply_truncated(mod, ring, s);
        ++k;
      }
      if (!vanishes()) {
        res.nilpotent = false;
        res.detail = "x^" + std::to_string(j) + " e_" + std::to_string(i) + " survives " +
                     std::to_string(k_cap) + " iterations";
        return res;
      }
      res.k = std::max(res.k, k);
    }
  }
  return res;
}

TruncRing::TruncRing(int p, int n) : p_(p), n_(n) {
  validate_prime(p);
  if (n < 1) throw DomainError("TruncRing: order must be positive");
  size_ = 1;
  for (int b = 0; b < n; ++b) {
    long long m = 1;
    for (int e = 0; e < n - b; ++e) m *= p;
    mod_.push_back(m);
    size_ *= m;
    if (size_ > kSizeCap)
      throw ResourceCapError("TruncRing: |Z[t]/(p,t)^N| exceeds " + std::to_string(kSizeCap));
  }
}

TruncRing::Elem TruncRing::reduce(Elem a) const {
  a.resize(n_, 0);
  for (int b = 0; b < n_; ++b) {
    a[b] %= mod_[b];
    if (a[b] < 0) a[b] += mod_[b];
  }
  return a;
}

TruncRing::Elem TruncRing::from_integer(const Integer& c) const {
  Elem a(n_, 0);
  a[0] = static_cast<long long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(mod_[0])));
  return a;
}

TruncRing::Elem TruncRing::from_poly(const QPoly& f) const {
  const QPoly ft = f.shift_to_t();
  Elem a(n_, 0);
  for (int b = 0; b < n_ && b <= ft.degree(); ++b) {
    a[b] = static_cast<long long>(
        mpz_fdiv_ui(ft.coeffs()[b].get_mpz_t(), static_cast<unsigned long>(mod_[b])));
  }
  return a;
}

TruncRing::Elem TruncRing::from_scalar(const LocScalar& z) const {
  const Elem num = from_poly(z.num());
  if (z.den().is_one()) return num;
  const Elem den = from_poly(z.den());
  if (den[0] % p_ == 0) throw DomainError("TruncRing: denominator is not a unit");
  // den = c0 (1 + m) with m nilpotent: den^-1 = c0^-1 sum_k (-m)^k
  Integer c0inv;
  const Integer c0(static_cast<long>(den[0]));
  const Integer modulus(static_cast<long>(mod_[0]));
  mpz_invert(c0inv.get_mpz_t(), c0.get_mpz_t(), modulus.get_mpz_t());
  const long long inv0 = c0inv.get_si();
  Elem m = scale(den, inv0);
  m[0] = 0;
  Elem neg_m = scale(m, -1);
  Elem series = from_integer(1);
  Elem term = from_integer(1);
  for (int k = 1; k < n_; ++k) {
    term = mul(term, neg_m);
    series = add(series, term);
  }
  return mul(num, scale(series, inv0));
}

TruncRing::Elem TruncRing::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = (a[i] + b[i]) % mod_[i];
  return r;
}

TruncRing::Elem TruncRing::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = ((a[i] - b[i]) % mod_[i] + mod_[i]) % mod_[i];
  return r;
}

TruncRing::Elem TruncRing::mul(const Elem& a, const Elem& b) const {
  Elem r(n_, 0);
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < n_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % mod_[i + j];
  }
  return r;
}

TruncRing::Elem TruncRing::scale(const Elem& a, long long c) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = ((a[i] * (c % mod_[i])) % mod_[i] + mod_[i]) % mod_[i];
  return r;
}

bool TruncRing::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
}

std::string TruncRing::to_string(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < n_; ++b) {
    if (a[b] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << a[b];
    if (b == 1) os << "*t";
    if (b > 1) os << "*t^" << b;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// theta(x^j e_i) reduced into S, memoized per (i, j).
class TruncTheta {
 public:
  TruncTheta(const ConnModule& mod, const TruncRing& ring) : mod_(mod), ring_(ring) {}

  const TruncSection& image(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Vec v(mod_.rank);
    v[i] = x_power(j);
    const Vec w = theta_apply(mod_, v);
    TruncSection s(mod_.rank);
    for (int r = 0; r < mod_.rank; ++r)
      for (int e = 0; e <= w[r].degree(); ++e) {
        if (static_cast<int>(s[r].size()) <= e) s[r].resize(e + 1, ring_.zero());
        s[r][e] = ring_.from_scalar(w[r].coeffs()[e]);
      }
    return cache_.emplace(key, std::move(s)).first->second;
  }

  TruncSection apply(const TruncSection& s) {
    TruncSection out(mod_.rank);
    for (int i = 0; i < mod_.rank && i < static_cast<int>(s.size()); ++i)
      for (int j = 0; j < static_cast<int>(s[i].size()); ++j) {
        if (ring_.is_zero(s[i][j])) continue;
        const TruncSection& img = image(i, j);
        for (int r = 0; r < mod_.rank; ++r)
          for (int e = 0; e < static_cast<int>(img[r].size()); ++e) {
            if (static_cast<int>(out[r].size()) <= e) out[r].resize(e + 1, ring_.zero());
            out[r][e] = ring_.add(out[r][e], ring_.mul(s[i][j], img[r][e]));
          }
      }
    return out;
  }

 private:
  const ConnModule& mod_;
  const TruncRing& ring_;
  std::map<std::pair<int, int>, TruncSection> cache_;
};

int valuation_ll(long long a, int p, int cap) {
  if (a == 0) return cap;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

long long inverse_mod(long long a, long long mod) {
  Integer r;
  const Integer am(static_cast<long>(a)), mm(static_cast<long>(mod));
  mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t());
  return r.get_si();
}

// Generators of {v in (Z/p^n)^cols : a v = 0}, by Smith elimination with
// minimal-valuation pivots; column operations are tracked in `basis`.
std::vector<std::vector<long long>> kernel_mod_prime_power(std::vector<std::vector<long long>> a,
                                                           int cols, int p, int n,
                                                           int* log_order) {
  long long mod = 1;
  for (int i = 0; i < n; ++i) mod *= p;
  const int rows = static_cast<int>(a.size());
  std::vector<std::vector<long long>> basis(cols, std::vector<long long>(cols, 0));
  for (int c = 0; c < cols; ++c) basis[c][c] = 1;  // basis[c] = column c of V
  auto col_axpy = [&](int dst, int src, long long f) {  // col dst -= f * col src
    f %= mod;
    for (int r = 0; r < rows; ++r) a[r][dst] = ((a[r][dst] - f * a[r][src]) % mod + mod) % mod;
    for (int r = 0; r < cols; ++r)
      basis[dst][r] = ((basis[dst][r] - f * basis[src][r]) % mod + mod) % mod;
  };
  std::vector<int> pivot_val(cols, n);
  int k = 0;
  for (; k < std::min(rows, cols); ++k) {
    int best_r = -1, best_c = -1, best_v = n;
    for (int r = k; r < rows; ++r)
      for (int c = k; c < cols; ++c) {
        const int v = valuation_ll(a[r][c], p, n);
        if (v < best_v) {
          best_v = v;
          best_r = r;
          best_c = c;
        }
      }
    if (best_r < 0) break;
    std::swap(a[k], a[best_r]);
    for (int r = 0; r < rows; ++r) std::swap(a[r][k], a[r][best_c]);
    std::swap(basis[k], basis[best_c]);
    long long pv = 1;
    for (int i = 0; i < best_v; ++i) pv *= p;
    const long long unit_inv = inverse_mod(a[k][k] / pv, mod);
    for (int c = 0; c < cols; ++c) a[k][c] = (a[k][c] * unit_inv) % mod;  // row op, pivot = p^v
    for (int r = k + 1; r < rows; ++r) {
      const long long f = a[r][k] / pv;
      if (f == 0) continue;
      for (int c = 0; c < cols; ++c) a[r][c] = ((a[r][c] - f * a[k][c]) % mod + mod) % mod;
    }
    for (int c = k + 1; c < cols; ++c) {
      const long long f = a[k][c] / pv;
      if (f != 0) col_axpy(c, k, f);
    }
    pivot_val[k] = best_v;
  }
  std::vector<std::vector<long long>> gens;
  int log = 0;
  for (int c = 0; c < cols; ++c) {
    const int v = c < k ? pivot_val[c] : 0;
    const int free_exp = c < k ? v : n;  // order of the kernel part along y_c
    log += free_exp;
    if (free_exp == 0) continue;
    long long mult = 1;
    for (int i = 0; i < n - free_exp; ++i) mult *= p;
    std::vector<long long> g(cols);
    for (int r = 0; r < cols; ++r) g[r] = (basis[c][r] * mult) % mod;
    gens.push_back(std::move(g));
  }
  *log_order = log;
  return gens;
}

}  // namespace

TruncSection theta_apply_truncated(const ConnModule& mod, const TruncRing& ring,
                                   const TruncSection& s) {
  TruncTheta th(mod, ring);
  return th.apply(s);
}

H0Result h0_truncated(const ConnModule& mod, const TruncationSpec& t) {
  mod.validate();
  if (t.N < 1 || t.d < 0) throw DomainError("h0_truncated: need N >= 1 and d >= 0");
  H0Result res{mod.p, t.N, t.d, mod.rank, {}, 0};
  if (mod.rank == 0) return res;
  const TruncRing ring(mod.p, t.N);
  TruncTheta th(mod, ring);
  const int n = t.N;
  const int p = mod.p;

  // domain generators t^b x^j e_i
  struct Gen {
    int i, j, b;
  };
  std::vector<Gen> dom;
  for (int i = 0; i < mod.rank; ++i)
    for (int j = 0; j <= t.d; ++j)
      for (int b = 0; b < n; ++b) dom.push_back({i, j, b});
  const int cols = static_cast<int>(dom.size());
  if (static_cast<long long>(cols) * cols > TruncRing::kSizeCap)
    throw ResourceCapError("h0_truncated: linear system too large");

  // codomain coordinates (r, e, c), scaled by p^c into Z/p^N
  std::map<std::tuple<int, int, int>, int> row_of;
  std::vector<std::vector<long long>> a;
  std::vector<long long> pc(n, 1);
  for (int c = 1; c < n; ++c) pc[c] = pc[c - 1] * p;
  for (int col = 0; col < cols; ++col) {
    const Gen& g = dom[col];
    TruncRing::Elem tb = ring.zero();
    tb[g.b] = 1;
    const TruncSection& img = th.image(g.i, g.j);
    for (int r = 0; r < mod.rank; ++r)
      for (int e = 0; e < static_cast<int>(img[r].size()); ++e) {
        const TruncRing::Elem v = ring.mul(tb, img[r][e]);
        for (int c = 0; c < n; ++c) {
          if (v[c] == 0) continue;
          auto key = std::make_tuple(r, e, c);
          auto it = row_of.find(key);
          if (it == row_of.end()) {
            it = row_of.emplace(key, static_cast<int>(a.size())).first;
            a.emplace_back(cols, 0);
          }
          a[it->second][col] = (v[c] * pc[c]) % ring.modulus(0);
        }
      }
  }

  int log_all = 0;
  const auto gens = kernel_mod_prime_power(a, cols, p, n, &log_all);
  int log_trivial = 0;  // generators t^b x^j e_i have order p^(N-b), not p^N
  for (const Gen& g : dom) log_trivial += g.b;
  res.log_order = log_all - log_trivial;

  for (const auto& g : gens) {
    TruncSection s(mod.rank, std::vector<TruncRing::Elem>(t.d + 1, ring.zero()));
    bool nonzero = false;
    for (int col = 0; col < cols; ++col) {
      if (g[col] == 0) continue;
      TruncRing::Elem term = ring.zero();
      term[dom[col].b] = g[col];
      term = ring.reduce(term);
      if (ring.is_zero(term)) continue;
      nonzero = true;
      auto& slot = s[dom[col].i][dom[col].j];
      slot = ring.add(slot, term);
    }
    if (nonzero) res.generators.push_back(std::move(s));
  }
  return res;
}

std::string to_string(const TruncSection& s, const TruncRing& ring) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    bool first = true;
    for (size_t j = 0; j < s[i].size(); ++j) {
      if (ring.is_zero(s[i][j])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << ring.to_string(s[i][j]) << ")";
      if (j == 1) os << "*x";
      if (j > 1) os << "*x^" << j;
    }
    if (first) os << "0";
  }
  os << ")";
  return os.str();
}

}  // namespace qtwist
