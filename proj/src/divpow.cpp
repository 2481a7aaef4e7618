#include "qtwist/divpow.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"

namespace qtwist {

void validate_prime(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw DomainError("prime p must be one of 2, 3, 5, 7 (got " + std::to_string(p) + ")");
}

namespace {

void validate_level(int m) {
  if (m < 0 || m > 3) throw DomainError("level parameter m must satisfy 0 <= m <= 3");
}

// (1 - q^k) x
XPoly linear_twist(int k) { return xpoly::monomial(QPoly(1) - QPoly::q_power(k), 1); }

}  // namespace

DPContext DPContext::level(int p, int m, Side side) {
  validate_prime(p);
  validate_level(m);
  DPContext c;
  c.p = p;
  c.m = m;
  c.q_power = ipow(p, m);
  c.twist = linear_twist(1);
  c.side = side;
  c.symbol = "omega";
  return c;
}

DPContext DPContext::divided(int p, int r, Side side) {
  validate_prime(p);
  validate_level(r);
  DPContext c;
  c.p = p;
  c.m = 0;
  c.q_power = ipow(p, r);
  c.twist = linear_twist(c.q_power);
  c.side = side;
  c.symbol = "xi";
  return c;
}

DPContext DPContext::generic(int p, int q_power, XPoly twist, Side side, std::string symbol) {
  validate_prime(p);
  if (q_power <= 0) throw DomainError("DPContext: q-power must be positive");
  DPContext c;
  c.p = p;
  c.q_power = q_power;
  c.twist = std::move(twist);
  c.side = side;
  c.symbol = std::move(symbol);
  return c;
}

DPElem::DPElem(DPContext ctx, std::map<int, XPoly> terms) : ctx_(std::move(ctx)) {
  for (auto& [n, c] : terms) add_term(n, c);
}

DPElem DPElem::basis(const DPContext& ctx, int n) {
  DPElem e(ctx);
  e.add_term(n, XPoly(LocScalar(1)));
  return e;
}

DPElem DPElem::constant(const DPContext& ctx, XPoly c) {
  DPElem e(ctx);
  e.add_term(0, c);
  return e;
}

XPoly DPElem::coeff(int n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? XPoly() : it->second;
}

void DPElem::add_term(int n, const XPoly& c) {
  if (n < 0) throw DomainError("DPElem: negative basis index");
  if (n > ctx_.max_index)
    throw DegreeCapError("divided-power index " + std::to_string(n) + " exceeds cap " +
                         std::to_string(ctx_.max_index));
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DPElem::check_algebra(const DPElem& o) const {
  if (!ctx_.same_algebra(o.ctx_)) throw DomainError("DPElem: operands live in different algebras");
}

DPElem& DPElem::operator+=(const DPElem& o) {
  check_algebra(o);
  for (const auto& [n, c] : o.terms_) add_term(n, c);
  return *this;
}

DPElem& DPElem::operator-=(const DPElem& o) {
  check_algebra(o);
  for (const auto& [n, c] : o.terms_) add_term(n, -c);
  return *this;
}

DPElem operator*(const DPElem& a, const DPElem& b) { return dp_mul(a, b); }

DPElem DPElem::operator-() const {
  DPElem r = *this;
  for (auto& [n, c] : r.terms_) c = -c;
  return r;
}

DPElem DPElem::scaled(const XPoly& c) const {
  DPElem r(ctx_);
  for (const auto& [n, v] : terms_) r.add_term(n, v * c);
  return r;
}

DPElem DPElem::pow(int e) const {
  DPElem r = one(ctx_);
  for (int i = 0; i < e; ++i) r = dp_mul(r, *this);
  return r;
}

DPElem DPElem::truncated(int n) const {
  DPElem r(ctx_);
  for (const auto& [k, c] : terms_)
    if (k <= n) r.terms_.emplace(k, c);
  return r;
}

bool operator==(const DPElem& a, const DPElem& b) {
  return a.ctx_.same_algebra(b.ctx_) && a.terms_ == b.terms_;
}

std::string DPElem::to_string() const {
  if (terms_.empty()) return "0";
  const char* var = ctx_.side == Side::A ? "x" : "x'";
  const bool omega = ctx_.symbol == "omega";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string cs = qtwist::to_string(c, var);
    if (n == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << "(" << cs << ")*";
    os << ctx_.symbol << (omega ? "{" : "[") << n << (omega ? "}" : "]");
  }
  return os.str();
}

std::vector<QPoly> twisted_power_mul(int n1, int n2, int q_power) {
  if (n1 < 0 || n2 < 0) throw DomainError("twisted_power_mul: negative index");
  const int lo = std::min(n1, n2);
  std::vector<QPoly> t(static_cast<size_t>(lo) + 1);
  for (int i = 0; i <= lo; ++i) {
    QPoly c = q_factorial(i, q_power) * q_pow(static_cast<long>(i) * (i - 1) / 2, q_power) *
              q_binomial(n1, i, q_power) * q_binomial(n2, i, q_power);
    t[i] = (i % 2 == 0) ? c : -c;
  }
  return t;
}

namespace {

std::vector<XPoly> twist_powers(const XPoly& y, int n) {
  std::vector<XPoly> ys{XPoly(LocScalar(1))};
  for (int i = 1; i <= n; ++i) ys.push_back(ys.back() * y);
  return ys;
}

}  // namespace

std::map<int, XPoly> twisted_power_mul(int n1, int n2, const DPContext& ctx) {
  auto t = twisted_power_mul(n1, n2, ctx.q_power);
  auto ys = twist_powers(ctx.twist, static_cast<int>(t.size()) - 1);
  std::map<int, XPoly> out;
  for (size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) out[n1 + n2 - static_cast<int>(i)] = ys[i].scaled(LocScalar(t[i]));
  return out;
}

std::vector<QPoly> structure_constants_closed_form(int n1, int n2, int q_power) {
  if (n1 < 0 || n2 < 0) throw DomainError("structure constants: negative index");
  const int lo = std::min(n1, n2);
  std::vector<QPoly> s(static_cast<size_t>(lo) + 1);
  for (int i = 0; i <= lo; ++i) {
    QPoly c = q_pow(static_cast<long>(i) * (i - 1) / 2, q_power) *
              q_binomial(n1 + n2 - i, n1, q_power) * q_binomial(n1, i, q_power);
    s[i] = (i % 2 == 0) ? c : -c;
  }
  return s;
}

namespace {

std::vector<QPoly> structure_constants_from_twisted(int n1, int n2, int q_power) {
  auto t = twisted_power_mul(n1, n2, q_power);
  const QPoly denom = q_factorial(n1, q_power) * q_factorial(n2, q_power);
  std::vector<QPoly> s(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    QRat c(t[i] * q_factorial(n1 + n2 - static_cast<int>(i), q_power), denom);
    if (!c.is_polynomial())
      throw IntegralityError("structure constant (" + std::to_string(n1) + "," +
                             std::to_string(n2) + ";" + std::to_string(i) +
                             ") is not a polynomial: " + c.to_string());
    s[i] = c.num();
  }
  return s;
}

struct ConstantsCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<QPoly>>> table;
};

ConstantsCache& constants_cache() {
  static ConstantsCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const std::vector<QPoly>> structure_constants(int n1, int n2, int q_power) {
  if (n1 > n2) std::swap(n1, n2);
  const auto key = std::make_tuple(n1, n2, q_power);
  auto& cache = constants_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.table.find(key);
    if (it != cache.table.end()) return it->second;
  }
  auto fresh = std::make_shared<const std::vector<QPoly>>(
      structure_constants_from_twisted(n1, n2, q_power));
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.table.try_emplace(key, std::move(fresh)).first->second;
}

DPElem dp_mul(const DPElem& u, const DPElem& v) {
  if (!u.ctx().same_algebra(v.ctx())) throw DomainError("dp_mul: operands live in different algebras");
  DPElem r(u.ctx());
  if (u.is_zero() || v.is_zero()) return r;
  const int lo = std::min(u.support_max(), v.support_max());
  const auto ys = twist_powers(u.ctx().twist, lo);
  for (const auto& [n1, c1] : u.terms()) {
    for (const auto& [n2, c2] : v.terms()) {
      const XPoly c12 = c1 * c2;
      const auto consts = structure_constants(n1, n2, u.ctx().q_power);
      for (size_t i = 0; i < consts->size(); ++i) {
        const QPoly& s = (*consts)[i];
        if (s.is_zero()) continue;
        r.add_term(n1 + n2 - static_cast<int>(i), (c12 * ys[i]).scaled(LocScalar(s)));
      }
    }
  }
  return r;
}

std::vector<QPoly> twisted_power_expand(int n, int q_power) {
  if (n < 0) throw DomainError("twisted_power_expand: negative index");
  std::vector<QPoly> e{QPoly(1)};
  for (int i = 0; i < n; ++i) {
    // multiply by (xi + (i)_Q y)
    const QPoly a = q_int(i, q_power);
    std::vector<QPoly> next(e.size() + 1);
    for (size_t j = 0; j < e.size(); ++j) {
      next[j + 1] += e[j];
      next[j] += e[j] * a;
    }
    e = std::move(next);
  }
  return e;
}

XiPoly twisted_power_expand(int n, const DPContext& ctx) {
  auto e = twisted_power_expand(n, ctx.q_power);
  auto ys = twist_powers(ctx.twist, n);
  std::vector<XPoly> c(e.size());
  for (size_t j = 0; j < e.size(); ++j) c[j] = ys[n - j].scaled(LocScalar(e[j]));
  return XiPoly(std::move(c));
}

std::map<int, XPoly> monomial_to_twisted(const XiPoly& f, const DPContext& ctx) {
  std::map<int, XPoly> out;
  XiPoly rest = f;
  while (!rest.is_zero()) {
    const int n = rest.degree();
    const XPoly lead = rest.leading();
    out[n] = lead;
    rest -= twisted_power_expand(n, ctx) * XiPoly(lead);
  }
  return out;
}

XiPoly twisted_to_monomial(const std::map<int, XPoly>& t, const DPContext& ctx) {
  XiPoly r;
  for (const auto& [n, c] : t) r += twisted_power_expand(n, ctx) * XiPoly(c);
  return r;
}

DPElem from_polynomial(const XiPoly& f, const DPContext& ctx) {
  DPElem r(ctx);
  for (const auto& [n, c] : monomial_to_twisted(f, ctx))
    r.add_term(n, c.scaled(LocScalar(q_factorial(n, ctx.q_power))));
  return r;
}

DPElem blowup(const DPElem& e, const XPoly& z, const DPContext& target) {
  const DPContext& src = e.ctx();
  if (src.q_power != target.q_power || src.side != target.side || src.p != target.p)
    throw DomainError("blowup: source and target use different q-powers, sides or primes");
  if (src.twist != z * target.twist)
    throw DomainError("blowup: source twist is not z times the target twist");
  DPElem r(target);
  XPoly zn(LocScalar(1));
  int k = 0;
  for (const auto& [n, c] : e.terms()) {
    for (; k < n; ++k) zn *= z;
    r.add_term(n, c * zn);
  }
  return r;
}

DPElem frobenius_base_change(const DPElem& e) {
  const DPContext& src = e.ctx();
  if (src.side != Side::A) throw DomainError("frobenius_base_change expects an algebra over A");
  DPContext ctx = src;
  ctx.q_power = src.q_power * src.p;
  ctx.twist = xpoly::substitute_q_power(src.twist, src.p);
  ctx.side = Side::APrime;
  DPElem r(ctx);
  for (const auto& [n, c] : e.terms()) r.add_term(n, xpoly::substitute_q_power(c, src.p));
  return r;
}

}  // namespace qtwist
