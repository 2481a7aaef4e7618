#include "qtwist/diffcalc.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"

namespace qtwist {

OpContext OpContext::level(int p, int m, Side side) {
  validate_prime(p);
  if (m < 0 || m > 3) throw DomainError("OpContext: level must be in 0..3");
  OpContext c;
  c.p = p;
  c.m = m;
  c.q_power = ipow(p, m);
  c.scale = q_int(c.q_power);
  c.side = side;
  return c;
}

OpContext OpContext::plain(int p, int q_power, Side side) {
  validate_prime(p);
  if (q_power < 1) throw DomainError("OpContext: q-power must be positive");
  OpContext c;
  c.p = p;
  c.m = -1;
  c.q_power = q_power;
  c.scale = QPoly(1);
  c.side = side;
  return c;
}

TwistedDiffOp::TwistedDiffOp(OpContext ctx, std::map<int, XPoly> terms) : ctx_(std::move(ctx)) {
  for (auto& [n, c] : terms) add_term(n, c);
}

TwistedDiffOp TwistedDiffOp::generator(const OpContext& ctx, int n) {
  TwistedDiffOp d(ctx);
  d.add_term(n, XPoly(LocScalar(1)));
  return d;
}

TwistedDiffOp TwistedDiffOp::multiplication(const OpContext& ctx, XPoly f) {
  TwistedDiffOp d(ctx);
  d.add_term(0, f);
  return d;
}

XPoly TwistedDiffOp::coeff(int n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? XPoly() : it->second;
}

void TwistedDiffOp::add_term(int n, const XPoly& c) {
  if (n < 0) throw DomainError("TwistedDiffOp: negative order");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(n, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TwistedDiffOp& TwistedDiffOp::operator+=(const TwistedDiffOp& o) {
  if (ctx_ != o.ctx_) throw DomainError("TwistedDiffOp: mismatched operator rings");
  for (const auto& [n, c] : o.terms_) add_term(n, c);
  return *this;
}

TwistedDiffOp& TwistedDiffOp::operator-=(const TwistedDiffOp& o) {
  if (ctx_ != o.ctx_) throw DomainError("TwistedDiffOp: mismatched operator rings");
  for (const auto& [n, c] : o.terms_) add_term(n, -c);
  return *this;
}

std::string TwistedDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  const char* var = ctx_.side == Side::A ? "x" : "x'";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << qtwist::to_string(c, var) << ")*d<" << n << ">";
  }
  return os.str();
}

XPoly op_apply(const TwistedDiffOp& d, const XPoly& f) {
  const OpContext& ctx = d.ctx();
  XPoly out;
  XPoly g = f;
  QPoly zn(1);
  int k = 0;
  for (const auto& [n, c] : d.terms()) {
    while (k < n) {
      g = xpoly::q_derivative(g, ctx.q_power);
      zn *= ctx.scale;
      ++k;
    }
    if (g.is_zero()) break;
    out += c * g.scaled(LocScalar(zn));
  }
  return out;
}

CoordPoly op_apply(const TwistedDiffOp& d, const CoordPoly& f) {
  if (f.side() != d.ctx().side) throw DomainError("op_apply: operator and function on different sides");
  return {f.side(), op_apply(d, f.poly())};
}

namespace {

// d<a> o x^e in normal form, as a map order -> coefficient.
using NormalForm = std::map<int, XPoly>;

struct ComposeCache {
  std::mutex mu;
  std::map<std::tuple<int, std::vector<Integer>, int, int>, NormalForm> table;
};

ComposeCache& compose_cache() {
  static ComposeCache cache;
  return cache;
}

void accumulate(NormalForm& nf, int n, const XPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = nf.try_emplace(n, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) nf.erase(it);
  }
}

NormalForm generator_times_monomial(const OpContext& ctx, int a, int e) {
  if (a == 0) return {{0, XPoly::monomial(LocScalar(1), e)}};
  const auto key = std::make_tuple(ctx.q_power, ctx.scale.coeffs(), a, e);
  auto& cache = compose_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.table.find(key);
    if (it != cache.table.end()) return it->second;
  }
  // d<1> o (sum_c h_c d<c>) = sum_c (z d(h_c) d<c> + sigma^k(h_c) d<c+1>)
  const NormalForm inner = generator_times_monomial(ctx, a - 1, e);
  NormalForm out;
  const LocScalar z(ctx.scale);
  for (const auto& [c, h] : inner) {
    accumulate(out, c, xpoly::q_derivative(h, ctx.q_power).scaled(z));
    accumulate(out, c + 1, xpoly::sigma_power(h, ctx.q_power));
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.table.try_emplace(key, std::move(out)).first->second;
}

}  // namespace

TwistedDiffOp op_compose(const TwistedDiffOp& d1, const TwistedDiffOp& d2) {
  if (d1.ctx() != d2.ctx()) throw DomainError("op_compose: mismatched operator rings");
  const OpContext& ctx = d1.ctx();
  TwistedDiffOp out(ctx);
  for (const auto& [a, f] : d1.terms()) {
    for (const auto& [b, g] : d2.terms()) {
      for (int e = 0; e <= g.degree(); ++e) {
        const LocScalar& ge = g.coeffs()[e];
        if (ge.is_zero()) continue;
        for (const auto& [c, h] : generator_times_monomial(ctx, a, e))
          out.add_term(c + b, (f * h).scaled(ge));
      }
    }
  }
  return out;
}

TwistedDiffOp level_zero_image(const TwistedDiffOp& d) {
  const OpContext& ctx = d.ctx();
  TwistedDiffOp out(OpContext::plain(ctx.p, ctx.q_power, ctx.side));
  QPoly zn(1);
  int k = 0;
  for (const auto& [n, c] : d.terms()) {
    for (; k < n; ++k) zn *= ctx.scale;
    out.add_term(n, c.scaled(LocScalar(zn)));
  }
  return out;
}

DPElem taylor(const CoordPoly& f, int n, int p, int m) {
  DPContext ctx = DPContext::level(p, m, f.side());
  if (n < 0) throw DomainError("taylor: truncation order must be non-negative");
  if (n > ctx.max_index) throw DegreeCapError("taylor: truncation order exceeds the degree cap");
  const OpContext oc = OpContext::level(p, m, f.side());
  DPElem out(ctx);
  XPoly g = f.poly();
  QPoly zi(1);
  for (int i = 0; i <= n && !g.is_zero(); ++i) {
    if (i > 0) {
      g = xpoly::q_derivative(g, oc.q_power);
      zi *= oc.scale;
    }
    out.add_term(i, g.scaled(LocScalar(zi)));
  }
  return out;
}

bool taylor_converges_at(int p, int m, int n_from, int target) {
  const OpContext oc = OpContext::level(p, m);
  QPoly c = q_factorial(n_from, oc.q_power);
  for (int i = 0; i < n_from; ++i) c *= oc.scale;
  // membership of c in (p, t)^target, t = q - 1
  const QPoly ct = c.shift_to_t();
  for (int j = 0; j < target && j <= ct.degree(); ++j) {
    const Integer& a = ct.coeffs()[j];
    if (a != 0 && p_valuation(a, p) < target - j) return false;
  }
  return true;
}

TensorTerms comult(const DPElem& e, int n1, int n2) {
  TensorTerms out;
  for (const auto& [i, c] : e.terms()) {
    for (int i1 = 0; i1 <= i; ++i1) {
      const int i2 = i - i1;
      if (i1 > n1 || i2 > n2) continue;
      out[{i1, i2}] += c;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::string to_string(const TensorTerms& t, const std::string& symbol) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")*" << symbol << "{" << k.first << "}(x)" << symbol << "{"
       << k.second << "}";
  }
  return os.str();
}

XPoly pairing(const TwistedDiffOp& d, const DPElem& e) {
  if (d.ctx().side != e.ctx().side) throw DomainError("pairing: operator and element on different sides");
  XPoly out;
  for (const auto& [n, c] : d.terms()) out += c * e.coeff(n);
  return out;
}

}  // namespace qtwist
