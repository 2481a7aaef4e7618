#include "qtwist/qpoly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "qtwist/errors.hpp"

namespace qtwist {

QPoly::QPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

QPoly::QPoly(const Integer& c) {
  if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Integer& c, int k) {
  if (k < 0) throw DomainError("QPoly::monomial: negative exponent");
  QPoly r;
  if (c == 0) return r;
  r.c_.assign(static_cast<size_t>(k) + 1, Integer(0));
  r.c_[k] = c;
  return r;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer QPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  *this = *this * o;
  return *this;
}

QPoly& QPoly::operator*=(const Integer& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& a : c_) a *= c;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.c_.size() == 1) return b * a.c_[0];
  if (b.c_.size() == 1) return a * b.c_[0];
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Integer(0));
  // Skip zero coefficients: q-analog products are often sparse (q^k substitutions).
  std::vector<size_t> nzb;
  nzb.reserve(b.c_.size());
  for (size_t j = 0; j < b.c_.size(); ++j)
    if (b.c_[j] != 0) nzb.push_back(j);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    const mpz_srcptr ai = a.c_[i].get_mpz_t();
    for (size_t j : nzb) mpz_addmul(r.c_[i + j].get_mpz_t(), ai, b.c_[j].get_mpz_t());
  }
  r.trim();
  return r;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

Integer QPoly::eval(const Integer& at) const {
  Integer r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Integer QPoly::eval_at_one() const {
  Integer r = 0;
  for (const auto& a : c_) r += a;
  return r;
}

QPoly QPoly::substitute_power(int k) const {
  if (k <= 0) throw DomainError("QPoly::substitute_power: exponent must be positive");
  if (k == 1 || c_.size() <= 1) return *this;
  QPoly r;
  r.c_.assign((c_.size() - 1) * static_cast<size_t>(k) + 1, Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
  return r;
}

QPoly QPoly::shift_to_t() const {
  // Horner in the variable (1 + t): r <- r * (1 + t) + c_i.
  std::vector<Integer> r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r.emplace_back(0);
    for (size_t j = r.size() - 1; j > 0; --j) r[j] += r[j - 1];
    r[0] += *it;
  }
  return QPoly(std::move(r));
}

Integer QPoly::content() const {
  Integer g = 0;
  for (const auto& a : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

QPoly QPoly::primitive_part() const {
  if (is_zero()) return *this;
  Integer g = content();
  if (leading() < 0) g = -g;
  return divexact(g);
}

QPoly QPoly::divexact(const Integer& c) const {
  if (c == 1) return *this;
  QPoly r = *this;
  for (auto& a : r.c_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return r;
}

std::string QPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& a = c_[i];
    if (a == 0) continue;
    Integer mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::optional<QPoly> divide_exact(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("divide_exact: division by zero polynomial");
  if (a.is_zero()) return QPoly();
  const int db = b.degree();
  if (a.degree() < db) return std::nullopt;
  const Integer& lb = b.leading();
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quot(static_cast<size_t>(a.degree() - db) + 1);
  std::vector<int> nzb;
  for (int j = 0; j < db; ++j)
    if (b.coeffs()[j] != 0) nzb.push_back(j);
  const bool unit_lead = (lb == 1);
  for (int k = a.degree() - db; k >= 0; --k) {
    Integer& top = rem[k + db];
    if (top == 0) continue;
    Integer c;
    if (unit_lead) {
      c = top;
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
      mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    }
    for (int j : nzb) mpz_submul(rem[k + j].get_mpz_t(), c.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    top = 0;
    quot[k] = std::move(c);
  }
  for (int i = 0; i < db; ++i)
    if (rem[i] != 0) return std::nullopt;
  return QPoly(std::move(quot));
}

PseudoDivision pseudo_divide(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo_divide: division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  const Integer& lb = b.leading();
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quot(static_cast<size_t>(a.degree() - db) + 1);
  // Standard pseudo-division: multiply the running remainder by lc(b) each step.
  for (int k = a.degree() - db; k >= 0; --k) {
    Integer c = rem[k + db];
    for (auto& qv : quot) qv *= lb;
    for (int i = 0; i < k + db; ++i) rem[i] *= lb;
    for (int j = 0; j < db; ++j) rem[k + j] -= c * b.coeffs()[j];
    rem[k + db] = 0;
    quot[k] += c;
  }
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.is_zero() ? QPoly() : b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  Integer c;
  mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  if (a.is_constant() || b.is_constant()) return QPoly(c);
  QPoly u = a.primitive_part();
  QPoly v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  if (auto qv = divide_exact(u, v)) return v * c;
  while (!v.is_zero()) {
    QPoly r = pseudo_divide(u, v).remainder;
    u = std::move(v);
    v = r.is_zero() ? QPoly() : r.primitive_part();
    if (v.is_constant() && !v.is_zero()) return QPoly(c);
  }
  return u.primitive_part() * c;
}

int p_valuation(Integer n, int p) {
  if (n == 0) throw DomainError("p_valuation of zero");
  int v = 0;
  const Integer pp = p;
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

}  // namespace qtwist
