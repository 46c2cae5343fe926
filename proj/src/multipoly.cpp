#include "multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uorb {

bool Monomial::operator<(const Monomial& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  // walk variables in increasing id; higher exponent on the smaller variable
  // makes the monomial larger
  size_t i = 0, j = 0;
  while (i < factors.size() && j < o.factors.size()) {
    if (factors[i].first != o.factors[j].first) {
      // the one that still has the smaller variable is larger
      return factors[i].first > o.factors[j].first;
    }
    if (factors[i].second != o.factors[j].second) return factors[i].second < o.factors[j].second;
    ++i;
    ++j;
  }
  return i == factors.size() && j < o.factors.size();
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < factors.size() || j < o.factors.size()) {
    if (j == o.factors.size() || (i < factors.size() && factors[i].first < o.factors[j].first)) {
      r.factors.push_back(factors[i++]);
    } else if (i == factors.size() || o.factors[j].first < factors[i].first) {
      r.factors.push_back(o.factors[j++]);
    } else {
      r.factors.emplace_back(factors[i].first,
                             static_cast<uint16_t>(factors[i].second + o.factors[j].second));
      ++i;
      ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  size_t j = 0;
  for (auto [v, e] : factors) {
    while (j < o.factors.size() && o.factors[j].first < v) ++j;
    if (j == o.factors.size() || o.factors[j].first != v || o.factors[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
  Monomial r;
  size_t j = 0;
  for (auto [v, e] : factors) {
    uint16_t sub = 0;
    while (j < o.factors.size() && o.factors[j].first < v) ++j;
    if (j < o.factors.size() && o.factors[j].first == v) sub = o.factors[j].second;
    check_internal(e >= sub, "monomial division underflow");
    if (e > sub) r.factors.emplace_back(v, static_cast<uint16_t>(e - sub));
  }
  return r;
}

long long MultiPoly::checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail_internal("polynomial coefficient overflow (mul)");
  return r;
}

long long MultiPoly::checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail_internal("polynomial coefficient overflow (add)");
  return r;
}

MultiPoly::MultiPoly(long long c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

MultiPoly MultiPoly::variable(int step, long long coeff) {
  MultiPoly p;
  if (coeff != 0) {
    Monomial m;
    m.factors.emplace_back(static_cast<uint16_t>(step), 1);
    p.terms_.emplace_back(std::move(m), coeff);
  }
  return p;
}

long long MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  check_internal(is_constant(), "constant_value on a non-constant polynomial");
  return terms_[0].second;
}

const Monomial& MultiPoly::leading_monomial() const {
  check_internal(!terms_.empty(), "leading monomial of zero");
  return terms_.front().first;
}

long long MultiPoly::leading_coeff() const {
  check_internal(!terms_.empty(), "leading coefficient of zero");
  return terms_.front().second;
}

void MultiPoly::add_term(const Monomial& m, long long c) {
  if (c == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const std::pair<Monomial, long long>& t, const Monomial& key) { return key < t.first; });
  if (it != terms_.end() && it->first == m) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {m, c});
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, checked_mul(ca, cb));
  return r;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::scaled(long long c) const {
  MultiPoly r;
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [m, coef] : r.terms_) coef = checked_mul(coef, c);
  return r;
}

long long MultiPoly::content() const {
  long long g = 0;
  for (const auto& [m, c] : terms_) g = std::gcd(g, std::llabs(c));
  return g;
}

long long MultiPoly::normalize_primitive() {
  if (terms_.empty()) return 1;
  long long g = content();
  if (terms_.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [m, c] : terms_) c /= g;
  return g;
}

bool MultiPoly::is_monomial_in_single_variable(int* step) const {
  if (terms_.size() != 1) return false;
  const Monomial& m = terms_[0].first;
  if (m.factors.size() != 1) return false;
  if (step) *step = m.factors[0].first;
  return true;
}

bool MultiPoly::uses_variable(int step) const {
  for (const auto& [m, c] : terms_)
    for (auto [v, e] : m.factors)
      if (v == step) return true;
  return false;
}

std::vector<int> MultiPoly::variables() const {
  std::vector<int> vars;
  for (const auto& [m, c] : terms_)
    for (auto [v, e] : m.factors) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

uint32_t MultiPoly::eval(const Fq& F, const std::map<int, uint32_t>& assignment) const {
  uint32_t total = 0;
  for (const auto& [m, c] : terms_) {
    uint32_t v = F.from_int(c);
    for (auto [var, e] : m.factors) {
      auto it = assignment.find(var);
      check_internal(it != assignment.end(), "unassigned variable a_" + std::to_string(var));
      v = F.mul(v, F.pow(it->second, e));
    }
    total = F.add(total, v);
  }
  return total;
}

long long MultiPoly::eval_mod(long long p, const std::map<int, long long>& assignment) const {
  long long total = 0;
  for (const auto& [m, c] : terms_) {
    long long v = ((c % p) + p) % p;
    for (auto [var, e] : m.factors) {
      auto it = assignment.find(var);
      check_internal(it != assignment.end(), "unassigned variable a_" + std::to_string(var));
      long long base = ((it->second % p) + p) % p;
      for (int k = 0; k < e; ++k) v = v * base % p;
    }
    total = (total + v) % p;
  }
  return total;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    long long cc = c;
    if (first) {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc < 0 ? " - " : " + ");
      cc = std::llabs(cc);
    }
    if (m.factors.empty() || cc != 1) os << cc;
    bool star = !m.factors.empty() && cc != 1;
    for (size_t i = 0; i < m.factors.size(); ++i) {
      if (star || i > 0) os << "*";
      os << "a" << m.factors[i].first;
      if (m.factors[i].second > 1) os << "^" << m.factors[i].second;
      star = false;
    }
    first = false;
  }
  return os.str();
}

MultiPoly reduce_mod(const MultiPoly& f, const std::vector<MultiPoly>& gs, long long* multiplier) {
  if (multiplier) *multiplier = 1;
  if (gs.empty() || f.is_zero()) return f;
  MultiPoly r = f;
  bool progress = true;
  int guard = 0;
  while (progress && !r.is_zero()) {
    progress = false;
    check_internal(++guard < 100000, "runaway multivariate reduction");
    for (const MultiPoly& g : gs) {
      if (g.is_zero()) continue;
      // scan terms of r for one divisible by lt(g)
      for (const auto& [m, c] : r.terms()) {
        if (!g.leading_monomial().divides(m)) continue;
        long long lc = g.leading_coeff();
        // fraction-free step: r <- lc * r - c * (m / lt(g)) * g
        MultiPoly quotient_term;
        quotient_term.add_term(m.divided_by(g.leading_monomial()), c);
        r = r.scaled(lc) - quotient_term * g;
        if (multiplier) {
          long long nm;
          if (__builtin_mul_overflow(*multiplier, std::llabs(lc), &nm))
            fail_internal("reduction multiplier overflow");
          *multiplier = nm;
        }
        long long cont = r.content();
        if (cont > 1) {
          MultiPoly rr;
          for (const auto& [mm, cc] : r.terms()) rr.add_term(mm, cc / cont);
          r = rr;
          // the stripped content joins the multiplier: the identity is
          // multiplier * f = sum q_i g_i + content * r
          if (multiplier) {
            long long nm;
            if (__builtin_mul_overflow(*multiplier, cont, &nm))
              fail_internal("reduction multiplier overflow");
            *multiplier = nm;
          }
        }
        progress = true;
        break;
      }
      if (progress) break;
    }
  }
  return r;
}

}  // namespace uorb
