#include "fq.hpp"

#include <map>

namespace uorb {

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Fixed irreducible moduli for the extension fields used in validation runs
// (Conway polynomials, constant coefficient first, monic leading 1 implied).
const std::map<std::pair<long long, int>, std::vector<int>>& modulus_table() {
  static const std::map<std::pair<long long, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1}},     // x^2 + x + 1
      {{2, 3}, {1, 1, 0}},  // x^3 + x + 1
      {{2, 4}, {1, 1, 0, 0}},  // x^4 + x + 1
      {{3, 2}, {2, 2}},     // x^2 + 2x + 2
      {{3, 3}, {1, 2, 0}},  // x^3 + 2x + 1
      {{5, 2}, {2, 4}},     // x^2 + 4x + 2
      {{7, 2}, {3, 6}},     // x^2 + 6x + 3
  };
  return table;
}

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Fq::Fq(long long p, int e) : p_(p), e_(e) {
  if (!is_prime_ll(p)) fail_invalid("p = " + std::to_string(p) + " is not prime");
  if (e < 1) fail_invalid("extension degree must be >= 1");
  uint64_t q = ipow(static_cast<uint64_t>(p), e);
  if (q > 4096) fail_invalid("field size q = " + std::to_string(q) + " exceeds the table limit (4096)");
  q_ = static_cast<uint32_t>(q);

  if (e > 1) {
    auto it = modulus_table().find({p, e});
    if (it == modulus_table().end())
      fail_invalid("no modulus on record for F_{" + std::to_string(p) + "^" + std::to_string(e) + "}");
    modulus_ = it->second;
  }

  // digits of an element index: index = sum digit[i] * p^i
  auto digits = [&](uint32_t v) {
    std::vector<long long> d(e_);
    for (int i = 0; i < e_; ++i) {
      d[i] = v % p_;
      v /= static_cast<uint32_t>(p_);
    }
    return d;
  };
  auto encode = [&](const std::vector<long long>& d) {
    uint64_t v = 0;
    for (int i = e_ - 1; i >= 0; --i) v = v * static_cast<uint64_t>(p_) + static_cast<uint64_t>(d[i]);
    return static_cast<uint32_t>(v);
  };

  add_.resize(static_cast<size_t>(q_) * q_);
  mul_.resize(static_cast<size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  for (uint32_t a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<long long> nd(e_);
    for (int i = 0; i < e_; ++i) nd[i] = (p_ - da[i]) % p_;
    neg_[a] = encode(nd);
    for (uint32_t b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<long long> s(e_);
      for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = encode(s);

      // polynomial product reduced by the modulus
      std::vector<long long> prod(2 * e_ - 1, 0);
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int k = 2 * e_ - 2; k >= e_; --k) {
        long long c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < e_; ++i)
          prod[k - e_ + i] = ((prod[k - e_ + i] - c * modulus_[i]) % p_ + p_) % p_;
      }
      std::vector<long long> pr(prod.begin(), prod.begin() + e_);
      mul_[a * q_ + b] = encode(pr);
    }
  }
  for (uint32_t a = 1; a < q_; ++a)
    for (uint32_t b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
  for (uint32_t a = 1; a < q_; ++a)
    check_internal(inv_[a] != 0 && mul_[a * q_ + inv_[a]] == 1,
                   "modulus is not irreducible: F_q inverse missing");
}

uint32_t Fq::pow(uint32_t a, unsigned long long k) const {
  uint32_t r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

long long Fq::trace_to_prime(uint32_t a) const {
  uint32_t s = 0, x = a;
  for (int i = 0; i < e_; ++i) {
    s = add(s, x);
    x = pow(x, static_cast<unsigned long long>(p_));
  }
  check_internal(s < static_cast<uint32_t>(p_), "trace left the prime subfield");
  return s;
}

std::shared_ptr<const Fq> Fq::make(long long p, int e) {
  return std::shared_ptr<const Fq>(new Fq(p, e));
}

std::shared_ptr<const Fq> Fq::make_q(unsigned long long q) {
  if (q < 2) fail_invalid("q must be at least 2");
  long long p = 0;
  for (long long d = 2; d * d <= static_cast<long long>(q); ++d)
    if (q % static_cast<unsigned long long>(d) == 0) {
      p = d;
      break;
    }
  if (p == 0) p = static_cast<long long>(q);
  int e = 0;
  unsigned long long m = q;
  while (m % static_cast<unsigned long long>(p) == 0) {
    m /= static_cast<unsigned long long>(p);
    ++e;
  }
  if (m != 1) fail_invalid("q = " + std::to_string(q) + " is not a prime power");
  return make(p, e);
}

}  // namespace uorb
