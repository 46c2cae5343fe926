#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "error.hpp"

namespace uorb {

// F_q arithmetic, q = p^e, with full add/mul tables (q stays small here).
// Elements are encoded as integers in [0, q): the base-p digits are the
// coefficients of the residue polynomial, so the prime subfield is {0..p-1}
// and integer encoding order is the fixed deterministic element order.
class Fq {
public:
  static std::shared_ptr<const Fq> make(long long p, int e = 1);
  static std::shared_ptr<const Fq> make_q(unsigned long long q);

  long long p() const { return p_; }
  int e() const { return e_; }
  uint32_t q() const { return q_; }
  // modulus polynomial coefficients (constant first), empty for e == 1
  const std::vector<int>& modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const { return add_[a * q_ + b]; }
  uint32_t sub(uint32_t a, uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * q_ + b]; }
  uint32_t neg(uint32_t a) const { return neg_[a]; }
  uint32_t inv(uint32_t a) const {
    if (a == 0) fail_internal("F_q inverse of zero");
    return inv_[a];
  }
  uint32_t from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }
  uint32_t pow(uint32_t a, unsigned long long k) const;
  // trace to the prime subfield, returned as an integer in [0, p)
  long long trace_to_prime(uint32_t a) const;

private:
  Fq(long long p, int e);

  long long p_;
  int e_;
  uint32_t q_;
  std::vector<int> modulus_;
  std::vector<uint32_t> add_, mul_, neg_, inv_;
};

bool is_prime_ll(long long n);

}  // namespace uorb
