#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "fq.hpp"

namespace uorb {

// Monomial in the step parameters a_1..a_N: sorted (variable, exponent) pairs
// with positive exponents.  Variables are 1-based step indices.
struct Monomial {
  std::vector<std::pair<uint16_t, uint16_t>> factors;

  int total_degree() const {
    int d = 0;
    for (auto [v, e] : factors) d += e;
    return d;
  }
  bool operator==(const Monomial& o) const { return factors == o.factors; }
  // degree-lexicographic, a_1 heaviest on ties
  bool operator<(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial divided_by(const Monomial& o) const;
};

// Sparse multivariate polynomial with exact integer coefficients, kept in
// canonical form (monomials strictly decreasing, no zero coefficients).
class MultiPoly {
public:
  MultiPoly() = default;
  explicit MultiPoly(long long c);
  static MultiPoly variable(int step, long long coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.factors.empty()); }
  long long constant_value() const;
  int total_degree() const { return terms_.empty() ? -1 : terms_.front().first.total_degree(); }
  size_t term_count() const { return terms_.size(); }

  const Monomial& leading_monomial() const;
  long long leading_coeff() const;
  const std::vector<std::pair<Monomial, long long>>& terms() const { return terms_; }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(long long c) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  // gcd of coefficients (0 for the zero polynomial)
  long long content() const;
  // divide out the content and make the leading coefficient positive;
  // returns the signed factor removed (so *this * factor == old value)
  long long normalize_primitive();

  // single term with variable `step` and any exponent, e.g. 3 a_2^2
  bool is_monomial_in_single_variable(int* step) const;
  bool uses_variable(int step) const;
  std::vector<int> variables() const;

  uint32_t eval(const Fq& F, const std::map<int, uint32_t>& assignment) const;
  long long eval_mod(long long p, const std::map<int, long long>& assignment) const;

  std::string str() const;  // human-readable, deterministic

  void add_term(const Monomial& m, long long c);

private:
  static long long checked_mul(long long a, long long b);
  static long long checked_add(long long a, long long b);

  // invariant: sorted by decreasing monomial, no zero coefficients
  std::vector<std::pair<Monomial, long long>> terms_;
};

// Remainder of f under multivariate division by gs (degree-lexicographic
// order).  Fraction-free: the remainder equals c * f modulo the ideal for the
// returned positive integer multiplier c (a product of leading coefficients);
// the caller must treat c as inverted and audit its prime factors.
MultiPoly reduce_mod(const MultiPoly& f, const std::vector<MultiPoly>& gs, long long* multiplier);

}  // namespace uorb
