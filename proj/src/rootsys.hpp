#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"

namespace uorb {

// Identifier of the total root order used throughout (height, ties broken by
// the smaller coefficient at the highest differing simple-root index).
inline constexpr const char* kRootOrderId = "height-revcoeff-bourbaki-v1";

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Series series_from_char(char c);

struct Root {
  std::vector<int> coeffs;  // over simple roots, Bourbaki numbering
  int height = 0;           // sum of coeffs
};

// Root system of a simple type, with positive roots listed in the fixed total
// order beta_1 < ... < beta_N (so positive_roots[i] is beta_{i+1}).
class RootSystem {
public:
  RootSystem(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  std::string type_name() const;  // e.g. "B3"

  int num_positive() const { return static_cast<int>(positive_.size()); }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const Root& beta(int i) const { return positive_.at(i - 1); }      // 1-based
  std::vector<int> gamma(int i) const;                               // gamma_i = -beta_{N+1-i}
  int beta_index_of_gamma(int i) const { return num_positive() + 1 - i; }

  // cartan(i, j) = <alpha_j, alpha_i^vee>, 0-based
  int cartan(int i, int j) const { return cartan_[i][j]; }
  // <beta, alpha_i^vee> for an arbitrary integer vector beta
  int pairing_with_simple_coroot(const std::vector<int>& beta, int i) const;
  // squared length normalized so short simple roots have norm2 = 2
  long long norm2(const std::vector<int>& v) const;
  // half squared length of simple root i (1 short, 2 or 3 long)
  int d_simple(int i) const { return d_[i]; }

  bool is_root(const std::vector<int>& v) const { return root_index_.count(v) > 0; }
  // index into positive_roots() for v or -v; sign out tells which
  int signed_root_index(const std::vector<int>& v, int* sign) const;

  const std::set<long long>& bad_primes() const { return bad_primes_; }
  bool is_good_prime(long long p) const { return bad_primes_.count(p) == 0; }
  bool is_good_prime_power(unsigned long long q, long long* p_out = nullptr,
                           int* e_out = nullptr) const;

  // Total order on integer coefficient vectors: height first, ties by the
  // smaller coefficient at the highest index where they differ.
  static bool precedes(const std::vector<int>& a, const std::vector<int>& b);

  // Rank caps: symbolic work (structure constants onward) vs. data queries.
  static constexpr int kSymbolicRankCap = 5;
  static constexpr int kDataRankCap = 8;
  void require_symbolic() const;

private:
  void build_cartan();
  void build_positive_roots();
  void build_bad_primes();

  Series series_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> d_;
  std::vector<Root> positive_;
  std::map<std::vector<int>, int> root_index_;  // +v -> 1-based beta index
  std::set<long long> bad_primes_;
};

// Parses "A2", "B3", ... ; also accepts a bare series letter with rank passed
// separately (rank_arg >= 0 overrides any digits).
RootSystem make_root_system(const std::string& type, int rank_arg = -1);

long long n_positive_roots_formula(Series s, int rank);

}  // namespace uorb
