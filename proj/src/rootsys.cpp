#include "rootsys.hpp"

#include <algorithm>
#include <numeric>

namespace uorb {

Series series_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Series::A;
    case 'B': case 'b': return Series::B;
    case 'C': case 'c': return Series::C;
    case 'D': case 'd': return Series::D;
    case 'E': case 'e': return Series::E;
    case 'F': case 'f': return Series::F;
    case 'G': case 'g': return Series::G;
    default: fail_invalid(std::string("unknown series letter '") + c + "'");
  }
}

long long n_positive_roots_formula(Series s, int r) {
  switch (s) {
    case Series::A: return static_cast<long long>(r) * (r + 1) / 2;
    case Series::B:
    case Series::C: return static_cast<long long>(r) * r;
    case Series::D: return static_cast<long long>(r) * (r - 1);
    case Series::E: return r == 6 ? 36 : r == 7 ? 63 : 120;
    case Series::F: return 24;
    case Series::G: return 6;
  }
  fail_internal("unreachable series");
}

RootSystem::RootSystem(Series series, int rank) : series_(series), rank_(rank) {
  switch (series_) {
    case Series::A:
      if (rank < 1) fail_invalid("type A requires rank >= 1");
      break;
    case Series::B:
    case Series::C:
      if (rank < 2) fail_invalid("types B and C require rank >= 2");
      break;
    case Series::D:
      if (rank < 4) fail_invalid("type D requires rank >= 4");
      break;
    case Series::E:
      if (rank == 8) fail_invalid("E8 is excluded: its parametrization is out of reach for this tool");
      if (rank < 6 || rank > 7) fail_invalid("type E requires rank 6 or 7");
      break;
    case Series::F:
      if (rank != 4) fail_invalid("type F requires rank 4");
      break;
    case Series::G:
      if (rank != 2) fail_invalid("type G requires rank 2");
      break;
  }
  if (rank > kDataRankCap) fail_invalid("rank " + std::to_string(rank) + " exceeds the data cap of 8");
  build_cartan();
  build_positive_roots();
  build_bad_primes();
}

std::string RootSystem::type_name() const {
  return std::string(1, static_cast<char>(series_)) + std::to_string(rank_);
}

void RootSystem::require_symbolic() const {
  if (rank_ > kSymbolicRankCap)
    fail_invalid(type_name() + ": rank exceeds the symbolic cap of " +
                 std::to_string(kSymbolicRankCap) + " (data-only queries are available)");
}

void RootSystem::build_cartan() {
  int r = rank_;
  cartan_.assign(r, std::vector<int>(r, 0));
  d_.assign(r, 1);
  for (int i = 0; i < r; ++i) cartan_[i][i] = 2;
  auto bond = [&](int i, int j) {  // single bond, 0-based
    cartan_[i][j] = -1;
    cartan_[j][i] = -1;
  };
  switch (series_) {
    case Series::A:
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      break;
    case Series::B:
      // alpha_r short; the double bond points at it
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      cartan_[r - 1][r - 2] = -2;
      for (int i = 0; i < r - 1; ++i) d_[i] = 2;
      d_[r - 1] = 1;
      break;
    case Series::C:
      // alpha_r long
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      cartan_[r - 2][r - 1] = -2;
      for (int i = 0; i < r - 1; ++i) d_[i] = 1;
      d_[r - 1] = 2;
      break;
    case Series::D:
      for (int i = 0; i + 2 < r; ++i) bond(i, i + 1);
      bond(r - 3, r - 1);
      break;
    case Series::E:
      // Bourbaki: chain 1-3-4-5-6(-7), node 2 attached to 4
      bond(0, 2);
      bond(2, 3);
      bond(3, 4);
      bond(4, 5);
      if (r >= 7) bond(5, 6);
      bond(1, 3);
      break;
    case Series::F:
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      cartan_[2][1] = -2;  // <alpha_2, alpha_3^vee> = -2: alpha_1, alpha_2 long
      d_[0] = d_[1] = 2;
      d_[2] = d_[3] = 1;
      break;
    case Series::G:
      // alpha_1 short, alpha_2 long
      cartan_[0][1] = -3;
      cartan_[1][0] = -1;
      d_[0] = 1;
      d_[1] = 3;
      break;
  }
  // symmetry check: d_i * cartan(i,j) == d_j * cartan(j,i)
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      check_internal(static_cast<long long>(d_[i]) * cartan_[i][j] ==
                         static_cast<long long>(d_[j]) * cartan_[j][i],
                     "Cartan matrix symmetrization failed");
}

int RootSystem::pairing_with_simple_coroot(const std::vector<int>& beta, int i) const {
  int s = 0;
  for (int k = 0; k < rank_; ++k) s += beta[k] * cartan_[i][k];
  return s;
}

long long RootSystem::norm2(const std::vector<int>& v) const {
  long long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(v[i]) * v[j] * d_[i] * cartan_[i][j];
  return s;
}

bool RootSystem::precedes(const std::vector<int>& a, const std::vector<int>& b) {
  int ha = std::accumulate(a.begin(), a.end(), 0);
  int hb = std::accumulate(b.begin(), b.end(), 0);
  if (ha != hb) return ha < hb;
  for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j)
    if (a[j] != b[j]) return a[j] < b[j];
  return false;  // equal
}

void RootSystem::build_positive_roots() {
  // Closure under root strings: beta + alpha_i is a root iff q >= 1 where
  // q = p - <beta, alpha_i^vee> and p = max { k : beta - k*alpha_i known }.
  std::vector<std::vector<int>> roots;
  std::set<std::vector<int>> seen;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> e(rank_, 0);
    e[i] = 1;
    roots.push_back(e);
    seen.insert(e);
  }
  for (size_t head = 0; head < roots.size(); ++head) {
    std::vector<int> beta = roots[head];
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> down = beta;
      int p = 0;
      while (true) {
        down[i] -= 1;
        // beta - k*alpha_i stays a positive root while the string lasts
        // (a root with mixed-sign coefficients does not exist, and the only
        // beta whose string leaves the positive cone is alpha_i itself).
        bool nonneg = true;
        for (int c : down)
          if (c < 0) nonneg = false;
        if (!nonneg) break;
        if (seen.count(down)) {
          p += 1;
        } else {
          break;  // includes the zero vector for beta == alpha_i
        }
      }
      int q = p - pairing_with_simple_coroot(beta, i);
      if (q >= 1) {
        std::vector<int> up = beta;
        up[i] += 1;
        if (!seen.count(up)) {
          seen.insert(up);
          roots.push_back(up);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(), precedes);
  positive_.clear();
  for (auto& v : roots) {
    Root r;
    r.coeffs = v;
    r.height = std::accumulate(v.begin(), v.end(), 0);
    positive_.push_back(std::move(r));
  }
  for (int i = 0; i < static_cast<int>(positive_.size()); ++i)
    root_index_[positive_[i].coeffs] = i + 1;
  check_internal(static_cast<long long>(positive_.size()) == n_positive_roots_formula(series_, rank_),
                 type_name() + ": positive root count mismatch");
}

void RootSystem::build_bad_primes() {
  switch (series_) {
    case Series::A: break;
    case Series::B:
    case Series::C:
    case Series::D: bad_primes_ = {2}; break;
    case Series::G:
    case Series::F:
    case Series::E:
      bad_primes_ = {2, 3};
      if (series_ == Series::E && rank_ == 8) bad_primes_.insert(5);
      break;
  }
}

std::vector<int> RootSystem::gamma(int i) const {
  const Root& b = beta(num_positive() + 1 - i);
  std::vector<int> v(b.coeffs);
  for (int& c : v) c = -c;
  return v;
}

int RootSystem::signed_root_index(const std::vector<int>& v, int* sign) const {
  auto it = root_index_.find(v);
  if (it != root_index_.end()) {
    *sign = +1;
    return it->second;
  }
  std::vector<int> neg(v);
  for (int& c : neg) c = -c;
  it = root_index_.find(neg);
  if (it != root_index_.end()) {
    *sign = -1;
    return it->second;
  }
  *sign = 0;
  return 0;
}

bool RootSystem::is_good_prime_power(unsigned long long q, long long* p_out, int* e_out) const {
  if (q < 2) return false;
  unsigned long long m = q;
  long long p = 0;
  for (long long d = 2; d * d <= static_cast<long long>(m); ++d)
    if (m % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = static_cast<long long>(m);
  int e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return false;  // not a prime power
  if (!is_good_prime(p)) return false;
  if (p_out) *p_out = p;
  if (e_out) *e_out = e;
  return true;
}

RootSystem make_root_system(const std::string& type, int rank_arg) {
  if (type.empty()) fail_invalid("empty type string");
  Series s = series_from_char(type[0]);
  int rank = rank_arg;
  if (type.size() > 1) {
    try {
      rank = std::stoi(type.substr(1));
    } catch (const std::exception&) {
      fail_invalid("cannot parse rank from type '" + type + "'");
    }
  }
  if (rank <= 0) fail_invalid("missing or non-positive rank for type '" + type + "'");
  return RootSystem(s, rank);
}

}  // namespace uorb
