#include "kirillov.hpp"

#include <cmath>
#include <numbers>

namespace uorb {

namespace {

// Square matrices over F_q of fixed size n, flat row-major storage.
using Mat = std::vector<uint32_t>;

Mat identity(int n) {
  Mat m(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
  return m;
}

Mat matmul(const Fq& F, int n, const Mat& a, const Mat& b) {
  Mat c(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      uint32_t v = a[static_cast<size_t>(i) * n + k];
      if (!v) continue;
      for (int j = 0; j < n; ++j) {
        uint32_t w = b[static_cast<size_t>(k) * n + j];
        if (w)
          c[static_cast<size_t>(i) * n + j] =
              F.add(c[static_cast<size_t>(i) * n + j], F.mul(v, w));
      }
    }
  return c;
}

// positions above the diagonal in a fixed order; their count is N = r(r+1)/2
std::vector<std::pair<int, int>> upper_positions(int n) {
  std::vector<std::pair<int, int>> pos;
  for (int d = 1; d < n; ++d)
    for (int i = 0; i + d < n; ++i) pos.emplace_back(i, i + d);
  return pos;
}

uint64_t encode_positions(const Fq& F, int n, const Mat& m,
                          const std::vector<std::pair<int, int>>& pos, bool lower) {
  uint64_t idx = 0;
  for (auto [i, j] : pos) {
    uint32_t v = lower ? m[static_cast<size_t>(j) * n + i] : m[static_cast<size_t>(i) * n + j];
    idx = idx * F.q() + v;
  }
  return idx;
}

Mat decode_positions(const Fq& F, int n, uint64_t idx, const std::vector<std::pair<int, int>>& pos,
                     bool lower) {
  Mat m = identity(n);
  if (lower)
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 0;
  for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
    auto [i, j] = pos[k];
    uint32_t v = static_cast<uint32_t>(idx % F.q());
    idx /= F.q();
    if (lower)
      m[static_cast<size_t>(j) * n + i] = v;
    else
      m[static_cast<size_t>(i) * n + j] = v;
  }
  return m;
}

// log of a unitriangular matrix via the (finite) series; k < p throughout
Mat unitriangular_log(const Fq& F, int n, const Mat& u) {
  Mat nil(u);
  for (int i = 0; i < n; ++i)
    nil[static_cast<size_t>(i) * n + i] = F.sub(nil[static_cast<size_t>(i) * n + i], 1);
  Mat result(static_cast<size_t>(n) * n, 0);
  Mat power = nil;
  for (int k = 1; k < n; ++k) {
    uint32_t coef = F.inv(F.from_int(k));
    if (k % 2 == 0) coef = F.neg(coef);
    for (size_t t = 0; t < result.size(); ++t)
      result[t] = F.add(result[t], F.mul(coef, power[t]));
    power = matmul(F, n, power, nil);
  }
  return result;
}

}  // namespace

double CharacterTable::orthogonality_residual() const {
  double worst = 0.0;
  size_t nch = values.size();
  for (size_t i = 0; i < nch; ++i)
    for (size_t j = i; j < nch; ++j) {
      std::complex<double> inner(0, 0);
      for (size_t c = 0; c < class_sizes.size(); ++c)
        inner += static_cast<double>(class_sizes[c]) * values[i][c] * std::conj(values[j][c]);
      inner /= static_cast<double>(group_order);
      double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner - std::complex<double>(target, 0)));
    }
  return worst;
}

CharacterTable kirillov_characters(int rank, uint64_t q, Budgets budgets) {
  if (rank < 1 || rank > 3) fail_invalid("characters are implemented for type A, rank 1..3");
  int n = rank + 1;  // Coxeter number h = n
  auto F = Fq::make_q(q);
  if (F->p() < n)
    fail_invalid("p = " + std::to_string(F->p()) + " < h = " + std::to_string(n) +
                 ": the orbit method correspondence requires p >= h");

  auto pos = upper_positions(n);
  int N = static_cast<int>(pos.size());
  uint64_t space = 1;
  for (int i = 0; i < N; ++i) {
    if (space > budgets.states / q) fail_limit("character table: q^N exceeds the state budget");
    space *= q;
  }

  const Fq& Fr = *F;

  // generators x_k(t) = 1 + t E_{k,k+1} and inverses
  std::vector<Mat> gens, gens_inv;
  for (int k = 0; k + 1 < n; ++k)
    for (uint32_t t = 1; t < Fr.q(); ++t) {
      Mat g = identity(n);
      g[static_cast<size_t>(k) * n + k + 1] = t;
      Mat gi = identity(n);
      gi[static_cast<size_t>(k) * n + k + 1] = Fr.neg(t);
      gens.push_back(std::move(g));
      gens_inv.push_back(std::move(gi));
    }

  // conjugacy classes of U_n(q)
  std::vector<uint64_t> class_reps;
  std::vector<uint64_t> class_sizes;
  {
    std::vector<uint8_t> visited(space, 0);
    std::vector<uint64_t> frontier;
    for (uint64_t start = 0; start < space; ++start) {
      if (visited[start]) continue;
      visited[start] = 1;
      frontier.clear();
      frontier.push_back(start);
      uint64_t size = 0;
      while (!frontier.empty()) {
        uint64_t cur = frontier.back();
        frontier.pop_back();
        ++size;
        Mat u = decode_positions(Fr, n, cur, pos, false);
        for (size_t g = 0; g < gens.size(); ++g) {
          Mat c = matmul(Fr, n, gens[g], matmul(Fr, n, u, gens_inv[g]));
          uint64_t nxt = encode_positions(Fr, n, c, pos, false);
          if (!visited[nxt]) {
            visited[nxt] = 1;
            frontier.push_back(nxt);
          }
        }
      }
      class_reps.push_back(start);
      class_sizes.push_back(size);
    }
  }

  // coadjoint orbits on strict lower-triangular matrices: F -> low(u F u^-1)
  std::vector<std::vector<uint64_t>> orbit_members;
  {
    std::vector<uint8_t> visited(space, 0);
    std::vector<uint64_t> frontier;
    for (uint64_t start = 0; start < space; ++start) {
      if (visited[start]) continue;
      visited[start] = 1;
      frontier.clear();
      frontier.push_back(start);
      std::vector<uint64_t> members;
      while (!frontier.empty()) {
        uint64_t cur = frontier.back();
        frontier.pop_back();
        members.push_back(cur);
        Mat f = decode_positions(Fr, n, cur, pos, true);
        for (size_t g = 0; g < gens.size(); ++g) {
          Mat c = matmul(Fr, n, gens[g], matmul(Fr, n, f, gens_inv[g]));
          // strictly-lower projection
          uint64_t nxt = encode_positions(Fr, n, c, pos, true);
          if (!visited[nxt]) {
            visited[nxt] = 1;
            frontier.push_back(nxt);
          }
        }
      }
      orbit_members.push_back(std::move(members));
    }
  }

  CharacterTable table;
  table.q = q;
  table.n = n;
  table.group_order = space;
  table.class_sizes = class_sizes;

  // additive character theta(x) = exp(2 pi i Tr(x) / p)
  std::vector<std::complex<double>> theta(Fr.p());
  for (long long k = 0; k < Fr.p(); ++k) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(Fr.p());
    theta[k] = {std::cos(ang), std::sin(ang)};
  }

  // log of each class representative, cached
  std::vector<Mat> logs;
  logs.reserve(class_reps.size());
  for (uint64_t rep : class_reps)
    logs.push_back(unitriangular_log(Fr, n, decode_positions(Fr, n, rep, pos, false)));

  for (const auto& members : orbit_members) {
    uint64_t osize = members.size();
    int exp2d = OrbitPartition::exponent_of(osize, q);
    check_internal(exp2d % 2 == 0, "coadjoint orbit of odd q-exponent in the character model");
    uint64_t degree = 1;
    for (int i = 0; i < exp2d / 2; ++i) degree *= q;
    table.degrees.push_back(degree);
    table.count_by_log_degree[exp2d / 2] += 1;

    std::vector<std::complex<double>> row(class_reps.size());
    double norm = std::sqrt(static_cast<double>(osize));
    for (size_t c = 0; c < class_reps.size(); ++c) {
      const Mat& lg = logs[c];
      std::complex<double> sum(0, 0);
      for (uint64_t fidx : members) {
        Mat f = decode_positions(Fr, n, fidx, pos, true);
        // Tr(F log u) pairs the lower entry (j,i) with the upper entry (i,j)
        uint32_t tr = 0;
        for (auto [i, j] : pos) {
          uint32_t a = f[static_cast<size_t>(j) * n + i];
          uint32_t b = lg[static_cast<size_t>(i) * n + j];
          if (a && b) tr = Fr.add(tr, Fr.mul(a, b));
        }
        sum += theta[Fr.trace_to_prime(tr)];
      }
      row[c] = sum / norm;
    }
    table.values.push_back(std::move(row));
  }
  return table;
}

}  // namespace uorb
