#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "fqengine.hpp"

using namespace uorb;

namespace {

// Independent Heisenberg-model oracle for A2, written directly against 3x3
// matrices over F_p: coadjoint orbits on strict lower-triangular functionals
// under F -> low(u F u^{-1}) and conjugacy classes by explicit conjugation.
struct HeisenbergOracle {
  long long p;

  using M = std::array<long long, 9>;  // row major 3x3

  M matmul(const M& a, const M& b) const {
    M c{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) c[i * 3 + j] = (c[i * 3 + j] + a[i * 3 + k] * b[k * 3 + j]) % p;
    return c;
  }

  M unitriangular(long long a, long long b, long long c) const {
    return {1, a, c, 0, 1, b, 0, 0, 1};
  }
  M inverse_unitriangular(long long a, long long b, long long c) const {
    long long m = ((a * b - c) % p + p) % p;
    return {1, (p - a) % p, m, 0, 1, (p - b) % p, 0, 0, 1};
  }
  // strict lower functional with entries (x at (2,1), y at (3,2), z at (3,1))
  M lower(long long x, long long y, long long z) const {
    return {0, 0, 0, x, 0, 0, z, y, 0};
  }

  // distinct coadjoint orbits with their sizes
  std::map<uint64_t, uint64_t> coadjoint_orbit_sizes() const {
    std::set<std::array<long long, 3>> visited;
    std::map<uint64_t, uint64_t> sizes;  // orbit index -> size
    uint64_t next_orbit = 0;
    for (long long x = 0; x < p; ++x)
      for (long long y = 0; y < p; ++y)
        for (long long z = 0; z < p; ++z) {
          if (visited.count({x, y, z})) continue;
          // BFS over the whole group (q^3 elements, fine at p <= 3)
          std::set<std::array<long long, 3>> orbit;
          std::vector<std::array<long long, 3>> frontier{{x, y, z}};
          orbit.insert({x, y, z});
          while (!frontier.empty()) {
            auto [cx, cy, cz] = frontier.back();
            frontier.pop_back();
            for (long long a = 0; a < p; ++a)
              for (long long b = 0; b < p; ++b)
                for (long long c = 0; c < p; ++c) {
                  M u = unitriangular(a, b, c);
                  M ui = inverse_unitriangular(a, b, c);
                  M f = matmul(matmul(u, lower(cx, cy, cz)), ui);
                  std::array<long long, 3> img{f[3] % p, f[7] % p, f[6] % p};
                  if (orbit.insert(img).second) frontier.push_back(img);
                }
          }
          for (auto& pt : orbit) visited.insert(pt);
          sizes[next_orbit++] = orbit.size();
        }
    return sizes;
  }

  uint64_t conjugacy_class_count() const {
    std::set<std::array<long long, 3>> visited;
    uint64_t classes = 0;
    for (long long a0 = 0; a0 < p; ++a0)
      for (long long b0 = 0; b0 < p; ++b0)
        for (long long c0 = 0; c0 < p; ++c0) {
          if (visited.count({a0, b0, c0})) continue;
          ++classes;
          for (long long a = 0; a < p; ++a)
            for (long long b = 0; b < p; ++b)
              for (long long c = 0; c < p; ++c) {
                M g = matmul(matmul(unitriangular(a, b, c), unitriangular(a0, b0, c0)),
                             inverse_unitriangular(a, b, c));
                visited.insert({g[1] % p, g[5] % p, g[2] % p});
              }
        }
    return classes;
  }
};

std::shared_ptr<ChevalleyAlgebra> algebra(const char* type) {
  return std::make_shared<ChevalleyAlgebra>(make_root_system(type));
}

}  // namespace

TEST_CASE("independent Heisenberg oracle fixes the A2 expectations") {
  // values frozen from this oracle: q=2 -> 5 orbits (four of size 1, one of
  // size 4); q=3 -> 11 orbits (nine of size 1, two of size 9); class counts
  // equal the orbit counts
  {
    HeisenbergOracle h{2};
    auto sizes = h.coadjoint_orbit_sizes();
    CHECK(sizes.size() == 5);
    int ones = 0, fours = 0;
    for (auto& [o, s] : sizes) {
      if (s == 1) ++ones;
      if (s == 4) ++fours;
    }
    CHECK(ones == 4);
    CHECK(fours == 1);
    CHECK(h.conjugacy_class_count() == 5);
  }
  {
    HeisenbergOracle h{3};
    auto sizes = h.coadjoint_orbit_sizes();
    CHECK(sizes.size() == 11);
    int ones = 0, nines = 0;
    for (auto& [o, s] : sizes) {
      if (s == 1) ++ones;
      if (s == 9) ++nines;
    }
    CHECK(ones == 9);
    CHECK(nines == 2);
    CHECK(h.conjugacy_class_count() == 11);
  }
}

TEST_CASE("A2 coadjoint orbits match the frozen oracle values") {
  auto L = algebra("A2");
  {
    OrbitEngine eng(L, 2);
    OrbitPartition part = eng.coadjoint_orbits();
    CHECK(part.k() == 5);
    std::multiset<uint64_t> sizes;
    for (auto& o : part.orbits) sizes.insert(o.size);
    CHECK(sizes == std::multiset<uint64_t>{1, 1, 1, 1, 4});
  }
  {
    OrbitEngine eng(L, 3);
    OrbitPartition part = eng.coadjoint_orbits();
    CHECK(part.k() == 11);
    uint64_t total = 0;
    int nines = 0;
    for (auto& o : part.orbits) {
      total += o.size;
      if (o.size > 1) {
        CHECK(o.size == 9);
        ++nines;
      }
    }
    CHECK(nines == 2);
    CHECK(total == 27);
  }
}

TEST_CASE("A1: the abelian group fixes everything") {
  auto L = algebra("A1");
  OrbitEngine eng(L, 3);
  CHECK(eng.coadjoint_orbits().k() == 3);
  for (auto& o : eng.coadjoint_orbits().orbits) CHECK(o.size == 1);
  OrbitEngine eng5(L, 5);
  CHECK(eng5.adjoint_orbits().k() == 5);
  CHECK(eng5.conjugacy_classes().k() == 5);
}

TEST_CASE("partition property: sizes sum to the space, reps are lex-least") {
  for (uint64_t q : {2, 3, 5}) {
    auto L = algebra("A2");
    OrbitEngine eng(L, q);
    OrbitPartition part = eng.coadjoint_orbits();
    uint64_t total = 0;
    for (auto& o : part.orbits) total += o.size;
    CHECK(total == q * q * q);
    // representatives are distinct and sorted (BFS scans indices in order)
    for (size_t i = 1; i < part.orbits.size(); ++i)
      CHECK(eng.encode(part.orbits[i - 1].rep) < eng.encode(part.orbits[i].rep));
  }
}

TEST_CASE("triple equality of class and orbit counts") {
  struct Case {
    const char* type;
    uint64_t q;
  };
  for (Case c : {Case{"A2", 2}, Case{"A2", 3}, Case{"A3", 2}, Case{"B2", 3}}) {
    auto L = algebra(c.type);
    OrbitEngine eng(L, c.q);
    uint64_t coad = eng.coadjoint_orbits().k();
    uint64_t ad = eng.adjoint_orbits().k();
    uint64_t conj = eng.conjugacy_classes().k();
    CHECK(coad == ad);
    CHECK(ad == conj);
  }
}

TEST_CASE("level-N orbit sizes have even q-exponent") {
  struct Case {
    const char* type;
    uint64_t q;
  };
  for (Case c : {Case{"A2", 4}, Case{"A3", 3}, Case{"B2", 5}, Case{"G2", 5}}) {
    auto L = algebra(c.type);
    OrbitEngine eng(L, c.q);
    OrbitPartition part = eng.coadjoint_orbits();
    std::map<int, uint64_t> dist = part.even_size_distribution();  // throws on odd exponent
    uint64_t check = 0;
    for (auto [d, n] : dist) {
      uint64_t sz = 1;
      for (int i = 0; i < 2 * d; ++i) sz *= c.q;
      check += n * sz;
    }
    uint64_t space = 1;
    for (int i = 0; i < L->num_positive(); ++i) space *= c.q;
    CHECK(check == space);
  }
}

TEST_CASE("A2 q=3 distribution is {0: 9, 1: 2}") {
  auto L = algebra("A2");
  OrbitEngine eng(L, 3);
  auto dist = eng.coadjoint_orbits().even_size_distribution();
  CHECK(dist == std::map<int, uint64_t>{{0, 9}, {1, 2}});
}

TEST_CASE("A1: every distribution is {0: q}") {
  auto L = algebra("A1");
  for (uint64_t q : {2, 3, 5, 7}) {
    OrbitEngine eng(L, q);
    CHECK(eng.coadjoint_orbits().even_size_distribution() ==
          std::map<int, uint64_t>{{0, q}});
  }
}

TEST_CASE("minimal representatives reproduce the hand-checked A2 patterns") {
  auto L = algebra("A2");
  OrbitEngine eng(L, 3);
  {
    MinimalRep mr = eng.minimal_representative({0, 0, 0});
    CHECK(mr.rep == std::vector<uint32_t>{0, 0, 0});
    CHECK(mr.pattern == std::vector<StepKind>{StepKind::R0, StepKind::R0, StepKind::R0});
  }
  {
    MinimalRep mr = eng.minimal_representative({1, 0, 0});
    CHECK(mr.rep == std::vector<uint32_t>{1, 0, 0});
    CHECK(mr.pattern == std::vector<StepKind>{StepKind::Rn, StepKind::I, StepKind::I});
    CHECK(mr.inert_count == 2);
  }
  {
    MinimalRep mr = eng.minimal_representative({0, 0, 1});
    CHECK(mr.rep == std::vector<uint32_t>{0, 0, 1});
    CHECK(mr.pattern == std::vector<StepKind>{StepKind::R0, StepKind::R0, StepKind::Rn});
  }
}

TEST_CASE("minimal representative is an orbit invariant separating orbits") {
  struct Case {
    const char* type;
    uint64_t q;
  };
  for (Case c : {Case{"A2", 3}, Case{"A3", 2}, Case{"B2", 3}}) {
    auto L = algebra(c.type);
    OrbitEngine eng(L, c.q);
    int N = L->num_positive();
    uint64_t space = 1;
    for (int i = 0; i < N; ++i) space *= c.q;
    const OrbitPartition& part = eng.level_partition(N);
    std::vector<MinimalRep> per_orbit;
    std::set<std::vector<uint32_t>> reps;
    for (const Orbit& o : part.orbits) {
      per_orbit.push_back(eng.minimal_representative(o.rep));
      CHECK(reps.insert(per_orbit.back().rep).second);
      // in(F) equals the exponent of the orbit size
      CHECK(OrbitPartition::exponent_of(o.size, c.q) == per_orbit.back().inert_count);
    }
    for (uint64_t idx = 0; idx < space; ++idx) {
      std::vector<uint32_t> X = eng.decode(idx, N);
      MinimalRep mr = eng.minimal_representative(X);
      uint32_t oid = eng.orbit_id_at_level(N, X);
      CHECK(mr.rep == per_orbit[oid].rep);
      CHECK(mr.pattern == per_orbit[oid].pattern);
    }
  }
}

TEST_CASE("bad primes and budgets are rejected up front") {
  auto b3 = algebra("B3");
  CHECK_THROWS_WITH_AS(OrbitEngine(b3, 2).coadjoint_orbits(),
                       doctest::Contains("bad prime 2"), Error);
  CHECK_THROWS_AS(OrbitEngine(b3, 4), Error);
  auto g2 = algebra("G2");
  CHECK_THROWS_AS(OrbitEngine(g2, 3), Error);
  CHECK_THROWS_AS(OrbitEngine(g2, 2), Error);

  Budgets tiny;
  tiny.states = 100;
  auto a3 = algebra("A3");
  OrbitEngine eng(a3, 3, tiny);
  CHECK_THROWS_AS(eng.coadjoint_orbits(), Error);
  try {
    eng.coadjoint_orbits();
  } catch (const Error& e) {
    CHECK(e.code() == errc::resource_limit);
  }
}

TEST_CASE("extension fields: A2 over F4, F8, F9 counts q^2 + q - 1") {
  auto L = algebra("A2");
  for (uint64_t q : {4ull, 8ull, 9ull}) {
    OrbitEngine eng(L, q);
    CHECK(eng.coadjoint_orbits().k() == q * q + q - 1);
  }
}

TEST_CASE("field tables are consistent") {
  for (auto [p, e] : std::vector<std::pair<long long, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
    auto F = Fq::make(p, e);
    uint32_t q = F->q();
    for (uint32_t a = 0; a < q; ++a) {
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a) CHECK(F->mul(a, F->inv(a)) == 1);
      for (uint32_t b = 0; b < q; ++b) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        for (uint32_t c = 0; c < q; ++c)
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      }
    }
    // multiplicative group order q - 1
    for (uint32_t a = 1; a < q; ++a) CHECK(F->pow(a, q - 1) == 1);
  }
  CHECK_THROWS_AS(Fq::make(6), Error);
  CHECK_THROWS_AS(Fq::make(11, 5), Error);  // no modulus on record
}
