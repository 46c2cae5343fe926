#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqengine.hpp"
#include "kirillov.hpp"

using namespace uorb;

TEST_CASE("A2 over F_3: the full degree census of the Heisenberg group") {
  CharacterTable t = kirillov_characters(2, 3);
  CHECK(t.group_order == 27);
  CHECK(t.class_sizes.size() == 11);
  CHECK(t.degrees.size() == 11);
  // q^2 = 9 linear characters and q - 1 = 2 of degree q = 3
  CHECK(t.count_by_log_degree == std::map<int, uint64_t>{{0, 9}, {1, 2}});
  unsigned long long sum_sq = 0;
  for (auto d : t.degrees) sum_sq += d * d;
  CHECK(sum_sq == 27);
  CHECK(t.orthogonality_residual() < 1e-6);
}

TEST_CASE("A1 over F_5: the abelian case has q linear characters") {
  CharacterTable t = kirillov_characters(1, 5);
  CHECK(t.group_order == 5);
  CHECK(t.degrees.size() == 5);
  CHECK(t.count_by_log_degree == std::map<int, uint64_t>{{0, 5}});
  CHECK(t.orthogonality_residual() < 1e-9);
}

TEST_CASE("A2 over F_9: extension fields work through the trace character") {
  CharacterTable t = kirillov_characters(2, 9);
  CHECK(t.group_order == 729);
  CHECK(t.count_by_log_degree == std::map<int, uint64_t>{{0, 81}, {1, 8}});
  unsigned long long sum_sq = 0;
  for (auto d : t.degrees) sum_sq += d * d;
  CHECK(sum_sq == 729);
  CHECK(t.orthogonality_residual() < 1e-6);
}

TEST_CASE("the census agrees with the coadjoint orbit engine") {
  CharacterTable t = kirillov_characters(2, 5);
  auto L = std::make_shared<ChevalleyAlgebra>(make_root_system("A2"));
  OrbitEngine eng(L, 5);
  auto census = eng.coadjoint_orbits().even_size_distribution();
  CHECK(t.count_by_log_degree == census);
  CHECK(t.class_sizes.size() == eng.conjugacy_classes().k());
}

TEST_CASE("A3 over F_5 is orthonormal at the smallest admissible q") {
  CharacterTable t = kirillov_characters(3, 5);
  CHECK(t.group_order == 15625);
  unsigned long long sum_sq = 0;
  for (auto d : t.degrees) sum_sq += d * d;
  CHECK(sum_sq == 15625);
  CHECK(t.orthogonality_residual() < 1e-6);
}

TEST_CASE("p below the Coxeter number is rejected") {
  CHECK_THROWS_AS(kirillov_characters(2, 2), Error);   // h = 3 > 2
  CHECK_THROWS_AS(kirillov_characters(2, 4), Error);   // p = 2 < 3
  CHECK_THROWS_AS(kirillov_characters(3, 3), Error);   // h = 4 > 3
  CHECK_THROWS_AS(kirillov_characters(4, 7), Error);   // rank cap
  CHECK_NOTHROW(kirillov_characters(2, 3));            // h = 3 = p is allowed
}
