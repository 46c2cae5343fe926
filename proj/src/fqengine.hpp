#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chevalley.hpp"

namespace uorb {

struct Budgets {
  uint64_t states = 100'000'000;  // brute-force state-space cap
  uint64_t branches = 1'000'000;  // symbolic branch cap
};

struct Orbit {
  std::vector<uint32_t> rep;  // lexicographically least member
  uint64_t size = 0;
};

struct OrbitPartition {
  std::string action;  // "coadjoint" | "adjoint" | "conjugacy"
  uint64_t q = 0;
  int level = 0;  // coordinate count of the acted-on space
  std::vector<Orbit> orbits;

  uint64_t k() const { return orbits.size(); }
  // exact exponent with size == q^exp (throws if not a power of q)
  static int exponent_of(uint64_t size, uint64_t q);
  // d -> number of orbits of size q^{2d}; throws on an odd exponent
  std::map<int, uint64_t> even_size_distribution() const;
};

enum class StepKind : char { I = 'I', R0 = '0', Rn = 'n' };

std::string step_kind_name(StepKind k);
StepKind step_kind_from_name(const std::string& s);

struct MinimalRep {
  std::vector<uint32_t> rep;       // level-N coefficients
  std::vector<StepKind> pattern;   // length N
  int inert_count = 0;
};

// Brute-force enumeration of orbits over F_q: the independent oracle against
// which all symbolic results are checked.
class OrbitEngine {
public:
  OrbitEngine(std::shared_ptr<const ChevalleyAlgebra> L, uint64_t q, Budgets budgets = {});

  const ChevalleyAlgebra& algebra() const { return *L_; }
  const Fq& field() const { return *F_; }
  uint64_t q() const { return F_->q(); }

  OrbitPartition coadjoint_orbits(int level = -1) const;  // default level N
  OrbitPartition adjoint_orbits() const;
  OrbitPartition conjugacy_classes() const;

  MinimalRep minimal_representative(const std::vector<uint32_t>& X) const;

  // orbit id of a level-i vector within the cached level partition
  uint32_t orbit_id_at_level(int level, const std::vector<uint32_t>& x) const;
  const OrbitPartition& level_partition(int level) const;

  uint64_t encode(const std::vector<uint32_t>& x) const;
  std::vector<uint32_t> decode(uint64_t idx, int len) const;

private:
  void ensure_level_partitions(int up_to) const;
  std::vector<FMat> coadjoint_generator_blocks(int level) const;

  std::shared_ptr<const ChevalleyAlgebra> L_;
  std::shared_ptr<const Fq> F_;
  Budgets budgets_;
  int N_;
  std::vector<int> simple_beta_indices_;

  // per-level orbit ids, built lazily for minimal-representative work
  mutable std::vector<std::vector<uint32_t>> level_orbit_ids_;
  mutable std::vector<OrbitPartition> level_partitions_;
};

}  // namespace uorb
