#pragma once

#include <set>
#include <string>
#include <vector>

#include "chevalley.hpp"
#include "fqengine.hpp"
#include "multipoly.hpp"

namespace uorb {

inline constexpr const char* kEngineVersion = "0.1.0";

struct Constraint {
  enum class Kind { equality, inequation };
  Kind kind = Kind::equality;
  MultiPoly poly;
};

// One stratum of minimal representatives: the pattern over {I, R0, Rn} plus
// polynomial conditions on the Rn coordinates.
struct FamilyDescriptor {
  std::vector<StepKind> pattern;
  std::vector<int> rn_steps;  // 1-based step indices carrying a parameter
  std::vector<MultiPoly> equalities;
  std::vector<MultiPoly> inequations;  // includes a_j != 0 for every Rn step
  int inert_count = 0;
  int dimension = 0;  // #Rn - #equalities
  bool numerically_guided = false;

  std::string pattern_string() const;
  std::string canonical_key() const;
  // stratum membership test for a level-N minimal representative
  bool matches(const Fq& F, const std::vector<uint32_t>& rep) const;
};

struct BranchTree {
  std::string type;
  int rank = 0;
  int n_steps = 0;
  std::string order_id;
  std::string sign_id;
  std::string engine_version;
  bool complete = true;
  std::vector<FamilyDescriptor> leaves;  // canonically sorted
  std::set<long long> audit_primes;
};

struct SymLimits {
  uint64_t max_branches = 1'000'000;
  // When set, nonlinear pivot candidates are resolved by evaluating at
  // pseudo-random points over a 31-bit prime field instead of an exact case
  // split; affected leaves are flagged and excluded from certification until
  // confirmed against the oracle.
  bool numeric_guidance = false;
};

// Matrix of Y -> [Y, X] mod m_level from the nilradical to g/m_level, where X
// carries one parameter per Rn step of the pattern prefix.  Entries are
// Z-linear in the parameters.  Rows gamma_1..gamma_level, columns beta_1..beta_N.
std::vector<std::vector<MultiPoly>> centralizer_matrix(const ChevalleyAlgebra& L,
                                                       const std::vector<StepKind>& pattern,
                                                       int level);

BranchTree expand_branch_tree(const ChevalleyAlgebra& L, const SymLimits& limits = {});

struct RankStratum {
  std::vector<MultiPoly> equalities;
  std::vector<MultiPoly> inequations;
  int rank = 0;
  bool numerically_guided = false;
};

// Fraction-free elimination with case distinctions: the returned strata
// partition the region cut out by the base constraints, and the rank is
// constant on each stratum.
std::vector<RankStratum> parametric_rank_split(const std::vector<std::vector<MultiPoly>>& matrix,
                                               const std::vector<MultiPoly>& base_equalities,
                                               const std::vector<MultiPoly>& base_inequations,
                                               const SymLimits& limits = {},
                                               std::set<long long>* audit_primes = nullptr);

void add_audit_factors(std::set<long long>& audit, long long value);

}  // namespace uorb
