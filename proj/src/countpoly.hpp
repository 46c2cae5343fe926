#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fqengine.hpp"
#include "symengine.hpp"

namespace uorb {

// Integer polynomial in one variable, coefficients ascending.  Used both in
// the q basis and in the v = q - 1 basis.
struct IntPoly {
  std::vector<long long> c;

  int degree() const;
  long long eval(long long x) const;
  long long coeff(size_t k) const { return k < c.size() ? c[k] : 0; }
  void trim();
  bool operator==(const IntPoly& o) const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  std::string str(const std::string& var) const;
};

// exact change of basis between p(q) and p(v) with q = v + 1
IntPoly q_to_v_basis(const IntPoly& p);
IntPoly v_to_q_basis(const IntPoly& p);

// Exact number of F_q-points of one family stratum: tuples over the nonzero
// torus coordinates satisfying every equality and inequation.  Coordinates
// that appear in no constraint beyond their own nonvanishing contribute a
// free factor (q-1) each; only the constrained core is enumerated.
uint64_t count_points(const FamilyDescriptor& fam, uint64_t q, const Budgets& budgets = {});

// variables appearing in an equality or in an inequation other than their own
// nonvanishing condition
std::vector<int> constrained_vars(const FamilyDescriptor& fam);

// Smallest admissible sample values: good primes coprime to the audit set.
std::vector<uint64_t> choose_sample_qs(const RootSystem& rs, const std::set<long long>& audit,
                                       size_t count);

// Lagrange interpolation through the first #Rn + 1 samples with every extra
// sample held out for exact validation.
IntPoly interpolate_family(const FamilyDescriptor& fam, const std::vector<uint64_t>& sample_qs,
                           const Budgets& budgets = {});

struct KPolyReport {
  std::string type;
  int rank = 0;
  int n_positive = 0;
  IntPoly k_q;  // in q
  IntPoly k_v;  // in v = q - 1
  std::map<int, IntPoly> distribution_v;  // d -> polynomial for orbits of size q^{2d}
  std::vector<IntPoly> family_polys_q;    // aligned with tree.leaves
  int mod_u = 0;  // modality of U on the dual of its Lie algebra
  int mod_b = 0;  // modality of B on the nilradical
  bool certified = false;
  std::string certification_note;
  std::set<long long> audit_primes;
  std::vector<uint64_t> samples_used;
  std::vector<uint64_t> audit_reverified_qs;
};

// Families -> point-count polynomials -> k polynomial, degree distribution,
// modality, and the certification checks (nonnegative v coefficients,
// constant term 1, linear v coefficient |Phi+|, degree = max dimension,
// oracle re-verification at good audit primes).
KPolyReport k_polynomial_report(const ChevalleyAlgebra& L, const BranchTree& tree,
                                const Budgets& budgets = {}, int jobs = 1);

// mod(U : dual) and mod(B : nilradical) from a polynomial degree and the rank
std::pair<int, int> modality_from_degree(int degree, int rank);

struct VerifyEntry {
  uint64_t q = 0;
  uint64_t oracle_k = 0;
  long long poly_k = 0;
  bool count_match = false;
  bool pattern_checked = false;  // per-point stratification census ran
  bool pattern_match = false;
  std::string note;
};

struct VerifyReport {
  std::string type;
  std::vector<VerifyEntry> entries;
  bool all_pass = false;
};

// Oracle-versus-symbolic cross-validation at the given field sizes.
VerifyReport verify_against_oracle(std::shared_ptr<const ChevalleyAlgebra> L,
                                   const BranchTree& tree, const KPolyReport& kreport,
                                   const std::vector<uint64_t>& qs, const Budgets& budgets = {},
                                   int jobs = 1);

}  // namespace uorb
