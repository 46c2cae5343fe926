#pragma once

#include <memory>
#include <vector>

#include "fq.hpp"
#include "linalg.hpp"
#include "rootsys.hpp"

namespace uorb {

// Identifier of the sign convention: extraspecial pairs positive in the fixed
// root order, remaining constants propagated through the standard relations.
inline constexpr const char* kSignConventionId = "extraspecial-positive-v1";

// Integral structure constants n(u, v) with [e_u, e_v] = n(u, v) e_{u+v} for
// roots u, v with u + v a root.  Signed root indices: +k is beta_k, -k is
// -beta_k (1-based).
class StructureConstants {
public:
  explicit StructureConstants(const RootSystem& rs);

  // 0 when u + v is not a root
  int n_signed(int su, int sv) const;
  // coroot of beta_k over the simple coroots (integer coordinates, gcd 1)
  const std::vector<int>& coroot(int k) const { return coroots_.at(k - 1); }
  // largest m with (v - m*u) a root
  int p_string(int su, int sv) const;

  const RootSystem& roots() const { return *rs_; }

private:
  int slot(int s) const { return s > 0 ? s - 1 : N_ + (-s) - 1; }
  std::vector<int> vec_of(int s) const;

  const RootSystem* rs_;
  int N_;
  std::vector<int> table_;  // (2N)^2 dense, 0 where undefined
  std::vector<std::vector<int>> coroots_;
};

// exp(t ad e_beta) on the adjoint module, stored as integer divided-power
// coefficient matrices: M(t) = sum_k powers[k] t^k.
struct ActionMatrix {
  int beta_index = 0;  // 1-based
  std::vector<IMat> powers;

  FMat eval(const Fq& F, uint32_t t) const;
};

// Unipotent group element in canonical coordinates (t_1..t_N in the beta
// order) together with its faithful adjoint matrix.
struct GroupElement {
  std::shared_ptr<const Fq> field;
  std::vector<uint32_t> coords;
  FMat mat;

  bool is_identity() const {
    for (uint32_t t : coords)
      if (t) return false;
    return true;
  }
  bool operator==(const GroupElement& o) const { return coords == o.coords; }
};

// Chevalley basis of the simple Lie algebra attached to a root system, its
// filtration by the negative-root flag, and exact group arithmetic for U.
//
// Basis layout (dim = 2N + r):
//   indices 0..N-1      e_{gamma_1} .. e_{gamma_N}   (negative roots)
//   indices N..N+r-1    h_1 .. h_r
//   indices N+r..2N+r-1 e_{beta_1} .. e_{beta_N}     (positive roots)
// m_i is spanned by the basis vectors with index >= i, so reduction mod m_i
// is truncation to the first i coordinates.
class ChevalleyAlgebra {
public:
  explicit ChevalleyAlgebra(const RootSystem& rs);

  const RootSystem& roots() const { return rs_; }
  const StructureConstants& constants() const { return sc_; }
  int dim() const { return 2 * N_ + r_; }
  int num_positive() const { return N_; }
  int rank() const { return r_; }

  int basis_of_signed_root(int s) const { return s > 0 ? N_ + r_ + s - 1 : N_ + s; }
  // signed root of a basis index, 0 for the Cartan block
  int signed_root_of_basis(int b) const {
    if (b < N_) return -(N_ - b);
    if (b < N_ + r_) return 0;
    return b - N_ - r_ + 1;
  }

  const ActionMatrix& action(int beta_index) const { return actions_.at(beta_index - 1); }

  // bracket of two basis vectors as a sparse vector over the basis
  std::vector<std::pair<int, long long>> bracket_basis(int a, int b) const;

  GroupElement identity(std::shared_ptr<const Fq> F) const;
  GroupElement generator(std::shared_ptr<const Fq> F, int beta_index, uint32_t t) const;
  GroupElement from_coords(std::shared_ptr<const Fq> F, const std::vector<uint32_t>& coords) const;
  GroupElement multiply(const GroupElement& u, const GroupElement& w) const;
  GroupElement inverse(const GroupElement& u) const;

  // canonical coordinates of a matrix known to lie in U (throws otherwise)
  std::vector<uint32_t> peel(const Fq& F, const FMat& m) const;

  // coadjoint action on g/m_level: first `level` coordinates
  std::vector<uint32_t> coadjoint_apply(const GroupElement& u, const std::vector<uint32_t>& x,
                                        int level) const;

private:
  RootSystem rs_;
  StructureConstants sc_;
  int N_, r_;
  std::vector<ActionMatrix> actions_;
};

}  // namespace uorb
