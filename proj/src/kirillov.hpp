#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "fq.hpp"
#include "fqengine.hpp"

namespace uorb {

// Character table of the unitriangular group U_{r+1}(q) built from its
// coadjoint orbits: one class function per orbit, of degree sqrt(orbit size).
struct CharacterTable {
  uint64_t q = 0;
  int n = 0;  // matrix size r+1
  uint64_t group_order = 0;
  std::vector<uint64_t> class_sizes;            // per conjugacy class
  std::vector<uint64_t> degrees;                // per character (exact, a power of q)
  std::map<int, uint64_t> count_by_log_degree;  // d -> #characters of degree q^d
  // values[ch][cl], rows characters, columns classes
  std::vector<std::vector<std::complex<double>>> values;

  // max |<chi_i, chi_j> - delta_ij| over all pairs
  double orthogonality_residual() const;
};

// Coadjoint-orbit character construction in the natural unitriangular model,
// valid for p >= the Coxeter number r+1 (the matrix logarithm and the orbit
// correspondence both need it).  Type A, rank <= 3.
CharacterTable kirillov_characters(int rank, uint64_t q, Budgets budgets = {});

}  // namespace uorb
