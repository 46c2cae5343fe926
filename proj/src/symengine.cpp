#include "symengine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uorb {

void add_audit_factors(std::set<long long>& audit, long long value) {
  long long v = std::llabs(value);
  for (long long d = 2; d * d <= v; ++d)
    while (v % d == 0) {
      audit.insert(d);
      v /= d;
    }
  if (v > 1) audit.insert(v);
}

std::string FamilyDescriptor::pattern_string() const {
  std::string s;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (i) s += ",";
    s += step_kind_name(pattern[i]);
  }
  return s;
}

std::string FamilyDescriptor::canonical_key() const {
  std::ostringstream os;
  os << pattern_string() << "|";
  for (const auto& e : equalities) os << e.str() << ";";
  os << "|";
  for (const auto& e : inequations) os << e.str() << ";";
  return os.str();
}

bool FamilyDescriptor::matches(const Fq& F, const std::vector<uint32_t>& rep) const {
  check_internal(rep.size() == pattern.size(), "representative length mismatch");
  std::map<int, uint32_t> assign;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == StepKind::Rn) {
      if (rep[i] == 0) return false;
      assign[static_cast<int>(i) + 1] = rep[i];
    } else {
      if (rep[i] != 0) return false;
    }
  }
  for (const auto& e : equalities)
    if (e.eval(F, assign) != 0) return false;
  for (const auto& e : inequations)
    if (e.eval(F, assign) == 0) return false;
  return true;
}

std::vector<std::vector<MultiPoly>> centralizer_matrix(const ChevalleyAlgebra& L,
                                                       const std::vector<StepKind>& pattern,
                                                       int level) {
  const RootSystem& rs = L.roots();
  int N = L.num_positive();
  check_internal(level <= N && static_cast<int>(pattern.size()) >= std::min(level, N),
                 "pattern too short for the requested level");
  std::vector<std::vector<MultiPoly>> rows;
  for (int i = 1; i <= level; ++i) {
    std::vector<MultiPoly> row(N);
    std::vector<int> gi = rs.gamma(i);
    for (int j = 1; j < i; ++j) {
      if (j > static_cast<int>(pattern.size()) || pattern[j - 1] != StepKind::Rn) continue;
      std::vector<int> gj = rs.gamma(j);
      std::vector<int> diff(gi);
      for (int k = 0; k < rs.rank(); ++k) diff[k] -= gj[k];
      int sign = 0;
      int m = rs.signed_root_index(diff, &sign);
      if (sign != +1) continue;
      int n = L.constants().n_signed(m, -(N + 1 - j));
      if (n != 0) row[m - 1] = row[m - 1] + MultiPoly::variable(j, n);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// Deterministic 31-bit LCG for the numeric-guidance samples.
struct Lcg {
  uint64_t s;
  explicit Lcg(uint64_t seed) : s(seed * 6364136223846793005ull + 1442695040888963407ull) {}
  long long next_nonzero_mod(long long p) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<long long>((s >> 33) % static_cast<uint64_t>(p - 1)) + 1;
  }
};

constexpr long long kGuidancePrime = 2147483647;  // 2^31 - 1

struct EliminationState {
  std::vector<MultiPoly> eqs;
  std::vector<MultiPoly> ineqs;
  std::vector<std::vector<MultiPoly>> rows;  // echelon rows
  std::vector<int> pivot_cols;
  bool guided = false;
};

bool contains_poly(const std::vector<MultiPoly>& list, const MultiPoly& p) {
  return std::any_of(list.begin(), list.end(), [&](const MultiPoly& q) { return q == p; });
}

// Shared split/elimination machinery for the branch tree and the standalone
// rank splitter.
class Eliminator {
public:
  Eliminator(const SymLimits& limits, std::set<long long>& audit)
      : limits_(limits), audit_(audit) {}

  // true if poly vanishes identically on the stratum (sound, not complete)
  bool is_zero_on_stratum(const EliminationState& st, const MultiPoly& p) {
    if (p.is_zero()) return true;
    long long mult = 1;
    MultiPoly r = reduce_mod(p, st.eqs, &mult);
    if (mult != 1) add_audit_factors(audit_, mult);
    return r.is_zero();
  }

  // reduce a row vector against the echelon rows; content-normalized
  void reduce_row(const EliminationState& st, std::vector<MultiPoly>& row) {
    for (size_t k = 0; k < st.rows.size(); ++k) {
      int c = st.pivot_cols[k];
      if (row[c].is_zero()) continue;
      const MultiPoly& pivot = st.rows[k][c];
      MultiPoly factor = row[c];
      for (size_t j = 0; j < row.size(); ++j) row[j] = row[j] * pivot - factor * st.rows[k][j];
    }
    // strip the integer content of the whole row
    long long g = 0;
    for (const MultiPoly& e : row) g = std::gcd(g, e.content());
    if (g > 1) {
      add_audit_factors(audit_, g);
      for (MultiPoly& e : row) {
        MultiPoly r;
        for (const auto& [m, c] : e.terms()) r.add_term(m, c / g);
        e = r;
      }
    }
  }

  // Does p have the shape c * prod a_j^{e_j} with every a_j required nonzero?
  // Over a field such a monomial is invertible on the stratum.
  static bool is_invertible_monomial(const EliminationState& st, const MultiPoly& p) {
    if (p.is_zero() || p.term_count() != 1) return false;
    for (int var : p.variables())
      if (!contains_poly(st.ineqs, MultiPoly::variable(var))) return false;
    return true;
  }

  // Try to extend the state with equality p = 0.  Returns false when the
  // resulting stratum is provably empty.
  bool add_equality(EliminationState& st, MultiPoly p) {
    long long mult = 1;
    p = reduce_mod(p, st.eqs, &mult);
    if (mult != 1) add_audit_factors(audit_, mult);
    if (p.is_zero()) return true;  // redundant
    long long removed = p.normalize_primitive();
    if (std::llabs(removed) > 1) add_audit_factors(audit_, removed);
    if (p.is_constant()) {
      add_audit_factors(audit_, p.constant_value());
      return false;  // nonzero constant cannot vanish
    }
    if (is_invertible_monomial(st, p)) return false;  // monomial in nonzero coordinates
    if (contains_poly(st.ineqs, p)) return false;     // p != 0 already required
    if (!contains_poly(st.eqs, p)) st.eqs.push_back(p);
    // an inequation that now reduces to zero empties the stratum
    for (const MultiPoly& q : st.ineqs)
      if (is_zero_on_stratum(st, q)) return false;
    return true;
  }

  // Try to extend the state with inequation p != 0 (normalized); false when
  // the stratum would be empty.
  bool add_inequation(EliminationState& st, MultiPoly p) {
    long long removed = p.normalize_primitive();
    if (std::llabs(removed) > 1) add_audit_factors(audit_, removed);
    if (p.is_zero()) return false;
    if (p.is_constant()) {
      add_audit_factors(audit_, p.constant_value());
      return true;  // nonzero constant, vacuous
    }
    if (is_zero_on_stratum(st, p)) return false;
    if (contains_poly(st.eqs, p)) return false;
    if (is_invertible_monomial(st, p)) return true;  // implied by the torus constraints
    if (!contains_poly(st.ineqs, p)) st.ineqs.push_back(p);
    return true;
  }

  // numeric guidance: conjecture whether p is nonzero somewhere on the stratum
  bool conjecture_nonzero(const EliminationState& st, const MultiPoly& p, uint64_t seed) {
    std::vector<int> vars = p.variables();
    for (const MultiPoly& q : st.eqs)
      for (int v : q.variables()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    Lcg rng(seed);
    for (int trial = 0; trial < 8; ++trial) {
      std::map<int, long long> assign;
      for (int v : vars) assign[v] = rng.next_nonzero_mod(kGuidancePrime);
      bool on_stratum = true;
      for (const MultiPoly& q : st.eqs)
        if (q.eval_mod(kGuidancePrime, assign) != 0) {
          on_stratum = false;
          break;
        }
      if (!on_stratum) continue;  // random points rarely satisfy equalities
      if (p.eval_mod(kGuidancePrime, assign) != 0) return true;
    }
    // fall back: ignore the equalities (they generically fail to hold anyway)
    Lcg rng2(seed ^ 0x9e3779b97f4a7c15ull);
    for (int trial = 0; trial < 4; ++trial) {
      std::map<int, long long> assign;
      for (int v : vars) assign[v] = rng2.next_nonzero_mod(kGuidancePrime);
      if (p.eval_mod(kGuidancePrime, assign) != 0) return true;
    }
    return false;
  }

  const SymLimits& limits() const { return limits_; }

private:
  const SymLimits& limits_;
  std::set<long long>& audit_;
};

// ---- branch tree expansion ----

class TreeBuilder {
public:
  TreeBuilder(const ChevalleyAlgebra& L, const SymLimits& limits)
      : L_(L), N_(L.num_positive()), limits_(limits), elim_(limits, tree_.audit_primes) {
    tree_.type = L.roots().type_name();
    tree_.rank = L.roots().rank();
    tree_.n_steps = N_;
    tree_.order_id = kRootOrderId;
    tree_.sign_id = kSignConventionId;
    tree_.engine_version = kEngineVersion;
  }

  BranchTree run() {
    EliminationState st;
    Node root;
    step(root, st, 1);
    std::sort(tree_.leaves.begin(), tree_.leaves.end(),
              [](const FamilyDescriptor& a, const FamilyDescriptor& b) {
                return a.canonical_key() < b.canonical_key();
              });
    return std::move(tree_);
  }

private:
  struct Node {
    std::vector<StepKind> pattern;
    std::vector<int> rn_steps;
    bool guided = false;
  };

  std::vector<MultiPoly> build_row(const Node& node, int i) const {
    const RootSystem& rs = L_.roots();
    std::vector<MultiPoly> row(N_);
    std::vector<int> gi = rs.gamma(i);
    for (int j : node.rn_steps) {
      std::vector<int> gj = rs.gamma(j);
      std::vector<int> diff(gi);
      for (int k = 0; k < rs.rank(); ++k) diff[k] -= gj[k];
      int sign = 0;
      int m = rs.signed_root_index(diff, &sign);
      if (sign != +1) continue;
      int n = L_.constants().n_signed(m, -(N_ + 1 - j));
      if (n != 0) row[m - 1] = row[m - 1] + MultiPoly::variable(j, n);
    }
    return row;
  }

  void step(Node node, EliminationState st, int i) {
    if (truncated_) return;
    if (i > N_) {
      emit_leaf(node, st);
      return;
    }
    std::vector<MultiPoly> row = build_row(node, i);
    elim_.reduce_row(st, row);
    scan_row(std::move(node), std::move(st), i, std::move(row), 0);
  }

  // Scan the reduced row for its pivot, splitting on nonconstant candidates.
  void scan_row(Node node, EliminationState st, int i, std::vector<MultiPoly> row, int col) {
    if (truncated_) return;
    while (col < N_) {
      const MultiPoly& e = row[col];
      if (elim_.is_zero_on_stratum(st, e)) {
        ++col;
        continue;
      }
      if (e.is_constant()) {
        long long c = e.constant_value();
        if (std::llabs(c) > 1) add_audit_factors(tree_.audit_primes, c);
        inert(std::move(node), std::move(st), i, std::move(row), col);
        return;
      }
      // nonconstant pivot candidate
      MultiPoly cand = e;
      if (limits_.numeric_guidance && cand.total_degree() >= 2) {
        uint64_t seed = static_cast<uint64_t>(i) * 1000003ull + static_cast<uint64_t>(col);
        if (elim_.conjecture_nonzero(st, cand, seed)) {
          EliminationState st1 = st;
          if (elim_.add_inequation(st1, cand)) {
            node.guided = true;
            inert(std::move(node), std::move(st1), i, std::move(row), col);
          }
          return;
        }
        // conjectured zero on the stratum: treat as zero and move on
        node.guided = true;
        ++col;
        continue;
      }
      // exact split: pivot != 0 (inert here) vs pivot = 0 (keep scanning)
      {
        EliminationState st1 = st;
        MultiPoly ineq = cand;
        if (elim_.add_inequation(st1, ineq)) inert(node, st1, i, row, col);
      }
      {
        EliminationState st2 = st;
        if (elim_.add_equality(st2, cand)) {
          scan_row(std::move(node), std::move(st2), i, std::move(row), col + 1);
        }
      }
      return;
    }
    // the whole row vanishes on the stratum: a ramification point
    ramified(std::move(node), std::move(st), i);
  }

  void inert(Node node, EliminationState st, int i, std::vector<MultiPoly> row, int col) {
    node.pattern.push_back(StepKind::I);
    st.rows.push_back(std::move(row));
    st.pivot_cols.push_back(col);
    step(std::move(node), std::move(st), i + 1);
  }

  void ramified(Node node, EliminationState st, int i) {
    {
      Node n0 = node;
      n0.pattern.push_back(StepKind::R0);
      step(std::move(n0), st, i + 1);
    }
    {
      Node n1 = std::move(node);
      n1.pattern.push_back(StepKind::Rn);
      n1.rn_steps.push_back(i);
      EliminationState st1 = std::move(st);
      if (!elim_.add_inequation(st1, MultiPoly::variable(i)))
        fail_internal("fresh parameter rejected as inequation");
      step(std::move(n1), std::move(st1), i + 1);
    }
  }

  void emit_leaf(Node& node, EliminationState& st) {
    if (tree_.leaves.size() >= limits_.max_branches) {
      tree_.complete = false;
      truncated_ = true;
      return;
    }
    FamilyDescriptor leaf;
    leaf.pattern = node.pattern;
    leaf.rn_steps = node.rn_steps;
    leaf.equalities = st.eqs;
    leaf.inequations = st.ineqs;
    leaf.inert_count = static_cast<int>(
        std::count(node.pattern.begin(), node.pattern.end(), StepKind::I));
    check_internal(leaf.inert_count % 2 == 0,
                   "leaf " + leaf.pattern_string() +
                       " has odd inert count: the even-parity invariant failed");
    leaf.dimension = static_cast<int>(leaf.rn_steps.size() - st.eqs.size());
    leaf.numerically_guided = node.guided;
    tree_.leaves.push_back(std::move(leaf));
  }

  const ChevalleyAlgebra& L_;
  int N_;
  SymLimits limits_;
  BranchTree tree_;
  Eliminator elim_;
  bool truncated_ = false;
};

}  // namespace

BranchTree expand_branch_tree(const ChevalleyAlgebra& L, const SymLimits& limits) {
  L.roots().require_symbolic();
  TreeBuilder builder(L, limits);
  return builder.run();
}

// ---- standalone parametric rank splitting ----

namespace {

class RankSplitter {
public:
  RankSplitter(const std::vector<std::vector<MultiPoly>>& matrix, const SymLimits& limits,
               std::set<long long>& audit)
      : matrix_(matrix), limits_(limits), audit_(audit), elim_(limits, audit) {}

  std::vector<RankStratum> run(const std::vector<MultiPoly>& base_eqs,
                               const std::vector<MultiPoly>& base_ineqs) {
    EliminationState st;
    st.eqs = base_eqs;
    st.ineqs = base_ineqs;
    process_row(st, 0, false);
    return std::move(out_);
  }

private:
  void process_row(EliminationState st, size_t r, bool guided) {
    if (r == matrix_.size()) {
      RankStratum s;
      s.equalities = st.eqs;
      s.inequations = st.ineqs;
      s.rank = static_cast<int>(st.rows.size());
      s.numerically_guided = guided;
      if (out_.size() >= limits_.max_branches)
        fail_limit("parametric rank split exceeded the branch budget");
      out_.push_back(std::move(s));
      return;
    }
    std::vector<MultiPoly> row = matrix_[r];
    elim_.reduce_row(st, row);
    scan(std::move(st), r, std::move(row), 0, guided);
  }

  void scan(EliminationState st, size_t r, std::vector<MultiPoly> row, int col, bool guided) {
    int cols = static_cast<int>(row.size());
    while (col < cols) {
      const MultiPoly& e = row[col];
      if (elim_.is_zero_on_stratum(st, e)) {
        ++col;
        continue;
      }
      if (e.is_constant()) {
        long long c = e.constant_value();
        if (std::llabs(c) > 1) add_audit_factors(audit_, c);
        st.rows.push_back(std::move(row));
        st.pivot_cols.push_back(col);
        process_row(std::move(st), r + 1, guided);
        return;
      }
      MultiPoly cand = e;
      if (limits_.numeric_guidance && cand.total_degree() >= 2) {
        uint64_t seed = r * 1000003ull + static_cast<uint64_t>(col);
        if (elim_.conjecture_nonzero(st, cand, seed)) {
          if (elim_.add_inequation(st, cand)) {
            st.rows.push_back(std::move(row));
            st.pivot_cols.push_back(col);
            process_row(std::move(st), r + 1, true);
          }
          return;
        }
        ++col;
        guided = true;
        continue;
      }
      {
        EliminationState st1 = st;
        if (elim_.add_inequation(st1, cand)) {
          std::vector<MultiPoly> row1 = row;
          st1.rows.push_back(std::move(row1));
          st1.pivot_cols.push_back(col);
          process_row(std::move(st1), r + 1, guided);
        }
      }
      {
        EliminationState st2 = std::move(st);
        if (elim_.add_equality(st2, cand)) scan(std::move(st2), r, std::move(row), col + 1, guided);
      }
      return;
    }
    process_row(std::move(st), r + 1, guided);  // zero row adds no rank
  }

  const std::vector<std::vector<MultiPoly>>& matrix_;
  const SymLimits& limits_;
  std::set<long long>& audit_;
  Eliminator elim_;
  std::vector<RankStratum> out_;
};

}  // namespace

std::vector<RankStratum> parametric_rank_split(const std::vector<std::vector<MultiPoly>>& matrix,
                                               const std::vector<MultiPoly>& base_equalities,
                                               const std::vector<MultiPoly>& base_inequations,
                                               const SymLimits& limits,
                                               std::set<long long>* audit_primes) {
  std::set<long long> local;
  std::set<long long>& audit = audit_primes ? *audit_primes : local;
  RankSplitter splitter(matrix, limits, audit);
  return splitter.run(base_equalities, base_inequations);
}

}  // namespace uorb
