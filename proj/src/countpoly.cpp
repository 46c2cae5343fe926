#include "countpoly.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "rational.hpp"

namespace uorb {

int IntPoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != 0) return i;
  return -1;
}

void IntPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

long long IntPoly::eval(long long x) const {
  long long acc = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (__builtin_mul_overflow(acc, x, &acc)) fail_internal("polynomial evaluation overflow");
    if (__builtin_add_overflow(acc, c[i], &acc)) fail_internal("polynomial evaluation overflow");
  }
  return acc;
}

bool IntPoly::operator==(const IntPoly& o) const {
  size_t n = std::max(c.size(), o.c.size());
  for (size_t i = 0; i < n; ++i)
    if (coeff(i) != o.coeff(i)) return false;
  return true;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    long long s;
    if (__builtin_add_overflow(coeff(i), o.coeff(i), &s)) fail_internal("polynomial overflow");
    r.c[i] = s;
  }
  r.trim();
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  IntPoly r;
  if (c.empty() || o.c.empty()) return r;
  r.c.assign(c.size() + o.c.size() - 1, 0);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) {
      long long t;
      if (__builtin_mul_overflow(c[i], o.c[j], &t)) fail_internal("polynomial overflow");
      if (__builtin_add_overflow(r.c[i + j], t, &r.c[i + j])) fail_internal("polynomial overflow");
    }
  r.trim();
  return r;
}

std::string IntPoly::str(const std::string& var) const {
  int d = degree();
  if (d < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = d; i >= 0; --i) {
    long long v = coeff(i);
    if (v == 0) continue;
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    long long a = std::llabs(v);
    if (a != 1 || i == 0) os << a;
    if (i >= 1) {
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    if (__builtin_mul_overflow(r, n - k + i, &r)) fail_internal("binomial overflow");
    r /= i;
  }
  return r;
}

}  // namespace

IntPoly q_to_v_basis(const IntPoly& p) {
  // p(q) = p(v + 1): c_v[k] = sum_n c_q[n] C(n, k)
  IntPoly r;
  int d = p.degree();
  if (d < 0) return r;
  r.c.assign(d + 1, 0);
  for (int n = 0; n <= d; ++n) {
    long long cn = p.coeff(n);
    if (cn == 0) continue;
    for (int k = 0; k <= n; ++k) {
      long long term;
      if (__builtin_mul_overflow(cn, binomial_ll(n, k), &term)) fail_internal("basis overflow");
      if (__builtin_add_overflow(r.c[k], term, &r.c[k])) fail_internal("basis overflow");
    }
  }
  r.trim();
  return r;
}

IntPoly v_to_q_basis(const IntPoly& p) {
  // p(v) = p(q - 1): c_q[k] = sum_n c_v[n] C(n, k) (-1)^{n-k}
  IntPoly r;
  int d = p.degree();
  if (d < 0) return r;
  r.c.assign(d + 1, 0);
  for (int n = 0; n <= d; ++n) {
    long long cn = p.coeff(n);
    if (cn == 0) continue;
    for (int k = 0; k <= n; ++k) {
      long long term;
      if (__builtin_mul_overflow(cn, binomial_ll(n, k), &term)) fail_internal("basis overflow");
      if ((n - k) % 2 == 1) term = -term;
      if (__builtin_add_overflow(r.c[k], term, &r.c[k])) fail_internal("basis overflow");
    }
  }
  r.trim();
  return r;
}

std::vector<int> constrained_vars(const FamilyDescriptor& fam) {
  std::set<int> vars;
  for (const MultiPoly& e : fam.equalities)
    for (int v : e.variables()) vars.insert(v);
  for (const MultiPoly& e : fam.inequations) {
    int single = 0;
    if (e.is_monomial_in_single_variable(&single) && e.total_degree() == 1) continue;
    for (int v : e.variables()) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

namespace {

// points of the constrained core: assignments of the constrained variables
// over the nonzero torus satisfying all equalities and inequations
uint64_t count_core(const FamilyDescriptor& fam, uint64_t q, const Budgets& budgets) {
  auto F = Fq::make_q(q);
  std::vector<int> vars = constrained_vars(fam);
  size_t s = vars.size();
  uint64_t space = 1;
  for (size_t i = 0; i < s; ++i) {
    if (space > budgets.states / (q - 1))
      fail_limit("family point count: (q-1)^" + std::to_string(s) + " exceeds the state budget");
    space *= (q - 1);
  }
  std::vector<uint32_t> values(s, 1);
  uint64_t count = 0;
  std::map<int, uint32_t> assign;
  while (true) {
    assign.clear();
    for (size_t i = 0; i < s; ++i) assign[vars[i]] = values[i];
    bool ok = true;
    for (const MultiPoly& e : fam.equalities)
      if (e.eval(*F, assign) != 0) {
        ok = false;
        break;
      }
    if (ok)
      for (const MultiPoly& e : fam.inequations) {
        int single = 0;
        if (e.is_monomial_in_single_variable(&single) && e.total_degree() == 1)
          continue;  // a_j != 0 holds on the torus by construction
        if (e.eval(*F, assign) == 0) {
          ok = false;
          break;
        }
      }
    if (ok) ++count;
    if (s == 0) break;
    size_t pos = 0;
    while (pos < s) {
      if (++values[pos] < q) break;
      values[pos] = 1;
      ++pos;
    }
    if (pos == s) break;
  }
  return count;
}

}  // namespace

uint64_t count_points(const FamilyDescriptor& fam, uint64_t q, const Budgets& budgets) {
  uint64_t core = count_core(fam, q, budgets);
  size_t free_vars = fam.rn_steps.size() - constrained_vars(fam).size();
  uint64_t count = core;
  for (size_t i = 0; i < free_vars; ++i) {
    if (count > UINT64_MAX / (q - 1)) fail_limit("family point count overflows 64 bits");
    count *= (q - 1);
  }
  return count;
}

std::vector<uint64_t> choose_sample_qs(const RootSystem& rs, const std::set<long long>& audit,
                                       size_t count) {
  std::vector<uint64_t> out;
  for (long long p = 2; out.size() < count; ++p) {
    if (!is_prime_ll(p)) continue;
    if (!rs.is_good_prime(p)) continue;
    if (audit.count(p)) continue;
    out.push_back(static_cast<uint64_t>(p));
    if (p > 1000) fail_internal("sample prime search ran away");
  }
  return out;
}

IntPoly interpolate_family(const FamilyDescriptor& fam, const std::vector<uint64_t>& sample_qs,
                           const Budgets& budgets) {
  // Only the constrained core is interpolated (degree <= #constrained); the
  // free coordinates contribute an exact (q-1)^f factor.
  size_t c = constrained_vars(fam).size();
  size_t f = fam.rn_steps.size() - c;
  if (sample_qs.size() < c + 2)
    fail_invalid("interpolation needs at least " + std::to_string(c + 2) + " sample points");
  std::vector<long long> xs, ys;
  for (uint64_t q : sample_qs) {
    xs.push_back(static_cast<long long>(q));
    ys.push_back(static_cast<long long>(count_core(fam, q, budgets)));
  }
  // Lagrange through the first c+1 nodes, exact rational arithmetic
  size_t nodes = c + 1;
  std::vector<Rational> coeffs(nodes, Rational(0));
  for (size_t i = 0; i < nodes; ++i) {
    // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j), ascending coeffs
    std::vector<Rational> basis = {Rational(1)};
    Rational denom(1);
    for (size_t j = 0; j < nodes; ++j) {
      if (j == i) continue;
      basis.push_back(Rational(0));
      for (size_t k = basis.size() - 1; k >= 1; --k)
        basis[k] = basis[k - 1] - basis[k] * Rational(xs[j]);
      basis[0] = -(basis[0] * Rational(xs[j]));
      denom = denom * Rational(xs[i] - xs[j]);
    }
    Rational w = Rational(ys[i]) / denom;
    for (size_t k = 0; k < basis.size(); ++k) coeffs[k] = coeffs[k] + basis[k] * w;
  }
  IntPoly poly;
  poly.c.resize(nodes, 0);
  for (size_t k = 0; k < nodes; ++k) {
    if (!coeffs[k].is_integer())
      fail_cert("family " + fam.pattern_string() + " interpolates to non-integer coefficient " +
                coeffs[k].str() + ": not polynomial as sampled");
    poly.c[k] = coeffs[k].as_int64();
  }
  poly.trim();
  // held-out validation on every extra sample
  for (size_t i = nodes; i < xs.size(); ++i)
    if (poly.eval(xs[i]) != ys[i])
      fail_cert("family " + fam.pattern_string() + " fails held-out validation at q = " +
                std::to_string(xs[i]) + " (" + std::to_string(poly.eval(xs[i])) + " vs " +
                std::to_string(ys[i]) + "): not polynomial as sampled");
  // multiply in the free torus factor (q-1)^f
  IntPoly qm1;
  qm1.c = {-1, 1};
  for (size_t i = 0; i < f; ++i) poly = poly * qm1;
  return poly;
}

namespace {

// deterministic parallel map: results land by index regardless of scheduling;
// the first exception is rethrown after all workers join
template <typename Fn>
void parallel_for(size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

KPolyReport k_polynomial_report(const ChevalleyAlgebra& L, const BranchTree& tree,
                                const Budgets& budgets, int jobs) {
  const RootSystem& rs = L.roots();
  KPolyReport rep;
  rep.type = tree.type;
  rep.rank = tree.rank;
  rep.n_positive = rs.num_positive();
  rep.audit_primes = tree.audit_primes;
  rep.certified = true;

  if (!tree.complete) {
    rep.certified = false;
    rep.certification_note = "branch tree incomplete (limit exhausted); draft results only";
  }

  // per-family interpolation; sample set shared across families for the report
  size_t max_core = 0;
  for (const auto& leaf : tree.leaves) max_core = std::max(max_core, constrained_vars(leaf).size());
  std::vector<uint64_t> samples = choose_sample_qs(rs, tree.audit_primes, max_core + 2);
  rep.samples_used = samples;

  rep.family_polys_q.resize(tree.leaves.size());
  std::vector<std::string> errors(tree.leaves.size());
  parallel_for(tree.leaves.size(), jobs, [&](size_t i) {
    const FamilyDescriptor& fam = tree.leaves[i];
    size_t need = constrained_vars(fam).size() + 2;
    std::vector<uint64_t> fam_samples(samples.begin(),
                                      samples.begin() + std::min(samples.size(), need));
    try {
      rep.family_polys_q[i] = interpolate_family(fam, fam_samples, budgets);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  for (const std::string& e : errors)
    if (!e.empty()) throw Error(errc::certification, e);

  // guided leaves need oracle confirmation before certification
  bool any_guided = false;
  for (const auto& leaf : tree.leaves) any_guided |= leaf.numerically_guided;
  if (any_guided) {
    rep.certified = false;
    rep.certification_note = "numerically guided leaves present; run verify before trusting";
  }

  IntPoly k;
  for (const auto& p : rep.family_polys_q) k = k + p;
  rep.k_q = k;
  rep.k_v = q_to_v_basis(k);

  // degree distribution by d = inert/2
  std::map<int, IntPoly> dist_q;
  for (size_t i = 0; i < tree.leaves.size(); ++i) {
    int d = tree.leaves[i].inert_count / 2;
    dist_q[d] = dist_q[d] + rep.family_polys_q[i];
  }
  IntPoly dist_total;
  for (auto& [d, p] : dist_q) {
    rep.distribution_v[d] = q_to_v_basis(p);
    dist_total = dist_total + p;
  }
  check_internal(dist_total == rep.k_q, "degree distribution does not sum to k");

  // invariants of certified polynomials
  int deg = rep.k_q.degree();
  int max_dim = 0;
  for (size_t i = 0; i < tree.leaves.size(); ++i) {
    if (rep.family_polys_q[i].degree() < 0) continue;  // empty stratum contributes nothing
    max_dim = std::max(max_dim, tree.leaves[i].dimension);
  }
  if (tree.complete) {
    if (deg != max_dim)
      fail_cert("k polynomial degree " + std::to_string(deg) +
                " differs from the maximal family dimension " + std::to_string(max_dim));
    for (long long c : rep.k_v.c)
      if (c < 0) fail_cert("negative coefficient in the v-basis form of k");
    if (rep.k_v.coeff(0) != 1) fail_cert("constant term of k in v is not 1");
    if (rep.k_v.coeff(1) != rs.num_positive())
      fail_cert("v-coefficient of k is " + std::to_string(rep.k_v.coeff(1)) +
                ", expected the number of positive roots " + std::to_string(rs.num_positive()));
  }

  rep.mod_u = deg;
  rep.mod_b = deg - rs.rank();

  // good primes in the audit set force an oracle re-verification
  for (long long p : tree.audit_primes) {
    if (!rs.is_good_prime(p)) continue;
    uint64_t space = 1;
    bool feasible = true;
    for (int i = 0; i < rs.num_positive(); ++i) {
      if (space > budgets.states / static_cast<uint64_t>(p)) {
        feasible = false;
        break;
      }
      space *= static_cast<uint64_t>(p);
    }
    if (!feasible) {
      rep.certified = false;
      rep.certification_note = "audit prime " + std::to_string(p) +
                               " requires oracle re-verification beyond the state budget";
      continue;
    }
    auto Lp = std::make_shared<ChevalleyAlgebra>(rs);
    OrbitEngine eng(Lp, static_cast<uint64_t>(p), budgets);
    uint64_t oracle = eng.coadjoint_orbits().k();
    if (static_cast<long long>(oracle) != rep.k_q.eval(p))
      fail_cert("audit re-verification failed at the good prime " + std::to_string(p) +
                ": oracle " + std::to_string(oracle) + " vs polynomial " +
                std::to_string(rep.k_q.eval(p)));
    rep.audit_reverified_qs.push_back(static_cast<uint64_t>(p));
  }

  return rep;
}

std::pair<int, int> modality_from_degree(int degree, int rank) {
  if (degree < 0) fail_invalid("modality needs a nonzero polynomial");
  if (rank < 1) fail_invalid("modality needs a positive rank");
  return {degree, degree - rank};
}

VerifyReport verify_against_oracle(std::shared_ptr<const ChevalleyAlgebra> L,
                                   const BranchTree& tree, const KPolyReport& kreport,
                                   const std::vector<uint64_t>& qs, const Budgets& budgets,
                                   int jobs) {
  VerifyReport out;
  out.type = tree.type;
  out.entries.resize(qs.size());
  const RootSystem& rs = L->roots();
  int N = rs.num_positive();

  parallel_for(qs.size(), jobs, [&](size_t qi) {
    uint64_t q = qs[qi];
    VerifyEntry ent;
    ent.q = q;
    OrbitEngine eng(L, q, budgets);

    // per-point stratification census when the whole level chain fits the
    // budget (otherwise only the top-level count is compared)
    uint64_t chain = 0, power = 1;
    bool feasible = true;
    for (int i = 1; i <= N; ++i) {
      if (power > budgets.states / q) {
        feasible = false;
        break;
      }
      power *= q;
      chain += power;
    }
    feasible = feasible && chain <= budgets.states;

    const OrbitPartition& part = feasible ? eng.level_partition(N) : eng.coadjoint_orbits();
    ent.oracle_k = part.k();
    ent.poly_k = kreport.k_q.eval(static_cast<long long>(q));
    ent.count_match = static_cast<long long>(ent.oracle_k) == ent.poly_k;

    // parity check comes free with the distribution
    part.even_size_distribution();

    if (feasible) {
      ent.pattern_checked = true;
      ent.pattern_match = true;
      // one minimal representative per orbit: unique stratum, matching
      // pattern, inert count consistent with the orbit size
      std::vector<uint64_t> leaf_tallies(tree.leaves.size(), 0);
      std::vector<MinimalRep> orbit_minreps;
      orbit_minreps.reserve(part.orbits.size());
      std::set<std::vector<uint32_t>> distinct_reps;
      for (const Orbit& o : part.orbits) {
        MinimalRep mr = eng.minimal_representative(o.rep);
        int matches = 0;
        size_t match_idx = 0;
        for (size_t li = 0; li < tree.leaves.size(); ++li)
          if (tree.leaves[li].matches(eng.field(), mr.rep)) {
            ++matches;
            match_idx = li;
          }
        if (matches != 1) {
          ent.pattern_match = false;
          ent.note = "an orbit representative satisfies " + std::to_string(matches) + " strata";
          break;
        }
        if (tree.leaves[match_idx].pattern != mr.pattern) {
          ent.pattern_match = false;
          ent.note = "leaf pattern disagrees with the oracle pattern";
          break;
        }
        if (OrbitPartition::exponent_of(o.size, q) != mr.inert_count) {
          ent.pattern_match = false;
          ent.note = "orbit size exponent differs from the inert count";
          break;
        }
        ++leaf_tallies[match_idx];
        distinct_reps.insert(mr.rep);
        orbit_minreps.push_back(std::move(mr));
      }
      if (ent.pattern_match && distinct_reps.size() != part.k()) {
        ent.pattern_match = false;
        ent.note = "minimal representatives are not distinct across orbits";
      }
      if (ent.pattern_match) {
        // exhaustive constancy: every point reproduces its orbit's minimal rep
        for (uint64_t idx = 0; idx < power && ent.pattern_match; ++idx) {
          std::vector<uint32_t> X = eng.decode(idx, N);
          uint32_t oid = eng.orbit_id_at_level(N, X);
          MinimalRep mr = eng.minimal_representative(X);
          if (mr.rep != orbit_minreps[oid].rep || mr.pattern != orbit_minreps[oid].pattern) {
            ent.pattern_match = false;
            ent.note = "minimal representative is not constant on an orbit";
          }
        }
      }
      if (ent.pattern_match) {
        // each stratum must count exactly its minimal representatives
        for (size_t li = 0; li < tree.leaves.size(); ++li) {
          uint64_t expect = count_points(tree.leaves[li], q, budgets);
          if (expect != leaf_tallies[li]) {
            ent.pattern_match = false;
            ent.note = "stratum census mismatch for pattern " + tree.leaves[li].pattern_string();
            break;
          }
        }
      }
    }
    out.entries[qi] = std::move(ent);
  });

  out.all_pass = true;
  for (const auto& e : out.entries) {
    if (!e.count_match) out.all_pass = false;
    if (e.pattern_checked && !e.pattern_match) out.all_pass = false;
  }
  return out;
}

}  // namespace uorb
