#include "fqengine.hpp"

#include <algorithm>
#include <deque>

namespace uorb {

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::I: return "I";
    case StepKind::R0: return "R0";
    case StepKind::Rn: return "Rn";
  }
  fail_internal("unreachable step kind");
}

StepKind step_kind_from_name(const std::string& s) {
  if (s == "I") return StepKind::I;
  if (s == "R0") return StepKind::R0;
  if (s == "Rn") return StepKind::Rn;
  fail_invalid("unknown step kind '" + s + "'");
}

int OrbitPartition::exponent_of(uint64_t size, uint64_t q) {
  int e = 0;
  uint64_t s = size;
  while (s > 1) {
    if (s % q != 0) fail_internal("orbit size " + std::to_string(size) + " is not a power of q");
    s /= q;
    ++e;
  }
  return e;
}

std::map<int, uint64_t> OrbitPartition::even_size_distribution() const {
  std::map<int, uint64_t> dist;
  for (const Orbit& o : orbits) {
    int e = exponent_of(o.size, q);
    if (e % 2 != 0)
      fail_internal("orbit of size q^" + std::to_string(e) +
                    " has odd exponent: parity invariant violated");
    dist[e / 2] += 1;
  }
  return dist;
}

OrbitEngine::OrbitEngine(std::shared_ptr<const ChevalleyAlgebra> L, uint64_t q, Budgets budgets)
    : L_(std::move(L)), budgets_(budgets), N_(L_->num_positive()) {
  const RootSystem& rs = L_->roots();
  long long p = 0;
  int e = 0;
  if (!rs.is_good_prime_power(q, &p, &e)) {
    // distinguish the two rejection reasons in the message
    unsigned long long m = q;
    long long pp = 0;
    for (long long d = 2; d * d <= static_cast<long long>(m); ++d)
      if (m % d == 0) {
        pp = d;
        break;
      }
    if (pp == 0) pp = static_cast<long long>(m);
    unsigned long long mm = m;
    while (pp > 1 && mm % pp == 0) mm /= pp;
    if (m >= 2 && mm == 1 && !rs.is_good_prime(pp))
      fail_invalid("q = " + std::to_string(q) + " is a power of the bad prime " +
                   std::to_string(pp) + " for type " + rs.type_name());
    fail_invalid("q = " + std::to_string(q) + " is not a good prime power for type " +
                 rs.type_name());
  }
  F_ = Fq::make(p, e);
  for (int i = 1; i <= N_; ++i)
    if (rs.beta(i).height == 1) simple_beta_indices_.push_back(i);
  check_internal(static_cast<int>(simple_beta_indices_.size()) == rs.rank(),
                 "simple roots are not the height-1 roots");
  level_orbit_ids_.resize(N_ + 1);
  level_partitions_.resize(N_ + 1);
}

uint64_t OrbitEngine::encode(const std::vector<uint32_t>& x) const {
  uint64_t idx = 0;
  for (uint32_t c : x) idx = idx * F_->q() + c;
  return idx;
}

std::vector<uint32_t> OrbitEngine::decode(uint64_t idx, int len) const {
  std::vector<uint32_t> x(len);
  for (int i = len - 1; i >= 0; --i) {
    x[i] = static_cast<uint32_t>(idx % F_->q());
    idx /= F_->q();
  }
  return x;
}

namespace {

uint64_t checked_pow(uint64_t q, int e, uint64_t budget, const std::string& what) {
  uint64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > budget / q)
      fail_limit(what + ": state space q^" + std::to_string(e) + " exceeds the budget of " +
                 std::to_string(budget) + " states");
    v *= q;
  }
  if (v > budget)
    fail_limit(what + ": state space q^" + std::to_string(e) + " exceeds the budget of " +
               std::to_string(budget) + " states");
  return v;
}

}  // namespace

std::vector<FMat> OrbitEngine::coadjoint_generator_blocks(int level) const {
  std::vector<FMat> blocks;
  for (int k : simple_beta_indices_)
    for (uint32_t t = 1; t < F_->q(); ++t) {
      FMat full = L_->action(k).eval(*F_, t);
      FMat blk(level, level);
      for (int i = 0; i < level; ++i)
        for (int j = 0; j < level; ++j) blk.at(i, j) = full.at(i, j);
      blocks.push_back(std::move(blk));
    }
  return blocks;
}

OrbitPartition OrbitEngine::coadjoint_orbits(int level) const {
  if (level < 0) level = N_;
  if (level > N_) fail_invalid("level exceeds the number of positive roots");
  uint64_t space = checked_pow(F_->q(), level, budgets_.states, "coadjoint orbits");
  std::vector<FMat> gens = coadjoint_generator_blocks(level);

  OrbitPartition part;
  part.action = "coadjoint";
  part.q = F_->q();
  part.level = level;
  std::vector<uint8_t> visited(space, 0);
  std::vector<uint64_t> frontier;
  std::vector<uint32_t> x(level), y(level);
  const Fq& F = *F_;
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
      x = decode(cur, level);
      for (const FMat& g : gens) {
        for (int i = 0; i < level; ++i) {
          uint32_t s = 0;
          for (int j = 0; j < level; ++j)
            if (x[j]) s = F.add(s, F.mul(g.at(i, j), x[j]));
          y[i] = s;
        }
        uint64_t nxt = encode(y);
        if (!visited[nxt]) {
          visited[nxt] = 1;
          frontier.push_back(nxt);
        }
      }
    }
    Orbit o;
    o.rep = decode(start, level);
    o.size = size;
    part.orbits.push_back(std::move(o));
  }
  return part;
}

OrbitPartition OrbitEngine::adjoint_orbits() const {
  uint64_t space = checked_pow(F_->q(), N_, budgets_.states, "adjoint orbits");
  int dim = L_->dim();
  int off = N_ + L_->rank();
  std::vector<FMat> gens;
  for (int k : simple_beta_indices_)
    for (uint32_t t = 1; t < F_->q(); ++t) {
      FMat full = L_->action(k).eval(*F_, t);
      FMat blk(N_, N_);
      for (int i = 0; i < N_; ++i)
        for (int j = 0; j < N_; ++j) blk.at(i, j) = full.at(off + i, off + j);
      // the positive-root block must be closed: nothing maps out of it
      for (int i = 0; i < off; ++i)
        for (int j = 0; j < N_; ++j)
          check_internal(full.at(i, off + j) == 0, "adjoint action leaves the nilradical");
      gens.push_back(std::move(blk));
    }
  (void)dim;

  OrbitPartition part;
  part.action = "adjoint";
  part.q = F_->q();
  part.level = N_;
  std::vector<uint8_t> visited(space, 0);
  std::vector<uint64_t> frontier;
  std::vector<uint32_t> x(N_), y(N_);
  const Fq& F = *F_;
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
      x = decode(cur, N_);
      for (const FMat& g : gens) {
        for (int i = 0; i < N_; ++i) {
          uint32_t s = 0;
          for (int j = 0; j < N_; ++j)
            if (x[j]) s = F.add(s, F.mul(g.at(i, j), x[j]));
          y[i] = s;
        }
        uint64_t nxt = encode(y);
        if (!visited[nxt]) {
          visited[nxt] = 1;
          frontier.push_back(nxt);
        }
      }
    }
    Orbit o;
    o.rep = decode(start, N_);
    o.size = size;
    part.orbits.push_back(std::move(o));
  }
  return part;
}

OrbitPartition OrbitEngine::conjugacy_classes() const {
  uint64_t space = checked_pow(F_->q(), N_, budgets_.states, "conjugacy classes");
  const Fq& F = *F_;
  struct Gen {
    GroupElement g, ginv;
  };
  std::vector<Gen> gens;
  for (int k : simple_beta_indices_)
    for (uint32_t t = 1; t < F.q(); ++t) {
      Gen gen{L_->generator(F_, k, t), L_->generator(F_, k, F.neg(t))};
      gens.push_back(std::move(gen));
    }

  OrbitPartition part;
  part.action = "conjugacy";
  part.q = F.q();
  part.level = N_;
  std::vector<uint8_t> visited(space, 0);
  // frontier carries matrices to avoid rebuilding them from coordinates
  std::vector<std::pair<uint64_t, FMat>> frontier;
  for (uint64_t start = 0; start < space; ++start) {
    if (visited[start]) continue;
    visited[start] = 1;
    GroupElement u = L_->from_coords(F_, decode(start, N_));
    frontier.clear();
    frontier.emplace_back(start, u.mat);
    uint64_t size = 0;
    while (!frontier.empty()) {
      auto [cur, mat] = std::move(frontier.back());
      frontier.pop_back();
      ++size;
      (void)cur;
      for (const Gen& gen : gens) {
        FMat conj = mul(F, gen.g.mat, mul(F, mat, gen.ginv.mat));
        uint64_t nxt = encode(L_->peel(F, conj));
        if (!visited[nxt]) {
          visited[nxt] = 1;
          frontier.emplace_back(nxt, std::move(conj));
        }
      }
    }
    Orbit o;
    o.rep = decode(start, N_);
    o.size = size;
    part.orbits.push_back(std::move(o));
  }
  return part;
}

void OrbitEngine::ensure_level_partitions(int up_to) const {
  // total memory across levels is dominated by the top one; guard the sum
  uint64_t total = 0;
  for (int i = 1; i <= up_to; ++i)
    total += checked_pow(F_->q(), i, budgets_.states, "level partitions");
  if (total > budgets_.states)
    fail_limit("level partitions: cumulative state space " + std::to_string(total) +
               " exceeds the budget of " + std::to_string(budgets_.states) + " states");
  for (int i = 1; i <= up_to; ++i) {
    if (!level_orbit_ids_[i].empty()) continue;
    uint64_t space = 1;
    for (int k = 0; k < i; ++k) space *= F_->q();
    std::vector<FMat> gens = coadjoint_generator_blocks(i);
    std::vector<uint32_t>& ids = level_orbit_ids_[i];
    ids.assign(space, 0);
    OrbitPartition part;
    part.action = "coadjoint";
    part.q = F_->q();
    part.level = i;
    std::vector<uint8_t> visited(space, 0);
    std::vector<uint64_t> frontier;
    std::vector<uint32_t> x(i), y(i);
    const Fq& F = *F_;
    for (uint64_t start = 0; start < space; ++start) {
      if (visited[start]) continue;
      uint32_t oid = static_cast<uint32_t>(part.orbits.size());
      visited[start] = 1;
      ids[start] = oid;
      frontier.clear();
      frontier.push_back(start);
      uint64_t size = 0;
      while (!frontier.empty()) {
        uint64_t cur = frontier.back();
        frontier.pop_back();
        ++size;
        x = decode(cur, i);
        for (const FMat& g : gens) {
          for (int a = 0; a < i; ++a) {
            uint32_t s = 0;
            for (int b = 0; b < i; ++b)
              if (x[b]) s = F.add(s, F.mul(g.at(a, b), x[b]));
            y[a] = s;
          }
          uint64_t nxt = encode(y);
          if (!visited[nxt]) {
            visited[nxt] = 1;
            ids[nxt] = oid;
            frontier.push_back(nxt);
          }
        }
      }
      Orbit o;
      o.rep = decode(start, i);
      o.size = size;
      part.orbits.push_back(std::move(o));
    }
    level_partitions_[i] = std::move(part);
  }
}

const OrbitPartition& OrbitEngine::level_partition(int level) const {
  if (level < 1 || level > N_) fail_invalid("bad filtration level");
  ensure_level_partitions(level);
  return level_partitions_[level];
}

uint32_t OrbitEngine::orbit_id_at_level(int level, const std::vector<uint32_t>& x) const {
  ensure_level_partitions(level);
  return level_orbit_ids_[level][encode(x)];
}

MinimalRep OrbitEngine::minimal_representative(const std::vector<uint32_t>& X) const {
  if (static_cast<int>(X.size()) != N_)
    fail_invalid("minimal representative expects a level-N coefficient vector");
  for (uint32_t c : X)
    if (c >= F_->q()) fail_invalid("coefficient out of range for F_q");
  ensure_level_partitions(N_);

  MinimalRep out;
  std::vector<uint32_t> rep;  // grows one level per step
  for (int i = 1; i <= N_; ++i) {
    std::vector<uint32_t> Xi(X.begin(), X.begin() + i);
    uint32_t target = level_orbit_ids_[i][encode(Xi)];
    // intersect the orbit of X with the line over the current representative
    std::vector<uint32_t> line(rep);
    line.push_back(0);
    int hits = 0;
    uint32_t hit_value = 0;
    for (uint32_t lam = 0; lam < F_->q(); ++lam) {
      line[i - 1] = lam;
      if (level_orbit_ids_[i][encode(line)] == target) {
        ++hits;
        hit_value = lam;
      }
    }
    if (hits == static_cast<int>(F_->q())) {
      out.pattern.push_back(StepKind::I);
      rep.push_back(0);
      ++out.inert_count;
    } else if (hits == 1) {
      out.pattern.push_back(hit_value == 0 ? StepKind::R0 : StepKind::Rn);
      rep.push_back(hit_value);
    } else {
      fail_internal("line meets the orbit in " + std::to_string(hits) +
                    " points: inert/ramified dichotomy violated");
    }
  }
  out.rep = std::move(rep);
  return out;
}

}  // namespace uorb
