#include "chevalley.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>

#include "rational.hpp"

namespace uorb {

namespace {

std::vector<int> negate(std::vector<int> v) {
  for (int& c : v) c = -c;
  return v;
}

std::vector<int> add_vec(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> s(a);
  for (size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

std::vector<int> sub_vec(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> s(a);
  for (size_t i = 0; i < s.size(); ++i) s[i] -= b[i];
  return s;
}

bool is_zero_vec(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

}  // namespace

std::vector<int> StructureConstants::vec_of(int s) const {
  std::vector<int> v = rs_->beta(std::abs(s)).coeffs;
  if (s < 0) v = negate(v);
  return v;
}

int StructureConstants::n_signed(int su, int sv) const {
  return table_[static_cast<size_t>(slot(su)) * 2 * N_ + slot(sv)];
}

int StructureConstants::p_string(int su, int sv) const {
  std::vector<int> u = vec_of(su), w = vec_of(sv);
  int p = 0;
  while (true) {
    w = sub_vec(w, u);
    int sign = 0;
    if (is_zero_vec(w) || (rs_->signed_root_index(w, &sign), sign == 0)) break;
    ++p;
  }
  return p;
}

StructureConstants::StructureConstants(const RootSystem& rs) : rs_(&rs), N_(rs.num_positive()) {
  rs.require_symbolic();
  table_.assign(static_cast<size_t>(2 * N_) * 2 * N_, 0);

  auto is_root = [&](const std::vector<int>& v) {
    if (is_zero_vec(v)) return false;
    int sign = 0;
    rs_->signed_root_index(v, &sign);
    return sign != 0;
  };
  auto norm2 = [&](const std::vector<int>& v) { return rs_->norm2(v); };

  // Constants on pairs of positive roots, keyed (i, j) with i < j.
  std::map<std::pair<int, int>, int> npos;
  auto get_npos = [&](int i, int j) -> int {
    if (i < j) {
      auto it = npos.find({i, j});
      check_internal(it != npos.end(), "positive structure constant not yet computed");
      return it->second;
    }
    auto it = npos.find({j, i});
    check_internal(it != npos.end(), "positive structure constant not yet computed");
    return -it->second;
  };

  // n(u, v) for arbitrary signed roots with u + v a root, reduced to the
  // positive-pair table through the standard norm relations.
  std::function<Rational(int, int)> get_signed = [&](int su, int sv) -> Rational {
    std::vector<int> u = vec_of(su), v = vec_of(sv);
    std::vector<int> w = add_vec(u, v);
    check_internal(is_root(w), "bracket of roots with non-root sum");
    if (su > 0 && sv > 0) return Rational(get_npos(su, sv));
    if (su < 0 && sv < 0) return -get_signed(-su, -sv);
    if (su < 0 && sv > 0) return -get_signed(sv, su);
    // su > 0, sv < 0
    int sign = 0;
    int widx = rs_->signed_root_index(w, &sign);
    if (sign > 0) {
      // u = w + b with b = -v positive: n(w+b, -b) = (w,w) n(w, b) / (u,u)
      int b = -sv;
      return Rational(norm2(w), norm2(u)) * Rational(get_npos(widx, b));
    }
    // negative sum: n(u, v) = n(-v, -u), which has positive sum
    return get_signed(-sv, -su);
  };

  // Process sums in the fixed root order (which refines height), seeding each
  // sum's first special pair with a positive constant and propagating to the
  // other special pairs through the four-root relation.
  for (int g = 1; g <= N_; ++g) {
    const Root& gamma = rs.beta(g);
    if (gamma.height < 2) continue;
    std::vector<std::pair<int, int>> specials;
    for (int i = 1; i <= N_; ++i) {
      std::vector<int> rest = sub_vec(gamma.coeffs, rs.beta(i).coeffs);
      if (!is_root(rest)) continue;
      int sign = 0;
      int j = rs_->signed_root_index(rest, &sign);
      if (sign != +1) continue;
      if (i < j) specials.emplace_back(i, j);
    }
    check_internal(!specials.empty(), "no special pair for a non-simple root");
    std::sort(specials.begin(), specials.end());

    auto [ea, eb] = specials.front();  // extraspecial pair
    npos[{ea, eb}] = p_string(ea, eb) + 1;

    const std::vector<int> va = rs.beta(ea).coeffs, vb = rs.beta(eb).coeffs;
    for (size_t s = 1; s < specials.size(); ++s) {
      auto [xi, eta] = specials[s];
      const std::vector<int> vx = rs.beta(xi).coeffs, ve = rs.beta(eta).coeffs;
      // alpha + beta + (-xi) + (-eta) = 0, no two opposite:
      //   n(a,b) n(-x,-e)/(g,g) + n(b,-x) n(a,-e)/(b-x,b-x)
      //                         + n(-x,a) n(b,-e)/(a-x,a-x) = 0
      Rational t1(0), t2(0);
      std::vector<int> bx = sub_vec(vb, vx);
      if (is_root(bx))
        t1 = get_signed(eb, -xi) * get_signed(ea, -eta) / Rational(norm2(bx));
      std::vector<int> ax = sub_vec(va, vx);
      if (is_root(ax))
        t2 = get_signed(-xi, ea) * get_signed(eb, -eta) / Rational(norm2(ax));
      Rational val = Rational(norm2(gamma.coeffs)) * (t1 + t2) / Rational(npos[{ea, eb}]);
      check_internal(val.is_integer(), "structure constant propagation left the integers");
      long long n = val.as_int64();
      long long expect = p_string(xi, eta) + 1;
      check_internal(std::llabs(n) == expect,
                     "structure constant magnitude violates the root-string bound");
      npos[{xi, eta}] = static_cast<int>(n);
    }
  }

  // Fill the dense signed table.
  std::vector<int> signed_ids;
  for (int k = 1; k <= N_; ++k) {
    signed_ids.push_back(k);
    signed_ids.push_back(-k);
  }
  for (int su : signed_ids)
    for (int sv : signed_ids) {
      if (su == -sv) continue;
      std::vector<int> w = add_vec(vec_of(su), vec_of(sv));
      if (!is_root(w)) continue;
      Rational val = get_signed(su, sv);
      check_internal(val.is_integer(), "non-integral signed structure constant");
      long long n = val.as_int64();
      check_internal(std::llabs(n) == p_string(su, sv) + 1,
                     "signed structure constant violates the root-string bound");
      table_[static_cast<size_t>(slot(su)) * 2 * N_ + slot(sv)] = static_cast<int>(n);
    }
  // antisymmetry and negation rule
  for (int su : signed_ids)
    for (int sv : signed_ids) {
      if (su == -sv) continue;
      check_internal(n_signed(su, sv) == -n_signed(sv, su), "antisymmetry failed");
      check_internal(n_signed(su, sv) == -n_signed(-su, -sv), "negation rule failed");
    }

  // Coroots over the simple coroots: beta^vee = sum_i b_i d_i / d_beta alpha_i^vee.
  coroots_.resize(N_);
  for (int k = 1; k <= N_; ++k) {
    const Root& b = rs.beta(k);
    long long dn = norm2(b.coeffs);
    check_internal(dn % 2 == 0, "odd root norm");
    long long dbeta = dn / 2;
    std::vector<int> c(rs.rank());
    int gcd = 0;
    for (int i = 0; i < rs.rank(); ++i) {
      long long num = static_cast<long long>(b.coeffs[i]) * rs.d_simple(i);
      check_internal(num % dbeta == 0, "non-integral coroot coordinate");
      c[i] = static_cast<int>(num / dbeta);
      gcd = std::gcd(gcd, std::abs(c[i]));
    }
    check_internal(gcd == 1, "coroot coordinates are not primitive");
    coroots_[k - 1] = std::move(c);
  }
}

FMat ActionMatrix::eval(const Fq& F, uint32_t t) const {
  int n = powers.front().rows;
  FMat m(n, n);
  uint32_t tk = 1;
  for (const IMat& pk : powers) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long v = pk.at(i, j);
        if (v == 0) continue;
        m.at(i, j) = F.add(m.at(i, j), F.mul(F.from_int(v), tk));
      }
    tk = F.mul(tk, t);
  }
  return m;
}

ChevalleyAlgebra::ChevalleyAlgebra(const RootSystem& rs)
    : rs_(rs), sc_(rs_), N_(rs_.num_positive()), r_(rs_.rank()) {
  int dim = 2 * N_ + r_;
  actions_.resize(N_);
  for (int k = 1; k <= N_; ++k) {
    // ad(e_{beta_k}) column by column
    IMat ad(dim, dim);
    for (int c = 0; c < dim; ++c) {
      int s = signed_root_of_basis(c);
      if (s == 0) {
        int i = c - N_;  // h_i column
        int pair = rs_.pairing_with_simple_coroot(rs_.beta(k).coeffs, i);
        ad.at(basis_of_signed_root(k), c) = -pair;
        continue;
      }
      if (s == -k) {
        const std::vector<int>& cr = sc_.coroot(k);
        for (int i = 0; i < r_; ++i) ad.at(N_ + i, c) = cr[i];
        continue;
      }
      std::vector<int> sum = add_vec(rs_.beta(k).coeffs,
                                     s > 0 ? rs_.beta(s).coeffs : negate(rs_.beta(-s).coeffs));
      int sign = 0;
      int idx = rs_.signed_root_index(sum, &sign);
      if (sign == 0) continue;
      ad.at(basis_of_signed_root(sign * idx), c) = sc_.n_signed(k, s);
    }

    ActionMatrix am;
    am.beta_index = k;
    am.powers.push_back(IMat::identity(dim));
    IMat cur = IMat::identity(dim);
    for (int kk = 1;; ++kk) {
      cur = mul(cur, ad);
      // divided power: divide by kk, must stay integral on a Chevalley basis
      IMat next(dim, dim);
      bool zero = true;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          long long v = cur.at(i, j);
          check_internal(v % kk == 0, "divided power is not integral");
          next.at(i, j) = v / kk;
          if (next.at(i, j) != 0) zero = false;
        }
      cur = next;
      if (zero) break;
      check_internal(kk <= dim, "ad matrix fails to be nilpotent");
      am.powers.push_back(cur);
    }
    actions_[k - 1] = std::move(am);
  }
}

std::vector<std::pair<int, long long>> ChevalleyAlgebra::bracket_basis(int a, int b) const {
  std::vector<std::pair<int, long long>> out;
  int sa = signed_root_of_basis(a), sb = signed_root_of_basis(b);
  if (sa == 0 && sb == 0) return out;  // Cartan is abelian
  if (sa == 0 || sb == 0) {
    // [h_i, e_s] = <s, alpha_i^vee> e_s
    int h = sa == 0 ? a - N_ : b - N_;
    int s = sa == 0 ? sb : sa;
    std::vector<int> v = rs_.beta(std::abs(s)).coeffs;
    if (s < 0) v = negate(v);
    long long pair = rs_.pairing_with_simple_coroot(v, h);
    if (sa != 0) pair = -pair;  // [e_s, h_i] = -[h_i, e_s]
    if (pair != 0) out.emplace_back(sa == 0 ? b : a, pair);
    return out;
  }
  if (sa == -sb) {
    // [e_s, e_{-s}] = sign * h_s
    const std::vector<int>& cr = sc_.coroot(std::abs(sa));
    long long sign = sa > 0 ? 1 : -1;
    for (int i = 0; i < r_; ++i)
      if (cr[i]) out.emplace_back(N_ + i, sign * cr[i]);
    return out;
  }
  std::vector<int> va = rs_.beta(std::abs(sa)).coeffs;
  if (sa < 0) va = negate(va);
  std::vector<int> vb = rs_.beta(std::abs(sb)).coeffs;
  if (sb < 0) vb = negate(vb);
  std::vector<int> sum = add_vec(va, vb);
  int sign = 0;
  int idx = rs_.signed_root_index(sum, &sign);
  if (sign == 0) return out;
  long long n = sc_.n_signed(sa, sb);
  if (n != 0) out.emplace_back(basis_of_signed_root(sign * idx), n);
  return out;
}

GroupElement ChevalleyAlgebra::identity(std::shared_ptr<const Fq> F) const {
  GroupElement g;
  g.field = std::move(F);
  g.coords.assign(N_, 0);
  g.mat = FMat::identity(dim());
  return g;
}

GroupElement ChevalleyAlgebra::generator(std::shared_ptr<const Fq> F, int beta_index,
                                         uint32_t t) const {
  GroupElement g;
  g.coords.assign(N_, 0);
  g.coords[beta_index - 1] = t;
  g.mat = action(beta_index).eval(*F, t);
  g.field = std::move(F);
  return g;
}

GroupElement ChevalleyAlgebra::from_coords(std::shared_ptr<const Fq> F,
                                           const std::vector<uint32_t>& coords) const {
  check_internal(static_cast<int>(coords.size()) == N_, "coordinate vector of wrong length");
  GroupElement g = identity(F);
  for (int i = N_; i >= 1; --i)
    if (coords[i - 1]) g.mat = mul(*F, action(i).eval(*F, coords[i - 1]), g.mat);
  g.coords = coords;
  return g;
}

std::vector<uint32_t> ChevalleyAlgebra::peel(const Fq& F, const FMat& m) const {
  std::vector<uint32_t> coords(N_, 0);
  FMat cur = m;
  for (int i = 1; i <= N_; ++i) {
    // column of e_{-beta_i}: only the beta_i factor reaches the Cartan block
    int col = N_ - i;
    const std::vector<int>& cr = sc_.coroot(i);
    int pivot = -1;
    for (int k = 0; k < r_; ++k)
      if (cr[k] % F.p() != 0) {
        pivot = k;
        break;
      }
    check_internal(pivot >= 0, "coroot vanishes mod p");
    uint32_t t = F.mul(cur.at(N_ + pivot, col), F.inv(F.from_int(cr[pivot])));
    for (int k = 0; k < r_; ++k)
      check_internal(cur.at(N_ + k, col) == F.mul(t, F.from_int(cr[k])),
                     "matrix is not in the unipotent group (peel mismatch)");
    coords[i - 1] = t;
    if (t) cur = mul(F, action(i).eval(F, F.neg(t)), cur);
  }
  check_internal(cur == FMat::identity(dim()), "peel did not reach the identity");
  return coords;
}

GroupElement ChevalleyAlgebra::multiply(const GroupElement& u, const GroupElement& w) const {
  check_internal(u.field->q() == w.field->q(), "field mismatch in group multiply");
  GroupElement g;
  g.field = u.field;
  g.mat = mul(*u.field, u.mat, w.mat);
  g.coords = peel(*u.field, g.mat);
  return g;
}

GroupElement ChevalleyAlgebra::inverse(const GroupElement& u) const {
  const Fq& F = *u.field;
  GroupElement g = identity(u.field);
  for (int i = 1; i <= N_; ++i)
    if (u.coords[i - 1]) g.mat = mul(F, g.mat, action(i).eval(F, F.neg(u.coords[i - 1])));
  g.coords = peel(F, g.mat);
  return g;
}

std::vector<uint32_t> ChevalleyAlgebra::coadjoint_apply(const GroupElement& u,
                                                        const std::vector<uint32_t>& x,
                                                        int level) const {
  check_internal(level >= 0 && level <= N_, "bad filtration level");
  check_internal(static_cast<int>(x.size()) == level, "coadjoint vector has wrong length");
  const Fq& F = *u.field;
  std::vector<uint32_t> y(level, 0);
  for (int i = 0; i < level; ++i) {
    uint32_t s = 0;
    for (int j = 0; j < level; ++j)
      if (x[j]) s = F.add(s, F.mul(u.mat.at(i, j), x[j]));
    y[i] = s;
  }
  return y;
}

}  // namespace uorb
