#include "uorb/uorb.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "report.hpp"

using namespace uorb;

struct uorb_ctx {
  std::shared_ptr<ChevalleyAlgebra> algebra;  // built lazily (symbolic cap applies)
  RootSystem roots;
  Budgets budgets;
  int jobs = 1;
  std::string cache_dir;
  bool caching = false;
  bool numeric_guidance = false;
  std::optional<BranchTree> tree;
  std::optional<KPolyReport> kreport;
  std::string last_error;

  explicit uorb_ctx(RootSystem rs) : roots(std::move(rs)) {}
};

namespace {

std::string& creation_error() {
  static std::string err;
  return err;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int run(uorb_ctx* ctx, const std::function<void()>& body) {
  if (!ctx) return UORB_EINVAL;
  try {
    body();
    ctx->last_error.clear();
    return UORB_OK;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return UORB_EINTERNAL;
  }
}

const ChevalleyAlgebra& algebra_of(uorb_ctx* ctx) {
  if (!ctx->algebra) ctx->algebra = std::make_shared<ChevalleyAlgebra>(ctx->roots);
  return *ctx->algebra;
}

const BranchTree& tree_of(uorb_ctx* ctx) {
  if (!ctx->tree) {
    BranchTree tree;
    if (ctx->caching && load_tree_cache(ctx->cache_dir, ctx->roots, &tree)) {
      ctx->tree = std::move(tree);
    } else {
      SymLimits limits;
      limits.max_branches = ctx->budgets.branches;
      limits.numeric_guidance = ctx->numeric_guidance;
      ctx->tree = expand_branch_tree(algebra_of(ctx), limits);
      if (ctx->caching) save_tree_cache(ctx->cache_dir, *ctx->tree);
    }
  }
  return *ctx->tree;
}

const KPolyReport& kreport_of(uorb_ctx* ctx) {
  if (!ctx->kreport)
    ctx->kreport = k_polynomial_report(algebra_of(ctx), tree_of(ctx), ctx->budgets, ctx->jobs);
  return *ctx->kreport;
}

}  // namespace

extern "C" {

const char* uorb_version(void) { return kEngineVersion; }

int uorb_ctx_new(const char* type, uorb_ctx** out) {
  if (!out) return UORB_EINVAL;
  *out = nullptr;
  if (!type) {
    creation_error() = "type string is null";
    return UORB_EINVAL;
  }
  try {
    *out = new uorb_ctx(make_root_system(type));
    return UORB_OK;
  } catch (const Error& e) {
    creation_error() = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    creation_error() = e.what();
    return UORB_EINTERNAL;
  }
}

void uorb_ctx_free(uorb_ctx* ctx) { delete ctx; }

const char* uorb_last_error(const uorb_ctx* ctx) {
  if (!ctx) return creation_error().c_str();
  return ctx->last_error.c_str();
}

int uorb_set_state_budget(uorb_ctx* ctx, uint64_t states) {
  return run(ctx, [&] {
    if (states == 0) fail_invalid("state budget must be positive");
    ctx->budgets.states = states;
    ctx->kreport.reset();
  });
}

int uorb_set_branch_budget(uorb_ctx* ctx, uint64_t branches) {
  return run(ctx, [&] {
    if (branches == 0) fail_invalid("branch budget must be positive");
    ctx->budgets.branches = branches;
    ctx->tree.reset();
    ctx->kreport.reset();
  });
}

int uorb_set_jobs(uorb_ctx* ctx, int jobs) {
  return run(ctx, [&] {
    if (jobs < 1) fail_invalid("jobs must be at least 1");
    ctx->jobs = jobs;
  });
}

int uorb_set_cache_dir(uorb_ctx* ctx, const char* dir) {
  return run(ctx, [&] {
    ctx->caching = dir != nullptr;
    ctx->cache_dir = dir ? dir : "";
  });
}

int uorb_set_numeric_guidance(uorb_ctx* ctx, int enabled) {
  return run(ctx, [&] {
    ctx->numeric_guidance = enabled != 0;
    ctx->tree.reset();
    ctx->kreport.reset();
  });
}

int uorb_root_system_json(uorb_ctx* ctx, char** out_json) {
  return run(ctx, [&] { *out_json = dup_string(root_system_json(ctx->roots).dump()); });
}

int uorb_families_json(uorb_ctx* ctx, char** out_json) {
  return run(ctx, [&] {
    const BranchTree& tree = tree_of(ctx);
    json j = tree_json(tree);
    if (!tree.complete)
      throw Error(errc::resource_limit,
                  "branch tree incomplete (budget exhausted); draft written:\n" + j.dump());
    *out_json = dup_string(j.dump());
  });
}

int uorb_kpoly_json(uorb_ctx* ctx, char** out_json) {
  return run(ctx, [&] { *out_json = dup_string(kpoly_json(kreport_of(ctx)).dump()); });
}

int uorb_distribution_json(uorb_ctx* ctx, char** out_json) {
  return run(ctx, [&] { *out_json = dup_string(distribution_json(kreport_of(ctx)).dump()); });
}

int uorb_modality_json(uorb_ctx* ctx, char** out_json) {
  return run(ctx, [&] {
    const KPolyReport& rep = kreport_of(ctx);
    json j = modality_json("computed:" + rep.type, rep.k_q.degree(), rep.rank);
    j["certified"] = rep.certified;
    *out_json = dup_string(j.dump());
  });
}

int uorb_count(uorb_ctx* ctx, uint64_t q, uint64_t* out_k) {
  return run(ctx, [&] {
    OrbitEngine eng(std::make_shared<ChevalleyAlgebra>(algebra_of(ctx)), q, ctx->budgets);
    *out_k = eng.coadjoint_orbits().k();
  });
}

int uorb_orbits_json(uorb_ctx* ctx, uint64_t q, const char* action, char** out_json) {
  return run(ctx, [&] {
    std::string act = action ? action : "coadjoint";
    OrbitEngine eng(std::make_shared<ChevalleyAlgebra>(algebra_of(ctx)), q, ctx->budgets);
    OrbitPartition part;
    if (act == "coadjoint")
      part = eng.coadjoint_orbits();
    else if (act == "adjoint")
      part = eng.adjoint_orbits();
    else if (act == "conjugacy")
      part = eng.conjugacy_classes();
    else
      fail_invalid("unknown action '" + act + "' (expected coadjoint, adjoint, or conjugacy)");
    *out_json = dup_string(partition_json(ctx->roots.type_name(), part).dump());
  });
}

int uorb_minrep_json(uorb_ctx* ctx, uint64_t q, const uint32_t* coeffs, size_t len,
                     char** out_json) {
  return run(ctx, [&] {
    std::vector<uint32_t> X(coeffs, coeffs + len);
    OrbitEngine eng(std::make_shared<ChevalleyAlgebra>(algebra_of(ctx)), q, ctx->budgets);
    MinimalRep mr = eng.minimal_representative(X);
    *out_json = dup_string(minrep_json(ctx->roots.type_name(), q, X, mr).dump());
  });
}

int uorb_verify_json(uorb_ctx* ctx, const uint64_t* qs, size_t nq, char** out_json) {
  return run(ctx, [&] {
    std::vector<uint64_t> qlist(qs, qs + nq);
    auto L = std::make_shared<ChevalleyAlgebra>(algebra_of(ctx));
    VerifyReport vr =
        verify_against_oracle(L, tree_of(ctx), kreport_of(ctx), qlist, ctx->budgets, ctx->jobs);
    *out_json = dup_string(verify_json(vr).dump());
    if (!vr.all_pass)
      throw Error(errc::certification, "verification failed:\n" + verify_json(vr).dump());
  });
}

int uorb_chars_json(uorb_ctx* ctx, uint64_t q, char** out_json) {
  return run(ctx, [&] {
    if (ctx->roots.series() != Series::A)
      fail_invalid("character tables are implemented for type A only");
    CharacterTable table = kirillov_characters(ctx->roots.rank(), q, ctx->budgets);
    *out_json = dup_string(chars_json(ctx->roots.type_name(), table).dump());
  });
}

int uorb_modality_from_degree(int degree, int rank, int64_t* out_mod_u, int64_t* out_mod_b) {
  try {
    auto [mu, mb] = modality_from_degree(degree, rank);
    if (out_mod_u) *out_mod_u = mu;
    if (out_mod_b) *out_mod_b = mb;
    return UORB_OK;
  } catch (const Error& e) {
    creation_error() = e.what();
    return static_cast<int>(e.code());
  }
}

int uorb_modality_degree_json(int degree, int rank, char** out_json) {
  try {
    *out_json = dup_string(modality_json("degree", degree, rank).dump());
    return UORB_OK;
  } catch (const Error& e) {
    creation_error() = e.what();
    return static_cast<int>(e.code());
  }
}

void uorb_string_free(char* s) { std::free(s); }

}  // extern "C"
