// Batch front end for the uorb shared library.  All computation goes through
// the C API in uorb/uorb.h; this binary only parses arguments, routes
// subcommands, and formats output.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "uorb/uorb.h"

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string type;
  int rank = -1;
  std::vector<uint64_t> qs;
  int jobs = 1;
  uint64_t budget_states = 100000000ull;
  uint64_t budget_branches = 1000000ull;
  std::string cache_dir;
  bool no_cache = false;
  std::string out_path;
  std::string format = "json";
  bool numeric_guidance = false;
  // minrep input
  std::string vector_csv;
  // modality by explicit degree
  int poly_degree = -1;
  int mod_rank = -1;
};

class CtxHandle {
public:
  explicit CtxHandle(const std::string& type) {
    int rc = uorb_ctx_new(type.c_str(), &ctx_);
    if (rc != UORB_OK) {
      std::cerr << "error: " << uorb_last_error(nullptr) << "\n";
      std::exit(rc);
    }
  }
  ~CtxHandle() { uorb_ctx_free(ctx_); }
  uorb_ctx* get() { return ctx_; }

private:
  uorb_ctx* ctx_ = nullptr;
};

std::string type_string(const Options& opt) {
  if (opt.type.empty()) {
    std::cerr << "error: --type is required\n";
    std::exit(UORB_EINVAL);
  }
  if (opt.type.size() == 1 && opt.rank > 0) return opt.type + std::to_string(opt.rank);
  return opt.type;
}

void configure(CtxHandle& ctx, const Options& opt) {
  uorb_set_state_budget(ctx.get(), opt.budget_states);
  uorb_set_branch_budget(ctx.get(), opt.budget_branches);
  uorb_set_jobs(ctx.get(), opt.jobs);
  uorb_set_numeric_guidance(ctx.get(), opt.numeric_guidance ? 1 : 0);
  if (!opt.no_cache && !opt.cache_dir.empty()) uorb_set_cache_dir(ctx.get(), opt.cache_dir.c_str());
}

// polynomial tables as CSV; everything else stays JSON
std::string to_csv(const ordered_json& j) {
  std::string out;
  auto poly_row = [&](const std::string& name, const ordered_json& coeffs) {
    out += name;
    for (const auto& c : coeffs) out += "," + c.dump();
    out += "\n";
  };
  if (j.contains("k_poly_q")) poly_row("k_poly_q", j["k_poly_q"]);
  if (j.contains("k_poly_v")) poly_row("k_poly_v", j["k_poly_v"]);
  if (j.contains("distribution") && j["distribution"].is_object())
    for (auto it = j["distribution"].begin(); it != j["distribution"].end(); ++it)
      poly_row("d" + it.key() + "_v", it.value());
  if (out.empty()) out = "# no polynomial tables in this report\n";
  return out;
}

int emit(const Options& opt, const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  std::string payload =
      opt.format == "csv" ? to_csv(j) : j.dump(1) + "\n";
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << opt.out_path << "\n";
      return UORB_EINVAL;
    }
    f << payload;
  } else {
    std::cout << payload;
  }
  return UORB_OK;
}

int fail_with(uorb_ctx* ctx, int rc) {
  std::cerr << "error: " << uorb_last_error(ctx) << "\n";
  return rc;
}

using JsonCall = int (*)(uorb_ctx*, char**);

int run_json_command(const Options& opt, JsonCall call) {
  CtxHandle ctx(type_string(opt));
  configure(ctx, opt);
  char* out = nullptr;
  int rc = call(ctx.get(), &out);
  if (rc != UORB_OK) return fail_with(ctx.get(), rc);
  std::string text(out);
  uorb_string_free(out);
  return emit(opt, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coadjoint orbit parametrization and counting for maximal unipotent subgroups"};
  app.require_subcommand(1);
  Options opt;

  app.set_config("--config", "", "configuration file (TOML/INI style)");
  app.add_option("--type", opt.type, "simple type, e.g. A2, B3, G2 (or a bare letter with --rank)")
      ->envname("UORB_TYPE");
  app.add_option("--rank", opt.rank, "rank when --type is a bare letter")->envname("UORB_RANK");
  app.add_option("--q", opt.qs, "field sizes (comma separated)")
      ->delimiter(',')
      ->envname("UORB_Q");
  app.add_option("--jobs", opt.jobs, "worker thread bound")->envname("UORB_JOBS");
  app.add_option("--budget-states", opt.budget_states, "brute-force state budget")
      ->envname("UORB_BUDGET_STATES");
  app.add_option("--budget-branches", opt.budget_branches, "symbolic branch budget")
      ->envname("UORB_BUDGET_BRANCHES");
  app.add_option("--cache-dir", opt.cache_dir, "branch-tree cache directory")
      ->envname("UORB_CACHE_DIR");
  app.add_flag("--no-cache", opt.no_cache, "disable the branch-tree cache");
  app.add_option("--out", opt.out_path, "write the report to this file")->envname("UORB_OUT");
  app.add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("UORB_FORMAT");
  app.add_flag("--numeric-guidance", opt.numeric_guidance,
               "allow numerically guided case splits (results need oracle confirmation)");

  auto* cmd_families = app.add_subcommand("families", "parametrize the coadjoint orbit families");
  auto* cmd_count = app.add_subcommand("count", "count coadjoint orbits over F_q by brute force");
  auto* cmd_classes = app.add_subcommand("classes", "conjugacy classes of U(q) by brute force");
  auto* cmd_orbits = app.add_subcommand("orbits", "orbit partition over F_q");
  std::string action = "coadjoint";
  cmd_orbits->add_option("--action", action, "coadjoint, adjoint, or conjugacy")
      ->check(CLI::IsMember({"coadjoint", "adjoint", "conjugacy"}));
  auto* cmd_minrep = app.add_subcommand("minrep", "minimal representative of a vector over F_q");
  cmd_minrep->add_option("--vector", opt.vector_csv,
                         "comma-separated coefficients on the negative-root basis");
  auto* cmd_kpoly = app.add_subcommand("kpoly", "class-count polynomial k(U(q))");
  auto* cmd_dist = app.add_subcommand("distribution", "per-degree counts k(U(q), q^d)");
  auto* cmd_modality = app.add_subcommand("modality", "orbit-space modalities");
  cmd_modality->add_option("--poly-degree", opt.poly_degree,
                           "degree of an externally supplied k polynomial");
  cmd_modality->add_option("--poly-rank", opt.mod_rank, "rank for --poly-degree");
  auto* cmd_verify = app.add_subcommand("verify", "cross-check symbolic results with the oracle");
  auto* cmd_chars = app.add_subcommand("chars", "character degree census (type A, p >= h)");

  // global flags may appear after the subcommand
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : UORB_EINVAL;  // bad usage is invalid input
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = UORB_OK;

  if (cmd_families->parsed()) {
    rc = run_json_command(opt, &uorb_families_json);
  } else if (cmd_kpoly->parsed()) {
    rc = run_json_command(opt, &uorb_kpoly_json);
  } else if (cmd_dist->parsed()) {
    rc = run_json_command(opt, &uorb_distribution_json);
  } else if (cmd_count->parsed()) {
    if (opt.qs.empty()) {
      std::cerr << "error: count requires --q\n";
      return UORB_EINVAL;
    }
    CtxHandle ctx(type_string(opt));
    configure(ctx, opt);
    ordered_json results = ordered_json::array();
    for (uint64_t q : opt.qs) {
      uint64_t k = 0;
      int r = uorb_count(ctx.get(), q, &k);
      if (r != UORB_OK) return fail_with(ctx.get(), r);
      results.push_back(ordered_json{{"q", q}, {"k", k}});
      std::cerr << "k(U(" << q << ")) = " << k << "\n";
    }
    ordered_json j{{"schema", "uorb-count/1"}, {"type", type_string(opt)}, {"counts", results}};
    rc = emit(opt, j.dump());
  } else if (cmd_classes->parsed() || cmd_orbits->parsed()) {
    if (opt.qs.empty()) {
      std::cerr << "error: this command requires --q\n";
      return UORB_EINVAL;
    }
    if (cmd_classes->parsed()) action = "conjugacy";
    CtxHandle ctx(type_string(opt));
    configure(ctx, opt);
    char* out = nullptr;
    int r = uorb_orbits_json(ctx.get(), opt.qs[0], action.c_str(), &out);
    if (r != UORB_OK) return fail_with(ctx.get(), r);
    std::string text(out);
    uorb_string_free(out);
    rc = emit(opt, text);
  } else if (cmd_minrep->parsed()) {
    if (opt.qs.empty() || opt.vector_csv.empty()) {
      std::cerr << "error: minrep requires --q and --vector\n";
      return UORB_EINVAL;
    }
    std::vector<uint32_t> coeffs;
    size_t pos = 0;
    while (pos <= opt.vector_csv.size()) {
      size_t comma = opt.vector_csv.find(',', pos);
      if (comma == std::string::npos) comma = opt.vector_csv.size();
      try {
        coeffs.push_back(static_cast<uint32_t>(std::stoul(opt.vector_csv.substr(pos, comma - pos))));
      } catch (const std::exception&) {
        std::cerr << "error: bad --vector entry\n";
        return UORB_EINVAL;
      }
      pos = comma + 1;
      if (comma == opt.vector_csv.size()) break;
    }
    CtxHandle ctx(type_string(opt));
    configure(ctx, opt);
    char* out = nullptr;
    int r = uorb_minrep_json(ctx.get(), opt.qs[0], coeffs.data(), coeffs.size(), &out);
    if (r != UORB_OK) return fail_with(ctx.get(), r);
    std::string text(out);
    uorb_string_free(out);
    rc = emit(opt, text);
  } else if (cmd_modality->parsed()) {
    if (opt.poly_degree >= 0) {
      int rank = opt.mod_rank > 0 ? opt.mod_rank : opt.rank;
      if (rank <= 0) {
        std::cerr << "error: --poly-degree needs --poly-rank (or --rank)\n";
        return UORB_EINVAL;
      }
      char* out = nullptr;
      int r = uorb_modality_degree_json(opt.poly_degree, rank, &out);
      if (r != UORB_OK) {
        std::cerr << "error: " << uorb_last_error(nullptr) << "\n";
        return r;
      }
      std::string text(out);
      uorb_string_free(out);
      rc = emit(opt, text);
    } else {
      rc = run_json_command(opt, &uorb_modality_json);
    }
  } else if (cmd_verify->parsed()) {
    if (opt.qs.empty()) {
      std::cerr << "error: verify requires --q\n";
      return UORB_EINVAL;
    }
    CtxHandle ctx(type_string(opt));
    configure(ctx, opt);
    char* out = nullptr;
    int r = uorb_verify_json(ctx.get(), opt.qs.data(), opt.qs.size(), &out);
    if (r != UORB_OK && out == nullptr) return fail_with(ctx.get(), r);
    std::string text = out ? std::string(out) : std::string();
    uorb_string_free(out);
    if (r == UORB_OK && !text.empty()) {
      ordered_json j = ordered_json::parse(text);
      for (const auto& e : j["entries"])
        std::cerr << "q=" << e["q"] << " oracle=" << e["oracle_k"] << " poly=" << e["poly_k"]
                  << (e["count_match"].get<bool>() ? " PASS" : " FAIL") << "\n";
      rc = emit(opt, text);
    } else {
      std::cerr << "error: " << uorb_last_error(ctx.get()) << "\n";
      rc = r;
    }
  } else if (cmd_chars->parsed()) {
    if (opt.qs.empty()) {
      std::cerr << "error: chars requires --q\n";
      return UORB_EINVAL;
    }
    CtxHandle ctx(type_string(opt));
    configure(ctx, opt);
    char* out = nullptr;
    int r = uorb_chars_json(ctx.get(), opt.qs[0], &out);
    if (r != UORB_OK) return fail_with(ctx.get(), r);
    std::string text(out);
    uorb_string_free(out);
    rc = emit(opt, text);
  }

  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "elapsed: %.3fs\n", elapsed);
  return rc;
}
