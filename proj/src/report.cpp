#include "report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace uorb {

json meta_json() {
  return json{{"engine_version", kEngineVersion},
              {"root_order", kRootOrderId},
              {"sign_convention", kSignConventionId}};
}

json root_system_json(const RootSystem& rs) {
  json j;
  j["schema"] = "uorb-root-system/1";
  j["series"] = std::string(1, static_cast<char>(rs.series()));
  j["rank"] = rs.rank();
  json simples = json::array();
  for (int i = 1; i <= rs.rank(); ++i) simples.push_back("alpha_" + std::to_string(i));
  j["simple_roots"] = simples;
  json pos = json::array();
  for (const Root& r : rs.positive_roots()) pos.push_back(r.coeffs);
  j["positive_roots"] = pos;
  json order = json::array();
  for (int i = 1; i <= rs.num_positive(); ++i) order.push_back(i);
  j["beta_order"] = order;  // positive_roots are stored in beta order
  j["bad_primes"] = rs.bad_primes();
  j["meta"] = meta_json();
  return j;
}

json structure_constants_json(const ChevalleyAlgebra& L) {
  const RootSystem& rs = L.roots();
  int N = L.num_positive();
  auto root_vec = [&](int s) {
    std::vector<int> v = rs.beta(std::abs(s)).coeffs;
    if (s < 0)
      for (int& c : v) c = -c;
    return v;
  };
  json triples = json::array();
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int si : {i, -i})
        for (int sj : {j, -j}) {
          if (si == -sj) continue;
          int n = L.constants().n_signed(si, sj);
          if (n == 0) continue;
          triples.push_back(json{{"beta", root_vec(si)}, {"gamma", root_vec(sj)}, {"n", n}});
        }
  return json{{"schema", "uorb-structure-constants/1"},
              {"type", rs.type_name()},
              {"triples", triples},
              {"meta", meta_json()}};
}

// extension fields record their modulus so results are reproducible
json field_json(uint64_t q) {
  auto F = Fq::make_q(q);
  json j{{"p", F->p()}, {"e", F->e()}};
  if (F->e() > 1) j["modulus"] = F->modulus();
  return j;
}

json partition_json(const std::string& type, const OrbitPartition& part) {
  json j;
  j["schema"] = "uorb-orbits/1";
  j["type"] = type;
  j["action"] = part.action;
  j["q"] = part.q;
  j["field"] = field_json(part.q);
  j["level"] = part.level;
  j["k"] = part.k();
  json orbits = json::array();
  for (const Orbit& o : part.orbits) orbits.push_back(json{{"rep", o.rep}, {"size", o.size}});
  j["orbits"] = orbits;
  if (part.action == "coadjoint" && part.level > 0) {
    // the even-exponent census is a theorem only for the full coadjoint
    // space; below the top level odd exponents are legitimate
    try {
      json dist = json::object();
      for (auto [d, n] : part.even_size_distribution()) dist[std::to_string(d)] = n;
      j["distribution"] = dist;
    } catch (const Error&) {
    }
  }
  json hist = json::object();
  std::map<int, uint64_t> exps;
  for (const Orbit& o : part.orbits) exps[OrbitPartition::exponent_of(o.size, part.q)] += 1;
  for (auto [e, n] : exps) hist[std::to_string(e)] = n;
  j["size_exponents"] = hist;
  j["meta"] = meta_json();
  return j;
}

json minrep_json(const std::string& type, uint64_t q, const std::vector<uint32_t>& input,
                 const MinimalRep& mr) {
  json pattern = json::array();
  for (StepKind k : mr.pattern) pattern.push_back(step_kind_name(k));
  return json{{"schema", "uorb-minrep/1"},
              {"type", type},
              {"q", q},
              {"input", input},
              {"rep", mr.rep},
              {"pattern", pattern},
              {"inert_count", mr.inert_count},
              {"meta", meta_json()}};
}

json intpoly_json(const IntPoly& p) {
  json a = json::array();
  for (long long c : p.c) a.push_back(c);
  return a;
}

IntPoly intpoly_from_json(const json& j) {
  IntPoly p;
  for (const auto& v : j) p.c.push_back(v.get<long long>());
  p.trim();
  return p;
}

json multipoly_json(const MultiPoly& p, const std::vector<int>& params) {
  json obj = json::object();
  for (const auto& [mono, coeff] : p.terms()) {
    std::vector<int> exps(params.size(), 0);
    for (auto [var, e] : mono.factors) {
      auto it = std::find(params.begin(), params.end(), static_cast<int>(var));
      check_internal(it != params.end(), "polynomial uses a variable outside the family");
      exps[static_cast<size_t>(it - params.begin())] = e;
    }
    std::string key;
    for (size_t i = 0; i < exps.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(exps[i]);
    }
    obj[key] = coeff;
  }
  return obj;
}

MultiPoly multipoly_from_json(const json& j, const std::vector<int>& params) {
  MultiPoly p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<int> exps;
    const std::string& key = it.key();
    if (!key.empty()) {
      size_t pos = 0;
      while (pos <= key.size()) {
        size_t comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        exps.push_back(std::stoi(key.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == key.size()) break;
      }
    }
    check_internal(exps.size() == params.size() || (exps.empty() && params.empty()),
                   "exponent vector length mismatch in cache");
    Monomial m;
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0)
        m.factors.emplace_back(static_cast<uint16_t>(params[i]), static_cast<uint16_t>(exps[i]));
    std::sort(m.factors.begin(), m.factors.end());
    p.add_term(m, it.value().get<long long>());
  }
  return p;
}

json tree_json(const BranchTree& tree) {
  json j;
  j["schema"] = "uorb-branch-tree/1";
  j["type"] = tree.type;
  j["rank"] = tree.rank;
  j["n_steps"] = tree.n_steps;
  j["order_metadata"] = json{{"root_order", tree.order_id},
                             {"sign_convention", tree.sign_id},
                             {"engine_version", tree.engine_version}};
  j["complete"] = tree.complete;
  j["audit_primes"] = tree.audit_primes;
  json leaves = json::array();
  for (const FamilyDescriptor& leaf : tree.leaves) {
    json jl;
    json pattern = json::array();
    for (StepKind k : leaf.pattern) pattern.push_back(step_kind_name(k));
    jl["pattern"] = pattern;
    jl["params"] = leaf.rn_steps;
    json eqs = json::array();
    for (const MultiPoly& e : leaf.equalities) eqs.push_back(multipoly_json(e, leaf.rn_steps));
    jl["equalities"] = eqs;
    json ineqs = json::array();
    for (const MultiPoly& e : leaf.inequations) ineqs.push_back(multipoly_json(e, leaf.rn_steps));
    jl["inequations"] = ineqs;
    jl["inert_count"] = leaf.inert_count;
    jl["dimension"] = leaf.dimension;
    jl["numerically_guided"] = leaf.numerically_guided;
    leaves.push_back(std::move(jl));
  }
  j["leaves"] = leaves;
  return j;
}

BranchTree tree_from_json(const json& j) {
  BranchTree tree;
  tree.type = j.at("type").get<std::string>();
  tree.rank = j.at("rank").get<int>();
  tree.n_steps = j.at("n_steps").get<int>();
  const json& meta = j.at("order_metadata");
  tree.order_id = meta.at("root_order").get<std::string>();
  tree.sign_id = meta.at("sign_convention").get<std::string>();
  tree.engine_version = meta.at("engine_version").get<std::string>();
  tree.complete = j.at("complete").get<bool>();
  for (const auto& p : j.at("audit_primes")) tree.audit_primes.insert(p.get<long long>());
  for (const auto& jl : j.at("leaves")) {
    FamilyDescriptor leaf;
    for (const auto& s : jl.at("pattern"))
      leaf.pattern.push_back(step_kind_from_name(s.get<std::string>()));
    for (const auto& v : jl.at("params")) leaf.rn_steps.push_back(v.get<int>());
    for (const auto& e : jl.at("equalities"))
      leaf.equalities.push_back(multipoly_from_json(e, leaf.rn_steps));
    for (const auto& e : jl.at("inequations"))
      leaf.inequations.push_back(multipoly_from_json(e, leaf.rn_steps));
    leaf.inert_count = jl.at("inert_count").get<int>();
    leaf.dimension = jl.at("dimension").get<int>();
    leaf.numerically_guided = jl.at("numerically_guided").get<bool>();
    tree.leaves.push_back(std::move(leaf));
  }
  return tree;
}

json kpoly_json(const KPolyReport& rep) {
  json j;
  j["schema"] = "uorb-kpoly/1";
  j["type"] = rep.type;
  j["rank"] = rep.rank;
  j["n_positive"] = rep.n_positive;
  j["k_poly_q"] = intpoly_json(rep.k_q);
  j["k_poly_v"] = intpoly_json(rep.k_v);
  json dist = json::object();
  for (const auto& [d, p] : rep.distribution_v) dist[std::to_string(d)] = intpoly_json(p);
  j["distribution"] = dist;
  j["modality"] = json{{"u", rep.mod_u}, {"b", rep.mod_b}};
  j["certified"] = rep.certified;
  if (!rep.certification_note.empty()) j["certification_note"] = rep.certification_note;
  j["audit_primes"] = rep.audit_primes;
  j["samples"] = rep.samples_used;
  j["audit_reverified_qs"] = rep.audit_reverified_qs;
  j["k_poly_v_pretty"] = rep.k_v.str("v");
  j["meta"] = meta_json();
  return j;
}

json distribution_json(const KPolyReport& rep) {
  json j;
  j["schema"] = "uorb-distribution/1";
  j["type"] = rep.type;
  j["rank"] = rep.rank;
  json dist = json::object();
  json pretty = json::object();
  for (const auto& [d, p] : rep.distribution_v) {
    dist[std::to_string(d)] = intpoly_json(p);
    pretty[std::to_string(d)] = p.str("v");
  }
  j["distribution"] = dist;
  j["distribution_pretty"] = pretty;
  j["k_poly_v"] = intpoly_json(rep.k_v);
  j["certified"] = rep.certified;
  j["audit_primes"] = rep.audit_primes;
  j["samples"] = rep.samples_used;
  j["meta"] = meta_json();
  return j;
}

json modality_json(const std::string& source, int degree, int rank) {
  auto [mu, mb] = modality_from_degree(degree, rank);
  return json{{"schema", "uorb-modality/1"}, {"source", source},      {"degree", degree},
              {"rank", rank},                {"modality_u_dual", mu}, {"modality_b_nilradical", mb},
              {"meta", meta_json()}};
}

json verify_json(const VerifyReport& rep) {
  json j;
  j["schema"] = "uorb-verify/1";
  j["type"] = rep.type;
  json entries = json::array();
  for (const VerifyEntry& e : rep.entries) {
    json je{{"q", e.q},
            {"oracle_k", e.oracle_k},
            {"poly_k", e.poly_k},
            {"count_match", e.count_match},
            {"pattern_checked", e.pattern_checked}};
    if (e.pattern_checked) je["pattern_match"] = e.pattern_match;
    if (!e.note.empty()) je["note"] = e.note;
    entries.push_back(std::move(je));
  }
  j["entries"] = entries;
  j["all_pass"] = rep.all_pass;
  j["meta"] = meta_json();
  return j;
}

json chars_json(const std::string& type, const CharacterTable& table) {
  json j;
  j["schema"] = "uorb-chars/1";
  j["type"] = type;
  j["q"] = table.q;
  j["field"] = field_json(table.q);
  j["group_order"] = table.group_order;
  j["num_classes"] = table.class_sizes.size();
  j["num_characters"] = table.degrees.size();
  json census = json::object();
  for (auto [d, n] : table.count_by_log_degree) census[std::to_string(d)] = n;
  j["degree_census"] = census;
  unsigned long long sum_sq = 0;
  for (uint64_t d : table.degrees) sum_sq += d * d;
  j["sum_degree_squares"] = sum_sq;
  j["orthogonality_residual"] = table.orthogonality_residual();
  j["meta"] = meta_json();
  return j;
}

std::string tree_cache_path(const std::string& dir, const RootSystem& rs) {
  std::string name = "tree_" + rs.type_name() + "_" + kRootOrderId + "_" + kSignConventionId +
                     "_" + kEngineVersion + ".json";
  return (std::filesystem::path(dir) / name).string();
}

bool load_tree_cache(const std::string& dir, const RootSystem& rs, BranchTree* out) {
  std::string path = tree_cache_path(dir, rs);
  std::ifstream in(path);
  if (!in) return false;
  json j;
  try {
    in >> j;
    BranchTree tree = tree_from_json(j);
    if (tree.type != rs.type_name() || tree.rank != rs.rank()) return false;
    if (tree.order_id != kRootOrderId || tree.sign_id != kSignConventionId ||
        tree.engine_version != kEngineVersion)
      return false;  // stale cache: ignore, never reuse
    *out = std::move(tree);
    return true;
  } catch (const std::exception&) {
    return false;  // unreadable cache is treated as absent
  }
}

void save_tree_cache(const std::string& dir, const BranchTree& tree) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  RootSystem rs = make_root_system(tree.type);
  std::ofstream out(tree_cache_path(dir, rs));
  if (!out) fail_invalid("cannot write cache under '" + dir + "'");
  out << tree_json(tree).dump(1) << "\n";
}

}  // namespace uorb
