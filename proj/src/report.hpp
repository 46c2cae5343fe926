#pragma once

#include <json.hpp>
#include <string>

#include "countpoly.hpp"
#include "kirillov.hpp"

namespace uorb {

using json = nlohmann::ordered_json;

// Every payload carries the reproducibility metadata (root order and sign
// convention identifiers, engine version) under "meta".
json meta_json();

json root_system_json(const RootSystem& rs);
// debugging dump: one {beta, gamma, n} triple per nonzero bracket constant
json structure_constants_json(const ChevalleyAlgebra& L);
json partition_json(const std::string& type, const OrbitPartition& part);
json minrep_json(const std::string& type, uint64_t q, const std::vector<uint32_t>& input,
                 const MinimalRep& mr);
json tree_json(const BranchTree& tree);
BranchTree tree_from_json(const json& j);
json kpoly_json(const KPolyReport& rep);
json distribution_json(const KPolyReport& rep);
json modality_json(const std::string& source, int degree, int rank);
json verify_json(const VerifyReport& rep);
json chars_json(const std::string& type, const CharacterTable& table);

// polynomial serializations
json intpoly_json(const IntPoly& p);
IntPoly intpoly_from_json(const json& j);
// exponent-vector map over the family's parameter list
json multipoly_json(const MultiPoly& p, const std::vector<int>& params);
MultiPoly multipoly_from_json(const json& j, const std::vector<int>& params);

// branch-tree cache, keyed by type/rank/order/sign/engine-version
std::string tree_cache_path(const std::string& dir, const RootSystem& rs);
bool load_tree_cache(const std::string& dir, const RootSystem& rs, BranchTree* out);
void save_tree_cache(const std::string& dir, const BranchTree& tree);

}  // namespace uorb
