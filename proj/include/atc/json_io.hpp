#pragma once

#include <json.hpp>

#include "atc/entailment.hpp"
#include "atc/model_change.hpp"
#include "atc/postulates.hpp"
#include "atc/theory_change.hpp"

namespace atc {

using Json = nlohmann::json;

// {"name","atoms","actions","static":[..],"effect":[{"pre","action","post"}],"exec":[{"pre","action"}]}
[[nodiscard]] Json theory_to_json(const ActionTheory& t);
[[nodiscard]] ActionTheory theory_from_json(const Json& j);

// {"worlds":[["token","~coffee","~hot"],..],"relations":{"buy":[[0,2],..]}}
[[nodiscard]] Json model_to_json(const KripkeModel& m, const Signature& sig);
[[nodiscard]] KripkeModel model_from_json(const Json& j, const Signature& sig);
[[nodiscard]] Json model_set_to_json(const ModelSet& ms, const Signature& sig);

[[nodiscard]] Json provenance_to_json(const Provenance& p, const Signature& sig);
[[nodiscard]] Json candidates_to_json(const TheoryCandidates& tc, const Signature& sig);
[[nodiscard]] Json model_change_to_json(const ModelChange& c, const Signature& sig);
[[nodiscard]] Json modularity_to_json(const ModularityReport& r, const Signature& sig);
[[nodiscard]] Json postulate_to_json(const PostulateResult& r);
[[nodiscard]] Json report_to_json(const PostulateReport& r);

// Law-level difference. Removed and added laws of the same shape and action
// are paired up as modifications.
[[nodiscard]] Json law_diff(const ActionTheory& before, const ActionTheory& after);

}  // namespace atc
