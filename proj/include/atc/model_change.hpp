#pragma once

#include <string>
#include <vector>

#include "atc/kripke.hpp"
#include "atc/law.hpp"

namespace atc {

// How one model was turned into another.
struct ModelChange {
  KripkeModel base;
  KripkeModel result;
  std::vector<Val> worlds_added;
  std::vector<Val> worlds_removed;
  std::vector<Arrow> arrows_added;
  std::vector<Arrow> arrows_removed;
};

[[nodiscard]] ModelChange describe_change(const KripkeModel& base, const KripkeModel& result);

struct ChangeOutcome {
  std::vector<ModelSet> results;
  // For each result, the models that were changed to obtain it.
  std::vector<std::vector<ModelChange>> changes;
  // Set when no result exists.
  std::string reason;
};

// Union over the models of `ms` that contain w of the a-successors of w.
[[nodiscard]] ValSet guaranteed_effects(const ModelSet& ms, int action, Val w);

// Relevant target worlds of w for an effect law. Relevance terms of χ are the
// prime implicants of S ∧ χ, S being the characteristic formula of m's worlds.
[[nodiscard]] std::vector<Val> rel_targets(Val w, const Law& effect_law, const KripkeModel& m,
                                           const ModelSet& ms, const Signature& sig);

[[nodiscard]] std::vector<KripkeModel> contract_model(const KripkeModel& m, const Law& law,
                                                      const ModelSet& ms, const Signature& sig);
[[nodiscard]] ChangeOutcome contract_model_set(const ModelSet& ms, const Law& law, const Signature& sig);

[[nodiscard]] std::vector<KripkeModel> revise_model(const KripkeModel& m, const Law& law,
                                                    const ModelSet& ms, const Signature& sig);
[[nodiscard]] ChangeOutcome revise_model_set(const ModelSet& ms, const Law& law, const Signature& sig);

// The singleton canonical model for a modular theory, otherwise the singleton
// biggest model. Empty when the theory is inconsistent.
[[nodiscard]] ModelSet default_model_set(const ActionTheory& t);

}  // namespace atc
