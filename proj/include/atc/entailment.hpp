#pragma once

#include <vector>

#include "atc/kripke.hpp"
#include "atc/law.hpp"

namespace atc {

// Largest model of a theory in the valuation-world class, together with the
// worlds discarded in each elimination round.
struct BiggestModel {
  KripkeModel model;
  std::vector<std::vector<Val>> eliminated;
};

struct ModularityReport {
  bool modular = true;
  std::vector<Formula> implicit_laws;  // one per elimination round
  Formula final_law;                   // characteristic formula of the survivors
};

[[nodiscard]] BiggestModel biggest_model(const ActionTheory& t);
[[nodiscard]] bool entails(const ActionTheory& t, const Law& law);
[[nodiscard]] bool entails(const ActionTheory& t, const Query& q);
[[nodiscard]] ModularityReport is_modular(const ActionTheory& t);
[[nodiscard]] bool theory_equivalent(const ActionTheory& t1, const ActionTheory& t2);
[[nodiscard]] bool is_consistent(const ActionTheory& t);

// The theory made of the static laws of t only.
[[nodiscard]] ActionTheory statics_only(const ActionTheory& t);
// Mutual entailment of two laws over a signature.
[[nodiscard]] bool law_equivalent(const Law& a, const Law& b, const Signature& sig);

}  // namespace atc
