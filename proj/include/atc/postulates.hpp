#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atc/theory_change.hpp"

namespace atc {

enum class Verdict { Holds, Fails, PreconditionUnmet };

struct PostulateResult {
  std::string postulate;
  Verdict verdict = Verdict::Holds;
  std::optional<std::string> witness;  // the violating candidate or law
};

struct PostulateReport {
  std::vector<PostulateResult> results;
  std::size_t candidates = 0;

  [[nodiscard]] const PostulateResult& at(const std::string& postulate) const;
  [[nodiscard]] bool all_hold() const;
};

[[nodiscard]] std::string verdict_name(Verdict v);

// Monotonicity, preservation, success (raw and under modularity), recovery
// and preservation of modularity, evaluated on contract(t, phi).
[[nodiscard]] PostulateReport check_postulates(const ActionTheory& t, const Law& phi,
                                               const ContractOptions& opt = {});

[[nodiscard]] PostulateResult check_equivalences(const ActionTheory& t1, const ActionTheory& t2, const Law& phi1,
                                                 const Law& phi2);

// Semantic disjunctive rule: contracting from the union of two model sets
// yields the same models as contracting from each set separately.
[[nodiscard]] PostulateResult check_disjunctive(const ModelSet& m1, const ModelSet& m2, const Law& phi,
                                                const Signature& sig);

}  // namespace atc
