#pragma once

#include <optional>
#include <vector>

#include "atc/law.hpp"
#include "atc/kripke.hpp"

namespace atc {

// A prime implicant π of S∧φ extended to a full valuation by a completion
// over the atoms π leaves open.
struct ContractionContext {
  Term pi;
  Term completion;
  Val valuation = 0;
};

// Inclusion-minimal subset of E_a that, with S, entails an effect law.
struct SupportSet {
  std::vector<Law> laws;
};

struct Provenance {
  enum class Algorithm { Preserved, Executability, Effect, Static };
  Algorithm algorithm = Algorithm::Preserved;
  std::optional<ContractionContext> context;
  std::optional<Term> pi_prime;
  std::vector<SupportSet> kernels;
  std::optional<Val> admitted;  // valuation let in by static contraction
  // Number of laws before laws entailed by S alone were dropped.
  std::size_t unsimplified_size = 0;
};

struct Candidate {
  ActionTheory theory;
  Provenance provenance;
};

struct TheoryCandidates {
  std::vector<Candidate> candidates;
};

struct ContractOptions {
  // Drop generated laws that the static laws alone already entail.
  bool simplify = true;
  // Emit the frame laws of one context as a single law.
  bool factor_frame = false;
  // Keep only the first of several theory-equivalent candidates.
  bool dedupe_equivalent = true;
  // For modular input, skip effect-contraction candidates that still entail
  // the contracted law (a retained law forbids every π′-successor).
  bool drop_unsuccessful = true;
};

[[nodiscard]] std::vector<ContractionContext> contexts(const ActionTheory& t, const Formula& phi);
[[nodiscard]] std::vector<SupportSet> support_sets(const ActionTheory& t, int action, const Formula& phi,
                                                   const Formula& psi);

[[nodiscard]] TheoryCandidates contract_executability(const ActionTheory& t, const Law& law,
                                                      const ContractOptions& opt = {});
[[nodiscard]] TheoryCandidates contract_effect(const ActionTheory& t, const Law& law,
                                               const ContractOptions& opt = {});
[[nodiscard]] TheoryCandidates contract_static(const ActionTheory& t, const Formula& phi,
                                               const ContractOptions& opt = {});
[[nodiscard]] TheoryCandidates contract(const ActionTheory& t, const Law& law, const ContractOptions& opt = {});

[[nodiscard]] ActionTheory theory_from_model_set(const ModelSet& ms, const Signature& sig,
                                                 const std::string& name = "induced");

[[nodiscard]] std::string context_to_string(const ContractionContext& c, const Signature& sig);
[[nodiscard]] std::string algorithm_name(Provenance::Algorithm a);

}  // namespace atc
