#include "atc/postulates.hpp"

#include <algorithm>

#include "atc/entailment.hpp"
#include "atc/model_change.hpp"

namespace atc {

const PostulateResult& PostulateReport::at(const std::string& postulate) const {
  for (const auto& r : results) {
    if (r.postulate == postulate) return r;
  }
  throw Error("no postulate named '" + postulate + "'");
}

bool PostulateReport::all_hold() const {
  return std::all_of(results.begin(), results.end(), [](const PostulateResult& r) { return r.verdict != Verdict::Fails; });
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::PreconditionUnmet: return "precondition-unmet";
  }
  return {};
}

namespace {

PostulateResult make(std::string name, Verdict v, std::optional<std::string> witness = std::nullopt) {
  return {std::move(name), v, std::move(witness)};
}

std::string candidate_label(std::size_t i) { return "candidate " + std::to_string(i + 1); }

Query as_query(const ActionTheory& t) {
  Query q = t.laws();
  if (q.empty()) q.push_back(Law::static_law(Formula::top()));
  return q;
}

}  // namespace

PostulateReport check_postulates(const ActionTheory& t, const Law& phi, const ContractOptions& opt) {
  const TheoryCandidates tc = contract(t, phi, opt);
  const auto& cands = tc.candidates;
  const Signature& sig = t.sig();
  PostulateReport rep;
  rep.candidates = cands.size();

  const bool entailed = entails(t, phi);
  const bool consistent = is_consistent(t);
  const bool modular = is_modular(t).modular;

  {
    PostulateResult r = make("monotonicity", Verdict::Holds);
    for (std::size_t i = 0; i < cands.size() && r.verdict == Verdict::Holds; ++i) {
      for (const auto& l : cands[i].theory.laws()) {
        if (!entails(t, l)) {
          r.verdict = Verdict::Fails;
          r.witness = candidate_label(i) + ": " + render_law(l, sig);
          break;
        }
      }
    }
    rep.results.push_back(r);
  }

  if (entailed) {
    rep.results.push_back(make("preservation", Verdict::PreconditionUnmet));
  } else if (cands.size() == 1 && theory_equivalent(cands[0].theory, t)) {
    rep.results.push_back(make("preservation", Verdict::Holds));
  } else {
    rep.results.push_back(make("preservation", Verdict::Fails,
                               std::to_string(cands.size()) + " candidates where only the input was expected"));
  }

  auto success = [&](const std::string& name, bool precondition) {
    if (!precondition) return make(name, Verdict::PreconditionUnmet);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (entails(cands[i].theory, phi)) return make(name, Verdict::Fails, candidate_label(i) + " entails the law");
    }
    return make(name, Verdict::Holds);
  };
  const ActionTheory empty("empty", sig);
  rep.results.push_back(success("success_raw", consistent && !entails(empty, phi)));
  const bool dynamic = phi.kind != Law::Kind::Static;
  rep.results.push_back(
      success("success_modular", consistent && modular && dynamic && !entails(statics_only(t), phi)));

  if (!modular) {
    rep.results.push_back(make("recovery", Verdict::PreconditionUnmet));
  } else {
    PostulateResult r = make("recovery", Verdict::Holds);
    const Query base = as_query(t);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      ActionTheory back = cands[i].theory;
      back.add(phi);
      if (!entails(back, base)) {
        r.verdict = Verdict::Fails;
        for (const auto& l : base) {
          if (!entails(back, l)) {
            r.witness = candidate_label(i) + " with the law misses " + render_law(l, sig);
            break;
          }
        }
        break;
      }
    }
    rep.results.push_back(r);
  }

  if (!modular) {
    rep.results.push_back(make("modularity_preservation", Verdict::PreconditionUnmet));
  } else {
    PostulateResult r = make("modularity_preservation", Verdict::Holds);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!is_modular(cands[i].theory).modular) {
        r.verdict = Verdict::Fails;
        r.witness = candidate_label(i) + " is not modular";
        break;
      }
    }
    rep.results.push_back(r);
  }
  return rep;
}

PostulateResult check_equivalences(const ActionTheory& t1, const ActionTheory& t2, const Law& phi1,
                                   const Law& phi2) {
  if (!(t1.sig() == t2.sig())) throw Error("theories over different signatures");
  if (!is_modular(t1).modular || !is_modular(t2).modular) return make("equivalences", Verdict::PreconditionUnmet);
  if (!theory_equivalent(t1, t2) || !law_equivalent(phi1, phi2, t1.sig())) {
    return make("equivalences", Verdict::Holds);
  }
  const auto c1 = contract(t1, phi1).candidates;
  const auto c2 = contract(t2, phi2).candidates;
  auto paired = [](const std::vector<Candidate>& from, const std::vector<Candidate>& to) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < from.size(); ++i) {
      const bool found = std::any_of(to.begin(), to.end(), [&](const Candidate& c) {
        return theory_equivalent(from[i].theory, c.theory);
      });
      if (!found) return i;
    }
    return std::nullopt;
  };
  if (auto i = paired(c1, c2)) return make("equivalences", Verdict::Fails, "first " + candidate_label(*i) + " unpaired");
  if (auto i = paired(c2, c1)) return make("equivalences", Verdict::Fails, "second " + candidate_label(*i) + " unpaired");
  return make("equivalences", Verdict::Holds);
}

PostulateResult check_disjunctive(const ModelSet& m1, const ModelSet& m2, const Law& phi, const Signature& sig) {
  auto models_of_outcome = [&](const ModelSet& ms) {
    ModelSet all;
    for (const auto& r : contract_model_set(ms, phi, sig).results) all.insert(r.begin(), r.end());
    return all;
  };
  ModelSet both = m1;
  both.insert(m2.begin(), m2.end());
  const ModelSet lhs = models_of_outcome(both);
  ModelSet rhs = models_of_outcome(m1);
  const ModelSet r2 = models_of_outcome(m2);
  rhs.insert(r2.begin(), r2.end());
  if (lhs == rhs) return make("disjunctive", Verdict::Holds);
  for (const auto& m : lhs) {
    if (!rhs.count(m)) return make("disjunctive", Verdict::Fails, "model only reachable from the union: " + to_dot(m, sig));
  }
  for (const auto& m : rhs) {
    if (!lhs.count(m)) return make("disjunctive", Verdict::Fails, "model only reachable separately: " + to_dot(m, sig));
  }
  return make("disjunctive", Verdict::Fails);
}

}  // namespace atc
