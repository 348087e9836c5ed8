#include "atc/model_change.hpp"

#include <algorithm>
#include <iterator>

#include "atc/entailment.hpp"

namespace atc {

ModelChange describe_change(const KripkeModel& base, const KripkeModel& result) {
  ModelChange c{base, result, {}, {}, {}, {}};
  const auto& bw = base.worlds();
  const auto& rw = result.worlds();
  std::set_difference(rw.begin(), rw.end(), bw.begin(), bw.end(), std::back_inserter(c.worlds_added));
  std::set_difference(bw.begin(), bw.end(), rw.begin(), rw.end(), std::back_inserter(c.worlds_removed));
  const auto& ba = base.arrows();
  const auto& ra = result.arrows();
  std::set_difference(ra.begin(), ra.end(), ba.begin(), ba.end(), std::back_inserter(c.arrows_added));
  std::set_difference(ba.begin(), ba.end(), ra.begin(), ra.end(), std::back_inserter(c.arrows_removed));
  return c;
}

ValSet guaranteed_effects(const ModelSet& ms, int action, Val w) {
  ValSet u;
  for (const auto& m : ms) {
    if (!m.has_world(w)) continue;
    for (Val s : m.successors(action, w)) u.set(s);
  }
  return u;
}

namespace {

Literal literal_at(Val v, int atom) { return {atom, ((v >> atom) & 1u) != 0}; }

// Is ℓ (true in w2) inside some prime implicant of S∧ψ′ contained in w2 for
// a ψ′ guaranteed after a at the source? A term t with ℓ ∈ t ⊆ w2 extends to
// such an implicant iff val(t) stays inside the model's worlds while flipping
// ℓ in t reaches a valuation outside the guaranteed successors.
bool justified_by_guaranteed(Literal l, Val w2, const ValSet& worlds, const ValSet& guaranteed, int n) {
  const std::uint32_t all = (Val{1} << n) - 1;
  const std::uint32_t others = all & ~(1u << l.atom);
  for (std::uint32_t extra = others;; extra = (extra - 1) & others) {
    const Term t{extra | (1u << l.atom), w2 & (extra | (1u << l.atom))};
    if ((t.models(n) & ~worlds).none()) {
      const Term flipped{t.care, t.pol ^ (1u << l.atom)};
      if ((flipped.models(n) & ~guaranteed).any()) return true;
    }
    if (extra == 0) break;
  }
  return false;
}

std::vector<KripkeModel> single_results(std::vector<KripkeModel> c, const KripkeModel& base) {
  return minimal_under(c, Comparator{Closeness::SubsetLex, base});
}

}  // namespace

std::vector<Val> rel_targets(Val w, const Law& law, const KripkeModel& m, const ModelSet& ms,
                             const Signature& sig) {
  if (law.kind != Law::Kind::Effect) throw Error("relevant targets are defined for effect laws");
  if (!m.has_world(w)) throw Error("source world is not in the model");
  std::vector<Val> out;
  if (!law.pre.eval(w)) return out;
  const int n = sig.num_atoms();
  const ValSet worlds = m.world_set();
  const ValSet not_psi = worlds & ~law.post.truth_table(n);
  const auto relevance = prime_implicants(not_psi, n);
  const ValSet u = guaranteed_effects(ms, law.action, w);
  const ValSet guaranteed = u & worlds;

  for (Val w2 : m.worlds()) {
    if (law.post.eval(w2)) continue;
    const Term target = Term::full(w2, n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const Literal l = literal_at(w2, i);
      const bool in_relevance = std::any_of(relevance.begin(), relevance.end(), [&](const Term& t) {
        return t.contains(l) && t.subset_of(target);
      });
      if (in_relevance) continue;
      if (literal_at(w, i) == l) {
        bool seen = false;
        for (Val s = 0; s < sig.num_valuations() && !seen; ++s) seen = u.test(s) && l.holds(s);
        ok = seen;
      } else {
        ok = justified_by_guaranteed(l, w2, worlds, guaranteed, n);
      }
    }
    if (ok) out.push_back(w2);
  }
  return out;
}

std::vector<KripkeModel> contract_model(const KripkeModel& m, const Law& law, const ModelSet& ms,
                                        const Signature& sig) {
  if (!satisfies_law(m, law)) return {m};
  std::vector<KripkeModel> cand;
  switch (law.kind) {
    case Law::Kind::Exec:
      for (Val w : m.worlds()) {
        if (!law.pre.eval(w)) continue;
        KripkeModel c = m;
        c.remove_arrows_from(law.action, w);
        cand.push_back(std::move(c));
      }
      break;
    case Law::Kind::Effect:
      for (Val w : m.worlds()) {
        if (!law.pre.eval(w)) continue;
        for (Val w2 : rel_targets(w, law, m, ms, sig)) {
          KripkeModel c = m;
          c.add_arrow(law.action, w, w2);
          cand.push_back(std::move(c));
        }
      }
      break;
    case Law::Kind::Static:
      for (Val v = 0; v < sig.num_valuations(); ++v) {
        if (m.has_world(v) || law.pre.eval(v)) continue;
        KripkeModel c = m;
        c.add_world(v);
        cand.push_back(std::move(c));
      }
      break;
  }
  return single_results(std::move(cand), m);
}

ChangeOutcome contract_model_set(const ModelSet& ms, const Law& law, const Signature& sig) {
  ChangeOutcome out;
  std::set<ModelSet> seen;
  for (const auto& m : ms) {
    for (const auto& c : contract_model(m, law, ms, sig)) {
      ModelSet r = ms;
      r.insert(c);
      if (seen.insert(r).second) {
        out.results.push_back(std::move(r));
        out.changes.push_back({describe_change(m, c)});
      }
    }
  }
  if (out.results.empty()) {
    out.reason = ms.empty() ? "empty model set"
                            : (law.kind == Law::Kind::Static ? "cannot contract a tautology"
                                                              : "no world where the law can be falsified");
  }
  return out;
}

std::vector<KripkeModel> revise_model(const KripkeModel& m, const Law& law, const ModelSet& ms,
                                      const Signature& sig) {
  const int n = sig.num_atoms();
  switch (law.kind) {
    case Law::Kind::Static: {
      const ValSet tt = law.pre.truth_table(n) & sig.all();
      if (tt.none()) throw Error("cannot revise by an unsatisfiable static law");
      KripkeModel kept = m;
      for (Val w : m.worlds()) {
        if (!tt.test(w)) kept.remove_world(w);
      }
      if (!kept.worlds().empty()) return {kept};
      std::vector<KripkeModel> out;
      for (Val v = 0; v < sig.num_valuations(); ++v) {
        if (tt.test(v)) out.push_back(KripkeModel({v}));
      }
      return out;
    }
    case Law::Kind::Effect: {
      KripkeModel r = m;
      for (const auto& a : m.arrows()) {
        if (a.action == law.action && law.pre.eval(a.from) && !law.post.eval(a.to)) {
          r.remove_arrow(a.action, a.from, a.to);
        }
      }
      return {r};
    }
    case Law::Kind::Exec: {
      const Law never = Law::effect(law.pre, law.action, Formula::bot());
      std::vector<KripkeModel> partial{m};
      for (Val w : m.worlds()) {
        if (!law.pre.eval(w) || m.has_successor(law.action, w)) continue;
        const auto targets = rel_targets(w, never, m, ms, sig);
        std::vector<KripkeModel> next;
        for (const auto& p : partial) {
          for (Val t : targets) {
            KripkeModel c = p;
            c.add_arrow(law.action, w, t);
            next.push_back(std::move(c));
          }
        }
        partial = std::move(next);
      }
      return partial;
    }
  }
  return {};
}

ChangeOutcome revise_model_set(const ModelSet& ms, const Law& law, const Signature& sig) {
  ChangeOutcome out;
  if (ms.empty()) {
    out.reason = "empty model set";
    return out;
  }
  ModelSet satisfying;
  for (const auto& m : ms) {
    if (satisfies_law(m, law)) satisfying.insert(m);
  }
  if (!satisfying.empty()) {
    out.results.push_back(satisfying);
    out.changes.push_back({});
    return out;
  }
  std::vector<ModelSet> partial{ModelSet{}};
  std::vector<std::vector<ModelChange>> partial_changes{{}};
  for (const auto& m : ms) {
    const auto options = revise_model(m, law, ms, sig);
    std::vector<ModelSet> next;
    std::vector<std::vector<ModelChange>> next_changes;
    for (std::size_t i = 0; i < partial.size(); ++i) {
      for (const auto& o : options) {
        ModelSet r = partial[i];
        r.insert(o);
        auto ch = partial_changes[i];
        ch.push_back(describe_change(m, o));
        next.push_back(std::move(r));
        next_changes.push_back(std::move(ch));
      }
    }
    partial = std::move(next);
    partial_changes = std::move(next_changes);
  }
  std::set<ModelSet> seen;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (seen.insert(partial[i]).second) {
      out.results.push_back(partial[i]);
      out.changes.push_back(partial_changes[i]);
    }
  }
  if (out.results.empty()) out.reason = "some model has no relevant target for a required arrow";
  return out;
}

ModelSet default_model_set(const ActionTheory& t) {
  const BiggestModel b = biggest_model(t);
  if (b.model.worlds().empty()) return {};
  return {b.model};
}

}  // namespace atc
