#include "atc/entailment.hpp"

#include <algorithm>

namespace atc {

BiggestModel biggest_model(const ActionTheory& t) {
  const auto vals = models_of(t.statics(), t.sig());
  std::set<Val> worlds(vals.begin(), vals.end());
  BiggestModel out;
  while (true) {
    KripkeModel m = maximal_frame(t, worlds);
    std::vector<Val> dead;
    for (Val w : worlds) {
      for (const auto& x : t.execs()) {
        if (x.pre.eval(w) && !m.has_successor(x.action, w)) {
          dead.push_back(w);
          break;
        }
      }
    }
    if (dead.empty()) {
      out.model = std::move(m);
      return out;
    }
    for (Val w : dead) worlds.erase(w);
    out.eliminated.push_back(std::move(dead));
  }
}

namespace {

bool entails_in(const ActionTheory& t, const KripkeModel& b, const Law& law) {
  switch (law.kind) {
    case Law::Kind::Static:
    case Law::Kind::Effect:
      return satisfies_law(b, law);
    case Law::Kind::Exec: {
      // A counter-model strips the a-arrows of one surviving φ-world that no
      // executability law of the action forces to have a successor.
      const auto xa = t.execs_for(law.action);
      for (Val w : b.worlds()) {
        if (!law.pre.eval(w)) continue;
        const bool forced = std::any_of(xa.begin(), xa.end(), [w](const Law& x) { return x.pre.eval(w); });
        if (!forced) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool entails(const ActionTheory& t, const Law& law) {
  return entails_in(t, biggest_model(t).model, law);
}

bool entails(const ActionTheory& t, const Query& q) {
  if (q.empty()) throw UnsupportedQuery("empty conjunction");
  const KripkeModel b = biggest_model(t).model;
  return std::all_of(q.begin(), q.end(), [&](const Law& l) { return entails_in(t, b, l); });
}

ModularityReport is_modular(const ActionTheory& t) {
  const BiggestModel bm = biggest_model(t);
  const int n = t.sig().num_atoms();
  ModularityReport r;
  r.modular = bm.eliminated.empty();
  ValSet dont_care = t.sig().all() & ~models_set(t.statics(), t.sig());
  for (const auto& round : bm.eliminated) {
    ValSet gone;
    for (Val w : round) gone.set(w);
    r.implicit_laws.push_back(negated_dnf(gone, dont_care, n));
    dont_care |= gone;
  }
  r.final_law = minimal_dnf(bm.model.world_set(), t.sig().all() & ~models_set(t.statics(), t.sig()), n);
  if (bm.model.worlds().empty()) r.final_law = Formula::bot();
  return r;
}

bool theory_equivalent(const ActionTheory& t1, const ActionTheory& t2) {
  const auto l1 = t1.laws();
  const auto l2 = t2.laws();
  return entails(t1, l2.empty() ? Query{Law::static_law(Formula::top())} : l2) &&
         entails(t2, l1.empty() ? Query{Law::static_law(Formula::top())} : l1);
}

bool is_consistent(const ActionTheory& t) { return !biggest_model(t).model.worlds().empty(); }

ActionTheory statics_only(const ActionTheory& t) {
  ActionTheory s(t.name(), t.sig());
  for (const auto& f : t.statics()) s.add(Law::static_law(f));
  return s;
}

bool law_equivalent(const Law& a, const Law& b, const Signature& sig) {
  ActionTheory ta("a", sig);
  ta.add(a);
  ActionTheory tb("b", sig);
  tb.add(b);
  return entails(ta, b) && entails(tb, a);
}

}  // namespace atc
