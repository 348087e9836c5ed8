#include "atc/theory_change.hpp"

#include <algorithm>

#include "atc/entailment.hpp"

namespace atc {

namespace {

Formula conj(const Formula& a, const Formula& b) {
  if (a.kind() == Formula::Kind::Top) return b;
  if (b.kind() == Formula::Kind::Top) return a;
  return a && b;
}

Formula disj(const Formula& a, const Formula& b) {
  if (a.kind() == Formula::Kind::Bot) return b;
  if (b.kind() == Formula::Kind::Bot) return a;
  return a || b;
}

Formula context_formula(const ContractionContext& c) {
  return Formula::term(Term{c.pi.care | c.completion.care, c.valuation & (c.pi.care | c.completion.care)});
}

Candidate preserved(const ActionTheory& t) {
  Candidate c{t, {}};
  c.provenance.unsimplified_size = t.size();
  return c;
}

TheoryCandidates only_input(const ActionTheory& t) { return {{preserved(t)}}; }

// Drops dynamic laws that the static laws already entail.
void simplify(ActionTheory& t) {
  const ActionTheory s = statics_only(t);
  std::vector<Law> drop;
  for (const auto& l : t.laws()) {
    if (l.kind != Law::Kind::Static && entails(s, l)) drop.push_back(l);
  }
  for (const auto& l : drop) t.remove(l);
}

TheoryCandidates finish(const ActionTheory& input, std::vector<Candidate> built, const ContractOptions& opt) {
  TheoryCandidates out;
  for (auto& c : built) {
    c.provenance.unsimplified_size = c.theory.size();
    if (opt.simplify) simplify(c.theory);
    const bool dup = std::any_of(out.candidates.begin(), out.candidates.end(), [&](const Candidate& o) {
      return o.theory.same_laws(c.theory) || (opt.dedupe_equivalent && theory_equivalent(o.theory, c.theory));
    });
    if (dup) continue;
    out.candidates.push_back(std::move(c));
  }
  if (out.candidates.empty()) return only_input(input);
  return out;
}

bool statics_entail(const ActionTheory& t, const Formula& f) {
  return entails_cpl(t.statics(), f, t.sig());
}

}  // namespace

std::vector<ContractionContext> contexts(const ActionTheory& t, const Formula& phi) {
  const Signature& sig = t.sig();
  const int n = sig.num_atoms();
  const ValSet s = models_set(t.statics(), sig);
  const ValSet on = s & phi.truth_table(n) & sig.all();
  std::vector<ContractionContext> out;
  ValSet seen;
  const std::uint32_t all = sig.num_valuations() - 1;
  for (const Term& pi : prime_implicants(on, n)) {
    const std::uint32_t free = all & ~pi.care;
    // Ascending enumeration of the assignments to the free atoms.
    for (std::uint32_t sub = 0;; sub = (sub - free) & free) {
      const Val v = pi.pol | sub;
      if (s.test(v) && !seen.test(v)) {
        seen.set(v);
        out.push_back({pi, Term{free, sub}, v});
      }
      if (sub == free) break;
    }
  }
  return out;
}

std::vector<SupportSet> support_sets(const ActionTheory& t, int action, const Formula& phi, const Formula& psi) {
  const auto ea = t.effects_for(action);
  const Law target = Law::effect(phi, action, psi);
  const std::size_t m = ea.size();
  if (m > 20) throw Error("too many effect laws for support-set enumeration");
  std::vector<std::uint32_t> found;
  std::vector<SupportSet> out;
  for (std::size_t k = 0; k <= m; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      const bool superset = std::any_of(found.begin(), found.end(), [&](std::uint32_t f) { return (mask & f) == f; });
      if (superset) continue;
      ActionTheory sub = statics_only(t);
      std::vector<Law> laws;
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1u) {
          sub.add(ea[i]);
          laws.push_back(ea[i]);
        }
      }
      if (entails(sub, target)) {
        found.push_back(mask);
        out.push_back({std::move(laws)});
      }
    }
  }
  return out;
}

TheoryCandidates contract_executability(const ActionTheory& t, const Law& law, const ContractOptions& opt) {
  if (law.kind != Law::Kind::Exec) throw Error("not an executability law");
  if (!entails(t, law) || statics_entail(t, !law.pre)) return only_input(t);
  std::vector<Candidate> built;
  const auto xa = t.execs_for(law.action);
  for (const auto& ctx : contexts(t, law.pre)) {
    ActionTheory next = t;
    const Formula not_ctx = !context_formula(ctx);
    for (const auto& x : xa) {
      next.remove(x);
      next.add(Law::exec(conj(x.pre, not_ctx), law.action));
    }
    Candidate c{std::move(next), {}};
    c.provenance.algorithm = Provenance::Algorithm::Executability;
    c.provenance.context = ctx;
    built.push_back(std::move(c));
  }
  return finish(t, std::move(built), opt);
}

TheoryCandidates contract_effect(const ActionTheory& t, const Law& law, const ContractOptions& opt) {
  if (law.kind != Law::Kind::Effect) throw Error("not an effect law");
  if (!entails(t, law) || statics_entail(t, !law.pre) || statics_entail(t, law.post)) return only_input(t);
  const Signature& sig = t.sig();
  const int n = sig.num_atoms();
  const int a = law.action;

  const auto kernels = support_sets(t, a, law.pre, law.post);
  std::vector<Law> removed;
  for (const auto& k : kernels) {
    for (const auto& l : k.laws) {
      if (std::find(removed.begin(), removed.end(), l) == removed.end()) removed.push_back(l);
    }
  }
  const ValSet s = models_set(t.statics(), sig);
  const auto pi_primes = prime_implicants(s & ~law.post.truth_table(n) & sig.all(), n);
  const bool filter = opt.drop_unsuccessful && is_modular(t).modular;

  std::vector<Candidate> built;
  for (const auto& ctx : contexts(t, law.pre)) {
    const Formula cf = context_formula(ctx);
    const Term ctx_term = Term::full(ctx.valuation, n);
    for (const Term& pp : pi_primes) {
      ActionTheory next = t;
      for (const auto& l : removed) next.remove(l);
      for (const auto& l : removed) {
        next.add(Law::effect(conj(l.pre, !cf), a, l.post));
        next.add(Law::effect(conj(l.pre, cf), a, disj(l.post, Formula::term(pp))));
      }
      // Frame preservation: a literal of the context survives unless the
      // theory forces it to flip, or π′ itself mentions it.
      std::vector<Literal> frame;
      for (const Literal& l : ctx_term.literals()) {
        bool witness = false;
        const std::uint32_t rest = ctx_term.care & ~(1u << l.atom);
        for (std::uint32_t extra = rest;; extra = (extra - 1) & rest) {
          const std::uint32_t care = extra | (1u << l.atom);
          const Term big{care, ctx.valuation & care};
          // ⋀L is entailed by the context; it must be S-consistent with π′.
          const bool clash = (big.care & pp.care & (big.pol ^ pp.pol)) != 0;
          if (!clash) {
            const Term joint{big.care | pp.care, big.pol | pp.pol};
            if ((joint.models(n) & s).any()) {
              witness = true;
              break;
            }
          }
          if (extra == 0) break;
        }
        if (!witness) continue;
        const bool flips = entails(t, Law::effect(cf, a, Formula::literal(l.negated())));
        if (!flips || pp.contains(l)) frame.push_back(l);
      }
      if (opt.factor_frame && !frame.empty()) {
        std::vector<Formula> parts;
        for (const Literal& l : frame) parts.push_back(disj(law.post, Formula::literal(l)));
        next.add(Law::effect(cf, a, conjunction(parts)));
      } else {
        for (const Literal& l : frame) next.add(Law::effect(cf, a, disj(law.post, Formula::literal(l))));
      }
      if (filter && entails(next, law)) continue;
      Candidate c{std::move(next), {}};
      c.provenance.algorithm = Provenance::Algorithm::Effect;
      c.provenance.context = ctx;
      c.provenance.pi_prime = pp;
      c.provenance.kernels = kernels;
      built.push_back(std::move(c));
    }
  }
  return finish(t, std::move(built), opt);
}

TheoryCandidates contract_static(const ActionTheory& t, const Formula& phi, const ContractOptions& opt) {
  if (!statics_entail(t, phi)) return only_input(t);
  std::vector<Candidate> built;
  for (const auto& sc : classical_contract(t.statics(), phi, t.sig())) {
    ActionTheory next(t.name(), t.sig());
    for (const auto& f : sc.statics) next.add(Law::static_law(f));
    for (const auto& e : t.effects()) next.add(e);
    for (const auto& x : t.execs()) next.add(Law::exec(conj(x.pre, phi), x.action));
    for (int a : t.actions_with_laws()) next.add(Law::effect(!phi, a, Formula::bot()));
    Candidate c{std::move(next), {}};
    c.provenance.algorithm = Provenance::Algorithm::Static;
    c.provenance.admitted = sc.added;
    built.push_back(std::move(c));
  }
  return finish(t, std::move(built), opt);
}

TheoryCandidates contract(const ActionTheory& t, const Law& law, const ContractOptions& opt) {
  check_signature(law.pre, t.sig());
  check_signature(law.post, t.sig());
  switch (law.kind) {
    case Law::Kind::Static: return contract_static(t, law.pre, opt);
    case Law::Kind::Effect: return contract_effect(t, law, opt);
    case Law::Kind::Exec: return contract_executability(t, law, opt);
  }
  return only_input(t);
}

ActionTheory theory_from_model_set(const ModelSet& ms, const Signature& sig, const std::string& name) {
  if (ms.empty()) throw Error("cannot build a theory from an empty model set");
  const int n = sig.num_atoms();
  ValSet present;
  for (const auto& m : ms) present |= m.world_set();
  const ValSet absent = sig.all() & ~present;

  ActionTheory out(name, sig);
  const Formula s = negated_dnf(absent, ValSet{}, n);
  if (s.kind() != Formula::Kind::Top) out.add(Law::static_law(s));

  for (int a = 0; a < sig.num_actions(); ++a) {
    ValSet always;
    for (Val w = 0; w < sig.num_valuations(); ++w) {
      if (!present.test(w)) continue;
      ValSet succ;
      bool everywhere = true;
      for (const auto& m : ms) {
        if (!m.has_world(w)) continue;
        const auto ss = m.successors(a, w);
        if (ss.empty()) everywhere = false;
        for (Val x : ss) succ.set(x);
      }
      if (everywhere) always.set(w);
      ValSet self;
      self.set(w);
      const Formula pre = minimal_dnf(self, absent, n);
      out.add(Law::effect(pre, a, succ.none() ? Formula::bot() : minimal_dnf(succ, absent, n)));
    }
    if (always.any()) out.add(Law::exec(minimal_dnf(always, absent, n), a));
  }
  simplify(out);
  return out;
}

std::string context_to_string(const ContractionContext& c, const Signature& sig) {
  return term_to_string(Term::full(c.valuation, sig.num_atoms()), sig);
}

std::string algorithm_name(Provenance::Algorithm a) {
  switch (a) {
    case Provenance::Algorithm::Preserved: return "preserved";
    case Provenance::Algorithm::Executability: return "executability";
    case Provenance::Algorithm::Effect: return "effect";
    case Provenance::Algorithm::Static: return "static";
  }
  return {};
}

}  // namespace atc
