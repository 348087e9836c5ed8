// Brute-force reference implementations used to cross-check the library.
// They only share data types and propositional evaluation with it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "atc/entailment.hpp"
#include "atc/kripke.hpp"
#include "atc/law.hpp"

namespace oracle {

using atc::Formula;
using atc::KripkeModel;
using atc::Law;
using atc::Term;
using atc::Val;

inline std::uint32_t table(const Formula& f, int n) {
  std::uint32_t t = 0;
  for (Val v = 0; v < (Val{1} << n); ++v) {
    if (f.eval(v)) t |= 1u << v;
  }
  return t;
}

// ------------------------------------------------------------ entailment

// Models over at most 2 atoms and one action, W and R as bitmasks.
struct TinyModel {
  std::uint32_t w;   // 4 bits
  std::uint32_t r;   // bit 4*from + to
};

inline std::uint32_t succ(const TinyModel& m, int from) { return (m.r >> (4 * from)) & 0xFu; }

// A law over 2 atoms with its truth tables precomputed.
struct TinyLaw {
  Law::Kind kind;
  std::uint32_t pre;
  std::uint32_t post;
};

inline TinyLaw tiny(const Law& l) { return {l.kind, table(l.pre, 2), table(l.post, 2)}; }

inline bool tiny_holds(const TinyModel& m, const TinyLaw& l) {
  for (int w = 0; w < 4; ++w) {
    if (!((m.w >> w) & 1u)) continue;
    const bool pre = ((l.pre >> w) & 1u) != 0;
    switch (l.kind) {
      case Law::Kind::Static:
        if (!pre) return false;
        break;
      case Law::Kind::Effect:
        if (pre && (succ(m, w) & ~l.post) != 0) return false;
        break;
      case Law::Kind::Exec:
        if (pre && succ(m, w) == 0) return false;
        break;
    }
  }
  return true;
}

// Every model (W a set of valuations, R a subset of W x W) of the laws over 2 atoms.
inline std::vector<TinyModel> all_models(const std::vector<Law>& laws) {
  std::vector<TinyLaw> tl;
  for (const auto& l : laws) tl.push_back(tiny(l));
  std::vector<TinyModel> out;
  for (std::uint32_t w = 0; w < 16; ++w) {
    std::uint32_t ww = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (((w >> a) & 1u) && ((w >> b) & 1u)) ww |= 1u << (4 * a + b);
      }
    }
    for (std::uint32_t r = ww;; r = (r - 1) & ww) {
      const TinyModel m{w, r};
      if (std::all_of(tl.begin(), tl.end(), [&](const TinyLaw& l) { return tiny_holds(m, l); })) out.push_back(m);
      if (r == 0) break;
    }
  }
  return out;
}

inline bool brute_entails(const std::vector<TinyModel>& models, const Law& l) {
  const TinyLaw t = tiny(l);
  return std::all_of(models.begin(), models.end(), [&](const TinyModel& m) { return tiny_holds(m, t); });
}

// ------------------------------------------------------- prime implicants

inline bool term_sat(const Term& t, Val v) { return (v & t.care) == t.pol; }

inline std::uint64_t term_models(const Term& t, int n) {
  std::uint64_t s = 0;
  for (Val v = 0; v < (Val{1} << n); ++v) {
    if (term_sat(t, v)) s |= std::uint64_t{1} << v;
  }
  return s;
}

// All terms whose models lie inside `on` and that have no such proper subterm.
inline std::vector<Term> brute_prime_implicants(std::uint64_t on, int n) {
  std::vector<Term> imps;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t care = 0; care <= full; ++care) {
    for (std::uint32_t pol = care;; pol = (pol - 1) & care) {
      const Term t{care, pol};
      if ((term_models(t, n) & ~on) == 0 && on != 0) imps.push_back(t);
      if (pol == 0) break;
    }
  }
  std::vector<Term> prime;
  for (const auto& t : imps) {
    const bool has_smaller = std::any_of(imps.begin(), imps.end(), [&](const Term& s) {
      return s.care != t.care && (s.care & t.care) == s.care && (t.pol & s.care) == s.pol;
    });
    if (!has_smaller) prime.push_back(t);
  }
  return prime;
}

// ------------------------------------------------------------- RelTarget

inline std::uint64_t world_mask(const KripkeModel& m) {
  std::uint64_t s = 0;
  for (Val w : m.worlds()) s |= std::uint64_t{1} << w;
  return s;
}

// Direct reading: the guaranteed-formula clause ranges over every set of
// valuations containing the union of w's successors in the models of ms.
inline std::vector<Val> brute_rel_targets(Val w, const Law& law, const KripkeModel& m,
                                          const std::set<KripkeModel>& ms, int n) {
  std::vector<Val> out;
  if (!law.pre.eval(w)) return out;
  const std::uint32_t nv = 1u << n;
  const std::uint64_t all = nv == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nv) - 1;
  const std::uint64_t wm = world_mask(m);
  std::uint64_t u = 0;
  for (const auto& mi : ms) {
    if (!mi.has_world(w)) continue;
    for (Val s : mi.successors(law.action, w)) u |= std::uint64_t{1} << s;
  }
  std::uint64_t not_psi = 0;
  for (Val v = 0; v < nv; ++v) {
    if (!law.post.eval(v)) not_psi |= std::uint64_t{1} << v;
  }
  const auto rel_neg = brute_prime_implicants(wm & not_psi, n);
  auto in_some = [&](const std::vector<Term>& terms, int atom, bool pos, Val target) {
    return std::any_of(terms.begin(), terms.end(), [&](const Term& t) {
      const bool has = ((t.care >> atom) & 1u) && (((t.pol >> atom) & 1u) != 0) == pos;
      return has && term_sat(t, target);
    });
  };
  for (Val w2 : m.worlds()) {
    if (law.post.eval(w2)) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const bool pos = ((w2 >> i) & 1u) != 0;
      if (in_some(rel_neg, i, pos, w2)) continue;
      const bool preserved = (((w >> i) & 1u) != 0) == pos;
      if (preserved) {
        bool seen = false;
        for (Val s = 0; s < nv; ++s) {
          if (((u >> s) & 1u) && ((((s >> i) & 1u) != 0) == pos)) seen = true;
        }
        ok = seen;
      } else {
        bool found = false;
        const std::uint64_t free = all & ~u;
        for (std::uint64_t extra = free;; extra = (extra - 1) & free) {
          if (in_some(brute_prime_implicants(wm & (u | extra), n), i, pos, w2)) {
            found = true;
            break;
          }
          if (extra == 0) break;
        }
        ok = found;
      }
    }
    if (ok) out.push_back(w2);
  }
  return out;
}

// ---------------------------------------------------- closeness, minimality

inline bool strictly_closer(const KripkeModel& base, const KripkeModel& a, const KripkeModel& b) {
  auto wdiff = [&](const KripkeModel& m) {
    std::set<Val> d;
    for (Val v : base.worlds()) {
      if (!m.has_world(v)) d.insert(v);
    }
    for (Val v : m.worlds()) {
      if (!base.has_world(v)) d.insert(v);
    }
    return d;
  };
  auto rdiff = [&](const KripkeModel& m) {
    std::set<atc::Arrow> d;
    for (const auto& x : base.arrows()) {
      if (!m.arrows().count(x)) d.insert(x);
    }
    for (const auto& x : m.arrows()) {
      if (!base.arrows().count(x)) d.insert(x);
    }
    return d;
  };
  auto sub = [](const auto& x, const auto& y) { return std::includes(y.begin(), y.end(), x.begin(), x.end()); };
  const auto wa = wdiff(a), wb = wdiff(b);
  if (wa != wb) return sub(wa, wb);
  const auto ra = rdiff(a), rb = rdiff(b);
  return ra != rb && sub(ra, rb);
}

inline std::set<KripkeModel> minimal(const std::vector<KripkeModel>& cands, const KripkeModel& base) {
  std::set<KripkeModel> out;
  for (const auto& c : cands) {
    const bool dominated =
        std::any_of(cands.begin(), cands.end(), [&](const KripkeModel& o) { return strictly_closer(base, o, c); });
    if (!dominated) out.insert(c);
  }
  return out;
}

inline bool model_satisfies(const KripkeModel& m, const Law& l) {
  for (Val w : m.worlds()) {
    switch (l.kind) {
      case Law::Kind::Static:
        if (!l.pre.eval(w)) return false;
        break;
      case Law::Kind::Effect:
        if (l.pre.eval(w)) {
          for (Val s : m.successors(l.action, w)) {
            if (!l.post.eval(s)) return false;
          }
        }
        break;
      case Law::Kind::Exec:
        if (l.pre.eval(w) && m.successors(l.action, w).empty()) return false;
        break;
    }
  }
  return true;
}

// Full candidate space of contraction, then minimization.
// Empty optional when the candidate space exceeds 2^cap models.
inline std::optional<std::set<KripkeModel>> brute_contract(const KripkeModel& m, const Law& law,
                                                           const std::set<KripkeModel>& ms, int n,
                                                           std::size_t cap = 14) {
  if (!model_satisfies(m, law)) return std::set<KripkeModel>{m};
  std::vector<KripkeModel> cands;
  bool too_big = false;
  auto subsets = [&](const auto& items, const std::function<void(std::uint32_t)>& fn) {
    const std::uint32_t k = static_cast<std::uint32_t>(items.size());
    if (k > cap) {
      too_big = true;
      return;
    }
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) fn(mask);
  };
  switch (law.kind) {
    case Law::Kind::Exec: {
      std::vector<atc::Arrow> removable;
      for (const auto& a : m.arrows()) {
        if (a.action == law.action && law.pre.eval(a.from)) removable.push_back(a);
      }
      subsets(removable, [&](std::uint32_t mask) {
        KripkeModel c = m;
        for (std::size_t i = 0; i < removable.size(); ++i) {
          if ((mask >> i) & 1u) c.remove_arrow(removable[i].action, removable[i].from, removable[i].to);
        }
        if (!model_satisfies(c, law)) cands.push_back(c);
      });
      break;
    }
    case Law::Kind::Effect: {
      std::vector<atc::Arrow> addable;
      for (Val w : m.worlds()) {
        for (Val t : brute_rel_targets(w, law, m, ms, n)) {
          if (!m.has_arrow(law.action, w, t)) addable.push_back({law.action, w, t});
        }
      }
      subsets(addable, [&](std::uint32_t mask) {
        KripkeModel c = m;
        for (std::size_t i = 0; i < addable.size(); ++i) {
          if ((mask >> i) & 1u) c.add_arrow(addable[i].action, addable[i].from, addable[i].to);
        }
        if (!model_satisfies(c, law)) cands.push_back(c);
      });
      break;
    }
    case Law::Kind::Static: {
      std::vector<Val> addable;
      for (Val v = 0; v < (Val{1} << n); ++v) {
        if (!m.has_world(v) && !law.pre.eval(v)) addable.push_back(v);
      }
      subsets(addable, [&](std::uint32_t mask) {
        KripkeModel c = m;
        for (std::size_t i = 0; i < addable.size(); ++i) {
          if ((mask >> i) & 1u) c.add_world(addable[i]);
        }
        cands.push_back(c);
      });
      break;
    }
  }
  if (too_big) return std::nullopt;
  return minimal(cands, m);
}

// Full candidate space of revision by a dynamic law, then minimization.
inline std::optional<std::set<KripkeModel>> brute_revise(const KripkeModel& m, const Law& law,
                                                         const std::set<KripkeModel>& ms, int n, std::size_t cap = 14) {
  std::vector<KripkeModel> cands;
  if (law.kind == Law::Kind::Effect) {
    std::vector<atc::Arrow> removable;
    for (const auto& a : m.arrows()) {
      if (a.action == law.action && law.pre.eval(a.from)) removable.push_back(a);
    }
    if (removable.size() > cap) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << removable.size()); ++mask) {
      KripkeModel c = m;
      for (std::size_t i = 0; i < removable.size(); ++i) {
        if ((mask >> i) & 1u) c.remove_arrow(removable[i].action, removable[i].from, removable[i].to);
      }
      if (model_satisfies(c, law)) cands.push_back(c);
    }
  } else if (law.kind == Law::Kind::Exec) {
    const Law never = Law::effect(law.pre, law.action, Formula::bot());
    std::vector<atc::Arrow> addable;
    for (Val w : m.worlds()) {
      for (Val t : brute_rel_targets(w, never, m, ms, n)) {
        if (!m.has_arrow(law.action, w, t)) addable.push_back({law.action, w, t});
      }
    }
    if (addable.size() > cap) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << addable.size()); ++mask) {
      KripkeModel c = m;
      for (std::size_t i = 0; i < addable.size(); ++i) {
        if ((mask >> i) & 1u) c.add_arrow(addable[i].action, addable[i].from, addable[i].to);
      }
      if (model_satisfies(c, law)) cands.push_back(c);
    }
  }
  return minimal(cands, m);
}

// --------------------------------------------------------- random inputs

inline Formula random_formula(std::mt19937& rng, int n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  const int k = pick(rng);
  if (k == 0) return std::uniform_int_distribution<int>(0, 9)(rng) == 0 ? Formula::top() : Formula::atom(rng() % n);
  if (k <= 2) return !Formula::atom(rng() % n);
  const Formula a = random_formula(rng, n, depth - 1);
  const Formula b = random_formula(rng, n, depth - 1);
  switch (k) {
    case 3:
    case 4: return a && b;
    case 5:
    case 6: return a || b;
    case 7: return atc::implies(a, b);
    default: return !a;
  }
}

inline Law random_law(std::mt19937& rng, int n, int actions, int depth = 2) {
  const int kind = std::uniform_int_distribution<int>(0, 5)(rng);
  const int a = static_cast<int>(rng() % actions);
  if (kind == 0) return Law::static_law(random_formula(rng, n, depth));
  if (kind <= 3) {
    Formula post = std::uniform_int_distribution<int>(0, 6)(rng) == 0 ? Formula::bot() : random_formula(rng, n, depth);
    return Law::effect(random_formula(rng, n, depth), a, post);
  }
  return Law::exec(random_formula(rng, n, depth), a);
}

inline KripkeModel random_model(std::mt19937& rng, int n, int max_worlds, int actions, double density) {
  std::vector<Val> vals;
  for (Val v = 0; v < (Val{1} << n); ++v) vals.push_back(v);
  std::shuffle(vals.begin(), vals.end(), rng);
  const int k = std::uniform_int_distribution<int>(1, max_worlds)(rng);
  KripkeModel m(std::set<Val>(vals.begin(), vals.begin() + k));
  std::bernoulli_distribution coin(density);
  for (int a = 0; a < actions; ++a) {
    for (Val x : m.worlds()) {
      for (Val y : m.worlds()) {
        if (coin(rng)) m.add_arrow(a, x, y);
      }
    }
  }
  return m;
}

// Random consistent modular theory with at least one executability and one effect law.
inline atc::ActionTheory random_modular(std::mt19937& rng, const atc::Signature& sig) {
  while (true) {
    atc::ActionTheory t("rand", sig);
    const int k = 2 + static_cast<int>(rng() % 7);
    for (int j = 0; j < k; ++j) t.add(random_law(rng, sig.num_atoms(), sig.num_actions()));
    if (t.execs().empty() || t.effects().empty()) continue;
    if (!atc::is_consistent(t) || !atc::is_modular(t).modular) continue;
    return t;
  }
}

// A law entailed by t, of the requested kind, for which the algorithms do real work.
inline std::optional<Law> entailed_law(std::mt19937& rng, const atc::ActionTheory& t, Law::Kind kind) {
  const atc::Signature& sig = t.sig();
  const int n = sig.num_atoms();
  for (int attempt = 0; attempt < 60; ++attempt) {
    Law l = random_law(rng, n, sig.num_actions());
    const auto own = t.laws();
    if (attempt % 2 == 0) l = own[rng() % own.size()];
    if (l.kind != kind) continue;
    if (attempt % 4 == 0) l.pre = l.pre && random_formula(rng, n, 1);
    if (kind == Law::Kind::Effect && attempt % 3 == 0) l.post = l.post || random_formula(rng, n, 1);
    if (kind == Law::Kind::Static) {
      if (!atc::entails_cpl(t.statics(), l.pre, sig) || atc::entails_cpl({}, l.pre, sig)) continue;
      return l;
    }
    if (!atc::entails(t, l) || atc::entails_cpl(t.statics(), !l.pre, sig)) continue;
    if (kind == Law::Kind::Effect && atc::entails_cpl(t.statics(), l.post, sig)) continue;
    return l;
  }
  return std::nullopt;
}

}  // namespace oracle
