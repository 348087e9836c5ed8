#include "atc/kripke.hpp"

#include <algorithm>
#include <iterator>

namespace atc {

std::vector<Val> KripkeModel::successors(int a, Val w) const {
  std::vector<Val> out;
  for (auto it = arrows_.lower_bound({a, w, 0}); it != arrows_.end() && it->action == a && it->from == w; ++it) {
    out.push_back(it->to);
  }
  return out;
}

bool KripkeModel::has_successor(int a, Val w) const {
  auto it = arrows_.lower_bound({a, w, 0});
  return it != arrows_.end() && it->action == a && it->from == w;
}

ValSet KripkeModel::world_set() const {
  ValSet s;
  for (Val v : worlds_) s.set(v);
  return s;
}

void KripkeModel::remove_world(Val v) {
  worlds_.erase(v);
  for (auto it = arrows_.begin(); it != arrows_.end();) {
    if (it->from == v || it->to == v) {
      it = arrows_.erase(it);
    } else {
      ++it;
    }
  }
}

void KripkeModel::add_arrow(int a, Val from, Val to) {
  if (!has_world(from) || !has_world(to)) throw Error("arrow endpoint is not a world of the model");
  arrows_.insert({a, from, to});
}

void KripkeModel::remove_arrows_from(int a, Val from) {
  auto it = arrows_.lower_bound({a, from, 0});
  while (it != arrows_.end() && it->action == a && it->from == from) it = arrows_.erase(it);
}

// -------------------------------------------------------------------- Modal

Modal Modal::prop(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->prop = std::move(f);
  return Modal(std::move(n));
}

Modal Modal::negation(Modal m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids = {std::move(m)};
  return Modal(std::move(n));
}

Modal Modal::both(Modal a, Modal b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids = {std::move(a), std::move(b)};
  return Modal(std::move(n));
}

Modal Modal::either(Modal a, Modal b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->kids = {std::move(a), std::move(b)};
  return Modal(std::move(n));
}

Modal Modal::implies(Modal a, Modal b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Imp;
  n->kids = {std::move(a), std::move(b)};
  return Modal(std::move(n));
}

Modal Modal::box(int action, Modal m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->action = action;
  n->kids = {std::move(m)};
  return Modal(std::move(n));
}

Modal Modal::diamond(int action, Modal m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diamond;
  n->action = action;
  n->kids = {std::move(m)};
  return Modal(std::move(n));
}

Modal Modal::of_law(const Law& law) {
  switch (law.kind) {
    case Law::Kind::Static: return prop(law.pre);
    case Law::Kind::Effect: return implies(prop(law.pre), box(law.action, prop(law.post)));
    case Law::Kind::Exec: return implies(prop(law.pre), diamond(law.action, prop(Formula::top())));
  }
  return prop(Formula::top());
}

bool eval(const KripkeModel& m, Val w, const Modal& f) {
  if (!m.has_world(w)) throw Error("evaluation at a world outside the model");
  const auto& n = *f.node_;
  switch (n.kind) {
    case Modal::Kind::Prop: return n.prop.eval(w);
    case Modal::Kind::Not: return !eval(m, w, n.kids[0]);
    case Modal::Kind::And: return eval(m, w, n.kids[0]) && eval(m, w, n.kids[1]);
    case Modal::Kind::Or: return eval(m, w, n.kids[0]) || eval(m, w, n.kids[1]);
    case Modal::Kind::Imp: return !eval(m, w, n.kids[0]) || eval(m, w, n.kids[1]);
    case Modal::Kind::Box:
      for (Val s : m.successors(n.action, w)) {
        if (!eval(m, s, n.kids[0])) return false;
      }
      return true;
    case Modal::Kind::Diamond:
      for (Val s : m.successors(n.action, w)) {
        if (eval(m, s, n.kids[0])) return true;
      }
      return false;
  }
  return false;
}

bool holds_globally(const KripkeModel& m, const Modal& f) {
  return std::all_of(m.worlds().begin(), m.worlds().end(), [&](Val w) { return eval(m, w, f); });
}

std::vector<Val> violations(const KripkeModel& m, const Law& law) {
  std::vector<Val> out;
  for (Val w : m.worlds()) {
    bool ok = true;
    switch (law.kind) {
      case Law::Kind::Static: ok = law.pre.eval(w); break;
      case Law::Kind::Effect:
        if (law.pre.eval(w)) {
          for (Val s : m.successors(law.action, w)) ok = ok && law.post.eval(s);
        }
        break;
      case Law::Kind::Exec: ok = !law.pre.eval(w) || m.has_successor(law.action, w); break;
    }
    if (!ok) out.push_back(w);
  }
  return out;
}

bool satisfies_law(const KripkeModel& m, const Law& law) { return violations(m, law).empty(); }

bool is_model_of(const KripkeModel& m, const ActionTheory& t) {
  const auto laws = t.laws();
  return std::all_of(laws.begin(), laws.end(), [&](const Law& l) { return satisfies_law(m, l); });
}

KripkeModel maximal_frame(const ActionTheory& t, const std::set<Val>& worlds) {
  KripkeModel m(worlds);
  const int n = t.sig().num_atoms();
  for (int a = 0; a < t.sig().num_actions(); ++a) {
    const auto effects = t.effects_for(a);
    for (Val w : worlds) {
      ValSet allowed;
      allowed.set();
      for (const auto& e : effects) {
        if (e.pre.eval(w)) allowed &= e.post.truth_table(n);
      }
      for (Val s : worlds) {
        if (allowed.test(s)) m.add_arrow(a, w, s);
      }
    }
  }
  return m;
}

KripkeModel canonical_frame(const ActionTheory& t) {
  const auto vals = models_of(t.statics(), t.sig());
  return maximal_frame(t, std::set<Val>(vals.begin(), vals.end()));
}

// --------------------------------------------------------------- Closeness

namespace {

struct Diff {
  std::set<Val> worlds;
  std::set<Arrow> arrows;
};

Diff diff(const KripkeModel& a, const KripkeModel& b) {
  Diff d;
  std::set_symmetric_difference(a.worlds().begin(), a.worlds().end(), b.worlds().begin(), b.worlds().end(),
                                std::inserter(d.worlds, d.worlds.end()));
  std::set_symmetric_difference(a.arrows().begin(), a.arrows().end(), b.arrows().begin(), b.arrows().end(),
                                std::inserter(d.arrows, d.arrows.end()));
  return d;
}

template <typename T>
bool subset(const std::set<T>& a, const std::set<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Lexicographic "at least as close": a strictly smaller world difference
// wins outright, otherwise the world differences must coincide and the
// arrow differences are compared.
bool at_least_as_close(Closeness kind, const Diff& d1, const Diff& d2) {
  if (kind == Closeness::SubsetLex) {
    if (d1.worlds != d2.worlds) return subset(d1.worlds, d2.worlds);
    return subset(d1.arrows, d2.arrows);
  }
  if (d1.worlds.size() != d2.worlds.size()) return d1.worlds.size() < d2.worlds.size();
  return d1.arrows.size() <= d2.arrows.size();
}

}  // namespace

Order compare(const Comparator& cmp, const KripkeModel& m1, const KripkeModel& m2) {
  const Diff d1 = diff(cmp.base, m1);
  const Diff d2 = diff(cmp.base, m2);
  const bool le = at_least_as_close(cmp.kind, d1, d2);
  const bool ge = at_least_as_close(cmp.kind, d2, d1);
  if (le && ge) return Order::Equal;
  if (le) return Order::Closer;
  if (ge) return Order::Farther;
  return Order::Incomparable;
}

std::vector<KripkeModel> minimal_under(const std::vector<KripkeModel>& candidates, const Comparator& cmp) {
  std::set<KripkeModel> unique(candidates.begin(), candidates.end());
  std::vector<KripkeModel> pool(unique.begin(), unique.end());
  std::vector<KripkeModel> out;
  for (const auto& c : pool) {
    const bool dominated = std::any_of(pool.begin(), pool.end(), [&](const KripkeModel& o) {
      return compare(cmp, o, c) == Order::Closer;
    });
    if (!dominated) out.push_back(c);
  }
  return out;
}

std::string order_name(Order o) {
  switch (o) {
    case Order::Closer: return "closer";
    case Order::Farther: return "farther";
    case Order::Equal: return "equal";
    case Order::Incomparable: return "incomparable";
  }
  return {};
}

std::string to_dot(const KripkeModel& m, const Signature& sig) {
  std::string out = "digraph model {\n";
  auto label = [&](Val w) {
    std::string s;
    for (int i = 0; i < sig.num_atoms(); ++i) {
      if ((w >> i) & 1u) s += (s.empty() ? "" : ", ") + sig.atoms()[i];
    }
    return s;
  };
  for (Val w : m.worlds()) {
    out += "  w" + std::to_string(w) + " [label=\"{" + label(w) + "}\"];\n";
  }
  for (const auto& a : m.arrows()) {
    out += "  w" + std::to_string(a.from) + " -> w" + std::to_string(a.to) + " [label=\"" +
           sig.actions()[a.action] + "\"];\n";
  }
  return out + "}\n";
}

}  // namespace atc
