#include "atc/formula.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace atc {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<std::string> atoms, std::vector<std::string> actions)
    : atoms_(std::move(atoms)), actions_(std::move(actions)) {
  if (atoms_.size() > static_cast<std::size_t>(kMaxAtoms)) {
    throw SignatureError("at most " + std::to_string(kMaxAtoms) + " atoms are supported");
  }
  std::set<std::string> seen;
  for (const auto* list : {&atoms_, &actions_}) {
    for (const auto& name : *list) {
      if (name.empty()) throw SignatureError("empty name in signature");
      if (!seen.insert(name).second) throw SignatureError("duplicate name '" + name + "'");
    }
  }
}

std::optional<int> Signature::atom_index(std::string_view name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<int>(it - atoms_.begin());
}

std::optional<int> Signature::action_index(std::string_view name) const {
  auto it = std::find(actions_.begin(), actions_.end(), name);
  if (it == actions_.end()) return std::nullopt;
  return static_cast<int>(it - actions_.begin());
}

int Signature::require_atom(std::string_view name) const {
  if (auto i = atom_index(name)) return *i;
  throw SignatureError("undeclared atom '" + std::string(name) + "'");
}

int Signature::require_action(std::string_view name) const {
  if (auto i = action_index(name)) return *i;
  throw SignatureError("undeclared action '" + std::string(name) + "'");
}

ValSet Signature::all() const {
  ValSet s;
  for (Val v = 0; v < num_valuations(); ++v) s.set(v);
  return s;
}

// --------------------------------------------------------------------- Term

Term Term::full(Val v, int num_atoms) {
  const std::uint32_t mask = (num_atoms >= 32) ? ~0u : ((1u << num_atoms) - 1);
  return Term{mask, v & mask};
}

Term Term::of(const std::vector<Literal>& lits) {
  Term t;
  for (const auto& l : lits) {
    const std::uint32_t bit = 1u << l.atom;
    if ((t.care & bit) != 0 && ((t.pol & bit) != 0) != l.positive) {
      throw Error("inconsistent term");
    }
    t.care |= bit;
    if (l.positive) t.pol |= bit;
  }
  return t;
}

int Term::size() const { return std::popcount(care); }

bool Term::contains(Literal l) const {
  const std::uint32_t bit = 1u << l.atom;
  return (care & bit) != 0 && ((pol & bit) != 0) == l.positive;
}

bool Term::subset_of(const Term& other) const {
  return (care & ~other.care) == 0 && ((pol ^ other.pol) & care) == 0;
}

std::vector<Literal> Term::literals() const {
  std::vector<Literal> out;
  for (int i = 0; i < 32; ++i) {
    if ((care >> i) & 1u) out.push_back({i, ((pol >> i) & 1u) != 0});
  }
  return out;
}

ValSet Term::models(int num_atoms) const {
  ValSet s;
  const Val n = Val{1} << num_atoms;
  for (Val v = 0; v < n; ++v) {
    if (satisfied_by(v)) s.set(v);
  }
  return s;
}

bool term_less(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto la = a.literals();
  const auto lb = b.literals();
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].atom != lb[i].atom) return la[i].atom < lb[i].atom;
    if (la[i].positive != lb[i].positive) return la[i].positive;
  }
  return false;
}

// ------------------------------------------------------------------ Formula

struct Formula::Node {
  Kind kind = Kind::Top;
  int atom = -1;
  Formula a;
  Formula b;
};

Formula::Formula() : node_(nullptr) {}
Formula::Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Formula Formula::top() { return Formula(); }

Formula Formula::bot() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bot;
  return Formula(std::move(n));
}

Formula Formula::atom(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = index;
  return Formula(std::move(n));
}

Formula Formula::literal(Literal l) {
  return l.positive ? atom(l.atom) : unary(Kind::Not, atom(l.atom));
}

Formula Formula::term(const Term& t) {
  Formula out;
  bool first = true;
  for (const auto& l : t.literals()) {
    out = first ? literal(l) : binary(Kind::And, out, literal(l));
    first = false;
  }
  return out;
}

Formula Formula::unary(Kind k, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return Formula(std::move(n));
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::Top; }
int Formula::atom_index() const { return node_ ? node_->atom : -1; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }

bool Formula::eval(Val v) const {
  switch (kind()) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Atom: return ((v >> node_->atom) & 1u) != 0;
    case Kind::Not: return !node_->a.eval(v);
    case Kind::And: return node_->a.eval(v) && node_->b.eval(v);
    case Kind::Or: return node_->a.eval(v) || node_->b.eval(v);
    case Kind::Xor: return node_->a.eval(v) != node_->b.eval(v);
    case Kind::Imp: return !node_->a.eval(v) || node_->b.eval(v);
    case Kind::Iff: return node_->a.eval(v) == node_->b.eval(v);
  }
  return false;
}

ValSet Formula::truth_table(int num_atoms) const {
  ValSet s;
  const Val n = Val{1} << num_atoms;
  for (Val v = 0; v < n; ++v) {
    if (eval(v)) s.set(v);
  }
  return s;
}

int Formula::max_atom() const {
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot: return -1;
    case Kind::Atom: return node_->atom;
    case Kind::Not: return node_->a.max_atom();
    default: return std::max(node_->a.max_atom(), node_->b.max_atom());
  }
}

std::uint32_t Formula::atoms_mask() const {
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot: return 0;
    case Kind::Atom: return 1u << node_->atom;
    case Kind::Not: return node_->a.atoms_mask();
    default: return node_->a.atoms_mask() | node_->b.atoms_mask();
  }
}

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Imp: return 2;
    case Formula::Kind::Xor: return 3;
    case Formula::Kind::Or: return 4;
    case Formula::Kind::And: return 5;
    case Formula::Kind::Not: return 6;
    default: return 7;
  }
}

const char* op_text(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return " <-> ";
    case Formula::Kind::Imp: return " -> ";
    case Formula::Kind::Xor: return " ^ ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::And: return " & ";
    default: return "";
  }
}

void print(const Formula& f, const Signature& sig, std::string& out) {
  using K = Formula::Kind;
  const K k = f.kind();
  auto sub = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, sig, out);
    if (parens) out += ')';
  };
  switch (k) {
    case K::Top: out += "true"; return;
    case K::Bot: out += "false"; return;
    case K::Atom: {
      const int i = f.atom_index();
      out += (i < sig.num_atoms()) ? sig.atoms()[i] : ("p" + std::to_string(i));
      return;
    }
    case K::Not:
      out += '~';
      sub(f.lhs(), precedence(f.lhs().kind()) < precedence(K::Not));
      return;
    default: {
      const int p = precedence(k);
      const bool right_assoc = (k == K::Imp);
      const int pl = precedence(f.lhs().kind());
      const int pr = precedence(f.rhs().kind());
      sub(f.lhs(), right_assoc ? pl <= p : pl < p);
      out += op_text(k);
      sub(f.rhs(), right_assoc ? pr < p : pr <= p);
    }
  }
}

int compare(const Formula& a, const Formula& b) {
  using K = Formula::Kind;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case K::Top:
    case K::Bot: return 0;
    case K::Atom: return a.atom_index() == b.atom_index() ? 0 : (a.atom_index() < b.atom_index() ? -1 : 1);
    case K::Not: return compare(a.lhs(), b.lhs());
    default: {
      const int c = compare(a.lhs(), b.lhs());
      return c != 0 ? c : compare(a.rhs(), b.rhs());
    }
  }
}

}  // namespace

std::string Formula::to_string(const Signature& sig) const {
  std::string out;
  print(*this, sig, out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || compare(a, b) == 0;
}

bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

Formula operator!(const Formula& a) { return Formula::unary(Formula::Kind::Not, a); }
Formula operator&&(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Kind::And, a, b);
}
Formula operator||(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Kind::Or, a, b);
}
Formula implies(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Kind::Imp, a, b);
}
Formula iff(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Kind::Iff, a, b);
}
Formula exclusive_or(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Kind::Xor, a, b);
}

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = out && fs[i];
  return out;
}

Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = out || fs[i];
  return out;
}

Formula dnf(const std::vector<Term>& terms) {
  std::vector<Formula> fs;
  fs.reserve(terms.size());
  for (const auto& t : terms) fs.push_back(Formula::term(t));
  return disjunction(fs);
}

void check_signature(const Formula& f, const Signature& sig) {
  if (f.max_atom() >= sig.num_atoms()) {
    throw SignatureError("formula mentions an atom outside the signature");
  }
}

// ---------------------------------------------------------------- Semantics

ValSet models_set(const std::vector<Formula>& gamma, const Signature& sig) {
  ValSet s = sig.all();
  for (const auto& f : gamma) {
    check_signature(f, sig);
    s &= f.truth_table(sig.num_atoms());
  }
  return s;
}

std::vector<Val> to_vector(const ValSet& s, const Signature& sig) {
  std::vector<Val> out;
  for (Val v = 0; v < sig.num_valuations(); ++v) {
    if (s.test(v)) out.push_back(v);
  }
  return out;
}

std::vector<Val> models_of(const Formula& f, const Signature& sig) {
  return to_vector(models_set({f}, sig), sig);
}

std::vector<Val> models_of(const std::vector<Formula>& gamma, const Signature& sig) {
  return to_vector(models_set(gamma, sig), sig);
}

bool entails_cpl(const std::vector<Formula>& gamma, const Formula& f, const Signature& sig) {
  check_signature(f, sig);
  const ValSet g = models_set(gamma, sig);
  return (g & ~f.truth_table(sig.num_atoms())).none();
}

bool equivalent_cpl(const Formula& a, const Formula& b, const Signature& sig) {
  check_signature(a, sig);
  check_signature(b, sig);
  return a.truth_table(sig.num_atoms()) == b.truth_table(sig.num_atoms());
}

std::vector<int> essential_atoms(const Formula& f, const Signature& sig) {
  check_signature(f, sig);
  const ValSet tt = f.truth_table(sig.num_atoms());
  std::vector<int> out;
  for (int p = 0; p < sig.num_atoms(); ++p) {
    for (Val v = 0; v < sig.num_valuations(); ++v) {
      if (tt.test(v) != tt.test(v ^ (Val{1} << p))) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

Formula essential_reduct(const Formula& f, const Signature& sig) {
  const ValSet tt = models_set({f}, sig);
  if (tt.none()) return Formula::bot();
  if (tt == sig.all()) return Formula::top();
  return minimal_dnf(tt, ValSet{}, sig.num_atoms());
}

namespace {

// True when every valuation extending `t` lies in `on`.
bool is_implicant(const Term& t, const ValSet& on, int num_atoms) {
  const std::uint32_t all = (Val{1} << num_atoms) - 1;
  const std::uint32_t free = all & ~t.care;
  std::uint32_t sub = free;
  while (true) {
    if (!on.test(t.pol | sub)) return false;
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return true;
}

}  // namespace

std::vector<Term> prime_implicants(const ValSet& on, int num_atoms) {
  std::vector<Term> primes;
  const std::uint32_t all = (Val{1} << num_atoms) - 1;
  if (on.none()) return primes;
  for (int k = 0; k <= num_atoms; ++k) {
    std::vector<Term> level;
    for (std::uint32_t care = 0; care <= all; ++care) {
      if (std::popcount(care) != k) continue;
      std::uint32_t pol = care;
      while (true) {
        const Term t{care, pol};
        const bool subsumed = std::any_of(primes.begin(), primes.end(),
                                          [&](const Term& p) { return p.subset_of(t); });
        if (!subsumed && is_implicant(t, on, num_atoms)) level.push_back(t);
        if (pol == 0) break;
        pol = (pol - 1) & care;
      }
    }
    primes.insert(primes.end(), level.begin(), level.end());
  }
  std::sort(primes.begin(), primes.end(), term_less);
  return primes;
}

std::vector<Term> prime_implicants(const Formula& f, const Signature& sig) {
  return prime_implicants(models_set({f}, sig), sig.num_atoms());
}

std::vector<Term> prime_subvaluations(const Formula& f, const ValSet& worlds,
                                      const Signature& sig) {
  const ValSet tt = models_set({f}, sig);
  std::uint32_t ess = 0;
  for (int p : essential_atoms(f, sig)) ess |= 1u << p;
  std::vector<Term> out;
  for (int k = 0; k <= std::popcount(ess); ++k) {
    std::vector<Term> level;
    for (std::uint32_t care = ess;; care = (care - 1) & ess) {
      if (std::popcount(care) == k) {
        for (std::uint32_t pol = care;; pol = (pol - 1) & care) {
          const Term t{care, pol};
          const bool subsumed = std::any_of(out.begin(), out.end(),
                                            [&](const Term& p) { return p.subset_of(t); });
          if (!subsumed) {
            bool forces = true;
            for (Val w = 0; w < sig.num_valuations() && forces; ++w) {
              if (worlds.test(w) && t.satisfied_by(w) && !tt.test(w)) forces = false;
            }
            if (forces) level.push_back(t);
          }
          if (pol == 0) break;
        }
      }
      if (care == 0) break;
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  std::sort(out.begin(), out.end(), term_less);
  return out;
}

Formula minimal_dnf(const ValSet& on, const ValSet& dont_care, int num_atoms) {
  ValSet care_on = on & ~dont_care;
  if (care_on.none()) return Formula::bot();
  const auto primes = prime_implicants(on | dont_care, num_atoms);
  const ValSet universe = [&] {
    ValSet u;
    for (Val v = 0; v < (Val{1} << num_atoms); ++v) u.set(v);
    return u;
  }();
  if ((on | dont_care) == universe) return Formula::top();

  std::vector<ValSet> cover(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) cover[i] = primes[i].models(num_atoms) & care_on;

  std::vector<bool> chosen(primes.size(), false);
  ValSet left = care_on;
  // Essential implicants first.
  for (Val v = 0; v < (Val{1} << num_atoms); ++v) {
    if (!left.test(v)) continue;
    int only = -1;
    int count = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (cover[i].test(v)) {
        ++count;
        only = static_cast<int>(i);
      }
    }
    if (count == 1 && !chosen[only]) {
      chosen[only] = true;
      left &= ~cover[only];
    }
  }
  // Greedy completion, ties broken by canonical order.
  while (left.any()) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const std::size_t gain = (cover[i] & left).count();
      if (!chosen[i] && gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    chosen[best] = true;
    left &= ~cover[best];
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (chosen[i]) terms.push_back(primes[i]);
  }
  return dnf(terms);
}

Formula negated_dnf(const ValSet& excluded, const ValSet& dont_care, int num_atoms) {
  const Formula d = minimal_dnf(excluded, dont_care, num_atoms);
  switch (d.kind()) {
    case Formula::Kind::Bot: return Formula::top();
    case Formula::Kind::Top: return Formula::bot();
    case Formula::Kind::Atom: return !d;
    case Formula::Kind::Not:
      if (d.lhs().kind() == Formula::Kind::Atom) return d.lhs();
      return !d;
    default: return !d;
  }
}

std::vector<StaticContraction> ClassicalContraction::contract(const std::vector<Formula>& statics,
                                                              const Formula& f,
                                                              const Signature& sig) const {
  check_signature(f, sig);
  const ValSet tt = f.truth_table(sig.num_atoms());
  if (tt == sig.all()) throw Error("cannot contract tautology");
  if (!entails_cpl(statics, f, sig)) return {StaticContraction{statics, std::nullopt}};
  const ValSet base = models_set(statics, sig);
  std::vector<StaticContraction> out;
  for (Val v = 0; v < sig.num_valuations(); ++v) {
    if (tt.test(v)) continue;
    ValSet kept = base;
    kept.set(v);
    const ValSet excluded = sig.all() & ~kept;
    out.push_back({{negated_dnf(excluded, ValSet{}, sig.num_atoms())}, v});
  }
  return out;
}

std::vector<StaticContraction> classical_contract(const std::vector<Formula>& statics,
                                                  const Formula& f, const Signature& sig) {
  return ClassicalContraction{}.contract(statics, f, sig);
}

std::string term_to_string(const Term& t, const Signature& sig) {
  if (t.empty()) return "true";
  return Formula::term(t).to_string(sig);
}

std::string valuation_to_string(Val v, const Signature& sig) {
  std::string out = "{";
  for (int i = 0; i < sig.num_atoms(); ++i) {
    if (i > 0) out += ", ";
    if (((v >> i) & 1u) == 0) out += '~';
    out += sig.atoms()[i];
  }
  return out + "}";
}

}  // namespace atc
